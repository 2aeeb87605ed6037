#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bkhopf {

// Extension degrees beyond this are unsupported.
inline constexpr int kMaxDegree = 4;

// Coordinates of a ring element in the power basis 1, y, ..., y^{d-1}.
// Entries at index >= d are always zero.
using Coords = std::array<std::uint64_t, kMaxDegree>;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// The Galois ring GR(p^n, d) = (Z/p^n)[y]/(h(y)), our model of W_n(F_{p^d}).
///
/// h is the lift of the residue-field modulus whose root is a Teichmüller
/// element, so the Witt-vector Frobenius is the ring map y -> y^p. Length
/// n = 1 is the residue field k = F_{p^d} itself; a "field descriptor" and a
/// "Witt ring" are both instances of this class.
///
/// Instances are immutable and shared; every derived ring (truncations to
/// shorter lengths) is built eagerly at construction.
class Ring : public std::enable_shared_from_this<Ring> {
  struct Passkey {};

 public:
  /// F_{p^d}. An empty modulus selects a default: y for d = 1, otherwise the
  /// first primitive polynomial in Conway's ordering (without the subfield
  /// compatibility condition). A supplied modulus must be monic of degree d,
  /// and for d >= 2 irreducible and primitive.
  static RingPtr field(std::uint64_t p, int d = 1, std::vector<std::uint64_t> modulus = {});

  /// W_n(k) for the residue field k.
  static RingPtr witt(const RingPtr& field, int n);
  static RingPtr witt(std::uint64_t p, int d, int n, std::vector<std::uint64_t> modulus = {});

  Ring(Passkey, std::uint64_t p, int d, int n, std::vector<std::uint64_t> field_modulus,
       std::vector<std::uint64_t> lift_modulus);

  std::uint64_t p() const { return p_; }
  int degree() const { return d_; }
  int length() const { return n_; }
  bool is_field() const { return n_ == 1; }
  /// p^n, the characteristic.
  std::uint64_t characteristic() const { return mod_; }
  /// q = p^d, the residue field size.
  std::uint64_t field_size() const { return q_; }
  const std::vector<std::uint64_t>& field_modulus() const { return field_modulus_; }
  const std::vector<std::uint64_t>& lift_modulus() const { return lift_modulus_; }

  /// The ring of length m <= n obtained by reducing mod p^m.
  RingPtr truncation(int m) const;
  RingPtr residue_field() const { return truncation(1); }

  bool operator==(const Ring& other) const;

  // Coordinate-level arithmetic. Arguments must already be reduced.
  Coords zero() const { return Coords{}; }
  Coords one() const;
  Coords from_int(std::int64_t v) const;
  Coords generator() const;
  bool is_zero(const Coords& a) const;
  bool is_unit(const Coords& a) const;
  bool divisible_by_p(const Coords& a) const { return !is_unit(a); }
  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords neg(const Coords& a) const;
  Coords mul(const Coords& a, const Coords& b) const;
  Coords scale(const Coords& a, std::uint64_t s) const;
  Coords pow(Coords a, std::uint64_t e) const;
  /// Throws NotAUnit.
  Coords inverse(const Coords& a) const;
  Coords frobenius(const Coords& a) const;
  /// Reduction into truncation(m).
  Coords reduce(const Coords& a, int m) const;
  /// a = p * b; returns b in truncation(n - 1). Throws PreconditionViolated when p does not divide a.
  Coords divide_by_p(const Coords& a) const;
  /// p * a where a lives in truncation(n - 1) (or any shorter ring, coordinates read as integers).
  Coords times_p(const Coords& a) const;

  /// Base-10 serialization: a bare integer for d = 1, otherwise "[c0,c1,...]".
  std::string format(const Coords& a) const;
  /// Sum of c_i y^i reduced into this ring, from possibly negative integers.
  Coords from_ints(const std::vector<std::int64_t>& coords) const;

 private:
  std::uint64_t p_;
  int d_;
  int n_;
  std::uint64_t mod_;
  std::uint64_t q_;
  std::vector<std::uint64_t> field_modulus_;
  std::vector<std::uint64_t> lift_modulus_;
  // frob_images_[i] = y^{p i}
  std::vector<Coords> frob_images_;
  // truncations_[m - 1] is the ring of length m for m < n.
  std::vector<RingPtr> truncations_;
};

/// A ring element: shared ring handle plus coordinates.
class Elem {
 public:
  Elem() = default;
  Elem(RingPtr ring, Coords coords);

  static Elem from_int(const RingPtr& ring, std::int64_t v);
  static Elem generator(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const Coords& coords() const { return coords_; }

  bool is_zero() const { return ring_->is_zero(coords_); }
  bool is_unit() const { return ring_->is_unit(coords_); }
  Elem inverse() const { return {ring_, ring_->inverse(coords_)}; }
  Elem pow(std::uint64_t e) const { return {ring_, ring_->pow(coords_, e)}; }
  std::string to_string() const { return ring_->format(coords_); }

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a) { return {a.ring_, a.ring_->neg(a.coords_)}; }
  friend bool operator==(const Elem& a, const Elem& b);

 private:
  RingPtr ring_;
  Coords coords_{};
};

/// Ring automorphism lifting a -> a^p. On a field this is the absolute Frobenius.
Elem frobenius(const Elem& a);

/// a in (k^x)^{p-1}, decided as a^{(q-1)/(p-1)} = 1. a must be a nonzero field element.
bool is_pm1_power(const Elem& a);

/// The canonical x with x^{p-1} = a.
///
/// The solutions are the nonzero vectors of ker(Frob - a), an F_p-line, so
/// they are the F_p^x multiples of one root. The canonical root is the
/// lexicographically smallest coordinate tuple (c0, c1, ..., c_{d-1}),
/// i.e. the one whose first nonzero coordinate is 1. Throws NoRoot / ZeroInput.
Elem pm1_root(const Elem& a);

/// b in (W_n^x)^{p-1}. Since 1 + pW_n is a p-group this only depends on b mod p.
bool is_unit_pm1_power(const Elem& b);

/// Class of a in k^x / (k^x)^{p-1}, represented by a^{(q-1)/(p-1)} in F_p^x.
std::uint64_t pm1_class(const Elem& a);

/// The multiplicative section k -> W_n(k).
Elem teichmuller_lift(const Elem& a, const RingPtr& target);

/// Reduction W_n -> W_m for m <= n.
Elem reduce(const Elem& a, const RingPtr& target);

}  // namespace bkhopf
