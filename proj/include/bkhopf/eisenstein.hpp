#pragma once

#include <cstdint>
#include <vector>

#include "bkhopf/series.hpp"

namespace bkhopf {

/// A monic Eisenstein polynomial with integer coefficients a_0, ..., a_e.
///
/// The coefficients are kept as exact integers so that c_0 = a_0 / p and
/// F = (E - u^e) / p can be formed by integer division and then reduced into
/// any Galois ring of the right characteristic.
class EisensteinPoly {
 public:
  /// Throws NotEisenstein naming the failed criterion.
  static EisensteinPoly validate(std::uint64_t p, int n, std::vector<std::int64_t> coeffs);

  std::uint64_t p() const { return p_; }
  /// Witt length the polynomial was validated for.
  int n() const { return n_; }
  int e() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  Series series(const RingPtr& ring) const;
  /// E(0) / p.
  Elem c0(const RingPtr& ring) const;
  /// (E - u^e) / p.
  Series F(const RingPtr& ring) const;

  friend bool operator==(const EisensteinPoly&, const EisensteinPoly&) = default;

 private:
  EisensteinPoly(std::uint64_t p, int n, std::vector<std::int64_t> coeffs)
      : p_(p), n_(n), coeffs_(std::move(coeffs)) {}

  void check_ring(const RingPtr& ring) const;

  std::uint64_t p_;
  int n_;
  std::vector<std::int64_t> coeffs_;
};

inline EisensteinPoly eisenstein_validate(std::uint64_t p, int n, std::vector<std::int64_t> coeffs) {
  return EisensteinPoly::validate(p, n, std::move(coeffs));
}

/// ((u+1)^{p^n} - 1) / ((u+1)^{p^{n-1}} - 1), i.e. sum_{i<p} t^i with
/// t = (u+1)^{p^{n-1}}. c_0 = 1.
EisensteinPoly cyclotomic_eisenstein(std::uint64_t p, int n);

}  // namespace bkhopf
