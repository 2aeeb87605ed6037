#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bkhopf/ring.hpp"

namespace bkhopf {

inline constexpr std::int64_t kDefaultPrecision = 64;

/// Working precision max(64, 4 p e); every valuation threshold used by the
/// classification code is bounded by e + j1, so this dominates them.
std::int64_t default_precision(std::uint64_t p, std::int64_t e);

/// u-adic valuation of a possibly truncated series.
struct Valuation {
  enum class Kind { Exact, AtLeast, Infinite };

  Kind kind = Kind::Infinite;
  std::int64_t value = 0;

  static Valuation exact(std::int64_t v) { return {Kind::Exact, v}; }
  static Valuation at_least(std::int64_t n) { return {Kind::AtLeast, n}; }
  static Valuation infinite() { return {Kind::Infinite, 0}; }

  bool is_exact() const { return kind == Kind::Exact; }
  bool is_at_least() const { return kind == Kind::AtLeast; }
  bool is_infinite() const { return kind == Kind::Infinite; }

  std::string to_string() const;
  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Decides v >= threshold: Exact(v) compares, Infinite passes, AtLeast(N)
/// passes when N >= threshold and otherwise throws InsufficientPrecision.
bool valuation_at_least(const Valuation& v, std::int64_t threshold);

/// A truncated Laurent series over a Galois ring, stored sparsely by degree.
///
/// A series is either exact (finitely supported and known completely) or
/// known modulo u^N, where N is its absolute precision: coefficients in
/// degrees >= N are unknown. Power series are the special case with no
/// negative-degree terms. Values are immutable.
class Series {
 public:
  using Terms = std::map<std::int64_t, Coords>;

  /// The exact zero.
  explicit Series(RingPtr ring);
  /// Zero coefficients and degrees >= prec are dropped. nullopt means exact.
  Series(RingPtr ring, Terms terms, std::optional<std::int64_t> prec);

  static Series zero(RingPtr ring, std::optional<std::int64_t> prec = std::nullopt);
  static Series monomial(const Elem& c, std::int64_t degree);
  static Series constant(const Elem& c) { return monomial(c, 0); }
  /// Exact polynomial with integer coefficients, ascending from degree 0.
  static Series from_ints(const RingPtr& ring, const std::vector<std::int64_t>& coeffs);

  const RingPtr& ring() const { return ring_; }
  bool exact() const { return !prec_.has_value(); }
  /// Absolute precision; nullopt for exact series.
  const std::optional<std::int64_t>& precision() const { return prec_; }
  const Terms& terms() const { return terms_; }

  bool is_exact_zero() const { return exact() && terms_.empty(); }
  /// Coefficient at degree; throws InsufficientPrecision beyond the precision.
  Elem coeff(std::int64_t degree) const;
  Valuation valuation() const;
  /// Coefficient of the lowest-degree nonzero term.
  Elem leading_coefficient() const;
  std::optional<std::int64_t> min_degree() const;
  std::optional<std::int64_t> max_degree() const;

  Series truncate(std::int64_t n) const;
  /// Multiplication by u^k.
  Series shift(std::int64_t k) const;
  Series scale(const Elem& c) const;
  /// f u^{-v(f)}; requires an exact valuation.
  Series unit_part() const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator-(const Series& a);
  friend Series operator*(const Series& a, const Series& b);
  /// Structural equality: ring, precision and stored terms.
  friend bool operator==(const Series& a, const Series& b);

 private:
  RingPtr ring_;
  Terms terms_;
  std::optional<std::int64_t> prec_;
};

/// Semilinear Frobenius: c u^i -> Frob(c) u^{p i}. Precision scales by p.
Series phi(const Series& f);

/// Inverse when the lowest-degree coefficient is a unit. For exact input the
/// result is computed to absolute precision cap; otherwise its precision is
/// prec(f) - 2 v(f). Throws NotAUnit.
Series invert(const Series& f, std::int64_t cap = kDefaultPrecision);

/// Inverse in W_n((u)): any f whose reduction mod p is nonzero is a unit there
/// (coefficients divisible by p below the first unit coefficient are nilpotent).
Series laurent_inverse(const Series& f, std::int64_t cap = kDefaultPrecision);

/// Coefficientwise W_n -> W_{n-1}; requires n >= 2.
Series reduce_mod_p(const Series& f);
/// Coefficientwise reduction into a truncation of the coefficient ring.
Series reduce_to(const Series& f, const RingPtr& target);
/// Coefficientwise Teichmüller lift k -> W_n.
Series teichmuller_lift(const Series& f, const RingPtr& target);
/// p * f computed in target = W_n, for f over W_m with m >= n - 1 (p f only
/// depends on f mod p^{n-1}).
Series times_p(const Series& f, const RingPtr& target);
/// f / p over W_{n-1}; every coefficient must be divisible by p.
Series divide_by_p(const Series& f);

/// Result of comparing two series on the degrees both know.
struct Agreement {
  bool equal = false;
  std::int64_t lo = 0;
  /// Exclusive upper end of the compared window; nullopt when both are exact.
  /// When !equal this is the first differing degree + 1.
  std::optional<std::int64_t> hi;
};

Agreement compare(const Series& a, const Series& b);

}  // namespace bkhopf
