#include "bkhopf/series.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "bkhopf/error.hpp"
#include "bkhopf/kernels/conv.hpp"
#include "bkhopf/numtheory.hpp"

namespace bkhopf {

std::int64_t default_precision(std::uint64_t p, std::int64_t e) {
  return std::max<std::int64_t>(kDefaultPrecision, 4 * static_cast<std::int64_t>(p) * e);
}

std::string Valuation::to_string() const {
  switch (kind) {
    case Kind::Exact: return "Exact(" + std::to_string(value) + ")";
    case Kind::AtLeast: return "AtLeast(" + std::to_string(value) + ")";
    case Kind::Infinite: return "Infinite";
  }
  return {};
}

bool valuation_at_least(const Valuation& v, std::int64_t threshold) {
  switch (v.kind) {
    case Valuation::Kind::Infinite: return true;
    case Valuation::Kind::Exact: return v.value >= threshold;
    case Valuation::Kind::AtLeast:
      if (v.value >= threshold) return true;
      throw Error(ErrorCode::InsufficientPrecision, "valuation known only as " + v.to_string() +
                                                        ", cannot decide >= " + std::to_string(threshold));
  }
  return false;
}

namespace {

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a != b && !(*a == *b)) throw Error(ErrorCode::InvalidArgument, "series over different rings");
}

std::optional<std::int64_t> min_prec(const std::optional<std::int64_t>& a, const std::optional<std::int64_t>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

Series::Series(RingPtr ring) : ring_(std::move(ring)) {}

Series::Series(RingPtr ring, Terms terms, std::optional<std::int64_t> prec)
    : ring_(std::move(ring)), terms_(std::move(terms)), prec_(prec) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (ring_->is_zero(it->second) || (prec_ && it->first >= *prec_))
      it = terms_.erase(it);
    else
      ++it;
  }
}

Series Series::zero(RingPtr ring, std::optional<std::int64_t> prec) { return Series(std::move(ring), {}, prec); }

Series Series::monomial(const Elem& c, std::int64_t degree) {
  return Series(c.ring(), Terms{{degree, c.coords()}}, std::nullopt);
}

Series Series::from_ints(const RingPtr& ring, const std::vector<std::int64_t>& coeffs) {
  Terms t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) t[static_cast<std::int64_t>(i)] = ring->from_int(coeffs[i]);
  return Series(ring, std::move(t), std::nullopt);
}

Elem Series::coeff(std::int64_t degree) const {
  if (prec_ && degree >= *prec_)
    throw Error(ErrorCode::InsufficientPrecision,
                "coefficient of u^" + std::to_string(degree) + " unknown beyond O(u^" + std::to_string(*prec_) + ")");
  auto it = terms_.find(degree);
  return {ring_, it == terms_.end() ? ring_->zero() : it->second};
}

Valuation Series::valuation() const {
  if (!terms_.empty()) return Valuation::exact(terms_.begin()->first);
  if (exact()) return Valuation::infinite();
  return Valuation::at_least(*prec_);
}

Elem Series::leading_coefficient() const {
  if (terms_.empty()) {
    if (exact()) throw Error(ErrorCode::ZeroInput, "leading coefficient of zero");
    throw Error(ErrorCode::InsufficientPrecision, "no nonzero coefficient below O(u^" + std::to_string(*prec_) + ")");
  }
  return {ring_, terms_.begin()->second};
}

std::optional<std::int64_t> Series::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<std::int64_t> Series::max_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

Series Series::truncate(std::int64_t n) const { return Series(ring_, terms_, prec_ ? std::min(*prec_, n) : n); }

Series Series::shift(std::int64_t k) const {
  Terms t;
  for (const auto& [deg, c] : terms_) t.emplace_hint(t.end(), deg + k, c);
  return Series(ring_, std::move(t), prec_ ? std::optional<std::int64_t>(*prec_ + k) : std::nullopt);
}

Series Series::scale(const Elem& c) const {
  require_same_ring(ring_, c.ring());
  Terms t;
  for (const auto& [deg, x] : terms_) t.emplace_hint(t.end(), deg, ring_->mul(x, c.coords()));
  return Series(ring_, std::move(t), prec_);
}

Series Series::unit_part() const {
  Valuation v = valuation();
  if (v.is_infinite()) throw Error(ErrorCode::ZeroInput, "unit part of zero");
  if (v.is_at_least()) throw Error(ErrorCode::InsufficientPrecision, "valuation unknown: " + v.to_string());
  return shift(-v.value);
}

Series operator+(const Series& a, const Series& b) {
  require_same_ring(a.ring_, b.ring_);
  Series::Terms t = a.terms_;
  for (const auto& [deg, c] : b.terms_) {
    auto [it, inserted] = t.emplace(deg, c);
    if (!inserted) it->second = a.ring_->add(it->second, c);
  }
  return Series(a.ring_, std::move(t), min_prec(a.prec_, b.prec_));
}

Series operator-(const Series& a) {
  Series::Terms t;
  for (const auto& [deg, c] : a.terms_) t.emplace_hint(t.end(), deg, a.ring_->neg(c));
  return Series(a.ring_, std::move(t), a.prec_);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

namespace {

// Dense multiplication through the convolution kernel: one coordinate plane
// per power-basis index, products accumulated unreduced and folded by h at
// the end. Valid when (M-1)^2 * d * min(wa, wb) < 2^64 and M <= 2^32.
Series::Terms mul_dense(const Ring& R, const Series::Terms& a, std::int64_t lo_a, std::int64_t wa,
                        const Series::Terms& b, std::int64_t lo_b, std::int64_t wb, std::int64_t len) {
  const int d = R.degree();
  const std::uint64_t M = R.characteristic();
  std::vector<std::vector<std::uint64_t>> A(d, std::vector<std::uint64_t>(wa, 0));
  std::vector<std::vector<std::uint64_t>> B(d, std::vector<std::uint64_t>(wb, 0));
  for (const auto& [deg, c] : a) {
    if (deg - lo_a >= wa) break;
    for (int s = 0; s < d; ++s) A[s][deg - lo_a] = c[s];
  }
  for (const auto& [deg, c] : b) {
    if (deg - lo_b >= wb) break;
    for (int s = 0; s < d; ++s) B[s][deg - lo_b] = c[s];
  }
  std::vector<std::vector<std::uint64_t>> acc(2 * d - 1, std::vector<std::uint64_t>(len, 0));
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) kernels::conv_accumulate(A[s], B[t], acc[s + t]);

  const auto& h = R.lift_modulus();
  Series::Terms out;
  std::array<std::uint64_t, 2 * kMaxDegree - 1> prod{};
  for (std::int64_t k = 0; k < len; ++k) {
    bool nonzero = false;
    for (int t = 0; t < 2 * d - 1; ++t) {
      prod[t] = acc[t][k] % M;
      nonzero |= prod[t] != 0;
    }
    if (!nonzero) continue;
    for (int t = 2 * d - 2; t >= d; --t) {
      std::uint64_t c = prod[t];
      if (c == 0) continue;
      for (int i = 0; i < d; ++i) prod[t - d + i] = nt::submod(prod[t - d + i], nt::mulmod(c, h[i], M), M);
    }
    Coords c{};
    for (int i = 0; i < d; ++i) c[i] = prod[i];
    out.emplace_hint(out.end(), lo_a + lo_b + k, c);
  }
  return out;
}

Series::Terms mul_sparse(const Ring& R, const Series::Terms& a, const Series::Terms& b, std::int64_t hi) {
  Series::Terms out;
  for (const auto& [i, ca] : a) {
    for (const auto& [j, cb] : b) {
      if (i + j >= hi) break;
      Coords prod = R.mul(ca, cb);
      auto [it, inserted] = out.emplace(i + j, prod);
      if (!inserted) it->second = R.add(it->second, prod);
    }
  }
  return out;
}

}  // namespace

Series operator*(const Series& a, const Series& b) {
  require_same_ring(a.ring_, b.ring_);
  if (a.is_exact_zero() || b.is_exact_zero()) return Series(a.ring_);

  // Lowest possibly-nonzero degree; for an inexact zero that is its precision.
  auto low = [](const Series& s) { return s.terms_.empty() ? *s.prec_ : s.terms_.begin()->first; };
  std::optional<std::int64_t> prec;
  if (!a.exact()) prec = *a.prec_ + low(b);
  if (!b.exact()) prec = min_prec(prec, *b.prec_ + low(a));
  if (a.terms_.empty() || b.terms_.empty()) return Series(a.ring_, {}, prec);

  const std::int64_t lo_a = a.terms_.begin()->first, hi_a = a.terms_.rbegin()->first;
  const std::int64_t lo_b = b.terms_.begin()->first, hi_b = b.terms_.rbegin()->first;
  const std::int64_t lo = lo_a + lo_b;
  std::int64_t hi = hi_a + hi_b + 1;
  if (prec) hi = std::min(hi, *prec);
  if (hi <= lo) return Series(a.ring_, {}, prec);
  const std::int64_t len = hi - lo;
  const std::int64_t wa = std::min(hi_a - lo_a + 1, len);
  const std::int64_t wb = std::min(hi_b - lo_b + 1, len);

  const Ring& R = *a.ring_;
  const std::uint64_t M = R.characteristic();
  using u128 = unsigned __int128;
  const u128 bound = static_cast<u128>(M - 1) * (M - 1) * static_cast<u128>(R.degree()) *
                     static_cast<u128>(std::min(wa, wb));
  const bool dense_ok = M <= (1ULL << 32) && bound < (static_cast<u128>(1) << 64);
  const u128 dense_cost = static_cast<u128>(wa) * static_cast<u128>(wb);
  const u128 sparse_cost = static_cast<u128>(a.terms_.size()) * b.terms_.size();
  Series::Terms t = (dense_ok && dense_cost <= 4 * sparse_cost + 64)
                        ? mul_dense(R, a.terms_, lo_a, wa, b.terms_, lo_b, wb, len)
                        : mul_sparse(R, a.terms_, b.terms_, hi);
  return Series(a.ring_, std::move(t), prec);
}

bool operator==(const Series& a, const Series& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.prec_ == b.prec_ && a.terms_ == b.terms_;
}

Series phi(const Series& f) {
  const Ring& R = *f.ring();
  const auto p = static_cast<std::int64_t>(R.p());
  Series::Terms t;
  for (const auto& [deg, c] : f.terms()) t.emplace_hint(t.end(), p * deg, R.frobenius(c));
  auto prec = f.precision();
  return Series(f.ring(), std::move(t), prec ? std::optional<std::int64_t>(p * *prec) : std::nullopt);
}

Series invert(const Series& f, std::int64_t cap) {
  const Valuation v = f.valuation();
  if (v.is_infinite()) throw Error(ErrorCode::NotAUnit, "zero is not invertible");
  if (v.is_at_least()) throw Error(ErrorCode::InsufficientPrecision, "cannot invert: valuation " + v.to_string());
  const Ring& R = *f.ring();
  const Coords& lead = f.terms().begin()->second;
  if (!R.is_unit(lead))
    throw Error(ErrorCode::NotAUnit, "leading coefficient " + R.format(lead) + " is not a unit");
  const Coords inv0 = R.inverse(lead);
  if (f.exact() && f.terms().size() == 1) return Series(f.ring(), Series::Terms{{-v.value, inv0}}, std::nullopt);

  const std::int64_t P = f.exact() ? cap : *f.precision() - 2 * v.value;
  const std::int64_t r = P + v.value;
  if (r <= 0) return Series::zero(f.ring(), P);
  // Unit part coefficients U_i (i >= 1) that can contribute below degree r.
  std::vector<std::pair<std::int64_t, Coords>> tail;
  for (auto it = std::next(f.terms().begin()); it != f.terms().end(); ++it) {
    std::int64_t i = it->first - v.value;
    if (i >= r) break;
    tail.emplace_back(i, it->second);
  }
  std::vector<Coords> inv(r, R.zero());
  inv[0] = inv0;
  for (std::int64_t D = 1; D < r; ++D) {
    Coords s = R.zero();
    for (const auto& [i, u] : tail) {
      if (i > D) break;
      s = R.add(s, R.mul(u, inv[D - i]));
    }
    inv[D] = R.neg(R.mul(inv0, s));
  }
  Series::Terms t;
  for (std::int64_t D = 0; D < r; ++D) t.emplace_hint(t.end(), D - v.value, inv[D]);
  return Series(f.ring(), std::move(t), P);
}

Series laurent_inverse(const Series& f, std::int64_t cap) {
  if (f.is_exact_zero()) throw Error(ErrorCode::NotAUnit, "zero is not invertible");
  const Ring& R = *f.ring();
  std::optional<std::int64_t> v;
  for (const auto& [deg, c] : f.terms())
    if (R.is_unit(c)) {
      v = deg;
      break;
    }
  if (!v) {
    if (f.exact()) throw Error(ErrorCode::NotAUnit, "every coefficient is divisible by p");
    throw Error(ErrorCode::InsufficientPrecision, "no unit coefficient below the precision");
  }
  const std::int64_t lo = *f.min_degree();
  if (lo == *v) return invert(f, cap);

  // f = u^v (U + P) with U a unit power series and P a polynomial in u^{-1}
  // with coefficients in pW_n, so P U^{-1} is nilpotent of order n.
  Series::Terms ut, pt;
  for (const auto& [deg, c] : f.terms()) (deg >= *v ? ut : pt).emplace(deg - *v, c);
  auto uprec = f.precision();
  if (uprec) *uprec -= *v;
  Series U(f.ring(), std::move(ut), uprec);
  Series P(f.ring(), std::move(pt), std::nullopt);
  const std::int64_t spread = *v - lo;
  Series Uinv = invert(U, cap + *v + (R.length() - 1) * spread);
  Series X = -(P * Uinv);
  Series sum = Series::constant(Elem::from_int(f.ring(), 1));
  Series term = sum;
  for (int k = 1; k < R.length(); ++k) {
    term = term * X;
    sum = sum + term;
  }
  return (Uinv * sum).shift(-*v);
}

namespace {

Series map_coeffs(const Series& f, const RingPtr& target, const std::function<Coords(const Coords&)>& fn) {
  Series::Terms t;
  for (const auto& [deg, c] : f.terms()) t.emplace_hint(t.end(), deg, fn(c));
  return Series(target, std::move(t), f.precision());
}

}  // namespace

Series reduce_mod_p(const Series& f) {
  const int n = f.ring()->length();
  if (n < 2) throw Error(ErrorCode::PreconditionViolated, "reduce_mod_p needs Witt length >= 2");
  return reduce_to(f, f.ring()->truncation(n - 1));
}

Series reduce_to(const Series& f, const RingPtr& target) {
  const Ring& src = *f.ring();
  const int m = target->length();
  if (m > src.length() || !(*src.truncation(m) == *target))
    throw Error(ErrorCode::InvalidArgument, "target is not a truncation of the coefficient ring");
  return map_coeffs(f, target, [&](const Coords& c) { return src.reduce(c, m); });
}

Series teichmuller_lift(const Series& f, const RingPtr& target) {
  return map_coeffs(f, target, [&](const Coords& c) { return teichmuller_lift(Elem(f.ring(), c), target).coords(); });
}

Series times_p(const Series& f, const RingPtr& target) {
  const Ring& src = *f.ring();
  if (src.length() < target->length() - 1 || !(*src.residue_field() == *target->residue_field()))
    throw Error(ErrorCode::InvalidArgument, "times_p: incompatible coefficient rings");
  return map_coeffs(f, target, [&](const Coords& c) { return target->times_p(c); });
}

Series divide_by_p(const Series& f) {
  const Ring& src = *f.ring();
  return map_coeffs(f, src.truncation(src.length() - 1), [&](const Coords& c) { return src.divide_by_p(c); });
}

Agreement compare(const Series& a, const Series& b) {
  require_same_ring(a.ring(), b.ring());
  Agreement out;
  auto la = a.min_degree(), lb = b.min_degree();
  out.lo = la && lb ? std::min(*la, *lb) : la ? *la : lb ? *lb : 0;
  out.hi = min_prec(a.precision(), b.precision());
  Series diff = a - b;
  if (!diff.terms().empty()) {
    out.equal = false;
    out.hi = diff.terms().begin()->first + 1;
    return out;
  }
  out.equal = true;
  if (out.hi && *out.hi < out.lo) out.lo = *out.hi;
  return out;
}

}  // namespace bkhopf
