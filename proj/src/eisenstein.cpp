#include "bkhopf/eisenstein.hpp"

#include <limits>

#include "bkhopf/error.hpp"
#include "bkhopf/numtheory.hpp"

namespace bkhopf {

namespace {

constexpr std::int64_t kMaxCyclotomicDegree = 4096;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::InvalidArgument, "cyclotomic coefficients exceed the 64-bit range");
  return r;
}

std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t prod;
      if (__builtin_mul_overflow(a[i], b[j], &prod))
        throw Error(ErrorCode::InvalidArgument, "cyclotomic coefficients exceed the 64-bit range");
      out[i + j] = checked_add(out[i + j], prod);
    }
  return out;
}

}  // namespace

EisensteinPoly EisensteinPoly::validate(std::uint64_t p, int n, std::vector<std::int64_t> coeffs) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p is not prime");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Witt length must be >= 1");
  if (coeffs.size() < 2) throw Error(ErrorCode::NotEisenstein, "degree must be at least 1");
  if (coeffs.back() != 1) throw Error(ErrorCode::NotEisenstein, "not monic");
  const auto sp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
    if (coeffs[i] % sp != 0)
      throw Error(ErrorCode::NotEisenstein, "p does not divide a_" + std::to_string(i));
  if ((coeffs[0] / sp) % sp == 0) throw Error(ErrorCode::NotEisenstein, "p^2 divides a_0");
  return EisensteinPoly(p, n, std::move(coeffs));
}

void EisensteinPoly::check_ring(const RingPtr& ring) const {
  if (ring->p() != p_) throw Error(ErrorCode::InvalidArgument, "ring characteristic does not match E");
}

Series EisensteinPoly::series(const RingPtr& ring) const {
  check_ring(ring);
  Series::Terms t;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) t[static_cast<std::int64_t>(i)] = ring->from_int(coeffs_[i]);
  return Series(ring, std::move(t), std::nullopt);
}

Elem EisensteinPoly::c0(const RingPtr& ring) const {
  check_ring(ring);
  return Elem::from_int(ring, coeffs_[0] / static_cast<std::int64_t>(p_));
}

Series EisensteinPoly::F(const RingPtr& ring) const {
  check_ring(ring);
  Series::Terms t;
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i)
    t[static_cast<std::int64_t>(i)] = ring->from_int(coeffs_[i] / static_cast<std::int64_t>(p_));
  return Series(ring, std::move(t), std::nullopt);
}

EisensteinPoly cyclotomic_eisenstein(std::uint64_t p, int n) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p is not prime");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  auto pn1 = nt::checked_pow(p, static_cast<unsigned>(n - 1));
  if (!pn1 || *pn1 * (p - 1) > static_cast<std::uint64_t>(kMaxCyclotomicDegree))
    throw Error(ErrorCode::InvalidArgument, "cyclotomic degree exceeds the supported scale");

  // t = (u + 1)^{p^{n-1}} by binomial coefficients.
  std::vector<std::int64_t> t{1};
  for (std::uint64_t i = 0; i < *pn1; ++i) t = poly_mul(t, {1, 1});
  std::vector<std::int64_t> sum{1}, power{1};
  for (std::uint64_t i = 1; i < p; ++i) {
    power = poly_mul(power, t);
    sum.resize(power.size(), 0);
    for (std::size_t k = 0; k < power.size(); ++k) sum[k] = checked_add(sum[k], power[k]);
  }
  return EisensteinPoly::validate(p, n, std::move(sum));
}

}  // namespace bkhopf
