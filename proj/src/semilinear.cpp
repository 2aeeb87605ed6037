#include "bkhopf/semilinear.hpp"

#include <algorithm>
#include <vector>

#include "bkhopf/error.hpp"

namespace bkhopf {

std::string_view to_string(FeasibilityReason reason) {
  switch (reason) {
    case FeasibilityReason::OK: return "OK";
    case FeasibilityReason::ValuationOrder: return "ValuationOrder";
    case FeasibilityReason::ValuationCongruence: return "ValuationCongruence";
    case FeasibilityReason::ResidueClass: return "ResidueClass";
  }
  return {};
}

namespace {

std::int64_t exact_valuation(const Series& s, const char* name) {
  Valuation v = s.valuation();
  if (v.is_infinite()) throw Error(ErrorCode::ZeroInput, std::string(name) + " is zero");
  if (v.is_at_least())
    throw Error(ErrorCode::InsufficientPrecision, std::string(name) + " has valuation " + v.to_string());
  return v.value;
}

void require_field_series(const Series& s) {
  if (!s.ring()->is_field()) throw Error(ErrorCode::PreconditionViolated, "expected a series over the residue field");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

Feasibility check(const Series& f, const Series& h, bool require_order) {
  require_field_series(f);
  require_field_series(h);
  const std::int64_t vf = exact_valuation(f, "f");
  const std::int64_t vh = exact_valuation(h, "h");
  const auto pm1 = static_cast<std::int64_t>(f.ring()->p() - 1);
  if (require_order && vf < vh) return {false, FeasibilityReason::ValuationOrder};
  if ((vf - vh) % pm1 != 0) return {false, FeasibilityReason::ValuationCongruence};
  Elem ratio = f.leading_coefficient() * h.leading_coefficient().inverse();
  if (!is_pm1_power(ratio)) return {false, FeasibilityReason::ResidueClass};
  return {true, FeasibilityReason::OK};
}

// Coefficient i of s, or zero; callers stay below the precision.
const Coords& at(const Series::Terms& t, std::int64_t i, const Coords& zero) {
  auto it = t.find(i);
  return it == t.end() ? zero : it->second;
}

// Solves F' G' = sigma(G') H' for unit power series F', H' (the unit parts)
// given the leading coefficient, R coefficients deep.
//
// At degree D >= 1 the unknown G'_D enters only through F'_0 G'_D: the
// sigma(G') side involves G'_m at degree p m, and p m = D forces m < D.
std::vector<Coords> unit_recursion(const Ring& k, const Series::Terms& F, const Series::Terms& H, const Coords& g0,
                                   std::int64_t R) {
  const auto p = static_cast<std::int64_t>(k.p());
  const Coords zero = k.zero();
  const Coords f0inv = k.inverse(at(F, 0, zero));
  std::vector<Coords> g(std::max<std::int64_t>(R, 0), zero);
  if (R <= 0) return g;
  g[0] = g0;
  std::vector<Coords> sigma_g;  // sigma(G'_m), filled lazily
  sigma_g.push_back(k.frobenius(g0));
  for (std::int64_t D = 1; D < R; ++D) {
    Coords rhs = zero;
    for (std::int64_t m = 0; p * m <= D; ++m) {
      const Coords& hi = at(H, D - p * m, zero);
      if (k.is_zero(hi)) continue;
      while (static_cast<std::int64_t>(sigma_g.size()) <= m) sigma_g.push_back(k.frobenius(g[sigma_g.size()]));
      rhs = k.add(rhs, k.mul(sigma_g[m], hi));
    }
    for (auto it = std::next(F.begin()); it != F.end() && it->first <= D; ++it)
      rhs = k.sub(rhs, k.mul(it->second, g[D - it->first]));
    g[D] = k.mul(f0inv, rhs);
  }
  return g;
}

Solution assemble_and_verify(const Series& f, const Series& h, const RingPtr& ring, const std::vector<Coords>& gp,
                             std::int64_t vg, std::int64_t R) {
  Series::Terms t;
  for (std::int64_t i = 0; i < R; ++i) t.emplace_hint(t.end(), vg + i, gp[i]);
  Series g(ring, std::move(t), vg + R);
  Series residual = f * g - phi(g) * h;
  if (!residual.terms().empty())
    throw Error(ErrorCode::IdentityFails,
                "internal: residual nonzero at u^" + std::to_string(residual.terms().begin()->first));
  // The residual's precision is the window on which the identity is certified.
  return {g, *residual.precision()};
}

Solution solve_impl(const Series& f, const Series& h, const SolveOptions& opts) {
  const std::int64_t vf = exact_valuation(f, "f");
  const std::int64_t vh = exact_valuation(h, "h");
  const auto pm1 = static_cast<std::int64_t>(f.ring()->p() - 1);
  const std::int64_t vg = floor_div(vf - vh, pm1);
  const Ring& k = *f.ring();

  const Elem ratio = f.leading_coefficient() * h.leading_coefficient().inverse();
  Elem g0 = pm1_root(ratio);
  if (opts.leading) {
    if (!(opts.leading->ring() == f.ring() || *opts.leading->ring() == k) || opts.leading->is_zero() ||
        !(opts.leading->pow(k.p() - 1) == ratio))
      throw Error(ErrorCode::InvalidArgument, "override is not a (p-1)-th root of the leading ratio");
    g0 = Elem(f.ring(), opts.leading->coords());
  }

  // Relative precision of the unit parts; exact inputs count as known to the
  // working precision.
  const std::int64_t nf = f.exact() ? opts.precision : *f.precision();
  const std::int64_t nh = h.exact() ? opts.precision : *h.precision();
  const std::int64_t R = std::min(nf - vf, nh - vh);
  const Series F = f.shift(-vf), H = h.shift(-vh);
  auto gp = unit_recursion(k, F.terms(), H.terms(), g0.coords(), R);
  return assemble_and_verify(f, h, f.ring(), gp, vg, std::max<std::int64_t>(R, 0));
}

}  // namespace

Feasibility feasible_k(const Series& f, const Series& h) { return check(f, h, true); }

Solution solve_k(const Series& f, const Series& h, const SolveOptions& opts) {
  Feasibility fe = feasible_k(f, h);
  if (!fe.ok) throw Error(ErrorCode::Infeasible, std::string(to_string(fe.reason)));
  return solve_impl(f, h, opts);
}

Solution solve_laurent(const Series& f, const Series& h, const SolveOptions& opts) {
  Feasibility fe = check(f, h, false);
  if (!fe.ok) throw Error(ErrorCode::Infeasible, std::string(to_string(fe.reason)));
  return solve_impl(f, h, opts);
}

Solution solve_w_unit(const Series& f, const Elem& b, const SolveOptions& opts) {
  const Ring& W = *f.ring();
  if (!(*b.ring() == W)) throw Error(ErrorCode::InvalidArgument, "b lives in a different ring");
  if (!b.is_unit()) throw Error(ErrorCode::PreconditionViolated, "b is not a unit");
  auto lo = f.min_degree();
  if (!lo || *lo < 0) throw Error(ErrorCode::PreconditionViolated, "f must be a nonzero power series");
  if (!(f.coeff(0) == b)) throw Error(ErrorCode::PreconditionViolated, "f(0) differs from b");

  // g_0 = 1 and g_D = b^{-1} (b sigma(g_{D/p})[p | D] - sum_{i >= 1} f_i g_{D-i}).
  const std::int64_t R = f.exact() ? opts.precision : *f.precision();
  const auto p = static_cast<std::int64_t>(W.p());
  const Coords binv = W.inverse(b.coords());
  std::vector<Coords> g(std::max<std::int64_t>(R, 0), W.zero());
  if (R > 0) g[0] = W.one();
  for (std::int64_t D = 1; D < R; ++D) {
    Coords rhs = D % p == 0 ? W.mul(b.coords(), W.frobenius(g[D / p])) : W.zero();
    for (auto it = std::next(f.terms().begin()); it != f.terms().end() && it->first <= D; ++it)
      rhs = W.sub(rhs, W.mul(it->second, g[D - it->first]));
    g[D] = W.mul(binv, rhs);
  }
  return assemble_and_verify(f, Series::constant(b), f.ring(), g, 0, std::max<std::int64_t>(R, 0));
}

}  // namespace bkhopf
