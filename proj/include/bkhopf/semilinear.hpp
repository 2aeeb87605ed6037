#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "bkhopf/series.hpp"

// Solvers for f g = phi(g) h.
namespace bkhopf {

enum class FeasibilityReason { OK, ValuationOrder, ValuationCongruence, ResidueClass };

std::string_view to_string(FeasibilityReason reason);

struct Feasibility {
  bool ok = false;
  FeasibilityReason reason = FeasibilityReason::OK;
};

struct SolveOptions {
  // Absolute precision assumed for exact inputs.
  std::int64_t precision = kDefaultPrecision;
  // Leading coefficient of g; must be a (p-1)-th root of f_l / h_m.
  std::optional<Elem> leading;
};

struct Solution {
  Series g;
  // f g - phi(g) h vanishes on every degree below this.
  std::int64_t verified_prec = 0;
};

/// Checks, in order, v(f) >= v(h), v(f) = v(h) mod (p-1), and that the ratio
/// of leading coefficients is a (p-1)-th power. Inputs over k, nonzero.
Feasibility feasible_k(const Series& f, const Series& h);

/// g in k[[u]] with f g = phi(g) h. Throws Infeasible.
Solution solve_k(const Series& f, const Series& h, const SolveOptions& opts = {});

/// Same over k((u)); v(g) may be negative. Only the congruence and residue
/// conditions apply.
Solution solve_laurent(const Series& f, const Series& h, const SolveOptions& opts = {});

/// Unit g with g(0) = 1 and f g = phi(g) b, for a unit power series f over
/// W_n with f(0) = b.
Solution solve_w_unit(const Series& f, const Elem& b, const SolveOptions& opts = {});

}  // namespace bkhopf
