#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bkhopf/eisenstein.hpp"

// Rank-two Breuil-Kisin modules M = S_2 e1 + S_2 e2 with p e1 = 0 and
// p e2 = u^{j1 - j2} e1, and the Hopf orders in KC_{p^2} they produce.
namespace bkhopf {

struct KCp2Params {
  EisensteinPoly E;
  // The residue field k.
  RingPtr k;
  int j1 = 0;
  int j2 = 0;
  // Over k.
  Series f;
  std::int64_t precision = kDefaultPrecision;
  // W_2(k), the coefficient ring of M.
  RingPtr w2;
};

/// Validates 0 <= j2 < j1 <= e/(p-1), E over p, f over k.
KCp2Params make_kcp2_params(const EisensteinPoly& E, const RingPtr& k, int j1, int j2, Series f,
                            std::int64_t precision = kDefaultPrecision);

/// a e1 + [b] e2 with a, b in k((u)), [b] the coefficientwise Teichmüller lift.
///
/// Every element of M[1/u] has exactly one such representation: a multiple
/// p x e2 is rewritten as (x mod p) u^{j1 - j2} e1.
struct ModElem {
  Series a;
  Series b;

  /// Membership in M itself rather than M[1/u].
  bool in_lattice() const;
};

/// Normal form of a e1 + B e2 for a over k and B over W_2.
ModElem normalize(const KCp2Params& params, const Series& a, const Series& B);
ModElem add(const KCp2Params& params, const ModElem& x, const ModElem& y);
/// s x for s over W_2.
ModElem scale(const KCp2Params& params, const Series& s, const ModElem& x);
/// True when both components agree on every degree both know.
bool equal(const ModElem& x, const ModElem& y);

/// D = u^{e+j1} phi(f) - u^{e+j1-(p-1)j2} f over k.
Series kcp2_difference(const KCp2Params& params);

struct Conditions {
  // v(D) >= e - (p-1)(j1 + j2)
  bool cond1 = false;
  // v(u^{j1 - p j2} F + D) >= 0, F reduced mod p
  bool cond2 = false;
};

/// Throws InsufficientPrecision when a valuation is undecidable.
Conditions check_conditions(const KCp2Params& params);

struct KCp2Module {
  KCp2Params params;
  ModElem phi_e1;
  ModElem phi_e2;
  // Over k; E e2 = c0 b' u^{(p-1)j2} phi(e1) + c0 u^{(p-1)j2} phi(e2).
  Series bprime;
};

/// Throws ConditionsFailed.
KCp2Module build_module(const KCp2Params& params);

/// The two identities E e_i = sum_j s_ij phi(e_j) with s_ij in S_2, and the
/// images phi(e_i) lying in M.
bool verify_bk(const KCp2Module& module);

/// The generic-fiber embedding alpha: e1 -> p u^{-j1}, e2 -> u^{-j2} + p[f],
/// into W_2((u)).
Series alpha(const KCp2Params& params, const ModElem& x, const std::optional<Series>& alpha_e2 = std::nullopt);
Series default_alpha_e2(const KCp2Params& params);

/// Whether x in W_2((u)) lies in alpha(M).
bool contains(const KCp2Params& params, const Series& x);

struct RemarkShortcut {
  bool applicable = false;
  bool value = false;
};

/// When e - (p-1)(j1 + j2) >= 0, cond2 holds exactly when j1 >= p j2.
RemarkShortcut remark_shortcut(int e, std::uint64_t p, int j1, int j2);

struct EnumerationOptions {
  // Monomials a u^{-m}, 0 <= m <= family_max, a in k^x; 0 is always included.
  int family_max = 4;
  // Adds a u^{-m} + a' u^{-m'} for m < m'.
  bool two_term = false;
  // Upper bound on family size per (j1, j2); InvalidArgument when exceeded.
  std::size_t budget = 100000;
  std::int64_t precision = kDefaultPrecision;
};

struct KCp2Candidate {
  KCp2Params params;
  Conditions conditions;
  // j1 >= p j2, reported alongside the valuation conditions.
  bool pj_condition = false;
};

/// Every family member passing both conditions for every (j1, j2), ordered by
/// (j1, j2, family index). Parameter sets giving isomorphic orders are not merged.
std::vector<KCp2Candidate> enumerate_kcp2(const EisensteinPoly& E, const RingPtr& k,
                                          const EnumerationOptions& opts = {});

/// The test family in order: 0, then monomials by (m, coefficient), then two-term members.
std::vector<Series> kcp2_family(const RingPtr& k, const EnumerationOptions& opts);

/// alpha o phi = phi_0 o alpha on e1 and e2, with phi_0(x) = c0^{-1} E phi(x).
bool generic_fiber_witness(const KCp2Module& module, const std::optional<Series>& alpha_e2 = std::nullopt);

}  // namespace bkhopf
