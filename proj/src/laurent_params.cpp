#include "bkhopf/laurent_params.hpp"

#include <algorithm>

#include "bkhopf/error.hpp"
#include "bkhopf/numtheory.hpp"

namespace bkhopf {

std::vector<KcpLaurentParam> kcp_laurent_set(const EisensteinPoly& E, const RingPtr& k) {
  if (E.p() != k->p()) throw Error(ErrorCode::InvalidArgument, "E and k have different p");
  const int pm1 = static_cast<int>(k->p() - 1);
  std::vector<KcpLaurentParam> out;
  for (int j = 0; j <= E.e() / pm1; ++j)
    out.push_back({Series::monomial(Elem::from_int(k, 1), -j), E.e() - j * pm1, j});
  return out;
}

bool check_n1_laurent(const Series& f) {
  if (!f.ring()->is_field()) throw Error(ErrorCode::PreconditionViolated, "expected a series over k");
  const Valuation v = f.valuation();
  if (v.is_infinite()) throw Error(ErrorCode::ZeroInput, "f is zero");
  if (v.is_at_least()) throw Error(ErrorCode::InsufficientPrecision, "valuation of f is " + v.to_string());
  return v.value <= 0 && is_pm1_power(f.leading_coefficient());
}

TupleReport verify_general_tuple(const GeneralTuple& t, const EisensteinPoly& E) {
  const auto n = static_cast<std::size_t>(t.n);
  if (t.n < 1 || t.f.size() != n || t.A.size() != n)
    throw Error(ErrorCode::InvalidArgument, "tuple dimensions do not match n");
  for (const auto& row : t.A)
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "A must be n x n");
  const RingPtr& W = t.f[0].ring();
  if (W->length() != t.n) throw Error(ErrorCode::InvalidArgument, "entries must lie over W_n");

  // Some coordinate must survive mod p. For the rank-two encoding the
  // generator sits second: (p u^{-j1}, u^{-j2} + p[f]).
  bool unit_mod_p = false, undecided = false;
  for (const auto& fi : t.f) {
    if (!(*fi.ring() == *W)) throw Error(ErrorCode::InvalidArgument, "entries must lie over one ring");
    const Valuation v = reduce_to(fi, W->residue_field()).valuation();
    unit_mod_p = unit_mod_p || v.is_exact();
    undecided = undecided || v.is_at_least();
  }
  if (!unit_mod_p && undecided)
    throw Error(ErrorCode::InsufficientPrecision, "f mod p is zero to the known precision");
  if (!unit_mod_p) throw Error(ErrorCode::F1DivisibleByP, "every f_i lies in p W_n((u))");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!valuation_at_least(t.A[i][j].valuation(), 0))
        throw Error(ErrorCode::NegativeValuationEntry,
                    "s_" + std::to_string(i + 1) + std::to_string(j + 1) + " has negative valuation");

  const Elem c0inv = E.c0(W).inverse();
  const Series EW = E.series(W);
  std::vector<Series> phif;
  for (const auto& fj : t.f) phif.push_back(phi(fj).scale(c0inv));

  TupleReport report;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    Series rhs(W);
    for (std::size_t j = 0; j < n; ++j) rhs = rhs + t.A[i][j] * phif[j];
    const Agreement ag = compare(t.f[i], rhs);
    if (!ag.equal)
      throw Error(ErrorCode::IdentityFails,
                  "row " + std::to_string(i + 1) + " differs at u^" + std::to_string(*ag.hi - 1));
    report.lo = first ? ag.lo : std::min(report.lo, ag.lo);
    if (ag.hi) report.hi = report.hi ? std::min(*report.hi, *ag.hi) : *ag.hi;
    first = false;
  }
  for (const auto& x : phif) report.phi_images.push_back(EW * x);
  return report;
}

GeneralTuple tuple_from_kcp2(const KCp2Module& m) {
  const KCp2Params& P = m.params;
  const RingPtr& W = P.w2;
  const auto pm1 = static_cast<std::int64_t>(P.k->p() - 1);
  const Elem c0 = P.E.c0(W);
  GeneralTuple t;
  t.n = 2;
  t.f = {times_p(Series::monomial(Elem::from_int(P.k, 1), -P.j1), W), default_alpha_e2(P)};
  t.A = {{Series::monomial(c0, pm1 * P.j1), Series(W)},
         {teichmuller_lift(m.bprime, W) * Series::monomial(c0, pm1 * P.j2), Series::monomial(c0, pm1 * P.j2)}};
  return t;
}

CyclotomicReport verify_cyclotomic_iso(std::uint64_t p, int n, std::int64_t precision) {
  const EisensteinPoly E = cyclotomic_eisenstein(p, n);
  const RingPtr W = Ring::witt(p, 1, n);
  // t = (u + 1)^{p^{n-1}}
  Series t = Series::from_ints(W, {1});
  const Series up1 = Series::from_ints(W, {1, 1});
  for (std::uint64_t i = 0, pn1 = *nt::checked_pow(p, static_cast<unsigned>(n - 1)); i < pn1; ++i) t = t * up1;
  const Series inv = laurent_inverse(Series::from_ints(W, {1}) - t, precision);
  // phi_E(alpha(e1)) = E phi((1 - t)^{-1}) e1 and alpha(phi_1(e1)) = (1 - t)^{-1} e1.
  const Series lhs = E.series(W) * phi(inv);
  const Agreement ag = compare(lhs, inv);
  return {ag.equal, ag};
}

}  // namespace bkhopf
