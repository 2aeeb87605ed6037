#include "bkhopf/cyclic.hpp"

#include "bkhopf/error.hpp"

namespace bkhopf {

namespace {

std::int64_t known_valuation(const Series& s, const char* name) {
  Valuation v = s.valuation();
  if (v.is_infinite()) throw Error(ErrorCode::ZeroInput, std::string(name) + " is zero");
  if (v.is_at_least())
    throw Error(ErrorCode::InsufficientPrecision, std::string(name) + " has valuation " + v.to_string());
  return v.value;
}

void require_matching_p(const EisensteinPoly& E, const Ring& R) {
  if (E.p() != R.p()) throw Error(ErrorCode::InvalidArgument, "E and the coefficient ring have different p");
}

}  // namespace

NormalizedN1 normalize_cyclic_n1(const Series& f, const EisensteinPoly& E, const SolveOptions& opts) {
  if (!f.ring()->is_field()) throw Error(ErrorCode::PreconditionViolated, "expected a series over k");
  require_matching_p(E, *f.ring());
  const std::int64_t r = known_valuation(f, "f");
  if (r < 0 || r > E.e())
    throw Error(ErrorCode::NotAFactor, "v(f) = " + std::to_string(r) + " is outside [0, e = " + std::to_string(E.e()) + "]");
  const Series h = f.shift(-r);
  const Elem b = h.coeff(0);
  Solution w = solve_k(h, Series::constant(b), opts);
  return {{b, static_cast<int>(r)}, std::move(w)};
}

IsoResult iso_n1(const CyclicN1Form& m, const CyclicN1Form& m2) {
  if (m.r != m2.r) return {};
  const Elem ratio = m.b * m2.b.inverse();
  if (!is_pm1_power(ratio)) return {};
  return {true, pm1_root(ratio)};
}

bool is_kcp_order(const CyclicN1Form& m, const EisensteinPoly& E) {
  const auto& k = m.b.ring();
  require_matching_p(E, *k);
  const int pm1 = static_cast<int>(k->p() - 1);
  return is_pm1_power(m.b * E.c0(k)) && (E.e() - m.r) % pm1 == 0;
}

std::string_view to_string(Containment c) {
  switch (c) {
    case Containment::LeftInRight: return "LEFT_IN_RIGHT";
    case Containment::RightInLeft: return "RIGHT_IN_LEFT";
    case Containment::Equal: return "EQUAL";
    case Containment::None: return "NONE";
  }
  return {};
}

GenericRelation generic_relation_n1(const CyclicN1Form& m, const CyclicN1Form& m2) {
  const int pm1 = static_cast<int>(m.b.ring()->p() - 1);
  if ((m.r - m2.r) % pm1 != 0) return {false, Containment::None};
  if (m.r == m2.r) return {true, Containment::Equal};
  return {true, m.r > m2.r ? Containment::LeftInRight : Containment::RightInLeft};
}

std::vector<KcpOrder> enumerate_kcp_orders(const EisensteinPoly& E, const RingPtr& k) {
  if (!k->is_field()) throw Error(ErrorCode::InvalidArgument, "expected the residue field");
  require_matching_p(E, *k);
  const int pm1 = static_cast<int>(k->p() - 1);
  const Elem b = E.c0(k).inverse();
  std::vector<KcpOrder> out;
  for (int j = 0; j <= E.e() / pm1; ++j)
    out.push_back({{b, E.e() - j * pm1}, {j, "R[(sigma-1)/pi^" + std::to_string(j) + "]"}});
  return out;
}

BreuilLabel breuil_functor_n1(const CyclicN1Form& m, const EisensteinPoly& E) {
  const auto& k = m.b.ring();
  require_matching_p(E, *k);
  const Elem c0 = E.c0(k);
  BreuilLabel label{E.e() - m.r, (m.b * c0).pow(k->p()), {}, std::nullopt};
  // Names are attached per isomorphism class of the form.
  if (label.r_tilde == 0 && is_pm1_power(label.a)) {
    label.name = "RC_p";
  } else if (m.r == 0 && is_pm1_power(m.b)) {
    label.name = "(RC_p)*";
    label.alternate_a = (m.b * c0.inverse()).pow(k->p());
  }
  return label;
}

std::string_view to_string(Shape s) { return s == Shape::Unit ? "UnitType" : "EUnitType"; }

ClassifiedN classify_cyclic_n(const Series& f, const EisensteinPoly& E, const SolveOptions& opts) {
  const RingPtr& W = f.ring();
  if (W->length() < 2) throw Error(ErrorCode::PreconditionViolated, "classify_cyclic_n needs Witt length >= 2");
  require_matching_p(E, *W);
  if (auto lo = f.min_degree(); lo && *lo < 0) throw Error(ErrorCode::NotAFactor, "f is not a power series");
  const Valuation vbar = reduce_to(f, W->residue_field()).valuation();
  if (vbar.is_infinite()) throw Error(ErrorCode::NotAFactor, "f is divisible by p");
  if (vbar.is_at_least())
    throw Error(ErrorCode::InsufficientPrecision, "v(f mod p) is only known as " + vbar.to_string());

  if (vbar.value == 0) {
    const Elem b = f.coeff(0);
    Solution w = solve_w_unit(f, b, opts);
    return {{Shape::Unit, b}, std::move(w)};
  }
  if (vbar.value == E.e()) {
    const Series q = f * laurent_inverse(E.series(W), opts.precision);
    if (auto lo = q.min_degree(); lo && *lo < 0)
      throw Error(ErrorCode::NotAFactor, "f / E is not a power series");
    const Elem b = q.coeff(0);
    if (!b.is_unit()) throw Error(ErrorCode::NotAFactor, "f / E is not a unit");
    Solution w = solve_w_unit(q, b, opts);
    return {{Shape::EUnit, b}, std::move(w)};
  }
  throw Error(ErrorCode::NotAFactor,
              "v(f mod p) = " + std::to_string(vbar.value) + " is neither 0 nor e = " + std::to_string(E.e()));
}

bool iso_n(const CyclicNForm& m, const CyclicNForm& m2) {
  if (m.shape != m2.shape) return false;
  return is_unit_pm1_power(m.b * m2.b.inverse());
}

KcpnVerdict is_kcpn_order(const CyclicNForm& m, const EisensteinPoly& E) {
  const auto& W = m.b.ring();
  require_matching_p(E, *W);
  if (W->length() < 2) throw Error(ErrorCode::PreconditionViolated, "is_kcpn_order needs Witt length >= 2");
  if (m.shape != Shape::EUnit || !is_unit_pm1_power(m.b * E.c0(W))) return {};
  return {true, "RC_{p^n}"};
}

}  // namespace bkhopf
