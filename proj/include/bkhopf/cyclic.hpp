#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bkhopf/eisenstein.hpp"
#include "bkhopf/semilinear.hpp"

// Rank-one Breuil-Kisin modules (S_n e1, phi(e1) = f e1) and the Hopf orders
// they give in KC_p and KC_{p^n}.
namespace bkhopf {

// ---- length one ----

/// phi(e1) = b u^r e1 with b in k^x and 0 <= r <= e.
struct CyclicN1Form {
  Elem b;
  int r = 0;
};

struct NormalizedN1 {
  CyclicN1Form form;
  // Unit g with f g = phi(g) b u^r; e1 -> g e1 is the isomorphism.
  Solution witness;
};

/// Throws NotAFactor when v(f) > e.
NormalizedN1 normalize_cyclic_n1(const Series& f, const EisensteinPoly& E, const SolveOptions& opts = {});

struct IsoResult {
  bool iso = false;
  // x with x^{p-1} = b / b'; e1 -> x e1' intertwines the two forms.
  std::optional<Elem> witness;
};

IsoResult iso_n1(const CyclicN1Form& m, const CyclicN1Form& m2);

bool is_kcp_order(const CyclicN1Form& m, const EisensteinPoly& E);

enum class Containment { LeftInRight, RightInLeft, Equal, None };

std::string_view to_string(Containment c);

struct GenericRelation {
  bool generically_iso = false;
  Containment containment = Containment::None;
};

/// Generic isomorphism needs only r = r' mod (p-1): the accompanying
/// condition b / b' in k^x holds for every pair of forms.
GenericRelation generic_relation_n1(const CyclicN1Form& m, const CyclicN1Form& m2);

struct LarsonParam {
  int j = 0;
  std::string presentation;
};

struct KcpOrder {
  CyclicN1Form form;
  LarsonParam larson;
};

/// (c0^{-1}, r) for every r = e mod (p-1) in [0, e], ascending in j = (e - r)/(p - 1).
std::vector<KcpOrder> enumerate_kcp_orders(const EisensteinPoly& E, const RingPtr& k);

struct BreuilLabel {
  int r_tilde = 0;
  Elem a;
  // "RC_p", "(RC_p)*" or empty.
  std::string name;
  // For the dual order: c0^{-p}, the value printed for (1, 0) in the
  // literature, which differs from the formula value c0^p unless c0^{2p} = 1.
  std::optional<Elem> alternate_a;
};

/// M(e - r, (b c0)^p).
BreuilLabel breuil_functor_n1(const CyclicN1Form& m, const EisensteinPoly& E);

// ---- length n >= 2 ----

enum class Shape { Unit, EUnit };

std::string_view to_string(Shape s);

/// phi(e1) = b e1 (Unit) or phi(e1) = b E e1 (EUnit), b in W_n^x.
struct CyclicNForm {
  Shape shape = Shape::Unit;
  Elem b;
};

struct ClassifiedN {
  CyclicNForm form;
  // Unit g with s g = phi(g) b, where f = s (Unit) or f = s E (EUnit).
  Solution witness;
};

/// Throws NotAFactor unless v(f mod p) is 0 or e and, in the second case,
/// f E^{-1} is a unit power series.
ClassifiedN classify_cyclic_n(const Series& f, const EisensteinPoly& E, const SolveOptions& opts = {});

bool iso_n(const CyclicNForm& m, const CyclicNForm& m2);

struct KcpnVerdict {
  bool order = false;
  std::string name;
};

KcpnVerdict is_kcpn_order(const CyclicNForm& m, const EisensteinPoly& E);

}  // namespace bkhopf
