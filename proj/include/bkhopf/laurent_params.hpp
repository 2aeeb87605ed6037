#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bkhopf/eisenstein.hpp"
#include "bkhopf/kcp2.hpp"

// Laurent-series parameters for Hopf orders: f in W_n((u))^n with f = A Phi(f).
namespace bkhopf {

struct KcpLaurentParam {
  Series f;  // u^{-j}
  int r = 0;
  int j = 0;
};

/// u^{-j} for 0 <= j <= e/(p-1), paired with r = e - j(p-1).
std::vector<KcpLaurentParam> kcp_laurent_set(const EisensteinPoly& E, const RingPtr& k);

/// v(f) <= 0 and the leading coefficient lies in (k^x)^{p-1}.
bool check_n1_laurent(const Series& f);

struct GeneralTuple {
  int n = 1;
  // Over W_n.
  std::vector<Series> f;
  std::vector<std::vector<Series>> A;
};

struct TupleReport {
  // Window [lo, hi) on which every row identity was checked; hi is nullopt
  // when all identities hold exactly.
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;
  // c0^{-1} E phi(f_i): the image of phi(e_i) in W_n((u)).
  std::vector<Series> phi_images;
};

/// Checks that some f_i is nonzero mod p, v(s_ij) >= 0, and
/// f_i = sum_j s_ij c0^{-1} phi(f_j).
/// Throws F1DivisibleByP, NegativeValuationEntry or IdentityFails.
TupleReport verify_general_tuple(const GeneralTuple& t, const EisensteinPoly& E);

/// (p u^{-j1}, u^{-j2} + p[f]) with A = [[c0 u^{(p-1)j1}, 0], [c0 [b'] u^{(p-1)j2}, c0 u^{(p-1)j2}]].
GeneralTuple tuple_from_kcp2(const KCp2Module& module);

struct CyclotomicReport {
  bool ok = false;
  Agreement window;
};

/// phi_E(alpha(e1)) = alpha(phi_1(e1)) for alpha(e1) = (1 - t)^{-1} e1,
/// t = (u + 1)^{p^{n-1}}, E the cyclotomic Eisenstein polynomial, over W_n((u)).
CyclotomicReport verify_cyclotomic_iso(std::uint64_t p, int n, std::int64_t precision);

}  // namespace bkhopf
