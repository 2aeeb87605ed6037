#include <cmath>
#include <set>

#include "bkhopf/error.hpp"
#include "bkhopf/kcp2.hpp"
#include "support.hpp"

using namespace bkhopf;
using namespace testing_support;

namespace {

const EisensteinPoly& E8() {
  static const EisensteinPoly E = EisensteinPoly::validate(3, 2, {-3, 0, 0, 0, 0, 0, 0, 0, 1});
  return E;
}
const EisensteinPoly& E10() {
  static const EisensteinPoly E = EisensteinPoly::validate(3, 2, {-3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  return E;
}

KCp2Params params(const EisensteinPoly& E, int j1, int j2, const std::string& f, std::int64_t prec = 64) {
  auto k = Ring::field(E.p());
  return make_kcp2_params(E, k, j1, j2, parse_series(f, k), prec);
}

// ---- plain-integer model of W_2(F_p)((u)) for the oracles ----

using IntL = std::map<std::int64_t, std::int64_t>;

struct Z {
  std::int64_t p, m;
  std::int64_t mod(std::int64_t x) const { return ((x % m) + m) % m; }
  // Teichmüller lift of a residue: the unique root of x^p = x reducing to it.
  std::int64_t teich(std::int64_t a) const {
    a = ((a % p) + p) % p;
    for (std::int64_t x = a; x < m; x += p) {
      std::int64_t y = 1;
      for (int i = 0; i < p; ++i) y = y * x % m;
      if (y == x) return x;
    }
    return -1;
  }
  IntL add(IntL a, const IntL& b, std::int64_t sb = 1) const {
    for (auto [d, c] : b) a[d] = mod(a[d] + sb * c);
    return clean(a);
  }
  IntL mul(const IntL& a, const IntL& b) const {
    IntL out;
    for (auto [i, x] : a)
      for (auto [j, y] : b) out[i + j] = mod(out[i + j] + x * y);
    return clean(out);
  }
  IntL clean(IntL a) const {
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a;
  }
  IntL sigma(const IntL& a) const {
    IntL out;
    for (auto [d, c] : a) out[p * d] = c;
    return out;
  }
};

IntL to_int(const Series& s) {
  IntL out;
  for (const auto& [d, c] : s.terms()) out[d] = static_cast<std::int64_t>(c[0]);
  return out;
}

IntL lift(const Z& z, const IntL& x) {
  IntL out;
  for (auto [d, c] : x) out[d] = z.teich(c);
  return z.clean(out);
}

IntL shift(const IntL& x, std::int64_t k) {
  IntL out;
  for (auto [d, c] : x) out[d + k] = c;
  return out;
}

// alpha(a e1 + [b] e2) = p a u^{-j1} + [b] (u^{-j2} + p [f]).
IntL alpha_int(const Z& z, const IntL& a, const IntL& b, int j1, int j2, const IntL& f) {
  IntL e2 = z.add({{-j2, 1}}, z.mul({{0, z.p}}, lift(z, f)));
  return z.add(z.mul({{0, z.p}}, shift(a, -j1)), z.mul(lift(z, b), e2));
}

IntL eis_int(const Z& z, const EisensteinPoly& E) {
  IntL out;
  for (std::size_t i = 0; i < E.coeffs().size(); ++i) out[static_cast<std::int64_t>(i)] = z.mod(E.coeffs()[i]);
  return z.clean(out);
}

std::int64_t c0inv_int(const Z& z, const EisensteinPoly& E) {
  const std::int64_t c0 = z.mod(E.coeffs()[0] / z.p);
  for (std::int64_t x = 1; x < z.m; ++x)
    if (z.mod(x * c0) == 1) return x;
  return -1;
}

// Restriction to degrees < hi.
IntL below(const IntL& x, std::int64_t hi) {
  IntL out;
  for (auto [d, c] : x)
    if (d < hi) out[d] = c;
  return out;
}

std::int64_t known_bound(const Series& s, std::int64_t cap) { return s.exact() ? cap : std::min(cap, *s.precision()); }

}  // namespace

TEST_CASE("make_kcp2_params range checks") {
  CHECK_THROWS_AS(params(E8(), 1, 1, "0"), Error);
  CHECK_THROWS_AS(params(E8(), 5, 1, "0"), Error);
  CHECK_THROWS_AS(params(E8(), 2, -1, "0"), Error);
  CHECK_NOTHROW(params(E8(), 4, 3, "0"));
}

TEST_CASE("check_conditions examples") {
  auto c = check_conditions(params(E8(), 3, 1, "0"));
  CHECK(c.cond1);
  CHECK(c.cond2);
  const auto P = params(E8(), 3, 1, "u^-2");
  CHECK(kcp2_difference(P) == parse_series("u^5 - u^7", P.k));
  c = check_conditions(P);
  CHECK(c.cond1);
  CHECK(c.cond2);
  c = check_conditions(params(E10(), 2, 1, "0"));
  CHECK(c.cond1);
  CHECK_FALSE(c.cond2);
  // Truncated f with an undecidable valuation.
  CHECK_THROWS_AS(check_conditions(params(E8(), 3, 1, "O(u^-6)")), Error);
}

TEST_CASE("build_module example") {
  const auto P = params(E8(), 3, 1, "0");
  const KCp2Module M = build_module(P);
  // phi(e1) = c0^{-1} u^2 e1 with c0^{-1} = 8 = 2 in k.
  CHECK(M.phi_e1.a == mono(P.k, 2, 2));
  CHECK(M.phi_e1.b == Series(P.k));
  // phi(e2) = 8 u^6 e2 + 7 e1: e2 coefficient [2] u^6 = 8 u^6, e1 coefficient 7 = 1 in k.
  CHECK(M.phi_e2.a == mono(P.k, 1, 0));
  CHECK(M.phi_e2.b == mono(P.k, 2, 6));
  CHECK(teichmuller_lift(M.phi_e2.b, P.w2) == mono(P.w2, 8, 6));
  try {
    build_module(params(E10(), 2, 1, "0"));
    FAIL("expected ConditionsFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConditionsFailed);
  }
}

TEST_CASE("build_module agrees with a relation-expansion oracle") {
  // phi(e1) and phi(e2) are characterised by alpha(phi(x)) = c0^{-1} E phi(alpha(x)),
  // alpha being injective; the oracle expands the right side over Z/p^2.
  const std::vector<EisensteinPoly> polys{E8(), E10(), EisensteinPoly::validate(3, 2, {3, 0, 3, 0, 0, 0, 1}),
                                          EisensteinPoly::validate(5, 2, {5, 5, 0, 0, 0, 0, 0, 0, 1})};
  for (const auto& E : polys) {
    const Z z{static_cast<std::int64_t>(E.p()), static_cast<std::int64_t>(E.p() * E.p())};
    auto k = Ring::field(E.p());
    for (const Series& f : kcp2_family(k, {3, false, 1000, 64}))
      for (int j1 = 1; j1 * static_cast<int>(E.p() - 1) <= E.e(); ++j1)
        for (int j2 = 0; j2 < j1; ++j2) {
          const auto P = make_kcp2_params(E, k, j1, j2, f);
          const auto c = check_conditions(P);
          if (!c.cond1 || !c.cond2) continue;
          const KCp2Module M = build_module(P);
          const IntL fi = to_int(f), Ei = eis_int(z, E);
          const IntL phi0 = z.mul({{0, c0inv_int(z, E)}}, Ei);
          const IntL rhs1 = z.mul(phi0, z.sigma({{-j1, z.p}}));
          const IntL rhs2 = z.mul(phi0, z.sigma(z.add({{-j2, 1}}, z.mul({{0, z.p}}, lift(z, fi)))));
          const IntL lhs1 = alpha_int(z, to_int(M.phi_e1.a), to_int(M.phi_e1.b), j1, j2, fi);
          const IntL lhs2 = alpha_int(z, to_int(M.phi_e2.a), to_int(M.phi_e2.b), j1, j2, fi);
          const std::int64_t hi = known_bound(M.phi_e2.a, 60) - j1;
          CHECK(below(lhs1, hi) == below(rhs1, hi));
          CHECK(below(lhs2, hi) == below(rhs2, hi));
          // e1 coefficient of phi(e1) is c0^{-1} u^{e-(p-1)j1} over k.
          CHECK(to_int(M.phi_e1.a) == IntL{{E.e() - (z.p - 1) * j1, c0inv_int(z, E) % z.p}});
        }
  }
}

TEST_CASE("b' witness relation") {
  for (const char* f : {"0", "u^-2", "2*u^-2", "u^-1 + u^3"}) {
    const auto P = params(E8(), 3, 1, f);
    if (!check_conditions(P).cond1 || !check_conditions(P).cond2) continue;
    const KCp2Module M = build_module(P);
    const std::int64_t e = P.E.e();
    // u^{e - (p-1) j1} b' = -D: the opposite sign to the displayed witness.
    CHECK(agree(M.bprime.shift(e - 2 * P.j1), -kcp2_difference(P)));
  }
}

TEST_CASE("verify_bk") {
  const auto M0 = build_module(params(E8(), 3, 1, "0"));
  CHECK(verify_bk(M0));
  const auto M1 = build_module(params(E8(), 3, 1, "u^-2"));
  CHECK(verify_bk(M1));
  KCp2Module bad = M0;
  bad.phi_e2 = add(bad.params, bad.phi_e2, {mono(bad.params.k, 1, 0), Series(bad.params.k)});
  CHECK_FALSE(verify_bk(bad));
  // b' with the displayed sign fails whenever D is nonzero.
  KCp2Module flipped = M1;
  flipped.bprime = -flipped.bprime;
  CHECK_FALSE(verify_bk(flipped));
}

TEST_CASE("generic_fiber_witness") {
  const auto M0 = build_module(params(E8(), 3, 1, "0"));
  CHECK(generic_fiber_witness(M0));
  const auto M1 = build_module(params(E8(), 3, 1, "u^-2"));
  CHECK(generic_fiber_witness(M1));
  CHECK_FALSE(generic_fiber_witness(M1, mono(M1.params.w2, 1, -1)));
}

TEST_CASE("contains examples") {
  const auto P = params(E8(), 3, 1, "u^-2");
  CHECK(contains(P, mono(P.w2, 3, -3)));
  CHECK(contains(P, mono(P.w2, 1, 0)));
  CHECK_FALSE(contains(P, mono(P.w2, 1, -2)));
  CHECK(contains(P, default_alpha_e2(P)));
  CHECK_FALSE(contains(P, mono(P.w2, 3, -4)));
}

TEST_CASE("contains agrees with a brute-force lattice search") {
  // x lies in alpha(M) iff it agrees mod u^H with alpha(a e1 + [b] e2) for
  // power series a, b; alpha(M) contains u^H W_2[[u]] once v(f) >= -j2.
  const Z z{3, 9};
  const int H = 2;
  for (auto [j1, j2, f] : {std::tuple<int, int, const char*>{2, 1, "0"}, {2, 1, "u^-1"}, {3, 1, "2*u^-1 + u"}}) {
    const auto P = params(E8(), j1, j2, f);
    const IntL fi = to_int(P.f);
    std::set<IntL> images;
    const int nb = H + j2, na = H + j1;
    const int pa = static_cast<int>(std::pow(3, na)), pb = static_cast<int>(std::pow(3, nb));
    for (int bi = 0; bi < pb; ++bi)
      for (int ai = 0; ai < pa; ++ai) {
        IntL a, b;
        for (int d = 0, r = ai; d < na; ++d, r /= 3) a[d] = r % 3;
        for (int d = 0, r = bi; d < nb; ++d, r /= 3) b[d] = r % 3;
        images.insert(below(alpha_int(z, z.clean(a), z.clean(b), j1, j2, fi), H));
      }
    std::mt19937_64 rng(61 + j1);
    int members = 0;
    for (int trial = 0; trial < 400; ++trial) {
      IntL x;
      if (trial % 2 == 0) {
        auto it = images.begin();
        std::advance(it, static_cast<long>(rng() % images.size()));
        x = *it;
        if (rng() % 2) x[-3] = 3 * (rng() % 3);
      } else {
        for (int d = -3; d < H; ++d) x[d] = rng() % 9;
      }
      x = z.clean(x);
      Series::Terms t;
      for (auto [d, c] : x) t[d] = Elem::from_int(P.w2, c).coords();
      const bool expect = images.count(below(x, H)) && below(x, H) == x;
      members += expect;
      const Series xs(P.w2, t, std::nullopt);
      INFO("j1=", j1, " x=", format_series(xs));
      CHECK(contains(P, xs) == expect);
    }
    CHECK(members > 0);
  }
}

TEST_CASE("remark_shortcut") {
  auto r = remark_shortcut(8, 3, 3, 1);
  CHECK(r.applicable);
  CHECK(r.value);
  r = remark_shortcut(8, 3, 3, 2);
  CHECK_FALSE(r.applicable);
  r = remark_shortcut(10, 3, 2, 1);
  CHECK(r.applicable);
  CHECK_FALSE(r.value);
}

TEST_CASE("family order") {
  auto k = Ring::field(3);
  const auto fam = kcp2_family(k, {2, false, 100, 64});
  REQUIRE(fam.size() == 7);
  CHECK(fam[0] == Series(k));
  CHECK(fam[1] == mono(k, 1, 0));
  CHECK(fam[2] == mono(k, 2, 0));
  CHECK(fam[3] == mono(k, 1, -1));
  CHECK(fam[4] == mono(k, 2, -1));
  CHECK(fam[6] == mono(k, 2, -2));
  const auto two = kcp2_family(k, {2, true, 100, 64});
  CHECK(two.size() == 7 + 3 * 4);
  CHECK_THROWS_AS(enumerate_kcp2(E8(), k, {2, true, 10, 64}), Error);
}

TEST_CASE("enumerate_kcp2 examples") {
  auto k = Ring::field(3);
  const auto out = enumerate_kcp2(E8(), k, {4, false, 100000, 64});
  auto has = [&](int j1, int j2, const Series& f) {
    return std::any_of(out.begin(), out.end(), [&](const KCp2Candidate& c) {
      return c.params.j1 == j1 && c.params.j2 == j2 && c.params.f == f;
    });
  };
  CHECK(has(3, 1, Series(k)));
  CHECK(has(3, 1, mono(k, 1, -2)));
  CHECK(has(3, 1, mono(k, 2, -2)));
  CHECK_FALSE(has(3, 1, mono(k, 1, -4)));
}

TEST_CASE("enumerate_kcp2 matches an integer-formula oracle for monomial families") {
  const std::vector<EisensteinPoly> polys{E8(), E10(), EisensteinPoly::validate(3, 2, {3, 0, 3, 0, 0, 0, 1}),
                                          EisensteinPoly::validate(5, 2, {5, 5, 0, 0, 0, 0, 0, 0, 1})};
  for (const auto& E : polys) {
    const std::int64_t p = static_cast<std::int64_t>(E.p()), e = E.e();
    auto k = Ring::field(E.p());
    const int M = 4;
    // F mod p as integers.
    IntL Fbar;
    for (std::int64_t i = 0; i < e; ++i)
      if (((E.coeffs()[i] / p) % p + p) % p) Fbar[i] = ((E.coeffs()[i] / p) % p + p) % p;
    struct Expected {
      int j1, j2;
      std::int64_t a, m;
      bool pj;
    };
    std::vector<Expected> expected;
    for (int j1 = 1; j1 * (p - 1) <= e; ++j1)
      for (int j2 = 0; j2 < j1; ++j2) {
        std::vector<std::pair<std::int64_t, std::int64_t>> fam{{0, 0}};
        for (std::int64_t m = 0; m <= M; ++m)
          for (std::int64_t a = 1; a < p; ++a) fam.push_back({a, m});
        for (auto [a, m] : fam) {
          // D = a u^{e+j1-pm} - a u^{e+j1-(p-1)j2-m} (a^p = a in F_p).
          IntL D;
          if (a) {
            D[e + j1 - p * m] = (D[e + j1 - p * m] + a) % p;
            D[e + j1 - (p - 1) * j2 - m] = ((D[e + j1 - (p - 1) * j2 - m] - a) % p + p) % p;
          }
          std::erase_if(D, [](const auto& kv) { return kv.second == 0; });
          const bool c1 = D.empty() || D.begin()->first >= e - (p - 1) * (j1 + j2);
          IntL S = D;
          for (auto [d, c] : Fbar) S[d + j1 - p * j2] = (S[d + j1 - p * j2] + c) % p;
          std::erase_if(S, [](const auto& kv) { return kv.second == 0; });
          const bool c2 = S.empty() || S.begin()->first >= 0;
          if (c1 && c2) expected.push_back({j1, j2, a, m, j1 >= p * j2});
        }
      }
    const auto out = enumerate_kcp2(E, k, {M, false, 100000, 64});
    REQUIRE(out.size() == expected.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].params.j1 == expected[i].j1);
      CHECK(out[i].params.j2 == expected[i].j2);
      CHECK(out[i].params.f == (expected[i].a ? mono(k, expected[i].a, -expected[i].m) : Series(k)));
      CHECK(out[i].pj_condition == expected[i].pj);
      CHECK(out[i].conditions.cond1);
      CHECK(out[i].conditions.cond2);
    }
  }
}

TEST_CASE("remark equivalence sweep") {
  for (const auto& E : {E8(), E10(), cyclotomic_eisenstein(3, 2), EisensteinPoly::validate(5, 2, {5, 0, 0, 0, 0, 0, 0, 0, 1})}) {
    for (int d : {1, 2}) {
      auto k = Ring::field(E.p(), d);
      const int pm1 = static_cast<int>(E.p() - 1);
      for (const Series& f : kcp2_family(k, {4, d == 1, 100000, 64}))
        for (int j1 = 1; j1 * pm1 <= E.e(); ++j1)
          for (int j2 = 0; j2 < j1; ++j2) {
            const auto r = remark_shortcut(E.e(), E.p(), j1, j2);
            if (!r.applicable) continue;
            const auto c = check_conditions(make_kcp2_params(E, k, j1, j2, f));
            if (c.cond1) CHECK(c.cond2 == r.value);
          }
    }
  }
}

TEST_CASE("every enumerated order verifies") {
  for (const auto& E : {E8(), E10(), cyclotomic_eisenstein(3, 2)}) {
    for (int d : {1, 2}) {
      auto k = Ring::field(E.p(), d);
      for (const auto& c : enumerate_kcp2(E, k, {3, d == 1, 100000, 64})) {
        const auto M = build_module(c.params);
        CHECK(verify_bk(M));
        CHECK(generic_fiber_witness(M));
      }
    }
  }
}

TEST_CASE("ModElem identities") {
  std::mt19937_64 rng(67);
  for (auto k : {Ring::field(3), Ring::field(3, 2), Ring::field(5)}) {
    const auto E = EisensteinPoly::validate(k->p(), 2, {static_cast<std::int64_t>(k->p()), 0, 0, 0, 0, 0, 0, 0, 1});
    const auto P = make_kcp2_params(E, k, 2, 1, Series(k));
    auto W = P.w2;
    auto rand_elem = [&] { return normalize(P, random_series(k, rng, -2, 6, 20), random_series(W, rng, -2, 6, 20)); };
    for (int trial = 0; trial < 25; ++trial) {
      const ModElem x = rand_elem(), y = rand_elem(), z = rand_elem();
      const Series s = random_series(W, rng, 0, 5), t = random_series(W, rng, -1, 5);
      CHECK(equal(add(P, x, y), add(P, y, x)));
      CHECK(equal(add(P, add(P, x, y), z), add(P, x, add(P, y, z))));
      CHECK(equal(scale(P, s, scale(P, t, x)), scale(P, s * t, x)));
      CHECK(equal(scale(P, s + t, x), add(P, scale(P, s, x), scale(P, t, x))));
      CHECK(equal(scale(P, s, add(P, x, y)), add(P, scale(P, s, x), scale(P, s, y))));
      // p x only sees the e2 part, moved to e1 by the relation.
      const ModElem px = scale(P, Series::from_ints(W, {static_cast<std::int64_t>(k->p())}), x);
      CHECK(equal(px, ModElem{x.b.shift(P.j1 - P.j2), Series(k)}));
      // Normal forms are unique: a carry can be written either way.
      const Series c = random_series(k, rng, -1, 4);
      CHECK(equal(normalize(P, x.a + c.shift(P.j1 - P.j2), teichmuller_lift(x.b, W)),
                  normalize(P, x.a, teichmuller_lift(x.b, W) + times_p(c, W))));
      // alpha is additive and W_2-linear.
      CHECK(agree(alpha(P, add(P, x, y)), alpha(P, x) + alpha(P, y)));
      CHECK(agree(alpha(P, scale(P, s, x)), s * alpha(P, x)));
    }
  }
}
