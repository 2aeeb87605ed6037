#include <algorithm>
#include <set>

#include "bkhopf/error.hpp"
#include "bkhopf/ring.hpp"
#include "support.hpp"

using namespace bkhopf;
using namespace testing_support;

namespace {

// Plain-integer arithmetic in F_3[w]/(w^2 + 2w + 2), independent of Ring.
std::array<int, 2> f9_mul(std::array<int, 2> a, std::array<int, 2> b) {
  int c0 = a[0] * b[0], c1 = a[0] * b[1] + a[1] * b[0], c2 = a[1] * b[1];
  // w^2 = -2w - 2 = w + 1
  c0 += c2;
  c1 += c2;
  return {c0 % 3, c1 % 3};
}

Elem coords(const RingPtr& R, std::initializer_list<std::uint64_t> xs) {
  Coords c{};
  int i = 0;
  for (auto x : xs) c[i++] = x;
  return {R, c};
}

bool enumerated_pm1_power(const Elem& b) {
  const RingPtr& R = b.ring();
  for (const auto& x : all_elems(R))
    if (x.is_unit() && x.pow(R->p() - 1) == b) return true;
  return false;
}

}  // namespace

TEST_CASE("default modulus for F_9 is w^2 + 2w + 2") {
  auto k = Ring::field(3, 2);
  CHECK(k->field_modulus() == std::vector<std::uint64_t>{2, 2, 1});
  CHECK(Ring::field(3, 1)->field_modulus() == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("frobenius_k") {
  auto f3 = Ring::field(3);
  CHECK(frobenius(Elem::from_int(f3, 2)) == Elem::from_int(f3, 2));

  auto f9 = Ring::field(3, 2, {2, 2, 1});
  const Elem w = Elem::generator(f9);
  auto cube = f9_mul(f9_mul({0, 1}, {0, 1}), {0, 1});
  CHECK(cube == std::array<int, 2>{1, 2});
  CHECK(frobenius(w) == coords(f9, {1, 2}));
  CHECK(frobenius(frobenius(w)) == w);
}

TEST_CASE("is_pm1_power and pm1_root") {
  auto f3 = Ring::field(3);
  CHECK(is_pm1_power(Elem::from_int(f3, 1)));
  CHECK_FALSE(is_pm1_power(Elem::from_int(f3, 2)));
  CHECK(pm1_root(Elem::from_int(f3, 1)) == Elem::from_int(f3, 1));
  CHECK_THROWS_AS(pm1_root(Elem::from_int(f3, 2)), Error);
  try {
    pm1_root(Elem::from_int(f3, 2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRoot);
  }
  try {
    is_pm1_power(Elem::from_int(f3, 0));
    FAIL("expected ZeroInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInput);
  }

  auto f9 = Ring::field(3, 2);
  const Elem w = Elem::generator(f9);
  const Elem w2 = w * w;
  std::set<Elem, bool (*)(const Elem&, const Elem&)> squares(
      [](const Elem& a, const Elem& b) { return a.coords() < b.coords(); });
  for (const auto& x : all_elems(f9))
    if (!x.is_zero()) squares.insert(x * x);
  CHECK(squares.count(w2) == 1);
  CHECK(is_pm1_power(w2));

  // Oracle: the roots of x^2 = w^2, lexicographically smallest coordinates.
  std::vector<Coords> roots;
  for (const auto& x : all_elems(f9))
    if (!x.is_zero() && x * x == w2) roots.push_back(x.coords());
  CHECK(roots.size() == 2);
  CHECK(pm1_root(w2).coords() == *std::min_element(roots.begin(), roots.end()));
  CHECK(pm1_root(w2) == w);
}

TEST_CASE("pm1_root agrees with enumeration on small fields") {
  for (auto [p, d] : std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {5, 2}, {3, 3}, {7, 2}, {2, 3}, {5, 1}, {3, 4}}) {
    auto k = Ring::field(p, d);
    for (const auto& a : all_elems(k)) {
      if (a.is_zero()) continue;
      std::vector<Coords> roots;
      for (const auto& x : all_elems(k))
        if (!x.is_zero() && x.pow(p - 1) == a) roots.push_back(x.coords());
      CHECK(is_pm1_power(a) == !roots.empty());
      if (roots.empty()) {
        CHECK_THROWS(pm1_root(a));
      } else {
        Elem r = pm1_root(a);
        CHECK(r.pow(p - 1) == a);
        CHECK(r.coords() == *std::min_element(roots.begin(), roots.end()));
      }
    }
  }
}

TEST_CASE("frobenius_w") {
  auto z9 = Ring::witt(3, 1, 2);
  CHECK(frobenius(Elem::from_int(z9, 5)) == Elem::from_int(z9, 5));

  auto gr = Ring::witt(3, 2, 2);
  const Elem y = Elem::generator(gr);
  const Elem fy = frobenius(y);
  CHECK(fy == y.pow(3));
  // Reduces to w -> w^3 mod 3.
  auto k = gr->residue_field();
  CHECK(reduce(fy, k) == frobenius(reduce(y, k)));
  // Order two on every power of y.
  Elem yk = Elem::from_int(gr, 1);
  for (int i = 0; i < 8; ++i) {
    CHECK(frobenius(frobenius(yk)) == yk);
    yk = yk * y;
  }
  // Fixes W_n(F_p).
  for (int v = 0; v < 9; ++v) CHECK(frobenius(Elem::from_int(gr, v)) == Elem::from_int(gr, v));
}

TEST_CASE("frobenius is a ring map") {
  std::mt19937_64 rng(7);
  for (auto R : {Ring::field(3, 2), Ring::witt(3, 2, 2), Ring::witt(5, 3, 2), Ring::witt(2, 4, 3), Ring::field(7, 3)}) {
    for (int i = 0; i < 200; ++i) {
      Elem a = random_elem(R, rng), b = random_elem(R, rng);
      CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
      CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
    }
    Elem x = random_elem(R, rng);
    Elem it = x;
    for (int i = 0; i < R->degree(); ++i) it = frobenius(it);
    CHECK(it == x);
  }
}

TEST_CASE("Witt ring structure") {
  for (auto [p, d, n] : std::vector<std::tuple<std::uint64_t, int, int>>{{3, 2, 2}, {2, 3, 3}, {5, 2, 3}, {3, 4, 2}}) {
    auto W = Ring::witt(p, d, n);
    for (int i = 0; i <= d; ++i) CHECK(W->lift_modulus()[i] % p == W->field_modulus()[i]);
    const Elem y = Elem::generator(W);
    CHECK(y.pow(W->field_size()) == y);
    // Residue of the generator has order q - 1.
    const Elem w = reduce(y, W->residue_field());
    std::uint64_t order = 1;
    Elem acc = w;
    while (!(acc == Elem::from_int(W->residue_field(), 1))) {
      acc = acc * w;
      ++order;
    }
    CHECK(order == W->field_size() - 1);
  }
}

TEST_CASE("is_unit_pm1_power") {
  auto z9 = Ring::witt(3, 1, 2);
  CHECK(is_unit_pm1_power(Elem::from_int(z9, 1)));
  CHECK(is_unit_pm1_power(Elem::from_int(z9, 4)));
  CHECK_FALSE(is_unit_pm1_power(Elem::from_int(z9, 2)));
  try {
    is_unit_pm1_power(Elem::from_int(z9, 3));
    FAIL("expected NotAUnit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAUnit);
  }
  for (auto W : {Ring::witt(3, 1, 2), Ring::witt(3, 1, 3), Ring::witt(3, 2, 2), Ring::witt(5, 1, 2), Ring::witt(2, 2, 3),
                 Ring::witt(5, 2, 2), Ring::witt(7, 1, 3)})
    for (const auto& b : all_elems(W))
      if (b.is_unit()) CHECK(is_unit_pm1_power(b) == enumerated_pm1_power(b));
}

TEST_CASE("teichmuller_lift") {
  auto f3 = Ring::field(3);
  auto z9 = Ring::witt(f3, 2);
  CHECK(teichmuller_lift(Elem::from_int(f3, 1), z9) == Elem::from_int(z9, 1));
  CHECK(teichmuller_lift(Elem::from_int(f3, 0), z9) == Elem::from_int(z9, 0));
  // Oracle: the unit x = 2 mod 3 with x^2 = 1.
  std::vector<std::int64_t> sols;
  for (std::int64_t x = 0; x < 9; ++x)
    if (x % 3 == 2 && (x * x) % 9 == 1) sols.push_back(x);
  REQUIRE(sols.size() == 1);
  CHECK(teichmuller_lift(Elem::from_int(f3, 2), z9) == Elem::from_int(z9, sols[0]));

  std::mt19937_64 rng(11);
  for (auto W : {Ring::witt(3, 2, 3), Ring::witt(5, 2, 2), Ring::witt(2, 3, 4)}) {
    auto k = W->residue_field();
    for (int i = 0; i < 100; ++i) {
      Elem a = random_elem(k, rng), b = random_elem(k, rng);
      const Elem ta = teichmuller_lift(a, W);
      CHECK(ta * teichmuller_lift(b, W) == teichmuller_lift(a * b, W));
      CHECK(ta.pow(W->field_size()) == ta);
      CHECK(reduce(ta, k) == a);
    }
  }
}

TEST_CASE("ring inverses and errors") {
  std::mt19937_64 rng(3);
  for (auto R : {Ring::witt(3, 2, 3), Ring::witt(2, 1, 5), Ring::field(5, 3)}) {
    for (int i = 0; i < 50; ++i) {
      Elem a = random_unit(R, rng);
      CHECK(a * a.inverse() == Elem::from_int(R, 1));
    }
  }
  CHECK_THROWS_AS(Elem::from_int(Ring::witt(3, 1, 2), 6).inverse(), Error);
  CHECK_THROWS_AS(Ring::field(4), Error);
  CHECK_THROWS_AS(Ring::field(3, 5), Error);
  // y^2 + 1 is irreducible over F_3 but y has order 4, not 8.
  CHECK_THROWS_AS(Ring::field(3, 2, {1, 0, 1}), Error);
  CHECK_NOTHROW(Ring::field(3, 2, {2, 1, 1}));
}
