#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bkhopf/serialize.hpp"
#include "bkhopf/series.hpp"
#include "doctest.h"

namespace testing_support {

using namespace bkhopf;

inline Elem random_elem(const RingPtr& R, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, R->characteristic() - 1);
  Coords c{};
  for (int i = 0; i < R->degree(); ++i) c[i] = dist(rng);
  return {R, c};
}

inline Elem random_unit(const RingPtr& R, std::mt19937_64& rng) {
  while (true) {
    Elem x = random_elem(R, rng);
    if (x.is_unit()) return x;
  }
}

// Every element of R, in coordinate order.
inline std::vector<Elem> all_elems(const RingPtr& R) {
  std::vector<Elem> out;
  const std::uint64_t M = R->characteristic();
  std::uint64_t total = 1;
  for (int i = 0; i < R->degree(); ++i) total *= M;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Coords c{};
    std::uint64_t rest = idx;
    for (int i = 0; i < R->degree(); ++i) {
      c[i] = rest % M;
      rest /= M;
    }
    out.emplace_back(R, c);
  }
  return out;
}

// Random polynomial with `len` coefficients starting at degree lo.
inline Series random_series(const RingPtr& R, std::mt19937_64& rng, std::int64_t lo, std::int64_t len,
                            std::optional<std::int64_t> prec = std::nullopt) {
  Series::Terms t;
  for (std::int64_t i = 0; i < len; ++i) t[lo + i] = random_elem(R, rng).coords();
  return Series(R, std::move(t), prec);
}

inline Series mono(const RingPtr& R, std::int64_t c, std::int64_t deg) {
  return Series::monomial(Elem::from_int(R, c), deg);
}

// a and b agree on all degrees both know.
inline bool agree(const Series& a, const Series& b) { return compare(a, b).equal; }

}  // namespace testing_support

namespace doctest {
template <>
struct StringMaker<bkhopf::Series> {
  static String convert(const bkhopf::Series& s) { return bkhopf::format_series(s).c_str(); }
};
template <>
struct StringMaker<bkhopf::Elem> {
  static String convert(const bkhopf::Elem& e) { return e.to_string().c_str(); }
};
}  // namespace doctest
