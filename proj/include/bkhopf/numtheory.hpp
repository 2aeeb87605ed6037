#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Word-size integer helpers shared by the ring layer.
namespace bkhopf::nt {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Reduces a signed value into [0, m).
std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

// Inverse of a modulo p^n given m = p^n; a must be coprime to p.
std::uint64_t inverse_mod_prime_power(std::uint64_t a, std::uint64_t p, std::uint64_t m);

}  // namespace bkhopf::nt
