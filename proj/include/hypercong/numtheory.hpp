#pragma once

// Small integer helpers shared by every module: primality, factoring of
// small integers, Legendre/Kronecker symbols, p-adic valuations.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypercong {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 3; n <= bound; n += 2)
    if (is_prime(n)) out.push_back(n);
  return out;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) {
    if (base != 0 && r > UINT64_MAX / base)
      throw std::overflow_error("ipow overflow");
    r *= base;
  }
  return r;
}

inline BigInt big_pow(std::uint64_t base, unsigned exp) {
  return boost::multiprecision::pow(BigInt(base), exp);
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Legendre symbol (a|p) for an odd prime p, via Euler's criterion.
inline int legendre(std::int64_t a, std::uint64_t p) {
  const auto r = static_cast<std::uint64_t>(floor_mod(a, static_cast<std::int64_t>(p)));
  if (r == 0) return 0;
  return powmod_u64(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// p-adic valuation of a nonzero integer; returns `cap` for zero.
inline unsigned valuation(const BigInt& x, std::uint64_t p, unsigned cap = 1u << 30) {
  if (x == 0) return cap;
  BigInt v = abs(x);
  unsigned k = 0;
  while (k < cap && v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

/// Splits n = p^v * u with p not dividing u.
inline std::pair<unsigned, std::uint64_t> split_valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

}  // namespace hypercong
