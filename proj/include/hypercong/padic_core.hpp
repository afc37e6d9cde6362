#pragma once

// Exact arithmetic in Z/p^kZ for odd primes p.
//
// Values are stored in a native 64-bit word while p^k < 2^63 (products go
// through unsigned __int128) and in an arbitrary-precision integer above
// that. The choice is made per modulus and never leaks through the
// interface.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "hypercong/errors.hpp"
#include "hypercong/numtheory.hpp"

namespace hypercong {

class PrimePowerModulus {
 public:
  static constexpr std::uint64_t kNativeLimit = std::uint64_t{1} << 63;

  PrimePowerModulus(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("modulus prime must be an odd prime");
    if (k < 1) throw std::invalid_argument("modulus exponent must be >= 1");
    big_ = big_pow(p, k);
    if (big_ < kNativeLimit) native_ = static_cast<std::uint64_t>(big_);
  }

  std::uint64_t prime() const noexcept { return p_; }
  unsigned exponent() const noexcept { return k_; }
  bool is_native() const noexcept { return native_ != 0; }
  /// p^k as a machine word; only meaningful when is_native().
  std::uint64_t native_value() const noexcept { return native_; }
  const BigInt& value() const noexcept { return big_; }

  PrimePowerModulus with_exponent(unsigned k) const { return {p_, k}; }

  friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) noexcept {
    return a.p_ == b.p_ && a.k_ == b.k_;
  }

 private:
  std::uint64_t p_;
  unsigned k_;
  std::uint64_t native_ = 0;
  BigInt big_;
};

namespace detail {

inline std::uint64_t mul_native(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  if (m <= (std::uint64_t{1} << 32)) return a * b % m;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t add_native(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;  // a, b < 2^63 so no wrap
  return s >= m ? s - m : s;
}

inline std::uint64_t sub_native(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t pow_native(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  while (e) {
    if (e & 1) r = mul_native(r, b, m);
    b = mul_native(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Extended Euclid; returns 0 when gcd(a, m) != 1.
inline std::uint64_t inverse_native(std::uint64_t a, std::uint64_t m) {
  __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) return 0;
  if (s0 < 0) s0 += m;
  return static_cast<std::uint64_t>(s0);
}

inline BigInt inverse_big(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    BigInt s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1) return 0;
  if (s0 < 0) s0 += m;
  return s0;
}

inline BigInt floor_mod_big(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace detail

/// An element of Z/p^kZ.
class Residue {
 public:
  Residue(const PrimePowerModulus& m, std::int64_t v) : mod_(m) {
    if (mod_.is_native())
      small_ = static_cast<std::uint64_t>(detail::floor_mod_big(BigInt(v), mod_.value()));
    else
      big_ = detail::floor_mod_big(BigInt(v), mod_.value());
  }

  Residue(const PrimePowerModulus& m, const BigInt& v) : mod_(m) {
    if (mod_.is_native())
      small_ = static_cast<std::uint64_t>(detail::floor_mod_big(v, mod_.value()));
    else
      big_ = detail::floor_mod_big(v, mod_.value());
  }

  static Residue zero(const PrimePowerModulus& m) { return {m, std::int64_t{0}}; }
  static Residue one(const PrimePowerModulus& m) { return {m, std::int64_t{1}}; }

  const PrimePowerModulus& modulus() const noexcept { return mod_; }
  std::uint64_t prime() const noexcept { return mod_.prime(); }

  /// Canonical representative in [0, p^k).
  BigInt value() const { return mod_.is_native() ? BigInt(small_) : big_; }

  /// Representative in (-p^k/2, p^k/2].
  BigInt centered() const {
    BigInt v = value();
    if (2 * v > mod_.value()) v -= mod_.value();
    return v;
  }

  bool is_zero() const { return mod_.is_native() ? small_ == 0 : big_ == 0; }
  bool is_unit() const {
    return mod_.is_native() ? small_ % mod_.prime() != 0 : big_ % mod_.prime() != 0;
  }

  /// p-adic valuation of the representative, capped at k.
  unsigned valuation() const {
    if (mod_.is_native()) {
      if (small_ == 0) return mod_.exponent();
      return split_valuation(small_, mod_.prime()).first;
    }
    return hypercong::valuation(big_, mod_.prime(), mod_.exponent());
  }

  /// Image in Z/p^jZ for j <= k.
  Residue reduce(unsigned j) const {
    if (j > mod_.exponent()) throw std::invalid_argument("cannot reduce to a finer modulus");
    return {mod_.with_exponent(j), value()};
  }

  Residue operator-() const {
    if (mod_.is_native()) return from_native(mod_, small_ == 0 ? 0 : mod_.native_value() - small_);
    return {mod_, -big_};
  }

  friend Residue operator+(const Residue& a, const Residue& b) {
    a.require_same(b);
    if (a.mod_.is_native())
      return from_native(a.mod_, detail::add_native(a.small_, b.small_, a.mod_.native_value()));
    return {a.mod_, a.big_ + b.big_};
  }

  friend Residue operator-(const Residue& a, const Residue& b) {
    a.require_same(b);
    if (a.mod_.is_native())
      return from_native(a.mod_, detail::sub_native(a.small_, b.small_, a.mod_.native_value()));
    return {a.mod_, a.big_ - b.big_};
  }

  friend Residue operator*(const Residue& a, const Residue& b) {
    a.require_same(b);
    if (a.mod_.is_native())
      return from_native(a.mod_, detail::mul_native(a.small_, b.small_, a.mod_.native_value()));
    return {a.mod_, a.big_ * b.big_};
  }

  Residue& operator+=(const Residue& o) { return *this = *this + o; }
  Residue& operator-=(const Residue& o) { return *this = *this - o; }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }

  Residue pow(std::uint64_t e) const {
    if (mod_.is_native()) return from_native(mod_, detail::pow_native(small_, e, mod_.native_value()));
    return {mod_, boost::multiprecision::powm(big_, e, mod_.value())};
  }

  /// Multiplicative inverse by extended Euclid.
  Residue inverse() const {
    if (!is_unit())
      throw NotAUnit("residue " + to_string() + " is not a unit mod " + modulus_string());
    if (mod_.is_native())
      return from_native(mod_, detail::inverse_native(small_, mod_.native_value()));
    return {mod_, detail::inverse_big(big_, mod_.value())};
  }

  friend bool operator==(const Residue& a, const Residue& b) {
    a.require_same(b);
    return a.mod_.is_native() ? a.small_ == b.small_ : a.big_ == b.big_;
  }

  std::string to_string() const { return value().str(); }
  std::string modulus_string() const {
    return std::to_string(mod_.prime()) + "^" + std::to_string(mod_.exponent());
  }

  friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.to_string() << " mod " << r.modulus_string();
  }

 private:
  static Residue from_native(const PrimePowerModulus& m, std::uint64_t v) {
    Residue r(m, std::int64_t{0});
    r.small_ = v;
    return r;
  }

  void require_same(const Residue& o) const {
    if (!(mod_ == o.mod_))
      throw ModulusMismatch("residue arithmetic between " + modulus_string() + " and " +
                            o.modulus_string());
  }

  PrimePowerModulus mod_;
  std::uint64_t small_ = 0;
  BigInt big_;
};

/// A p-adic number known modulo p^precision.
struct PAdicApprox {
  Residue residue;

  unsigned precision() const noexcept { return residue.modulus().exponent(); }
};

inline Residue inv(const Residue& x) { return x.inverse(); }

/// C(n, r) mod p^k. Factors are split into p-power and unit parts so the
/// result is exact even when p divides the denominators.
inline Residue binomial_mod(std::uint64_t n, std::uint64_t r, const PrimePowerModulus& m) {
  if (r > n) throw std::invalid_argument("binomial_mod requires r <= n");
  if (r > n - r) r = n - r;
  const std::uint64_t p = m.prime();
  Residue num = Residue::one(m);
  Residue den = Residue::one(m);
  long long v = 0;
  for (std::uint64_t i = 1; i <= r; ++i) {
    auto [vn, un] = split_valuation(n - r + i, p);
    auto [vd, ud] = split_valuation(i, p);
    v += static_cast<long long>(vn) - static_cast<long long>(vd);
    num *= Residue(m, BigInt(un));
    den *= Residue(m, BigInt(ud));
  }
  if (v >= static_cast<long long>(m.exponent())) return Residue::zero(m);
  return num * den.inverse() * Residue(m, big_pow(p, static_cast<unsigned>(v)));
}

/// gamma = (4^(p-1) - 1)/p mod p^k; the division is exact in Z.
inline Residue fermat_quotient_gamma(std::uint64_t p, unsigned k) {
  const PrimePowerModulus m(p, k);
  const BigInt lifted_mod = big_pow(p, k + 1);
  const BigInt four_pow = boost::multiprecision::powm(BigInt(4), BigInt(p - 1), lifted_mod);
  BigInt numer = four_pow - 1;
  if (numer < 0) numer += lifted_mod;
  if (numer % p != 0) throw ConsistencyFailure("4^(p-1) - 1 not divisible by p");
  return {m, BigInt(numer / p)};
}

/// sum_{j=1}^{upper} (-1)^(j-1)/j mod p^k.
inline Residue alternating_harmonic(std::uint64_t upper, const PrimePowerModulus& m) {
  Residue acc = Residue::zero(m);
  for (std::uint64_t j = 1; j <= upper; ++j) {
    if (j % m.prime() == 0)
      throw NotAUnit("alternating harmonic sum needs 1/" + std::to_string(j) + " mod " +
                     std::to_string(m.prime()));
    const Residue term = Residue(m, static_cast<std::int64_t>(j)).inverse();
    if (j % 2 == 1)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

/// Largest j <= cap with a == b mod p^j; requires equal moduli.
inline unsigned observed_congruence_order(const Residue& lhs, const Residue& rhs) {
  return (lhs - rhs).valuation();
}

}  // namespace hypercong
