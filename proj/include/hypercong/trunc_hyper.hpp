#pragma once

// Truncated sums F_{p^s}(z) = sum_{n < p^s} alpha_n^d z^n with
// alpha_n = (1/2)_n / n! = C(2n, n) / 4^n, their Dwork quotients and the
// unit-root limit, plus executable forms of the congruences relating them.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercong/padic_core.hpp"

namespace hypercong {

struct HyperParams {
  unsigned d;
  std::uint64_t p;

  HyperParams(unsigned d_, std::uint64_t p_) : d(d_), p(p_) {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  }
};

struct EpsilonSign {
  int value;  // +1 or -1
};

/// (-1)^(d(p-1)/2)
inline EpsilonSign epsilon_p(const HyperParams& hp) {
  const std::uint64_t e = static_cast<std::uint64_t>(hp.d) * ((hp.p - 1) / 2);
  return {e % 2 == 0 ? 1 : -1};
}

/// Test hook: when set, the sums use alpha_r + 1 in place of alpha_r.
struct SumOptions {
  std::optional<std::uint64_t> corrupt_alpha;
};

struct TruncatedValue {
  HyperParams params;
  unsigned s;
  std::int64_t z;
  Residue value;
};

namespace detail {

struct NativeRing {
  using Elem = std::uint64_t;
  std::uint64_t m;

  Elem from(const BigInt& x) const { return static_cast<Elem>(floor_mod_big(x, BigInt(m))); }
  Elem mul(Elem a, Elem b) const { return mul_native(a, b, m); }
  Elem add(Elem a, Elem b) const { return add_native(a, b, m); }
  Elem pow(Elem a, std::uint64_t e) const { return pow_native(a, e, m); }
  Residue to_residue(Elem a, const PrimePowerModulus& mod) const { return {mod, BigInt(a)}; }
};

struct BigRing {
  using Elem = BigInt;
  BigInt m;

  Elem from(const BigInt& x) const { return floor_mod_big(x, m); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b % m; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  Elem pow(const Elem& a, std::uint64_t e) const { return boost::multiprecision::powm(a, e, m); }
  Residue to_residue(const Elem& a, const PrimePowerModulus& mod) const { return {mod, a}; }
};

/// Streams n = 0 .. p^levels - 1 once. The running sum is kept as A / Q with
/// Q the d-th power of the product of unit denominators, so the loop never
/// inverts; alpha_n = N p^v / D is tracked as unit parts plus valuation.
template <class Ring>
std::vector<Residue> stream_levels(const Ring& ring, const HyperParams& hp, std::int64_t z,
                                   unsigned levels, const PrimePowerModulus& mod,
                                   const SumOptions& opts) {
  using Elem = typename Ring::Elem;
  const std::uint64_t p = hp.p;
  const unsigned k = mod.exponent();
  const unsigned d = hp.d;

  std::vector<Elem> p_pow(k + 1);
  p_pow[0] = ring.from(1);
  for (unsigned i = 1; i <= k; ++i) p_pow[i] = ring.mul(p_pow[i - 1], ring.from(BigInt(p)));

  const Elem one = ring.from(1);
  const Elem zz = ring.from(BigInt(z));
  Elem num = one, den = one;      // alpha_n = num * p^v / den
  Elem num_d = one, den_d = one;  // num^d, den^d
  Elem zpow = one;
  unsigned long long v = 0;
  Elem acc = one;  // sum so far is acc / den_d

  auto corrupted_term = [&](std::uint64_t) {
    // (alpha_r + 1)^d z^r over den^d
    const Elem alpha_num =
        ring.add(v < k ? ring.mul(num, p_pow[v]) : ring.from(0), den);
    return ring.mul(ring.pow(alpha_num, d), zpow);
  };
  if (opts.corrupt_alpha && *opts.corrupt_alpha == 0) acc = corrupted_term(0);

  std::vector<Residue> out;
  out.reserve(levels + 1);
  auto finish = [&] {
    const Residue q = ring.to_residue(den_d, mod);
    out.push_back(ring.to_residue(acc, mod) * q.inverse());
  };
  finish();  // F_1 = 1

  std::uint64_t next_level = p;
  const std::uint64_t total = ipow(p, levels);
  for (std::uint64_t n = 1; n < total; ++n) {
    auto [vn, un] = split_valuation(2 * n - 1, p);
    auto [vd, ud] = split_valuation(2 * n, p);
    v = v + vn - vd;
    const Elem eu = ring.from(BigInt(un));
    const Elem ed = ring.from(BigInt(ud));
    num = ring.mul(num, eu);
    den = ring.mul(den, ed);
    num_d = ring.mul(num_d, ring.pow(eu, d));
    const Elem ed_d = ring.pow(ed, d);
    den_d = ring.mul(den_d, ed_d);
    acc = ring.mul(acc, ed_d);
    zpow = ring.mul(zpow, zz);
    if (opts.corrupt_alpha && *opts.corrupt_alpha == n) {
      acc = ring.add(acc, corrupted_term(n));
    } else if (static_cast<unsigned long long>(d) * v < k) {
      acc = ring.add(acc, ring.mul(ring.mul(num_d, zpow), p_pow[d * v]));
    }
    if (n + 1 == next_level) {
      finish();
      next_level *= p;
    }
  }
  return out;
}

}  // namespace detail

/// F_{p^j}(z) mod p^k for j = 0..levels, from one pass over p^levels terms.
inline std::vector<Residue> truncated_sum_levels(const HyperParams& hp, std::int64_t z,
                                                 unsigned levels, unsigned k,
                                                 const SumOptions& opts = {}) {
  const PrimePowerModulus mod(hp.p, k);
  if (mod.is_native())
    return detail::stream_levels(detail::NativeRing{mod.native_value()}, hp, z, levels, mod, opts);
  return detail::stream_levels(detail::BigRing{mod.value()}, hp, z, levels, mod, opts);
}

inline TruncatedValue truncated_sum(const HyperParams& hp, unsigned s, std::int64_t z, unsigned k,
                                    const SumOptions& opts = {}) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  auto levels = truncated_sum_levels(hp, z, s, k, opts);
  return {hp, s, z, levels.back()};
}

/// alpha_r = C(2r, r) / 4^r mod p^k.
inline Residue alpha(std::uint64_t r, const PrimePowerModulus& m) {
  return binomial_mod(2 * r, r, m) * Residue(m, std::int64_t{4}).inverse().pow(r);
}

/// alpha_0 .. alpha_{count-1} mod p^k by the streaming recurrence.
inline std::vector<Residue> alpha_table(std::uint64_t count, const PrimePowerModulus& m) {
  const std::uint64_t p = m.prime();
  std::vector<Residue> out;
  out.reserve(count);
  Residue unit = Residue::one(m);
  long long v = 0;
  for (std::uint64_t n = 0; n < count; ++n) {
    if (n > 0) {
      auto [vn, un] = split_valuation(2 * n - 1, p);
      auto [vd, ud] = split_valuation(2 * n, p);
      v += static_cast<long long>(vn) - static_cast<long long>(vd);
      unit *= Residue(m, BigInt(un)) * Residue(m, BigInt(ud)).inverse();
    }
    if (v >= static_cast<long long>(m.exponent()))
      out.push_back(Residue::zero(m));
    else
      out.push_back(unit * Residue(m, big_pow(p, static_cast<unsigned>(v))));
  }
  return out;
}

/// Consecutive quotients F_{p^(s+1)}(z) / F_{p^s}(z), the s-th known mod p^(s+1).
inline std::vector<PAdicApprox> dwork_quotients(const HyperParams& hp, std::int64_t z,
                                                unsigned s_max, const SumOptions& opts = {}) {
  if (s_max < 1) throw std::invalid_argument("s_max must be >= 1");
  const auto sums = truncated_sum_levels(hp, z, s_max, s_max, opts);
  if (!sums[1].reduce(1).is_unit())
    throw NotAUnit("F_p(" + std::to_string(z) + ") is divisible by p=" + std::to_string(hp.p));
  std::vector<PAdicApprox> out;
  for (unsigned s = 0; s < s_max; ++s) {
    const Residue num = sums[s + 1].reduce(s + 1);
    const Residue den = sums[s].reduce(s + 1);
    if (!den.is_unit())
      throw ConsistencyFailure("F_{p^" + std::to_string(s) + "} is not a unit");
    out.push_back({num * den.inverse()});
    if (s > 0 && !(out[s].residue.reduce(s) == out[s - 1].residue.reduce(s)))
      throw ConsistencyFailure("Dwork quotients " + std::to_string(s - 1) + " and " +
                               std::to_string(s) + " disagree mod p^" + std::to_string(s));
  }
  return out;
}

/// The unit root f(z) mod p^N, as F_{p^N}(z) / F_{p^(N-1)}(z).
inline PAdicApprox unit_root_limit(const HyperParams& hp, std::int64_t z, unsigned precision,
                                   const SumOptions& opts = {}) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  const auto sums = truncated_sum_levels(hp, z, precision, precision, opts);
  if (!sums[1].is_unit())
    throw NotAUnit("F_p(" + std::to_string(z) + ") is divisible by p=" + std::to_string(hp.p));
  const Residue& den = sums[precision - 1];
  if (!den.is_unit()) throw ConsistencyFailure("lower truncation is not a unit");
  return {sums[precision] * den.inverse()};
}

/// G_1(z) = 2 sum_{t <= (p-1)/2} (sum_{j=1}^{2t} (-1)^(j-1)/j) alpha_t^d z^t mod p^k.
inline Residue g1_sum(const HyperParams& hp, std::int64_t z, unsigned k) {
  if (k < 1 || k > 2) throw std::invalid_argument("g1_sum supports k = 1 or 2");
  const PrimePowerModulus m(hp.p, k);
  const std::uint64_t half = (hp.p - 1) / 2;
  const auto alphas = alpha_table(half + 1, m);
  const Residue zz(m, z);
  Residue acc = Residue::zero(m);
  Residue harmonic = Residue::zero(m);
  Residue zpow = Residue::one(m);
  for (std::uint64_t t = 0; t <= half; ++t) {
    if (t > 0) {
      // extend the alternating sum from 2t-2 to 2t terms
      harmonic += Residue(m, static_cast<std::int64_t>(2 * t - 1)).inverse();
      harmonic -= Residue(m, static_cast<std::int64_t>(2 * t)).inverse();
      zpow *= zz;
    }
    acc += harmonic * alphas[t].pow(hp.d) * zpow;
  }
  return acc + acc;
}

struct SplitWitness {
  std::uint64_t r, r_prime, t;
  bool divisible_case;  // t > p/2: only p | alpha_r is claimed
  Residue lhs, rhs;     // mod p^2
  bool holds;
};

/// alpha_r against alpha_{r'} alpha_t (1 - gamma p r' + 2 p r' sum_{j<=2t} (-1)^(j-1)/j),
/// r = p r' + t, using a precomputed alpha table mod p^2 (size > r).
inline SplitWitness check_lemma_split(std::uint64_t p, std::uint64_t r,
                                      const std::vector<Residue>& alphas) {
  const PrimePowerModulus m(p, 2);
  if (r >= alphas.size() || !(alphas[r].modulus() == m))
    throw std::invalid_argument("alpha table must cover r mod p^2");
  const std::uint64_t rp = r / p, t = r % p;
  const Residue& lhs = alphas[r];
  if (2 * t > p) return {r, rp, t, true, lhs, Residue::zero(m), lhs.valuation() >= 1};
  const Residue gamma = fermat_quotient_gamma(p, 2);
  const Residue pr(m, BigInt(p) * rp);
  const Residue corr = Residue::one(m) - gamma * pr +
                       Residue(m, std::int64_t{2}) * pr * alternating_harmonic(2 * t, m);
  const Residue rhs = alphas[rp] * alphas[t] * corr;
  return {r, rp, t, false, lhs, rhs, lhs == rhs};
}

inline SplitWitness check_lemma_split(const HyperParams& hp, std::uint64_t r) {
  return check_lemma_split(hp.p, r, alpha_table(r + 1, PrimePowerModulus(hp.p, 2)));
}

struct SymmetryWitness {
  bool holds;
  std::optional<std::uint64_t> first_failure;  // offending r
};

/// alpha_{(p-1)/2 - r} == (-1)^((p-1)/2) alpha_r mod p for all r <= (p-1)/2,
/// and coefficient-wise z^((p-1)/2) F_p(1/z) == eps_p F_p(z) mod p.
inline SymmetryWitness check_symmetry(const HyperParams& hp) {
  const PrimePowerModulus m(hp.p, 1);
  const std::uint64_t half = (hp.p - 1) / 2;
  const auto alphas = alpha_table(hp.p, m);
  const Residue sign(m, std::int64_t{half % 2 == 0 ? 1 : -1});
  const Residue eps(m, std::int64_t{epsilon_p(hp).value});
  for (std::uint64_t r = 0; r <= half; ++r) {
    if (!(alphas[half - r] == sign * alphas[r])) return {false, r};
    if (!(alphas[half - r].pow(hp.d) == eps * alphas[r].pow(hp.d))) return {false, r};
  }
  for (std::uint64_t r = half + 1; r < hp.p; ++r)
    if (!alphas[r].is_zero()) return {false, r};
  return {true, std::nullopt};
}

}  // namespace hypercong
