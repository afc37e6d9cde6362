#pragma once

// Finite fields F_q, q = p^k, realised as F_p[x]/(f) with tables of
// generator powers, discrete logarithms and traces.
//
// An element is encoded by the index sum_i c_i p^i of its coefficient
// vector (c_0 .. c_{k-1}). "Smallest" for both the modulus polynomial and
// the generator means lexicographically smallest coefficient list read from
// the constant term upward.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercong/errors.hpp"
#include "hypercong/numtheory.hpp"

namespace hypercong {

struct FieldOptions {
  /// Use the (skip+1)-th primitive element in the canonical order instead
  /// of the first. Different generators give different but equivalent
  /// character tables.
  std::uint32_t generator_skip = 0;
  std::uint64_t max_q = 2'000'000;
};

/// Exponent m of the character omega^m, omega(g) = exp(2 pi i / (q-1)).
struct CharacterIndex {
  std::uint64_t m;
};

namespace detail {

/// Dense polynomials over F_p, lowest coefficient first, used while
/// building a field.
class PolyFp {
 public:
  explicit PolyFp(std::uint64_t p) : p_(p) {}

  using Poly = std::vector<std::uint64_t>;

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Poly mod(Poly a, const Poly& f) const {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = inv(f.back());
    while (a.size() > df) {
      const std::uint64_t c = a.back() * lead_inv % p_;
      const std::size_t shift = a.size() - 1 - df;
      for (std::size_t i = 0; i <= df; ++i)
        a[shift + i] = (a[shift + i] + (p_ - c) * f[i]) % p_;
      trim(a);
    }
    return a;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& f) const {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p_;
    return mod(std::move(c), f);
  }

  Poly powmod(Poly a, std::uint64_t e, const Poly& f) const {
    Poly r = mod({1}, f);
    a = mod(std::move(a), f);
    while (e) {
      if (e & 1) r = mulmod(r, a, f);
      a = mulmod(a, a, f);
      e >>= 1;
    }
    return r;
  }

  Poly sub(Poly a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p_ - b[i]) % p_;
    trim(a);
    return a;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  /// Rabin's test for a monic f of degree k.
  bool irreducible(const Poly& f) const {
    const std::size_t k = f.size() - 1;
    if (k == 1) return true;
    const Poly x{0, 1};
    auto frob = [&](std::size_t times) {
      Poly r = x;
      for (std::size_t i = 0; i < times; ++i) r = powmod(r, p_, f);
      return r;
    };
    if (!sub(frob(k), x).empty()) return false;
    for (std::uint64_t r : prime_factors(k)) {
      Poly g = gcd(f, sub(frob(k / r), x));
      if (g.size() != 1) return false;
    }
    return true;
  }

  std::uint64_t inv(std::uint64_t a) const { return powmod_u64(a, p_ - 2, p_); }

 private:
  std::uint64_t p_;
};

/// Enumerates coefficient vectors of length k with c_0 as the most
/// significant digit, i.e. lexicographic order from the constant term up.
inline bool next_lex(std::vector<std::uint64_t>& c, std::uint64_t p) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

}  // namespace detail

class FieldTable {
 public:
  std::uint64_t p() const noexcept { return p_; }
  unsigned k() const noexcept { return k_; }
  std::uint64_t q() const noexcept { return q_; }
  std::uint64_t order() const noexcept { return q_ - 1; }

  /// Monic modulus f, coefficients c_0 .. c_k (c_k = 1).
  const std::vector<std::uint64_t>& modulus_poly() const noexcept { return modulus_; }
  std::uint32_t generator() const noexcept { return power_[order() > 1 ? 1 : 0]; }
  const std::vector<std::uint32_t>& power_table() const noexcept { return power_; }
  const std::vector<std::uint32_t>& dlog_table() const noexcept { return dlog_; }
  const std::vector<std::uint32_t>& trace_table() const noexcept { return trace_; }

  std::uint32_t power(std::uint64_t j) const { return power_[j % order()]; }

  std::uint64_t dlog(std::uint32_t x) const {
    if (x == 0 || x >= q_) throw ZeroArgument("dlog of zero or out-of-range element");
    return dlog_[x];
  }

  std::uint32_t trace(std::uint32_t x) const { return trace_[x]; }

  std::vector<std::uint64_t> coefficients(std::uint32_t x) const {
    std::vector<std::uint64_t> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = x % p_;
      x /= static_cast<std::uint32_t>(p_);
    }
    return c;
  }

  std::uint32_t from_coefficients(const std::vector<std::uint64_t>& c) const {
    std::uint64_t x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p_ + c[i] % p_;
    return static_cast<std::uint32_t>(x);
  }

  /// Image of an integer under Z -> F_p -> F_q.
  std::uint32_t from_int(std::int64_t t) const {
    return static_cast<std::uint32_t>(floor_mod(t, static_cast<std::int64_t>(p_)));
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint32_t da = a % p_, db = b % p_;
      out += static_cast<std::uint32_t>((da + db) % p_) * scale;
      a /= static_cast<std::uint32_t>(p_);
      b /= static_cast<std::uint32_t>(p_);
      scale *= static_cast<std::uint32_t>(p_);
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t a) const {
    std::uint32_t out = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      const std::uint32_t da = a % p_;
      out += static_cast<std::uint32_t>((p_ - da) % p_) * scale;
      a /= static_cast<std::uint32_t>(p_);
      scale *= static_cast<std::uint32_t>(p_);
    }
    return out;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return power(dlog_[a] + dlog_[b]);
  }

  std::uint32_t inverse(std::uint32_t a) const {
    if (a == 0) throw ZeroArgument("inverse of zero");
    return power(order() - dlog_[a]);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return power(static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(dlog_[a]) * e % order()));
  }

  /// x + x^p + ... + x^(p^(k-1)) evaluated through the power table.
  std::uint32_t trace_by_frobenius(std::uint32_t x) const {
    if (x == 0) return 0;
    std::uint32_t acc = 0;
    std::uint64_t e = dlog_[x];
    for (unsigned i = 0; i < k_; ++i) {
      acc = add(acc, power(e));
      e = static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * p_ % order());
    }
    return acc;
  }

  /// One line per element: index, coefficients, dlog ("-" for zero), trace.
  void dump(std::ostream& os) const {
    for (std::uint32_t x = 0; x < q_; ++x) {
      os << x << " [";
      const auto c = coefficients(x);
      for (unsigned i = 0; i < k_; ++i) os << (i ? "," : "") << c[i];
      os << "] ";
      if (x == 0)
        os << '-';
      else
        os << dlog_[x];
      os << ' ' << trace_[x] << '\n';
    }
  }

  friend FieldTable build_field(std::uint64_t p, unsigned k, const FieldOptions& opts);

 private:
  std::uint64_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint32_t> power_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> trace_;
};

inline FieldTable build_field(std::uint64_t p, unsigned k, const FieldOptions& opts = {}) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("field characteristic must be an odd prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > opts.max_q / p) throw TooLarge("field size exceeds configured bound");
    q *= p;
  }
  FieldTable tbl;
  tbl.p_ = p;
  tbl.k_ = k;
  tbl.q_ = q;

  const detail::PolyFp ring(p);
  using Poly = detail::PolyFp::Poly;

  // smallest monic irreducible; exhaustive, so it always terminates
  std::vector<std::uint64_t> low(k, 0);
  for (;;) {
    Poly f(low.begin(), low.end());
    f.push_back(1);
    if (ring.irreducible(f)) {
      tbl.modulus_ = f;
      break;
    }
    if (!detail::next_lex(low, p)) throw ConsistencyFailure("no irreducible polynomial found");
  }

  const std::uint64_t order = q - 1;
  const auto factors = prime_factors(order);
  auto to_index = [&](const Poly& a) {
    std::uint64_t x = 0;
    for (std::size_t i = a.size(); i-- > 0;) x = x * p + a[i];
    return static_cast<std::uint32_t>(x);
  };
  const Poly one{1};

  Poly gen;
  std::uint32_t skip = opts.generator_skip;
  std::vector<std::uint64_t> cand(k, 0);
  while (detail::next_lex(cand, p)) {
    Poly g(cand.begin(), cand.end());
    detail::PolyFp::trim(g);
    bool primitive = ring.mod(ring.sub(ring.powmod(g, order, tbl.modulus_), one), tbl.modulus_).empty();
    for (std::uint64_t r : factors) {
      if (!primitive) break;
      Poly h = ring.powmod(g, order / r, tbl.modulus_);
      primitive = !(h.size() == 1 && h[0] == 1);
    }
    if (order == 1) primitive = (g == one);
    if (!primitive) continue;
    if (skip == 0) {
      gen = g;
      break;
    }
    --skip;
  }
  if (gen.empty()) throw std::invalid_argument("not enough primitive elements for generator_skip");

  tbl.power_.resize(order);
  tbl.dlog_.assign(q, 0);
  Poly cur = one;
  for (std::uint64_t j = 0; j < order; ++j) {
    const std::uint32_t x = to_index(cur);
    if (x == 0 || (j > 0 && x == 1)) throw ConsistencyFailure("generator order is not q-1");
    tbl.power_[j] = x;
    tbl.dlog_[x] = static_cast<std::uint32_t>(j);
    cur = ring.mulmod(cur, gen, tbl.modulus_);
  }

  // trace is F_p-linear: evaluate it on the basis 1, x, ..., x^(k-1)
  std::vector<std::uint32_t> basis_trace(k);
  for (unsigned i = 0; i < k; ++i) {
    Poly mono(i + 1, 0);
    mono[i] = 1;
    const std::uint32_t tr = tbl.trace_by_frobenius(to_index(ring.mod(mono, tbl.modulus_)));
    if (tr >= p) throw ConsistencyFailure("trace left the prime field");
    basis_trace[i] = tr;
  }
  tbl.trace_.resize(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    std::uint64_t acc = 0;
    std::uint32_t y = x;
    for (unsigned i = 0; i < k; ++i) {
      acc += (y % p) * basis_trace[i];
      y /= static_cast<std::uint32_t>(p);
    }
    tbl.trace_[x] = static_cast<std::uint32_t>(acc % p);
  }
  return tbl;
}

/// Exponent of omega^m(x) as an element of Z/(q-1).
inline std::uint64_t omega_eval(const FieldTable& tbl, CharacterIndex m, std::uint32_t x) {
  if (x == 0) throw ZeroArgument("characters are evaluated on nonzero elements only");
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(m.m % tbl.order()) *
                                    tbl.dlog(x) % tbl.order());
}

/// The quadratic character phi = omega^((q-1)/2).
inline CharacterIndex quadratic_character(const FieldTable& tbl) { return {tbl.order() / 2}; }

}  // namespace hypercong
