#pragma once

// Coefficients of the modular forms that appear on the right-hand side of
// the congruences: eta-quotient q-expansions, CM closed forms, and the
// coefficient tables of forms that are only available as printed data.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypercong/errors.hpp"
#include "hypercong/numtheory.hpp"
#include "hypercong/zeta_factors.hpp"

namespace hypercong {

/// prod_delta eta(delta tau)^e_delta
struct EtaQuotient {
  std::vector<std::pair<std::uint32_t, std::int32_t>> factors;  // (delta, exponent)

  /// sum delta * e / 24; must be a nonnegative integer.
  std::int64_t leading_power() const {
    std::int64_t s = 0;
    for (auto [delta, e] : factors) s += static_cast<std::int64_t>(delta) * e;
    if (s % 24 != 0 || s < 0)
      throw std::invalid_argument("eta quotient must have integral nonnegative order at infinity");
    return s / 24;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i)
      os << (i ? " " : "") << factors[i].first << '^' << factors[i].second;
    return os.str();
  }

  /// Parses "delta1^e1 delta2^e2 ..."; a bare "delta" means exponent 1.
  static EtaQuotient parse(const std::string& spec) {
    EtaQuotient out;
    std::istringstream is(spec);
    std::string tok;
    while (is >> tok) {
      const auto caret = tok.find('^');
      try {
        const long delta = std::stol(tok.substr(0, caret));
        const long e = caret == std::string::npos ? 1 : std::stol(tok.substr(caret + 1));
        if (delta <= 0) throw std::invalid_argument("scale must be positive");
        out.factors.emplace_back(static_cast<std::uint32_t>(delta), static_cast<std::int32_t>(e));
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad eta factor '" + tok + "'");
      }
    }
    if (out.factors.empty()) throw std::invalid_argument("empty eta quotient");
    return out;
  }
};

struct QExpansion {
  std::vector<std::int64_t> coefficients;  // coefficients[n-1] = a_n
  std::string provenance;

  std::int64_t at(std::uint64_t n) const {
    if (n < 1 || n > coefficients.size()) throw std::out_of_range("q-expansion index");
    return coefficients[n - 1];
  }
  std::size_t size() const { return coefficients.size(); }
};

namespace detail {

/// prod_{n>=1} (1 - x^n) up to x^(len-1), by the pentagonal number theorem.
inline std::vector<std::pair<std::size_t, std::int64_t>> euler_product_sparse(std::size_t len) {
  std::vector<std::pair<std::size_t, std::int64_t>> out{{0, 1}};
  for (std::int64_t k = 1;; ++k) {
    const auto a = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    const auto b = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (a >= len) break;
    const std::int64_t sign = k % 2 == 0 ? 1 : -1;
    out.emplace_back(a, sign);
    if (b < len) out.emplace_back(b, sign);
  }
  return out;
}

inline std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("eta expansion overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// First N coefficients a_1..a_N of the eta quotient's q-expansion.
inline QExpansion eta_expand(const EtaQuotient& quot, std::size_t terms) {
  if (terms > 1'000'000) throw TooLarge("eta expansion limited to 10^6 terms");
  const std::int64_t lead = quot.leading_power();
  if (lead == 0) throw std::invalid_argument("eta quotient has a constant term; a_1.. indexing needs order >= 1");
  QExpansion out;
  out.provenance = "eta quotient " + quot.to_string();
  if (terms == 0) return out;
  if (static_cast<std::size_t>(lead) > terms) {
    out.coefficients.assign(terms, 0);
    return out;
  }
  // series in q, indices 0..len-1, multiplied by q^lead afterwards
  const std::size_t len = terms + 1 - static_cast<std::size_t>(lead);
  std::vector<std::int64_t> series(len, 0);
  series[0] = 1;
  // multiplications before divisions keep the intermediate series small
  auto order = quot.factors;
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second > 0 && y.second < 0; });
  for (auto [delta, e] : order) {
    // E(q^delta) as a sparse series
    std::vector<std::pair<std::size_t, std::int64_t>> sparse;
    for (auto [idx, c] : detail::euler_product_sparse(len / delta + 1))
      if (idx * delta < len) sparse.emplace_back(idx * delta, c);
    for (std::int32_t i = 0; i < std::abs(e); ++i) {
      std::vector<std::int64_t> next(len, 0);
      if (e > 0) {
        for (std::size_t n = 0; n < len; ++n) {
          __int128 acc = 0;
          for (auto [idx, c] : sparse) {
            if (idx > n) break;
            acc += static_cast<__int128>(c) * series[n - idx];
          }
          next[n] = detail::checked(acc);
        }
      } else {
        // divide by E(q^delta): next * E = series
        for (std::size_t n = 0; n < len; ++n) {
          __int128 acc = series[n];
          for (auto [idx, c] : sparse) {
            if (idx == 0) continue;
            if (idx > n) break;
            acc -= static_cast<__int128>(c) * next[n - idx];
          }
          next[n] = detail::checked(acc);
        }
      }
      series = std::move(next);
    }
  }
  out.coefficients.assign(terms, 0);
  for (std::size_t i = 0; i < len; ++i) out.coefficients[i + static_cast<std::size_t>(lead) - 1] = series[i];
  return out;
}

/// eta(2 tau)^4 eta(4 tau)^4, weight 4 level 8.
inline EtaQuotient eta_weight4_level8() { return {{{2, 4}, {4, 4}}}; }
/// eta(4 tau)^6, weight 3 level 16, CM by Q(i).
inline EtaQuotient eta_weight3_level16() { return {{{4, 6}}}; }
/// eta(tau)^2 eta(2 tau) eta(4 tau) eta(8 tau)^2, weight 3 level 8, CM by Q(sqrt -2).
inline EtaQuotient eta_weight3_level8() { return {{{1, 2}, {2, 1}, {4, 1}, {8, 2}}}; }

enum class CmForm {
  d3_plus,   // eta(4 tau)^6: 2(a^2 - b^2), p = a^2 + b^2, a odd
  d3_minus,  // eta(tau)^2 eta(2 tau) eta(4 tau) eta(8 tau)^2: 2(2b^2 - a^2), p = a^2 + 2b^2
};

/// Closed-form CM coefficient; 0 when p has no representation.
inline std::int64_t cm_coefficient(CmForm form, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("cm_coefficient needs an odd prime");
  const auto pp = static_cast<std::int64_t>(p);
  for (std::int64_t a = 1; a * a <= pp; ++a) {
    const std::int64_t rest = pp - a * a;
    if (form == CmForm::d3_plus) {
      if (a % 2 == 0) continue;
      const auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest))));
      if (b > 0 && b * b == rest) return 2 * (a * a - b * b);
    } else {
      if (rest % 2 != 0) continue;
      const auto b = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(rest / 2))));
      if (b > 0 && b * b == rest / 2) return 2 * (2 * b * b - a * a);
    }
  }
  return 0;
}

/// a + b * sqrt(disc)
struct QuadraticInteger {
  std::int64_t a;
  std::int64_t b;
  std::int64_t disc;

  QuadraticInteger square() const { return {a * a + disc * b * b, 2 * a * b, disc}; }
  bool is_rational() const { return b == 0; }
};

enum class PrintedForm {
  g_level256,  // weight 3, level 256, character (-4|.), coefficients in Z[sqrt -2]
  f_level32,   // weight 3, level 32, character (-4|.), coefficients in Z[i]
};

namespace detail {

// q - 2 sqrt(-2) q^3 + 4 q^5 + 8 sqrt(-2) q^7 + q^9 + 10 sqrt(-2) q^11 + 20 q^13
//   - 8 sqrt(-2) q^15 - 10 q^17 - 10 sqrt(-2) q^19 + 32 q^21 - 8 sqrt(-2) q^23
//   + 9 q^25 - 20 sqrt(-2) q^27 + 20 q^29 + ...
inline const std::map<std::uint64_t, QuadraticInteger>& g_level256_table() {
  static const std::map<std::uint64_t, QuadraticInteger> t{
      {3, {0, -2, -2}},  {5, {4, 0, -2}},   {7, {0, 8, -2}},   {11, {0, 10, -2}},
      {13, {20, 0, -2}}, {17, {-10, 0, -2}}, {19, {0, -10, -2}}, {23, {0, -8, -2}},
      {29, {20, 0, -2}},
  };
  return t;
}

// q + 4i q^3 + 2 q^5 - 8i q^7 - 7 q^9 - 4i q^11 - 14 q^13 + 8i q^15 + 18 q^17
//   - 12i q^19 + 32 q^21 + 40i q^23 + ...
inline const std::map<std::uint64_t, QuadraticInteger>& f_level32_table() {
  static const std::map<std::uint64_t, QuadraticInteger> t{
      {3, {0, 4, -1}},   {5, {2, 0, -1}},   {7, {0, -8, -1}},  {11, {0, -4, -1}},
      {13, {-14, 0, -1}}, {17, {18, 0, -1}}, {19, {0, -12, -1}}, {23, {0, 40, -1}},
  };
  return t;
}

}  // namespace detail

inline QuadraticInteger printed_coefficient(PrintedForm form, std::uint64_t p) {
  const auto& table =
      form == PrintedForm::g_level256 ? detail::g_level256_table() : detail::f_level32_table();
  auto it = table.find(p);
  if (it == table.end())
    throw OutOfTable("no printed coefficient for p=" + std::to_string(p));
  return it->second;
}

/// d_p = (-8|p)(delta_p^2 - 2p^2) from the level-256 table.
inline std::int64_t printed_d_p(std::uint64_t p) {
  const QuadraticInteger sq = printed_coefficient(PrintedForm::g_level256, p).square();
  if (!sq.is_rational()) throw ConsistencyFailure("delta_p^2 is not rational");
  const auto pp = static_cast<std::int64_t>(p);
  return legendre(-8, p) * (sq.a - 2 * pp * pp);
}

/// a_p = (-4|p)(phi_p^2 - 2p^2) from the level-32 table.
inline std::int64_t printed_weight7_a_p(std::uint64_t p) {
  const QuadraticInteger sq = printed_coefficient(PrintedForm::f_level32, p).square();
  if (!sq.is_rational()) throw ConsistencyFailure("phi_p^2 is not rational");
  const auto pp = static_cast<std::int64_t>(p);
  return legendre(-4, p) * (sq.a - 2 * pp * pp);
}

/// b_p from Z_p(1, T) = (1 - p a_p T + p^5 T^2)(1 - b_p T + p^5 T^2) for d = 6.
inline std::int64_t solve_bp_from_zeta(const ZetaFactor& zf, std::int64_t a_p) {
  if (zf.d != 6 || zf.degree() != 4)
    throw std::invalid_argument("solve_bp_from_zeta needs the degree-4 factor for d=6");
  const auto p = static_cast<std::int64_t>(zf.p);
  const BigInt p5 = big_pow(zf.p, 5);
  const auto rep = factor_check(
      zf.coefficients,
      {FactorShape{"a_p factor", {CoefficientSpec::known(1), CoefficientSpec::known(BigInt(-p) * a_p),
                                  CoefficientSpec::known(p5)}},
       FactorShape{"b_p factor",
                   {CoefficientSpec::known(1), CoefficientSpec::unknown(), CoefficientSpec::known(p5)}}});
  return static_cast<std::int64_t>(-rep.factors[1].coefficients[1]);
}

}  // namespace hypercong
