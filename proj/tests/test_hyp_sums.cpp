#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "hypercong/hyp_sums.hpp"

using namespace hypercong;

namespace {

using FieldPtr = std::shared_ptr<const FieldTable>;

FieldPtr field(std::uint64_t p, unsigned k, FieldOptions opts = {}) {
  return std::make_shared<const FieldTable>(build_field(p, k, opts));
}

// every prime power q <= bound with odd p
std::vector<std::pair<std::uint64_t, unsigned>> prime_powers(std::uint64_t bound) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p : odd_primes_up_to(bound)) {
    std::uint64_t q = p;
    for (unsigned k = 1; q <= bound; ++k, q *= p) out.push_back({p, k});
  }
  return out;
}

}  // namespace

TEST(HypSums, GaussSumIdentities) {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 2}, {7, 2}, {3, 4}, {101, 1}}) {
    auto f = field(p, k);
    const auto g = gauss_table(f);
    const long double q = static_cast<long double>(f->q());
    EXPECT_NEAR(g.value(0).real(), -1.0L, 1e-9);
    EXPECT_NEAR(g.value(0).imag(), 0.0L, 1e-9);
    const std::uint64_t n = f->order();
    const std::uint64_t dlog_minus_one = f->dlog(f->from_int(-1));
    for (std::uint64_t m = 1; m < n; ++m) {
      EXPECT_NEAR(std::norm(g.value(m)), q, 1e-7 * q);
      // g(m) g(-m) = omega^m(-1) q, and omega^m(-1) = (-1)^m as -1 = g^(n/2)
      const auto prod = g.value(m) * g.value(n - m);
      const long double sign = (m * dlog_minus_one / (n / 2)) % 2 == 0 ? 1 : -1;
      EXPECT_NEAR(prod.real(), sign * q, 1e-7 * q) << "q=" << f->q() << " m=" << m;
      EXPECT_NEAR(prod.imag(), 0, 1e-7 * q);
    }
  }
}

TEST(HypSums, SmallestExample) {
  auto f = field(3, 1);
  EXPECT_EQ(h_value_gauss(f, 2, f->from_int(1)).value, -1);
  EXPECT_EQ(h_value_count(*f, 2, f->from_int(1)).value, -1);
  EXPECT_EQ(point_count(*f, 2, f->from_int(1)), 1);
}

TEST(HypSums, PointCountFormula) {
  // count = ((q-2)^d - (-1)^d)/(q-1) - (-1)^d H_q(t), with H from Gauss sums
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    auto f = field(p, k);
    for (unsigned d = 2; d <= 4; ++d)
      for (std::uint32_t t = 1; t < f->q(); ++t) {
        const std::int64_t h = h_value_gauss(f, d, t).value;
        const BigInt formula = point_count_main_term(f->q(), d) - (d % 2 == 0 ? 1 : -1) * BigInt(h);
        ASSERT_EQ(point_count(*f, d, t), formula) << "q=" << f->q() << " d=" << d << " t=" << t;
      }
  }
}

TEST(HypSums, GaussEqualsCountUpTo121) {
  for (auto [p, k] : prime_powers(121)) {
    auto f = field(p, k);
    const auto g = gauss_table(f);
    for (unsigned d = 2; d <= 4; ++d)
      for (std::uint32_t t = 1; t < f->q(); ++t) {
        const auto hg = h_value_gauss(g, d, t);
        ASSERT_LT(hg.residual, 0.01);
        ASSERT_EQ(hg.value, h_value_count(*f, d, t).value) << "q=" << f->q() << " d=" << d << " t=" << t;
      }
  }
}

TEST(HypSums, GaussEqualsCountHigherDegree) {
  for (auto [p, k] : prime_powers(27)) {
    auto f = field(p, k);
    const auto g = gauss_table(f);
    for (unsigned d = 5; d <= 6; ++d)
      for (std::uint32_t t = 1; t < f->q(); ++t)
        ASSERT_EQ(h_value_gauss(g, d, t).value, h_value_count(*f, d, t).value)
            << "q=" << f->q() << " d=" << d << " t=" << t;
  }
}

TEST(HypSums, GeneratorIndependence) {
  for (auto [p, k] : prime_powers(49)) {
    auto a = field(p, k);
    FieldOptions opts;
    opts.generator_skip = 1;
    if (a->order() <= 2) continue;  // a single primitive element
    auto b = field(p, k, opts);
    ASSERT_NE(a->generator(), b->generator());
    for (unsigned d = 2; d <= 4; ++d)
      for (std::uint32_t t = 1; t < a->q(); ++t)
        ASSERT_EQ(h_value_gauss(a, d, t).value, h_value_gauss(b, d, t).value) << a->q() << " " << d << " " << t;
  }
}

TEST(HypSums, AdditiveCharacterIndependence) {
  for (auto [p, k] : prime_powers(49)) {
    auto f = field(p, k);
    const auto base = gauss_table(f);
    for (std::uint64_t a = 2; a < p && a <= 4; ++a) {
      const auto other = gauss_table(f, 53, a);
      for (unsigned d = 2; d <= 4; ++d)
        for (std::uint32_t t = 1; t < f->q(); ++t)
          ASSERT_EQ(h_value_gauss(base, d, t).value, h_value_gauss(other, d, t).value);
    }
  }
  EXPECT_THROW(gauss_table(field(5, 1), 53, 5), std::invalid_argument);
}

TEST(HypSums, WeilBound) {
  for (auto [p, k] : prime_powers(81)) {
    auto f = field(p, k);
    const auto g = gauss_table(f);
    for (unsigned d = 2; d <= 5; ++d)
      for (std::uint32_t t = 1; t < f->q(); ++t) {
        const double h = static_cast<double>(h_value_gauss(g, d, t).value);
        ASSERT_LE(std::fabs(h), d * std::pow(static_cast<double>(f->q()), (d - 1) / 2.0) + 1e-9);
      }
  }
}

TEST(HypSums, HasseDavenport) {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}, {5, 2}, {3, 3}, {13, 2}}) {
    const auto g = gauss_table(field(p, k));
    for (std::uint64_t m = 0; m < g.field().order(); ++m) {
      const auto w = hasse_davenport_check(g, m);
      ASSERT_TRUE(w.holds) << "q=" << g.q() << " m=" << m << " err=" << w.error;
    }
  }
}

TEST(HypSums, PrecisionTiersAgree) {
  auto f = field(3, 5);
  for (unsigned bits : {53u, 64u, 113u}) {
    const auto g = gauss_table(f, bits);
    EXPECT_EQ(g.precision_bits(), bits);
    for (std::uint32_t t : {1u, 2u})
      EXPECT_EQ(h_value_gauss(g, 5, t).value, h_value_count(*f, 5, t).value) << bits;
  }
  EXPECT_EQ(precision_tier(60), 64u);
  EXPECT_EQ(precision_tier(106), 113u);
  EXPECT_THROW(precision_tier(200), PrecisionExceeded);
}

TEST(HypSums, RejectsZeroParameter) {
  auto f = field(5, 1);
  EXPECT_THROW(h_value_gauss(f, 3, 0), ZeroArgument);
  EXPECT_THROW(point_count(*f, 3, 0), ZeroArgument);
}
