#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hypercong/modular_forms.hpp"
#include "hypercong/trunc_hyper.hpp"

using namespace hypercong;

TEST(ModularForms, EtaExpansionExamples) {
  const auto a = eta_expand(eta_weight4_level8(), 10);
  EXPECT_EQ(a.at(1), 1);
  EXPECT_EQ(a.at(3), -4);
  EXPECT_EQ(a.at(5), -2);
  const auto c = eta_expand(eta_weight3_level16(), 200);
  for (std::uint64_t p : odd_primes_up_to(200))
    if (p % 4 == 3) EXPECT_EQ(c.at(p), 0) << p;
}

TEST(ModularForms, EtaParsing) {
  const auto q = EtaQuotient::parse("2^4 4^4");
  EXPECT_EQ(q.factors, eta_weight4_level8().factors);
  EXPECT_EQ(q.to_string(), "2^4 4^4");
  EXPECT_EQ(EtaQuotient::parse("1^24").leading_power(), 1);
  EXPECT_THROW(EtaQuotient::parse(""), std::invalid_argument);
  EXPECT_THROW(EtaQuotient::parse("x^2"), std::invalid_argument);
  EXPECT_THROW(eta_expand(EtaQuotient::parse("1^5"), 10), std::invalid_argument);
}

TEST(ModularForms, EtaProductOrderIrrelevant) {
  EtaQuotient a = EtaQuotient::parse("1^2 2^1 4^1 8^2");
  EtaQuotient b = EtaQuotient::parse("8^2 4^1 1^2 2^1");
  EXPECT_EQ(eta_expand(a, 600).coefficients, eta_expand(b, 600).coefficients);
  EXPECT_EQ(eta_expand(EtaQuotient::parse("2^4 4^4"), 300).coefficients,
            eta_expand(EtaQuotient::parse("4^4 2^2 2^2"), 300).coefficients);
  EXPECT_EQ(eta_expand(EtaQuotient::parse("1^-4 2^14"), 300).coefficients,
            eta_expand(EtaQuotient::parse("2^14 1^-4"), 300).coefficients);
}

TEST(ModularForms, CmClosedFormExamples) {
  EXPECT_EQ(cm_coefficient(CmForm::d3_plus, 5), -6);
  EXPECT_EQ(cm_coefficient(CmForm::d3_plus, 7), 0);
  EXPECT_EQ(cm_coefficient(CmForm::d3_minus, 3), 2);
  EXPECT_EQ(cm_coefficient(CmForm::d3_minus, 5), 0);
}

TEST(ModularForms, CmPlusMatchesEtaUpTo500) {
  const auto e = eta_expand(eta_weight3_level16(), 500);
  for (std::uint64_t p : odd_primes_up_to(500)) EXPECT_EQ(cm_coefficient(CmForm::d3_plus, p), e.at(p)) << p;
}

TEST(ModularForms, CmMinusMatchesEtaUpTo500) {
  const auto e = eta_expand(eta_weight3_level8(), 500);
  for (std::uint64_t p : odd_primes_up_to(500)) EXPECT_EQ(cm_coefficient(CmForm::d3_minus, p), e.at(p)) << p;
}

TEST(ModularForms, CmMinusClosedFormIsSignUniqueUpTo500) {
  // a and b are determined up to sign, so the closed form cannot depend on the search order
  for (std::uint64_t p : odd_primes_up_to(500)) {
    std::set<std::int64_t> values;
    const auto pp = static_cast<std::int64_t>(p);
    for (std::int64_t a = -30; a <= 30; ++a)
      for (std::int64_t b = -30; b <= 30; ++b)
        if (a * a + 2 * b * b == pp) values.insert(2 * (2 * b * b - a * a));
    if (values.empty()) {
      EXPECT_EQ(cm_coefficient(CmForm::d3_minus, p), 0);
    } else {
      ASSERT_EQ(values.size(), 1u);
      EXPECT_EQ(cm_coefficient(CmForm::d3_minus, p), *values.begin());
    }
  }
}

TEST(ModularForms, PrintedCoefficients) {
  const auto d3 = printed_coefficient(PrintedForm::g_level256, 3);
  EXPECT_EQ(d3.square().a, -8);
  EXPECT_TRUE(d3.square().is_rational());
  EXPECT_EQ(printed_coefficient(PrintedForm::g_level256, 5).a, 4);
  EXPECT_EQ(printed_coefficient(PrintedForm::f_level32, 3).square().a, -16);
  EXPECT_THROW(printed_coefficient(PrintedForm::g_level256, 31), OutOfTable);
  EXPECT_THROW(printed_coefficient(PrintedForm::f_level32, 29), OutOfTable);
  // the formula as printed, (-8|3)(-8 - 18)
  EXPECT_EQ(printed_d_p(3), -26);
}

TEST(ModularForms, SolveBpFromZeta) {
  ZetaEngine engine;
  const auto a = eta_expand(eta_weight4_level8(), 20);
  for (std::uint64_t p : {3, 5, 7}) {
    const auto& zf = engine.zeta(p, 6, 1);
    const std::int64_t b = solve_bp_from_zeta(zf, a.at(p));
    EXPECT_LE(std::fabs(static_cast<double>(b)), 2 * std::pow(static_cast<double>(p), 2.5));
    // OSZ at p: F_p(1) = b_p mod p^3
    EXPECT_EQ(truncated_sum(HyperParams(6, p), 1, 1, 3).value, Residue(PrimePowerModulus(p, 3), b)) << p;
  }
  EXPECT_EQ(solve_bp_from_zeta(engine.zeta(3, 6, 1), a.at(3)), 20);
  EXPECT_THROW(solve_bp_from_zeta(engine.zeta(3, 6, 1), a.at(3) + 1), FactorMismatch);
  EXPECT_THROW(solve_bp_from_zeta(engine.zeta(3, 4, 1), a.at(3)), std::invalid_argument);
}
