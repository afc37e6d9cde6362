#include <gtest/gtest.h>

#include "hypercong/padic_core.hpp"

using namespace hypercong;

TEST(PadicCore, InverseExamples) {
  const PrimePowerModulus m27(3, 3);
  EXPECT_EQ(inv(Residue(m27, 2)), Residue(m27, 14));
  for (std::uint64_t p : {3, 5, 7}) {
    const PrimePowerModulus m(p, 4);
    EXPECT_EQ(inv(Residue::one(m)), Residue::one(m));
  }
  EXPECT_THROW(inv(Residue(PrimePowerModulus(3, 2), 3)), NotAUnit);
}

TEST(PadicCore, InverseIsInvolutionOnUnits) {
  for (std::uint64_t p = 3; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    for (unsigned k = 1; k <= 4; ++k) {
      const PrimePowerModulus m(p, k);
      for (std::int64_t x = 1; x < 200; ++x) {
        if (x % static_cast<std::int64_t>(p) == 0) continue;
        const Residue r(m, x);
        ASSERT_EQ(inv(inv(r)), r);
        ASSERT_EQ(r * inv(r), Residue::one(m));
      }
    }
  }
}

TEST(PadicCore, LargeModulusUsesExactArithmetic) {
  // p^k beyond 2^63 switches representation without changing results
  const PrimePowerModulus big(199, 10);
  EXPECT_FALSE(big.is_native());
  const Residue a(big, BigInt("123456789123456789123"));
  EXPECT_EQ(a * inv(a), Residue::one(big));
  EXPECT_EQ((a * a).reduce(2), a.reduce(2) * a.reduce(2));
}

TEST(PadicCore, MixingModuliIsAHardError) {
  const Residue a(PrimePowerModulus(3, 2), 1), b(PrimePowerModulus(3, 3), 1);
  EXPECT_THROW(a + b, ModulusMismatch);
  EXPECT_THROW(a * b, ModulusMismatch);
}

TEST(PadicCore, BinomialExamples) {
  EXPECT_EQ(binomial_mod(10, 5, PrimePowerModulus(5, 2)), Residue(PrimePowerModulus(5, 2), 2));
  EXPECT_EQ(binomial_mod(4, 2, PrimePowerModulus(5, 1)), Residue(PrimePowerModulus(5, 1), 1));
  for (std::uint64_t n : {0, 7, 31}) EXPECT_EQ(binomial_mod(n, 0, PrimePowerModulus(7, 3)).value(), 1);
}

TEST(PadicCore, Babbage) {
  for (std::uint64_t p = 3; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    const PrimePowerModulus m(p, 2);
    for (std::uint64_t a = 1; a <= 6; ++a)
      for (std::uint64_t b = 1; b <= a; ++b)
        ASSERT_EQ(binomial_mod(a * p, b * p, m), binomial_mod(a, b, m)) << "p=" << p << " a=" << a << " b=" << b;
  }
}

TEST(PadicCore, WolstenholmeStrengthening) {
  for (std::uint64_t p = 5; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    const PrimePowerModulus m(p, 3);
    for (std::uint64_t a = 1; a <= 6; ++a)
      for (std::uint64_t b = 1; b <= a; ++b)
        ASSERT_EQ(binomial_mod(a * p, b * p, m), binomial_mod(a, b, m)) << "p=" << p << " a=" << a << " b=" << b;
  }
  // and it genuinely needs p >= 5: C(6, 3) = 20 vs C(2, 1) = 2 mod 27
  EXPECT_NE(binomial_mod(6, 3, PrimePowerModulus(3, 3)), binomial_mod(2, 1, PrimePowerModulus(3, 3)));
}

TEST(PadicCore, FermatQuotientExamples) {
  EXPECT_EQ(fermat_quotient_gamma(5, 1).value(), 1);
  // (4^2 - 1)/3 = 5
  EXPECT_EQ(fermat_quotient_gamma(3, 1).value(), 2);
  // (4^6 - 1)/7 = 585
  EXPECT_EQ(fermat_quotient_gamma(7, 3).value(), 585 % 343);
}

TEST(PadicCore, AlternatingHarmonicExamples) {
  const PrimePowerModulus m5(5, 1);
  EXPECT_EQ(alternating_harmonic(4, m5).value(), 1);
  EXPECT_TRUE(alternating_harmonic(0, m5).is_zero());
  EXPECT_EQ(alternating_harmonic(4, m5), fermat_quotient_gamma(5, 1));
  EXPECT_THROW(alternating_harmonic(5, m5), NotAUnit);
}

TEST(PadicCore, Eisenstein) {
  for (std::uint64_t p = 3; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    ASSERT_EQ(alternating_harmonic(p - 1, PrimePowerModulus(p, 1)), fermat_quotient_gamma(p, 1)) << p;
  }
}

TEST(PadicCore, ObservedCongruenceOrder) {
  const PrimePowerModulus m(5, 4);
  EXPECT_EQ(observed_congruence_order(Residue(m, 7), Residue(m, 7)), 4u);
  EXPECT_EQ(observed_congruence_order(Residue(m, 7), Residue(m, 7 + 25)), 2u);
  EXPECT_EQ(observed_congruence_order(Residue(m, 1), Residue(m, 2)), 0u);
}

TEST(PadicCore, CenteredRepresentative) {
  const PrimePowerModulus m(3, 3);
  EXPECT_EQ(Residue(m, 23).centered(), -4);
  EXPECT_EQ(Residue(m, -4).value(), 23);
  EXPECT_EQ(Residue(m, 18).valuation(), 2u);
}
