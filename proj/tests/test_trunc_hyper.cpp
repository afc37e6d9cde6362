#include <gtest/gtest.h>

#include "hypercong/trunc_hyper.hpp"

using namespace hypercong;

namespace {
std::vector<std::uint64_t> primes(std::uint64_t hi) { return odd_primes_up_to(hi); }
}  // namespace

TEST(TruncHyper, AlphaExamples) {
  EXPECT_EQ(alpha(0, PrimePowerModulus(7, 2)).value(), 1);
  EXPECT_EQ(alpha(2, PrimePowerModulus(5, 1)).value(), 1);
  EXPECT_EQ(alpha(2, PrimePowerModulus(3, 3)).value(), 24);
}

TEST(TruncHyper, TruncatedSumExamples) {
  for (unsigned d = 2; d <= 5; ++d)
    for (std::int64_t z : {1, -1, 7})
      EXPECT_EQ(truncated_sum(HyperParams(d, 5), 0, z, 3).value.value(), 1);
  EXPECT_EQ(truncated_sum(HyperParams(2, 3), 1, 1, 2).value.value(), 8);
  EXPECT_EQ(truncated_sum(HyperParams(4, 3), 1, 1, 3).value.value(), 23);
  EXPECT_TRUE(truncated_sum(HyperParams(2, 3), 1, -1, 1).value.is_zero());
}

TEST(TruncHyper, EpsilonExamples) {
  EXPECT_EQ(epsilon_p(HyperParams(2, 5)).value, 1);
  EXPECT_EQ(epsilon_p(HyperParams(3, 3)).value, -1);
  EXPECT_EQ(epsilon_p(HyperParams(3, 5)).value, 1);
  for (std::uint64_t p : primes(40)) EXPECT_EQ(epsilon_p(HyperParams(6, p)).value, 1);
}

TEST(TruncHyper, RejectsBadParameters) {
  EXPECT_THROW(HyperParams(1, 5), std::invalid_argument);
  EXPECT_THROW(HyperParams(3, 9), std::invalid_argument);
  EXPECT_THROW(HyperParams(3, 2), std::invalid_argument);
}

TEST(TruncHyper, DworkQuotientExamples) {
  const HyperParams hp(2, 5);
  const auto q = dwork_quotients(hp, 1, 2);
  EXPECT_EQ(q[0].residue, truncated_sum(hp, 1, 1, 1).value);
  EXPECT_EQ(q[1].residue.reduce(1), truncated_sum(hp, 1, 1, 1).value);
  EXPECT_EQ(q[1].residue.value(), 1);
  EXPECT_EQ(q[1].precision(), 2u);
}

TEST(TruncHyper, UnitRootExamples) {
  EXPECT_EQ(unit_root_limit(HyperParams(2, 5), 1, 2).residue.value(), 1);
  EXPECT_EQ(unit_root_limit(HyperParams(4, 3), 1, 3).residue.centered(), -4);
  for (std::uint64_t p : {5, 13, 17})
    EXPECT_EQ(unit_root_limit(HyperParams(3, p), 1, 1).residue, truncated_sum(HyperParams(3, p), 1, 1, 1).value);
  EXPECT_THROW(unit_root_limit(HyperParams(2, 3), -1, 2), NotAUnit);
}

TEST(TruncHyper, DworkCauchyProperty) {
  for (unsigned d = 2; d <= 6; ++d)
    for (std::uint64_t p : primes(13))
      for (std::int64_t z : {1, -1}) {
        const HyperParams hp(d, p);
        if (!truncated_sum(hp, 1, z, 1).value.is_unit()) continue;
        // throws ConsistencyFailure if consecutive quotients disagree mod p^s
        const auto q = dwork_quotients(hp, z, 3);
        for (unsigned s = 1; s + 1 < q.size(); ++s)
          ASSERT_EQ(q[s + 1].residue.reduce(s), q[s].residue.reduce(s)) << d << " " << p << " " << z;
      }
}

TEST(TruncHyper, TheoremOneSweep) {
  for (unsigned d = 2; d <= 7; ++d)
    for (std::uint64_t p : primes(60)) {
      const HyperParams hp(d, p);
      const int eps = epsilon_p(hp).value;
      const auto F = truncated_sum(hp, 1, eps, 2).value;
      if (!F.is_unit()) continue;
      ASSERT_EQ(F, unit_root_limit(hp, eps, 2).residue) << "d=" << d << " p=" << p;
    }
}

TEST(TruncHyper, VanishingForThreeModFour) {
  for (unsigned d = 2; d <= 7; ++d)
    for (std::uint64_t p : primes(200)) {
      if (p % 4 != 3) continue;
      const HyperParams hp(d, p);
      ASSERT_TRUE(truncated_sum(hp, 1, -epsilon_p(hp).value, 1).value.is_zero()) << d << " " << p;
    }
}

TEST(TruncHyper, SplitLemmaExamples) {
  const auto w = check_lemma_split(HyperParams(2, 5), 11);
  EXPECT_EQ(w.r_prime, 2u);
  EXPECT_EQ(w.t, 1u);
  EXPECT_TRUE(w.holds);
  const auto v = check_lemma_split(HyperParams(2, 5), 8);
  EXPECT_TRUE(v.divisible_case);
  EXPECT_TRUE(v.holds);
  for (std::uint64_t r = 0; r < 5; ++r) EXPECT_TRUE(check_lemma_split(HyperParams(2, 5), r).holds);
}

TEST(TruncHyper, SplitLemmaRange) {
  for (std::uint64_t p : primes(31)) {
    const std::uint64_t n = p * p * p;
    const auto table = alpha_table(n, PrimePowerModulus(p, 2));
    for (std::uint64_t r = 0; r < n; ++r) {
      const auto w = check_lemma_split(p, r, table);
      ASSERT_TRUE(w.holds) << "p=" << p << " r=" << r;
    }
  }
}

TEST(TruncHyper, Symmetry) {
  EXPECT_EQ(alpha((5 - 1) / 2, PrimePowerModulus(5, 1)).value(), 1);
  EXPECT_EQ(alpha(1, PrimePowerModulus(3, 1)).centered(), -1);
  for (unsigned d = 2; d <= 7; ++d)
    for (std::uint64_t p : primes(101)) EXPECT_TRUE(check_symmetry(HyperParams(d, p)).holds) << d << " " << p;
}

TEST(TruncHyper, GOneExamples) {
  const HyperParams hp(2, 5);
  EXPECT_EQ(g1_sum(hp, 1, 1).value(), 1);
  EXPECT_EQ(g1_sum(hp, 1, 1), fermat_quotient_gamma(5, 1) * truncated_sum(hp, 1, 1, 1).value);
  // the t = 0 term carries an empty inner sum, so z = 0 gives 0
  EXPECT_TRUE(g1_sum(hp, 0, 2).is_zero());
}

TEST(TruncHyper, GOneIdentity) {
  for (unsigned d = 2; d <= 6; ++d)
    for (std::uint64_t p : primes(100)) {
      const HyperParams hp(d, p);
      const int eps = epsilon_p(hp).value;
      ASSERT_EQ(g1_sum(hp, eps, 1), fermat_quotient_gamma(p, 1) * truncated_sum(hp, 1, eps, 1).value)
          << d << " " << p;
    }
}

TEST(TruncHyper, CorruptionHookChangesTheSum) {
  SumOptions bad;
  bad.corrupt_alpha = 1;
  const HyperParams hp(2, 7);
  EXPECT_NE(truncated_sum_levels(hp, 1, 1, 2, bad)[1], truncated_sum(hp, 1, 1, 2).value);
}
