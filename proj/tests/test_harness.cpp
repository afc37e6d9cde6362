#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>

#include "hypercong/harness.hpp"

using namespace hypercong;

namespace {

RunOptions small_run(unsigned jobs = 1) {
  RunOptions o;
  o.pmax = 31;
  o.jobs = jobs;
  return o;
}

const std::vector<ClaimId> kQuick{ClaimId::thm_main, ClaimId::conj1, ClaimId::mortenson_d2, ClaimId::ivha_d3,
                                  ClaimId::kilbourn_d4, ClaimId::vanishing, ClaimId::conj3_d3};

}  // namespace

TEST(Harness, ClaimListParsing) {
  EXPECT_EQ(parse_claim_list("all").size(), 17u);
  const auto two = parse_claim_list("vanishing,thm_main,vanishing");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], ClaimId::thm_main);
  EXPECT_THROW(parse_claim_list("thm_main,bogus"), std::invalid_argument);
  EXPECT_THROW(parse_claim_list(""), std::invalid_argument);
  for (auto [id, name] : claim_names()) EXPECT_EQ(parse_claim(name), id);
}

TEST(Harness, ProvedFlags) {
  for (auto id : {ClaimId::thm_main, ClaimId::mortenson_d2, ClaimId::ivha_d3, ClaimId::kilbourn_d4,
                  ClaimId::osz_d6, ClaimId::vanishing})
    EXPECT_TRUE(is_proved(id));
  for (auto id : {ClaimId::conj1, ClaimId::conj2, ClaimId::conj3_d3, ClaimId::conj3_d5, ClaimId::conj4,
                  ClaimId::slopes_d4, ClaimId::grand_crosscheck})
    EXPECT_FALSE(is_proved(id));
}

TEST(Harness, QuickSweepHoldsAndIsSorted) {
  const auto res = run_sweep(kQuick, small_run());
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(res.exit_code, 0);
  EXPECT_TRUE(res.violations().empty());
  for (std::size_t i = 1; i < res.cells.size(); ++i) ASSERT_LT(res.cells[i - 1].key(), res.cells[i].key());
  for (const auto& c : res.cells) {
    if (c.status == CellStatus::holds && c.asserted > 0) {
      ASSERT_TRUE(c.observed_order);
      EXPECT_GE(*c.observed_order, c.asserted) << to_string(c.claim) << " p=" << c.p;
    }
  }
}

TEST(Harness, DeterministicAcrossParallelism) {
  const auto a = run_sweep(kQuick, small_run(1));
  const auto b = run_sweep(kQuick, small_run(4));
  EXPECT_EQ(report_json(a), report_json(b));
  EXPECT_EQ(report_csv(a), report_csv(b));
}

TEST(Harness, CorruptedAlphaFailsTheRun) {
  RunOptions o = small_run(2);
  o.sum_options.corrupt_alpha = 1;
  const auto res = run_sweep({ClaimId::thm_main}, o);
  EXPECT_NE(res.exit_code, 0);
  EXPECT_FALSE(res.violations().empty());
}

TEST(Harness, SkipAccounting) {
  const auto res = run_sweep({ClaimId::conj1}, small_run());
  for (const auto& c : res.cells) {
    const HyperParams hp(c.d, c.p);
    const bool unit = truncated_sum(hp, 1, c.z, 1).value.is_unit();
    // a skip happens exactly when F_p(z) vanishes mod p
    EXPECT_EQ(c.status == CellStatus::skipped_nonunit, !unit) << c.d << " " << c.p << " " << c.z;
    if (c.p % 4 == 3 && c.z == -epsilon_p(hp).value) EXPECT_EQ(c.status, CellStatus::skipped_nonunit);
  }
}

TEST(Harness, WorkCapSkipsDeterministically) {
  RunOptions o = small_run();
  o.work_cap = 2000;
  const auto a = run_sweep({ClaimId::thm_main}, o);
  o.jobs = 3;
  const auto b = run_sweep({ClaimId::thm_main}, o);
  std::size_t skipped = 0;
  for (const auto& c : a.cells) skipped += c.status == CellStatus::skipped_cost;
  EXPECT_GT(skipped, 0u);
  EXPECT_LT(skipped, a.cells.size());
  EXPECT_EQ(report_json(a), report_json(b));
  EXPECT_EQ(a.exit_code, 0);
}

TEST(Harness, CancellationLeavesPartialReport) {
  std::atomic<bool> stop{true};
  RunOptions o = small_run();
  o.cancel = &stop;
  const auto res = run_sweep({ClaimId::thm_main}, o);
  EXPECT_FALSE(res.complete);
  EXPECT_LT(res.cells.size(), cells_for(ClaimId::thm_main, 31).size());
}

TEST(Harness, CsvHasOneRowPerCell) {
  const auto res = run_sweep({ClaimId::mortenson_d2}, small_run());
  const auto csv = report_csv(res);
  EXPECT_EQ(csv.rfind("claim,d,p,z,status,proved,label,observed_order,cap,asserted_order,lhs,rhs,note\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), res.cells.size() + 1);
  EXPECT_NE(csv.find("\nmortenson_d2,2,5,1,holds,true,theorem,"), std::string::npos);
}

TEST(Harness, JsonReportShape) {
  const auto res = run_sweep({ClaimId::conj3_d3}, small_run());
  const auto j = nlohmann::json::parse(report_json(res));
  EXPECT_TRUE(j["complete"].get<bool>());
  EXPECT_EQ(j["cells"].size(), res.cells.size());
  // p = 17 is a counterexample to the printed closed form, surfaced but not fatal
  EXPECT_EQ(res.exit_code, 0);
  bool saw17 = false;
  for (const auto& s : j["conjecture_counterexamples"]) saw17 = saw17 || s.get<std::string>() == "conj3_d3 d=3 p=17 z=-1";
  EXPECT_TRUE(saw17);
  EXPECT_FALSE(j["cells"][0].contains("seconds"));
}

TEST(Harness, StructuralClaimsReportEveryCheck) {
  RunOptions o = small_run();
  o.pmax = 7;
  const auto res = run_sweep({ClaimId::zeta_factor_d3m1, ClaimId::slopes_d4}, o);
  for (const auto& c : res.cells) {
    EXPECT_EQ(c.label, "structure");
    EXPECT_NE(c.note.find("printed."), std::string::npos);
  }
  EXPECT_EQ(res.exit_code, 0);
}
