// End-to-end checks of the command-line tool: output shape and exit codes.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HYPERCONG_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hypercong_cli_" + name)).string();
}

}  // namespace

TEST(Cli, Trunc) {
  const auto r = run("trunc --d 4 --p 3 --s 1 --z 1 --mod-exp 3");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value"], "23");
  EXPECT_EQ(j["centered"], "-4");
}

TEST(Cli, UnitRoot) {
  const auto r = run("unitroot --d 2 --p 5 --z 1 --precision 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"], "1");
}

TEST(Cli, FieldAndDump) {
  const auto r = run("field --p 3 --k 2");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["q"], 9);
  EXPECT_EQ(j["modulus_poly"], nlohmann::json::parse("[1,0,1]"));
  const auto d = run("field --p 3 --k 2 --dump");
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(std::count(d.out.begin(), d.out.end(), '\n'), 9);
}

TEST(Cli, HqBothMethods) {
  const auto g = nlohmann::json::parse(run("hq --p 3 --k 1 --d 2 --t 1 --method gauss").out);
  const auto c = nlohmann::json::parse(run("hq --p 3 --k 1 --d 2 --t 1 --method count").out);
  EXPECT_EQ(g["H"], -1);
  EXPECT_EQ(c["H"], -1);
  EXPECT_EQ(g["method"], "gauss");
  EXPECT_TRUE(c["residual"].is_null());
  EXPECT_EQ(run("hq --p 3 --k 1 --d 2 --t 1 --method fourier").code, 2);
}

TEST(Cli, PointCount) {
  const auto r = run("pointcount --p 3 --k 1 --d 2 --t 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["count"], "1");
  EXPECT_EQ(run("pointcount --p 3 --k 1 --d 2 --t 3").code, 2);
}

TEST(Cli, Zeta) {
  const auto r = run("zeta --p 3 --d 4 --t 1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["polynomial"], "1 + 4*T + 27*T^2");
  EXPECT_EQ(j["unit_root"]["value"], "23");
}

TEST(Cli, Eta) {
  const auto r = run("eta --quotient \"2^4 4^4\" --terms 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["coefficients"], nlohmann::json::parse("[1,0,-4,0,-2]"));
  EXPECT_EQ(run("eta --quotient \"2^x\" --terms 5").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nosuch").code, 2);
  EXPECT_EQ(run("trunc --d 4 --p 3").code, 2);
  EXPECT_EQ(run("trunc --d 4 --p 9 --s 1 --z 1 --mod-exp 2").code, 2);
  EXPECT_EQ(run("verify --claims bogus --pmax 11 --out " + temp_path("x.json")).code, 2);
  EXPECT_EQ(run("verify --claims thm_main --pmax 11 --out " + temp_path("x.json"), "HYPERCONG_WORK_CAP=lots").code, 2);
  EXPECT_EQ(run("verify --claims thm_main --pmax 11 --out /nonexistent_dir/r.json").code, 2);
}

TEST(Cli, VerifyWritesReport) {
  const auto path = temp_path("ok.json");
  const auto r = run("verify --claims thm_main,mortenson_d2 --pmax 23 --jobs 2 --out " + path);
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j["complete"].get<bool>());
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["thm_main"]["fails"], 0);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyCsv) {
  const auto path = temp_path("ok.csv");
  ASSERT_EQ(run("verify --claims vanishing --pmax 19 --out " + path + " --format csv").code, 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "claim,d,p,z,status,proved,label,observed_order,cap,asserted_order,lhs,rhs,note");
  std::filesystem::remove(path);
}

TEST(Cli, ViolationExitsWithOne) {
  const auto path = temp_path("bad.json");
  const auto r = run("verify --claims thm_main --pmax 23 --out " + path, "HYPERCONG_TEST_CORRUPT_ALPHA=1");
  EXPECT_EQ(r.code, 1);
  std::filesystem::remove(path);
}

TEST(Cli, WorkCapProducesCostSkips) {
  const auto path = temp_path("cap.json");
  ASSERT_EQ(run("verify --claims thm_main --pmax 23 --out " + path, "HYPERCONG_WORK_CAP=500").code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_GT(j["summary"]["thm_main"]["skipped_cost"].get<int>(), 0);
  std::filesystem::remove(path);
}
