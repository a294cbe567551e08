// Copyright 2026 The subsetlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include "subsetlab/exact_density.hpp"
#include "subsetlab/johnson_scheme.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace subsetlab::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) v.push_back(line);
  return v;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("subsetlab_cli_test_" + name);
}

TEST(Spectrum, SmallExample) {
  const auto r = invoke({"spectrum", "--N", "4", "--m", "2", "--t", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3U);
  EXPECT_EQ(l[1].substr(0, 6), "0,1,2,");
  EXPECT_EQ(l[2].substr(0, 8), "1,3,2/3,");
}

TEST(Spectrum, MultiplicitiesAndZeroBias) {
  const auto r = invoke({"spectrum", "--N", "6", "--m", "3", "--t", "2"});
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4U);
  EXPECT_EQ(l[1].substr(0, 4), "0,1,");
  EXPECT_EQ(l[2].substr(0, 4), "1,5,");
  EXPECT_EQ(l[3].substr(0, 4), "2,9,");
  const auto flat = lines(invoke({"spectrum", "--N", "6", "--m", "3", "--t", "2", "--b", "0"}).out);
  for (std::size_t i = 2; i < flat.size(); ++i) EXPECT_EQ(flat[i].substr(flat[i].find(',', 2)), flat[1].substr(flat[1].find(',', 2)));
  const auto j = nlohmann::json::parse(invoke({"spectrum", "--N", "6", "--m", "3", "--t", "2", "--format", "json"}).out);
  EXPECT_EQ(j.at("blocks").size(), 3U);
}

TEST(Spectrum, InvalidParameters) {
  EXPECT_EQ(invoke({"spectrum", "--N", "4", "--m", "2", "--t", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spectrum", "--N", "6", "--m", "1", "--t", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spectrum", "--N", "6", "--m", "3", "--t", "2", "--b", "3/2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"spectrum", "--N", "6"}).code, kExitUsage);
  EXPECT_EQ(invoke({"nope"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
}

TEST(TraceDistance, BothPathsAgree) {
  const auto r = invoke({"trace-distance", "--N", "4", "--m", "2", "--t", "1", "--method", "both"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("matrix").at("td_full").get<double>(), 0.25, 1e-12);
  EXPECT_NEAR(j.at("blocks").at("td_unique_decimal").get<double>(), 0.25, 1e-15);
  EXPECT_EQ(j.at("blocks").at("td_unique"), "1/4");
  EXPECT_LT(j.at("delta").get<double>(), 1e-9);
}

TEST(TraceDistance, OversizedMatrixIsBudgetError) {
  const auto r = invoke({"trace-distance", "--N", "300", "--m", "20", "--t", "2", "--method", "matrix"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
  EXPECT_EQ(invoke({"trace-distance", "--N", "300", "--m", "20", "--t", "2", "--method", "blocks"}).code, kExitOk);
}

TEST(TraceDistance, ZeroBiasIsDiagonalComparison) {
  const auto j = nlohmann::json::parse(invoke({"trace-distance", "--N", "8", "--m", "4", "--t", "2", "--b", "0"}).out);
  const BigRational nu0 = circulant_exact(8, 4, 2, 0, 0);
  const BigRational expect =
      BigRational(binomial(8, 2)) * abs(nu0 - BigRational(1)) / (BigRational(2) * BigRational(binomial(9, 2)));
  EXPECT_EQ(j.at("blocks").at("td_unique"), expect.str());
  EXPECT_NEAR(j.at("matrix").at("td_unique").get<double>(), expect.to_double(), 1e-12);
  EXPECT_NEAR(j.at("matrix").at("td_full").get<double>(), j.at("blocks").at("td_full").get<double>(), 1e-10);
}

TEST(Verify, DefaultGridPasses) {
  const auto r = invoke({"verify"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("failed"), 0);
  std::set<std::string> kinds;
  for (const auto& c : j.at("checks")) kinds.insert(c.at("check").get<std::string>());
  for (const char* k : {"density_equality", "spectrum_equality", "circulant", "johnson_oracle", "lemma_bound",
                        "theorem_bound", "top_eigenvalue"}) {
    EXPECT_TRUE(kinds.count(k)) << k;
  }
}

TEST(Verify, PerturbationFails) {
  const auto r = invoke({"verify", "--N", "6", "--m", "3", "--t", "2", "--b", "1/2", "--inject-perturbation"});
  EXPECT_EQ(r.code, kExitVerificationFailed);
}

TEST(Verify, EmptyGridIsUsageError) {
  EXPECT_EQ(invoke({"verify", "--N", "6", "--t", "2", "--b", "1"}).code, kExitUsage);
  const auto path = temp_path("empty.json");
  std::ofstream(path) << R"({"N": [], "m": [3], "t": [1], "b": ["1"]})";
  EXPECT_EQ(invoke({"verify", "--config", path.string()}).code, kExitUsage);
  // Nothing valid in the grid: also a usage error.
  EXPECT_EQ(invoke({"verify", "--N", "4", "--m", "1", "--t", "2", "--b", "1"}).code, kExitUsage);
}

TEST(Verify, JsonConfig) {
  const auto path = temp_path("grid.json");
  std::ofstream(path) << R"({"N": [5, 6], "m": [2, 3], "t": [1, 2], "b": ["0", "1/2", 1], "tolerance": 1e-9})";
  const auto r = invoke({"verify", "--config", path.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(Attack, JsonAndCsv) {
  const std::vector<std::string> base{"attack", "--attack", "birthday", "--copies", "3", "-A", "subset:N=256,m=8",
                                      "-B", "haar:N=256", "--trials", "2000", "--seed", "4"};
  const auto r = invoke(base);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("attack"), "birthday");
  EXPECT_EQ(j.at("trials"), 2000);
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  EXPECT_EQ(lines(invoke(csv_args).out).size(), 2U);
  const auto overlap = nlohmann::json::parse(invoke({"attack", "--attack", "overlap", "--mode", "exact", "--threshold", "0.5",
                                                     "-A", "subset:N=64,m=33", "-B", "subset:N=64,m=8", "--trials", "500"})
                                                 .out);
  EXPECT_EQ(overlap.at("advantage").get<double>(), 1.0);
  EXPECT_EQ(invoke({"attack", "-A", "subset:N=4,m=9", "-B", "haar:N=4"}).code, kExitUsage);
  EXPECT_EQ(invoke({"attack", "-A", "subset:N=4,m=2", "-B", "haar:N=4", "--trials", "10"}).code, kExitUsage);
}

TEST(Sweep, DecreasingTraceDistance) {
  const auto r = invoke({"sweep", "--N", "32,64", "--m-scale", "2", "--t", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 3U);
  EXPECT_EQ(l[0], "N,m,t,b,TD,bound_term1,bound_term2,ratio");
  auto td = [](const std::string& row) {
    std::istringstream is(row);
    std::string cell;
    for (int i = 0; i < 5; ++i) std::getline(is, cell, ',');
    return std::stod(cell);
  };
  EXPECT_GT(td(l[1]), td(l[2]));
}

TEST(Sweep, SinglePointAndSkippedRows) {
  EXPECT_EQ(lines(invoke({"sweep", "--N", "16", "--m", "4", "--t", "2"}).out).size(), 2U);
  const auto r = invoke({"sweep", "--N", "16", "--m", "1,4", "--t", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(lines(r.out).size(), 2U);
  EXPECT_NE(r.err.find("skipping"), std::string::npos);
}

TEST(Density, CsvAndBinary) {
  const auto r = invoke({"density", "--N", "4", "--m", "2", "--t", "1"});
  ASSERT_EQ(r.code, kExitOk);
  const auto l = lines(r.out);
  EXPECT_EQ(l[0], "row,col,numerator,denominator,radicand");
  EXPECT_EQ(l[1], "0,0,1,4,1");
  EXPECT_EQ(l[2], "0,1,1,12,1");
  const auto path = temp_path("rho.bin");
  ASSERT_EQ(invoke({"density", "--N", "5", "--m", "3", "--t", "2", "--b", "1/2", "--format", "binary", "-o", path.string()}).code,
            kExitOk);
  std::ifstream in(path, std::ios::binary);
  const Eigen::MatrixXd back = read_binary(in);
  EXPECT_EQ(back, average_density_closed_form_numeric(5, 3, 2, BigRational(1, 2)).entries);
  EXPECT_EQ(invoke({"density", "--N", "4", "--m", "2", "--t", "2", "--kind", "haar"}).code, kExitOk);
  EXPECT_EQ(invoke({"density", "--N", "4", "--m", "2", "--t", "2", "--kind", "bruteforce"}).code, kExitOk);
  EXPECT_EQ(invoke({"density", "--N", "4", "--m", "2", "--t", "2", "--kind", "unique"}).code, kExitOk);
}

TEST(Density, EnvironmentBudget) {
  ::setenv("SUBSETLAB_ENUM_BUDGET", "10", 1);
  const auto r = invoke({"density", "--N", "8", "--m", "4", "--t", "2"});
  ::unsetenv("SUBSETLAB_ENUM_BUDGET");
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(invoke({"density", "--N", "8", "--m", "4", "--t", "2"}).code, kExitOk);
}

TEST(Determinism, RepeatedInvocationsAreIdentical) {
  const std::vector<std::vector<std::string>> commands{
      {"spectrum", "--N", "12", "--m", "5", "--t", "3", "--b", "1/2"},
      {"trace-distance", "--N", "10", "--m", "4", "--t", "2"},
      {"sweep", "--N", "16,32,64", "--m", "4,8", "--t", "2", "--workers", "3"},
      {"attack", "-A", "prp:n=10,m=16", "-B", "haar:N=1024", "--copies", "4", "--trials", "3000", "--format", "csv"},
      {"density", "--N", "6", "--m", "3", "--t", "2", "--b", "1/2"},
      {"verify", "--N", "6", "--m", "3", "--t", "2", "--b", "1"}};
  for (const auto& c : commands) {
    const auto a = invoke(c);
    const auto b = invoke(c);
    EXPECT_EQ(a.code, kExitOk) << c[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST(Process, ExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(SUBSETLAB_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("spectrum --N 4 --m 2 --t 1"), 0);
  EXPECT_EQ(status("verify --N 6 --m 3 --t 2 --b 1 --inject-perturbation"), 1);
  EXPECT_EQ(status("spectrum --N 4 --m 2 --t 3"), 2);
  EXPECT_EQ(status("--help"), 0);
}

}  // namespace
}  // namespace subsetlab::cli
