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

#include "subsetlab/attacks.hpp"

#include "subsetlab/combinatorics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace subsetlab {
namespace {

// Ordered-tuple enumeration: fraction of [m]^t with a repeat.
BigRational collision_by_enumeration(std::uint64_t m, std::uint64_t t) {
  std::vector<std::uint64_t> w(t, 0);
  long hits = 0, total = 0;
  while (true) {
    ++total;
    hits += birthday_attack(w) ? 1 : 0;
    std::size_t i = 0;
    while (i < w.size() && ++w[i] == m) w[i++] = 0;
    if (i == w.size()) break;
  }
  return BigRational(BigInt(hits), BigInt(total));
}

TEST(Birthday, Decisions) {
  EXPECT_TRUE(birthday_attack({3, 3}));
  EXPECT_FALSE(birthday_attack({1, 2, 3}));
  EXPECT_THROW(birthday_attack({1}), std::invalid_argument);
}

TEST(CollisionProbability, ExactValues) {
  EXPECT_EQ(collision_probability_exact(10, 1), BigRational(0));
  EXPECT_EQ(collision_probability_exact(4, 2), BigRational(1, 4));
  EXPECT_GT(collision_probability_exact(365, 23), BigRational(1, 2));
  EXPECT_LT(collision_probability_exact(365, 22), BigRational(1, 2));
  EXPECT_EQ(collision_probability_exact(3, 4), BigRational(1));
  for (std::uint64_t m = 1; m <= 6; ++m) {
    for (std::uint64_t t = 2; t <= 4; ++t) EXPECT_EQ(collision_probability_exact(m, t), collision_by_enumeration(m, t));
  }
}

TEST(CollisionProbability, HaarAgainstExplicitStates) {
  // Explicit Haar vectors measured t times; matches the uniform-multiset law.
  constexpr int kTrials = 100000;
  for (auto [n, t] : {std::pair<std::uint64_t, std::uint64_t>{4, 2}, {8, 3}}) {
    const auto haar = EnsembleSpec::parse("haar:N=" + std::to_string(n));
    long hits = 0;
    for (int i = 0; i < kTrials; ++i) {
      CounterRng rng(21, static_cast<std::uint64_t>(i));
      hits += birthday_attack(sample_outcomes(haar, t, rng)) ? 1 : 0;
    }
    const double p = haar_collision_probability_exact(n, t).to_double();
    const double se = std::sqrt(p * (1 - p) / kTrials);
    EXPECT_LT(std::abs(static_cast<double>(hits) / kTrials - p), 5 * se) << n << " " << t;
  }
  EXPECT_EQ(haar_collision_probability_exact(2, 2), BigRational(2, 3));
  EXPECT_EQ(haar_collision_probability_exact(1, 2), BigRational(1));
}

TEST(PlusOverlap, ExactValues) {
  Eigen::VectorXd plus = Eigen::VectorXd::Constant(16, 0.25);
  EXPECT_NEAR(plus_overlap(plus), 1.0, 1e-15);
  EXPECT_THROW(plus_overlap(Eigen::VectorXd(Eigen::VectorXd::Constant(4, 1.0))), std::invalid_argument);
  CounterRng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto s = sample_uniform_subset(64, 1 + rng.below(64), rng);
    EXPECT_EQ(s.plus_overlap(), BigRational(BigInt(static_cast<unsigned long>(s.subset.size())), BigInt(64)));
  }
  EXPECT_TRUE(plus_overlap_attack(0.6, 0.5, OverlapMode::kExact, rng));
  EXPECT_FALSE(plus_overlap_attack(0.4, 0.5, OverlapMode::kExact, rng));
  EXPECT_THROW(plus_overlap_attack(0.4, 1.0, OverlapMode::kExact, rng), std::invalid_argument);
}

TEST(PlusOverlap, HaarMean) {
  constexpr int kDraws = 100000;
  CounterRng rng(8);
  double sum = 0, sumsq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double o = plus_overlap(sample_haar_state(16, rng));
    sum += o;
    sumsq += o * o;
  }
  const double mean = sum / kDraws;
  EXPECT_LT(std::abs(mean - 1.0 / 16), 3 * std::sqrt((sumsq / kDraws - mean * mean) / kDraws));
}

TEST(EnsembleSpec, ParseAndLabel) {
  const auto a = EnsembleSpec::parse("subset:N=1024,m=16");
  EXPECT_EQ(a.kind, EnsembleSpec::Kind::kUniformSubset);
  EXPECT_EQ(a.dimension, 1024U);
  EXPECT_EQ(a.label(), "subset:N=1024,m=16");
  const auto p = EnsembleSpec::parse("prp:n=10,m=16");
  EXPECT_EQ(p.dimension, 1024U);
  const auto b = EnsembleSpec::parse("phase:N=64,m=8,b=1/2");
  EXPECT_DOUBLE_EQ(b.bias, 0.5);
  EXPECT_DOUBLE_EQ(b.expected_overlap(), (1 + 7 * 0.25) / 64);
  EXPECT_DOUBLE_EQ(EnsembleSpec::parse("haar:N=16").expected_overlap(), 1.0 / 16);
  EXPECT_THROW(EnsembleSpec::parse("bogus:N=4"), std::invalid_argument);
  EXPECT_THROW(EnsembleSpec::parse("subset:N=4,m=5"), std::invalid_argument);
  EXPECT_THROW(EnsembleSpec::parse("prp:N=12,m=3"), std::invalid_argument);
  EXPECT_THROW(EnsembleSpec::parse("subset:N=4,q=1"), std::invalid_argument);
}

TEST(SampleOutcomes, SubsetOutcomesStayInsideOneSubset) {
  const auto e = EnsembleSpec::parse("subset:N=1000000,m=3");
  CounterRng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto out = sample_outcomes(e, 10, rng);
    std::set<std::uint64_t> distinct(out.begin(), out.end());
    EXPECT_LE(distinct.size(), 3U);
  }
  const auto prp = EnsembleSpec::parse("prp:n=20,m=3");
  const auto out = sample_outcomes(prp, 10, rng);
  EXPECT_LE(std::set<std::uint64_t>(out.begin(), out.end()).size(), 3U);
}

TEST(EstimateAdvantage, BirthdayMatchesPrediction) {
  const auto sub = EnsembleSpec::parse("subset:N=1024,m=16");
  const auto haar = EnsembleSpec::parse("haar:N=1024");
  const auto r = estimate_advantage(BirthdayAttack{4}, sub, haar, 100000, 17, 2);
  ASSERT_TRUE(r.predicted_advantage.has_value());
  EXPECT_LT(r.sigmas_from(*r.predicted_advantage), 5.0);
  EXPECT_LE(0.0, r.rate_a);
  EXPECT_LE(r.rate_a, 1.0);
}

TEST(EstimateAdvantage, SameEnsembleIsNull) {
  const auto e = EnsembleSpec::parse("phase:N=64,m=8,b=1/2");
  const auto r = estimate_advantage(PlusOverlapAttack{}, e, e, 20000, 3, 2);
  EXPECT_LT(r.sigmas_from(0.0), 5.0);
  const auto b = estimate_advantage(BirthdayAttack{3}, e, e, 20000, 3, 2);
  EXPECT_LT(b.sigmas_from(0.0), 5.0);
}

TEST(EstimateAdvantage, ExactOverlapSeparates) {
  const auto big = EnsembleSpec::parse("subset:N=64,m=33");
  const auto small = EnsembleSpec::parse("subset:N=64,m=8");
  const auto r = estimate_advantage(PlusOverlapAttack{0.5, OverlapMode::kExact}, big, small, 1000, 1, 1);
  EXPECT_DOUBLE_EQ(r.advantage, 1.0);
  EXPECT_DOUBLE_EQ(*r.predicted_advantage, 1.0);
}

TEST(EstimateAdvantage, DeterministicAcrossWorkers) {
  const auto a = EnsembleSpec::parse("prp:n=8,m=16");
  const auto b = EnsembleSpec::parse("haar:N=256");
  const auto one = estimate_advantage(BirthdayAttack{4}, a, b, 2000, 5, 1);
  const auto four = estimate_advantage(BirthdayAttack{4}, a, b, 2000, 5, 4);
  EXPECT_EQ(one.rate_a, four.rate_a);
  EXPECT_EQ(one.rate_b, four.rate_b);
  EXPECT_THROW(estimate_advantage(BirthdayAttack{4}, a, b, 99, 5, 1), std::invalid_argument);
}

TEST(EstimateAdvantage, LargeHaarPathsMatchPredictions) {
  const auto haar = EnsembleSpec::parse("haar:N=100000");
  const auto sub = EnsembleSpec::parse("subset:N=100000,m=50000");
  const auto r = estimate_advantage(PlusOverlapAttack{}, sub, haar, 20000, 9, 2);
  EXPECT_LT(r.sigmas_from(*r.predicted_advantage), 5.0);
  const auto exact = estimate_advantage(PlusOverlapAttack{1e-4, OverlapMode::kExact}, haar, haar, 20000, 9, 2);
  EXPECT_LT(std::abs(exact.rate_a - std::pow(1 - 1e-4, 99999.0)), 5 * std::sqrt(0.25 / 20000));
}

TEST(PredictedAcceptance, BiasedPhaseExactMode) {
  // b = 1: every sign is -1, overlap m/N deterministically.
  const auto e = EnsembleSpec::parse("phase:N=64,m=32,b=1");
  EXPECT_DOUBLE_EQ(*predicted_acceptance(PlusOverlapAttack{0.4, OverlapMode::kExact}, e, 0.4), 1.0);
  const auto zero = EnsembleSpec::parse("phase:N=64,m=32,b=0");
  const double p = *predicted_acceptance(PlusOverlapAttack{0.4, OverlapMode::kExact}, zero, 0.4);
  EXPECT_GE(p, 0.0);
  EXPECT_LT(p, 1e-6);
}

TEST(AttackReport, Serialisation) {
  const auto r = estimate_advantage(BirthdayAttack{2}, EnsembleSpec::parse("subset:N=16,m=4"),
                                    EnsembleSpec::parse("haar:N=16"), 500, 1, 1);
  const nlohmann::json j = r;
  EXPECT_EQ(j.at("attack"), "birthday");
  EXPECT_EQ(j.at("trials"), 500);
  std::ostringstream csv;
  write_csv_header(csv);
  write_csv_row(r, csv);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

}  // namespace
}  // namespace subsetlab
