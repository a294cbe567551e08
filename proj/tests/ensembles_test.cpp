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

#include "subsetlab/ensembles.hpp"

#include "subsetlab/exact_density.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace subsetlab {
namespace {

TEST(CounterRng, DeterministicAndStreamSeparated) {
  CounterRng a(7, 0), b(7, 0), c(7, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  CounterRng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.below(7), 7U);
  }
  EXPECT_THROW(r.below(0), std::invalid_argument);
}

TEST(UniformSubset, FullAndDeterministic) {
  EXPECT_EQ(sample_uniform_subset(4, 4, 99).subset, (std::vector<std::uint64_t>{0, 1, 2, 3}));
  EXPECT_EQ(sample_uniform_subset(8, 3, 5).subset, sample_uniform_subset(8, 3, 5).subset);
  const auto s = sample_uniform_subset(1000, 50, 3);
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.subset.size(), 50U);
  EXPECT_THROW(sample_uniform_subset(4, 5, 1), std::invalid_argument);
  EXPECT_THROW(sample_uniform_subset(4, 0, 1), std::invalid_argument);
}

TEST(UniformSubset, SingletonFrequencies) {
  constexpr int kDraws = 100000;
  std::vector<int> count(4, 0);
  CounterRng rng(11);
  for (int i = 0; i < kDraws; ++i) ++count[sample_uniform_subset(4, 1, rng).subset[0]];
  const double sigma = std::sqrt(kDraws * 0.25 * 0.75);
  for (int c : count) EXPECT_LT(std::abs(c - kDraws / 4.0), 3 * sigma);
}

TEST(UniformSubset, MonteCarloMomentMatchesClosedForm) {
  // (1/K) sum |S><S| against the exact t = 1 average, entrywise within 5 sigma.
  constexpr int kDraws = 100000;
  const long n = 8, m = 3;
  CounterRng rng(12);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd acc2 = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < kDraws; ++k) {
    const Eigen::VectorXd v = state_vector(sample_uniform_subset(n, m, rng));
    const Eigen::MatrixXd outer = v * v.transpose();
    acc += outer;
    acc2 += outer.cwiseProduct(outer);
  }
  const Eigen::MatrixXd mean = acc / kDraws;
  const auto exact = to_numeric(average_density_closed_form(n, m, 1, 1)).entries;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const double var = acc2(i, j) / kDraws - mean(i, j) * mean(i, j);
      EXPECT_LT(std::abs(mean(i, j) - exact(i, j)), 5 * std::sqrt(var / kDraws) + 1e-15) << i << "," << j;
    }
  }
}

TEST(BiasedPhases, Extremes) {
  const auto base = sample_uniform_subset(16, 6, 1);
  auto all_minus = sample_biased_phases(base, 1.0, 2);
  for (auto p : *all_minus.phases) EXPECT_EQ(p, -1);
  auto all_plus = sample_biased_phases(base, -1.0, 2);
  for (auto p : *all_plus.phases) EXPECT_EQ(p, 1);
  EXPECT_THROW(sample_biased_phases(base, 1.5, 2), std::invalid_argument);
}

TEST(BiasedPhases, MeanSign) {
  CounterRng rng(3);
  const auto base = sample_uniform_subset(1000, 1000, 1);
  long sum = 0, count = 0;
  for (int i = 0; i < 100; ++i) {
    const auto state = sample_biased_phases(base, 0.0, rng);
    for (auto p : *state.phases) {
      sum += p;
      ++count;
    }
  }
  EXPECT_LT(std::abs(static_cast<double>(sum)), 3 * std::sqrt(static_cast<double>(count)));
  long biased = 0;
  const auto state = sample_biased_phases(base, 0.5, rng);
  for (auto p : *state.phases) biased += p;
  // E sign = -b
  EXPECT_LT(std::abs(biased + 500.0), 5 * std::sqrt(1000 * 0.75));
}

TEST(SubsetState, OverlapAndVector) {
  SubsetState s{2, {0, 1}, std::nullopt};
  const Eigen::VectorXd v = state_vector(s);
  EXPECT_NEAR(v(0), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v(1), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s.plus_overlap(), BigRational(1));
  s.phases = std::vector<std::int8_t>{1, -1};
  EXPECT_NEAR(state_vector(s)(1), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s.plus_overlap(), BigRational(0));
  CounterRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto r = sample_uniform_subset(64, 1 + rng.below(64), rng);
    EXPECT_EQ(r.plus_overlap(), BigRational(BigInt(static_cast<unsigned long>(r.subset.size())), BigInt(64)));
    EXPECT_NEAR(state_vector(r).norm(), 1.0, 1e-12);
  }
  EXPECT_EQ(SubsetState({8, {0, 1}, std::nullopt}).qubits(), 3U);
}

TEST(SubsetState, JsonRoundTripAndValidation) {
  SubsetState s{16, {1, 4, 9}, std::vector<std::int8_t>{1, -1, 1}};
  const nlohmann::json j = s;
  EXPECT_EQ(j.at("n"), 4);
  const auto back = j.get<SubsetState>();
  EXPECT_EQ(back.subset, s.subset);
  EXPECT_EQ(*back.phases, *s.phases);
  EXPECT_THROW((SubsetState{4, {2, 1}, std::nullopt}.validate()), std::invalid_argument);
  EXPECT_THROW((SubsetState{4, {1, 5}, std::nullopt}.validate()), std::invalid_argument);
  EXPECT_THROW((SubsetState{4, {1}, std::vector<std::int8_t>{2}}.validate()), std::invalid_argument);
}

TEST(Feistel, BijectionExhaustive) {
  for (unsigned bits = 1; bits <= 12; ++bits) {
    const auto key = PrpKey::from_hex("000102030405060708090a0b0c0d0e0f", bits);
    const std::uint64_t size = std::uint64_t{1} << bits;
    std::vector<bool> seen(size, false);
    for (std::uint64_t x = 0; x < size; ++x) {
      const auto y = feistel_permute(key, x);
      ASSERT_LT(y, size);
      ASSERT_FALSE(seen[y]) << bits;
      seen[y] = true;
      ASSERT_EQ(feistel_inverse(key, y), x);
    }
  }
}

TEST(Feistel, KeysMatter) {
  const auto a = PrpKey::from_hex("aa", 8);
  const auto b = PrpKey::from_hex("ab", 8);
  int differ = 0;
  for (std::uint64_t x = 0; x < 256; ++x) differ += feistel_permute(a, x) != feistel_permute(b, x);
  EXPECT_GT(differ, 0);
  EXPECT_EQ(a.hex(), "aa");
  EXPECT_THROW(PrpKey::from_hex("abc", 8), std::invalid_argument);
  EXPECT_THROW(PrpKey::from_hex("zz", 8), std::invalid_argument);
  EXPECT_THROW(PrpKey::from_hex("aa", 8, 3).validate(), std::invalid_argument);
  EXPECT_THROW(feistel_permute(a, 256), std::invalid_argument);
}

TEST(PseudorandomSubset, SizesAndFullSet) {
  const auto key = PrpKey::from_hex("0123456789abcdef", 8);
  const auto s = pseudorandom_subset(key, 16);
  EXPECT_EQ(std::set<std::uint64_t>(s.subset.begin(), s.subset.end()).size(), 16U);
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(pseudorandom_subset(key, 256).subset.size(), 256U);
  EXPECT_EQ(pseudorandom_subset(key, 256).subset.back(), 255U);
}

TEST(PseudorandomSubset, InclusionFrequencies) {
  constexpr int kKeys = 10000;
  std::vector<int> count(256, 0);
  CounterRng rng(77);
  for (int k = 0; k < kKeys; ++k) {
    PrpKey key;
    key.domain_bits = 8;
    for (int i = 0; i < 16; ++i) key.key.push_back(static_cast<std::uint8_t>(rng()));
    const auto state = pseudorandom_subset(key, 4);
    for (auto x : state.subset) ++count[x];
  }
  const double p = 4.0 / 256.0;
  const double sigma = std::sqrt(kKeys * p * (1 - p));
  for (int c : count) EXPECT_LT(std::abs(c - kKeys * p), 5 * sigma);
}

TEST(Haar, NormAndMoments) {
  constexpr int kDraws = 100000;
  CounterRng rng(5);
  double e0 = 0, e0sq = 0, plus = 0, plussq = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto two = sample_haar_state(2, rng);
    ASSERT_NEAR(two.norm(), 1.0, 1e-12);
    const double a = std::norm(two(0));
    e0 += a;
    e0sq += a * a;
    const auto sixteen = sample_haar_state(16, rng);
    const double o = std::norm(sixteen.sum()) / 16.0;
    plus += o;
    plussq += o * o;
  }
  auto check = [&](double sum, double sumsq, double expect) {
    const double mean = sum / kDraws;
    const double se = std::sqrt((sumsq / kDraws - mean * mean) / kDraws);
    EXPECT_LT(std::abs(mean - expect), 3 * se);
  };
  check(e0, e0sq, 0.5);
  check(plus, plussq, 1.0 / 16.0);
  EXPECT_EQ(sample_haar_state(8, 4), sample_haar_state(8, 4));
}

}  // namespace
}  // namespace subsetlab
