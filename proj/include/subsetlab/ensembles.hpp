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

/// \file ensembles.hpp
/// \brief Samplers for subset states, biased subset-phase states, Haar
/// states, and PRP-generated pseudorandom subsets.

#ifndef SUBSETLAB_ENSEMBLES_HPP
#define SUBSETLAB_ENSEMBLES_HPP

#include "subsetlab/exact.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace subsetlab {

/// Counter-based generator: the k-th output is a SplitMix64 finaliser
/// applied to key + k * gamma, with the key derived from (seed, stream).
/// Distinct streams give independent sequences for parallel trials.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  std::uint64_t counter() const { return counter_; }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// A subset S of [N] (N = dimension) with optional +/-1 phases.
struct SubsetState {
  std::uint64_t dimension = 0;
  std::vector<std::uint64_t> subset;             ///< sorted, distinct
  std::optional<std::vector<std::int8_t>> phases;  ///< aligned with subset

  unsigned qubits() const;
  void validate() const;
  /// |<+^n|psi>|^2 = (sum of phases)^2 / (|S| N), exactly.
  BigRational plus_overlap() const;
};

void to_json(nlohmann::json& j, const SubsetState& s);
void from_json(const nlohmann::json& j, SubsetState& s);

/// Uniform size-m subset of [N] (Floyd's algorithm); deterministic in seed.
SubsetState sample_uniform_subset(std::uint64_t n, std::uint64_t m, std::uint64_t seed);
SubsetState sample_uniform_subset(std::uint64_t n, std::uint64_t m, CounterRng& rng);

/// Independent signs (-1)^f(x) with P[f(x) = 1] = (1 + b) / 2.
SubsetState sample_biased_phases(SubsetState s, double bias, std::uint64_t seed);
SubsetState sample_biased_phases(SubsetState s, double bias, CounterRng& rng);

/// Key for a Feistel permutation of [2^domain_bits].
struct PrpKey {
  std::vector<std::uint8_t> key;
  unsigned rounds = 8;
  unsigned domain_bits = 0;

  static PrpKey from_hex(std::string_view hex, unsigned domain_bits, unsigned rounds = 8);
  std::string hex() const;
  void validate() const;
};

/// Keyed bijection on [2^n]. Balanced Feistel with a BLAKE2b round function;
/// odd n runs the (n+1)-bit network and cycle-walks back into range.
std::uint64_t feistel_permute(const PrpKey& key, std::uint64_t x);
std::uint64_t feistel_inverse(const PrpKey& key, std::uint64_t y);

/// Image of {0, ..., m-1} under the keyed permutation of [2^n].
SubsetState pseudorandom_subset(const PrpKey& key, std::uint64_t m);

/// Normalised vector of N i.i.d. standard complex Gaussians.
Eigen::VectorXcd sample_haar_state(std::uint64_t n, std::uint64_t seed);
Eigen::VectorXcd sample_haar_state(std::uint64_t n, CounterRng& rng);

/// Amplitudes phase_x / sqrt|S| on S, zero elsewhere.
Eigen::VectorXd state_vector(const SubsetState& s);

}  // namespace subsetlab

#endif  // SUBSETLAB_ENSEMBLES_HPP
