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

/// \file attacks.hpp
/// \brief The collision ("birthday") and |+^n>-overlap distinguishers, and a
/// Monte-Carlo advantage estimator between two state ensembles.

#ifndef SUBSETLAB_ATTACKS_HPP
#define SUBSETLAB_ATTACKS_HPP

#include "subsetlab/ensembles.hpp"
#include "subsetlab/exact.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace subsetlab {

/// Accepts iff some outcome repeats. Needs at least two outcomes.
bool birthday_attack(const std::vector<std::uint64_t>& outcomes);

/// 1 - m! / ((m-t)! m^t): a repeat among t uniform draws from m outcomes.
BigRational collision_probability_exact(std::uint64_t m, std::uint64_t t);

/// Repeat probability when t copies of a Haar state on [N] are measured in
/// the computational basis: 1 - C(N,t)/C(N+t-1,t). The outcome multiset of
/// t copies is uniform over all size-t multisets, since the t-copy moment is
/// the maximally mixed state on the symmetric subspace.
BigRational haar_collision_probability_exact(std::uint64_t n, std::uint64_t t);

/// |<+^n|psi>|^2. Throws if psi is not normalised to 1e-9.
double plus_overlap(const Eigen::VectorXcd& psi);
double plus_overlap(const Eigen::VectorXd& psi);

enum class OverlapMode { kExact, kSampled };

/// Exact mode: accept iff overlap >= threshold. Sampled mode: accept with
/// probability equal to the overlap (one projective measurement).
bool plus_overlap_attack(double overlap, double threshold, OverlapMode mode, CounterRng& rng);
bool plus_overlap_attack(const Eigen::VectorXcd& psi, double threshold, OverlapMode mode, CounterRng& rng);

/// State family to draw from.
struct EnsembleSpec {
  enum class Kind { kUniformSubset, kBiasedPhase, kPrpSubset, kHaar };
  Kind kind = Kind::kUniformSubset;
  std::uint64_t dimension = 0;  ///< N
  std::uint64_t subset_size = 0;  ///< m (ignored for Haar)
  double bias = 1.0;              ///< biased-phase ensembles only

  /// "subset:N=1024,m=16", "phase:N=64,m=8,b=0.5", "prp:n=10,m=16", "haar:N=1024".
  static EnsembleSpec parse(std::string_view text);
  std::string label() const;
  /// Mean of |<+^n|psi>|^2 over the ensemble.
  double expected_overlap() const;
  void validate() const;
};

struct BirthdayAttack {
  std::uint64_t copies = 2;
};

struct PlusOverlapAttack {
  std::optional<double> threshold;  ///< default: geometric mean of expected overlaps
  OverlapMode mode = OverlapMode::kSampled;
};

using Distinguisher = std::variant<BirthdayAttack, PlusOverlapAttack>;

std::string distinguisher_name(const Distinguisher& d);

/// One trial: draw a state (or its measurement record) and run the attack.
bool run_trial(const Distinguisher& d, const EnsembleSpec& ensemble, double threshold, CounterRng& rng);

/// t computational-basis outcomes from t copies of a state drawn from the ensemble.
std::vector<std::uint64_t> sample_outcomes(const EnsembleSpec& ensemble, std::uint64_t copies, CounterRng& rng);

/// Acceptance probability of the attack on one ensemble, when known exactly.
std::optional<double> predicted_acceptance(const Distinguisher& d, const EnsembleSpec& ensemble, double threshold);

struct AttackReport {
  std::string attack;
  std::string label_a;
  std::string label_b;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double threshold = 0;
  double rate_a = 0;
  double rate_b = 0;
  double advantage = 0;
  double standard_error = 0;  ///< sqrt(ra(1-ra)/n + rb(1-rb)/n)
  std::optional<double> predicted_advantage;
  std::string prediction_note;

  /// |advantage - reference| in units of the standard error.
  double sigmas_from(double reference) const;
};

void to_json(nlohmann::json& j, const AttackReport& r);
void write_csv_header(std::ostream& os);
void write_csv_row(const AttackReport& r, std::ostream& os);

/// Runs `trials` independent trials on each ensemble. Trial i of A uses
/// stream 2i and of B stream 2i+1, so the report is deterministic in seed
/// whatever the worker count.
AttackReport estimate_advantage(const Distinguisher& d, const EnsembleSpec& a, const EnsembleSpec& b,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

}  // namespace subsetlab

#endif  // SUBSETLAB_ATTACKS_HPP
