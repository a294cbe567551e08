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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <bit>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace subsetlab {

namespace {

// Above this dimension Haar states are not materialised; the attacks use
// the exact outcome laws instead (uniform multisets, Beta(1, N-1) overlap).
constexpr std::uint64_t kExplicitHaarLimit = 4096;

bool is_subset_kind(EnsembleSpec::Kind k) { return k != EnsembleSpec::Kind::kHaar; }

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

bool birthday_attack(const std::vector<std::uint64_t>& outcomes) {
  if (outcomes.size() < 2) throw std::invalid_argument("birthday_attack: need at least two outcomes");
  std::vector<std::uint64_t> sorted = outcomes;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

BigRational collision_probability_exact(std::uint64_t m, std::uint64_t t) {
  if (m == 0) throw std::invalid_argument("collision_probability_exact: need m >= 1");
  if (t > m) return 1;
  BigInt falling = 1;
  for (std::uint64_t i = 0; i < t; ++i) falling *= BigInt(std::to_string(m - i));
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), m, t);
  return BigRational(1) - BigRational(falling, power);
}

BigRational haar_collision_probability_exact(std::uint64_t n, std::uint64_t t) {
  if (n == 0) throw std::invalid_argument("haar_collision_probability_exact: need N >= 1");
  const long nn = static_cast<long>(n);
  const long tt = static_cast<long>(t);
  return BigRational(1) - BigRational(binomial(nn, tt), binomial(nn + tt - 1, tt));
}

double plus_overlap(const Eigen::VectorXcd& psi) {
  if (psi.size() == 0 || std::abs(psi.norm() - 1.0) > 1e-9) throw std::invalid_argument("plus_overlap: state not normalised");
  return std::norm(psi.sum()) / static_cast<double>(psi.size());
}

double plus_overlap(const Eigen::VectorXd& psi) {
  if (psi.size() == 0 || std::abs(psi.norm() - 1.0) > 1e-9) throw std::invalid_argument("plus_overlap: state not normalised");
  const double s = psi.sum();
  return s * s / static_cast<double>(psi.size());
}

bool plus_overlap_attack(double overlap, double threshold, OverlapMode mode, CounterRng& rng) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("plus_overlap_attack: threshold must lie in (0, 1)");
  if (mode == OverlapMode::kExact) return overlap >= threshold;
  return rng.uniform() < overlap;
}

bool plus_overlap_attack(const Eigen::VectorXcd& psi, double threshold, OverlapMode mode, CounterRng& rng) {
  return plus_overlap_attack(plus_overlap(psi), threshold, mode, rng);
}

EnsembleSpec EnsembleSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  EnsembleSpec e;
  if (kind == "subset") {
    e.kind = Kind::kUniformSubset;
  } else if (kind == "phase") {
    e.kind = Kind::kBiasedPhase;
  } else if (kind == "prp") {
    e.kind = Kind::kPrpSubset;
  } else if (kind == "haar") {
    e.kind = Kind::kHaar;
  } else {
    throw std::invalid_argument("unknown ensemble kind '" + kind + "' (subset|phase|prp|haar)");
  }
  if (colon != std::string_view::npos) {
    std::stringstream fields{std::string(text.substr(colon + 1))};
    std::string field;
    while (std::getline(fields, field, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("malformed ensemble field '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "N") {
        e.dimension = std::stoull(value);
      } else if (key == "n") {
        const auto bits = std::stoul(value);
        if (bits > 62) throw std::invalid_argument("ensemble: n must be <= 62");
        e.dimension = std::uint64_t{1} << bits;
      } else if (key == "m") {
        e.subset_size = std::stoull(value);
      } else if (key == "b") {
        e.bias = BigRational::parse(value).to_double();
      } else {
        throw std::invalid_argument("unknown ensemble field '" + key + "'");
      }
    }
  }
  e.validate();
  return e;
}

void EnsembleSpec::validate() const {
  if (dimension < 1) throw std::invalid_argument("ensemble: need N >= 1");
  if (kind != Kind::kHaar && (subset_size < 1 || subset_size > dimension)) {
    throw std::invalid_argument("ensemble: need 1 <= m <= N");
  }
  if (kind == Kind::kPrpSubset && (dimension & (dimension - 1)) != 0) {
    throw std::invalid_argument("ensemble: prp needs N a power of two");
  }
  if (!(bias >= -1.0 && bias <= 1.0)) throw std::invalid_argument("ensemble: bias must lie in [-1, 1]");
}

std::string EnsembleSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kUniformSubset:
      os << "subset:N=" << dimension << ",m=" << subset_size;
      break;
    case Kind::kBiasedPhase:
      os << "phase:N=" << dimension << ",m=" << subset_size << ",b=" << bias;
      break;
    case Kind::kPrpSubset:
      os << "prp:N=" << dimension << ",m=" << subset_size;
      break;
    case Kind::kHaar:
      os << "haar:N=" << dimension;
      break;
  }
  return os.str();
}

double EnsembleSpec::expected_overlap() const {
  const double n = static_cast<double>(dimension);
  const double m = static_cast<double>(subset_size);
  switch (kind) {
    case Kind::kUniformSubset:
    case Kind::kPrpSubset:
      return m / n;
    case Kind::kBiasedPhase:
      // E (sum s)^2 = m + m(m-1) b^2
      return (1.0 + (m - 1.0) * bias * bias) / n;
    case Kind::kHaar:
      return 1.0 / n;
  }
  return 0.0;
}

std::string distinguisher_name(const Distinguisher& d) {
  if (std::holds_alternative<BirthdayAttack>(d)) return "birthday";
  return std::get<PlusOverlapAttack>(d).mode == OverlapMode::kExact ? "overlap-exact" : "overlap-sampled";
}

namespace {

PrpKey random_key(const EnsembleSpec& e, CounterRng& rng) {
  PrpKey key;
  key.domain_bits = static_cast<unsigned>(std::bit_width(e.dimension) - 1);
  key.rounds = 8;
  for (int i = 0; i < 16; ++i) key.key.push_back(static_cast<std::uint8_t>(rng() & 0xff));
  return key;
}

double sample_overlap(const EnsembleSpec& e, CounterRng& rng) {
  switch (e.kind) {
    case EnsembleSpec::Kind::kUniformSubset:
    case EnsembleSpec::Kind::kPrpSubset:
      return static_cast<double>(e.subset_size) / static_cast<double>(e.dimension);
    case EnsembleSpec::Kind::kBiasedPhase: {
      // The count of -1 signs is Binomial(m, (1+b)/2).
      std::binomial_distribution<std::uint64_t> minus(e.subset_size, 0.5 * (1.0 + e.bias));
      const double sum = static_cast<double>(e.subset_size) - 2.0 * static_cast<double>(minus(rng));
      return sum * sum / (static_cast<double>(e.subset_size) * static_cast<double>(e.dimension));
    }
    case EnsembleSpec::Kind::kHaar: {
      if (e.dimension <= kExplicitHaarLimit) return plus_overlap(sample_haar_state(e.dimension, rng));
      // |<+|phi>|^2 ~ Beta(1, N-1) by unitary invariance.
      std::gamma_distribution<double> one(1.0, 1.0);
      std::gamma_distribution<double> rest(static_cast<double>(e.dimension - 1), 1.0);
      const double x = one(rng);
      const double y = rest(rng);
      return x / (x + y);
    }
  }
  return 0.0;
}

}  // namespace

std::vector<std::uint64_t> sample_outcomes(const EnsembleSpec& e, std::uint64_t copies, CounterRng& rng) {
  e.validate();
  std::vector<std::uint64_t> out(copies);
  if (is_subset_kind(e.kind)) {
    // Amplitudes are flat on S, so each copy yields a uniform element of S.
    // Positions into S are drawn first; distinct positions then receive
    // distinct labels with the law of a uniformly random S.
    std::vector<std::uint64_t> position(copies);
    for (auto& p : position) p = rng.below(e.subset_size);
    if (e.kind == EnsembleSpec::Kind::kPrpSubset) {
      const PrpKey key = random_key(e, rng);
      for (std::uint64_t i = 0; i < copies; ++i) out[i] = feistel_permute(key, position[i]);
      return out;
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> assigned;  // position -> label
    for (std::uint64_t i = 0; i < copies; ++i) {
      auto it = std::find_if(assigned.begin(), assigned.end(), [&](const auto& a) { return a.first == position[i]; });
      if (it != assigned.end()) {
        out[i] = it->second;
        continue;
      }
      std::uint64_t label = 0;
      do {
        label = rng.below(e.dimension);
      } while (std::any_of(assigned.begin(), assigned.end(), [&](const auto& a) { return a.second == label; }));
      assigned.emplace_back(position[i], label);
      out[i] = label;
    }
    return out;
  }
  if (e.dimension <= kExplicitHaarLimit) {
    const Eigen::VectorXcd phi = sample_haar_state(e.dimension, rng);
    std::vector<double> weights(static_cast<std::size_t>(phi.size()));
    for (Eigen::Index i = 0; i < phi.size(); ++i) weights[static_cast<std::size_t>(i)] = std::norm(phi(i));
    std::discrete_distribution<std::uint64_t> measure(weights.begin(), weights.end());
    for (auto& o : out) o = measure(rng);
    return out;
  }
  // Uniform size-t multiset by stars and bars: t distinct bar positions in
  // [0, N+t-1), sorted, shifted by rank.
  const auto chosen = sample_uniform_subset(e.dimension + copies - 1, copies, rng);
  for (std::uint64_t i = 0; i < copies; ++i) out[i] = chosen.subset[i] - i;
  return out;
}

bool run_trial(const Distinguisher& d, const EnsembleSpec& e, double threshold, CounterRng& rng) {
  if (const auto* b = std::get_if<BirthdayAttack>(&d)) return birthday_attack(sample_outcomes(e, b->copies, rng));
  const auto& o = std::get<PlusOverlapAttack>(d);
  return plus_overlap_attack(sample_overlap(e, rng), threshold, o.mode, rng);
}

std::optional<double> predicted_acceptance(const Distinguisher& d, const EnsembleSpec& e, double threshold) {
  if (const auto* b = std::get_if<BirthdayAttack>(&d)) {
    if (is_subset_kind(e.kind)) return collision_probability_exact(e.subset_size, b->copies).to_double();
    return haar_collision_probability_exact(e.dimension, b->copies).to_double();
  }
  const auto& o = std::get<PlusOverlapAttack>(d);
  if (o.mode == OverlapMode::kSampled) return e.expected_overlap();
  const double n = static_cast<double>(e.dimension);
  const double m = static_cast<double>(e.subset_size);
  switch (e.kind) {
    case EnsembleSpec::Kind::kUniformSubset:
    case EnsembleSpec::Kind::kPrpSubset:
      return m / n >= threshold ? 1.0 : 0.0;
    case EnsembleSpec::Kind::kBiasedPhase: {
      const double p = 0.5 * (1.0 + e.bias);
      if (p == 0.0 || p == 1.0) return m / n >= threshold ? 1.0 : 0.0;
      double accept = 0;
      for (std::uint64_t k = 0; k <= e.subset_size; ++k) {
        const double kd = static_cast<double>(k);
        const double sum = m - 2.0 * kd;
        if (sum * sum / (m * n) < threshold) continue;
        accept += std::exp(std::lgamma(m + 1) - std::lgamma(kd + 1) - std::lgamma(m - kd + 1) + kd * std::log(p) +
                           (m - kd) * std::log1p(-p));
      }
      return accept;
    }
    case EnsembleSpec::Kind::kHaar:
      return e.dimension == 1 ? 1.0 : std::pow(1.0 - threshold, n - 1.0);
  }
  return std::nullopt;
}

double AttackReport::sigmas_from(double reference) const {
  if (standard_error == 0.0) return advantage == reference ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(advantage - reference) / standard_error;
}

void to_json(nlohmann::json& j, const AttackReport& r) {
  j = nlohmann::json{{"attack", r.attack},
                     {"ensemble_a", r.label_a},
                     {"ensemble_b", r.label_b},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"threshold", r.threshold},
                     {"rate_a", r.rate_a},
                     {"rate_b", r.rate_b},
                     {"advantage", r.advantage},
                     {"standard_error", r.standard_error},
                     {"prediction_note", r.prediction_note}};
  j["predicted_advantage"] = r.predicted_advantage ? nlohmann::json(*r.predicted_advantage) : nlohmann::json(nullptr);
}

void write_csv_header(std::ostream& os) {
  os << "attack,ensemble_a,ensemble_b,trials,seed,threshold,rate_a,rate_b,advantage,standard_error,predicted_advantage\n";
}

void write_csv_row(const AttackReport& r, std::ostream& os) {
  os << r.attack << ",\"" << r.label_a << "\",\"" << r.label_b << "\"," << r.trials << ',' << r.seed << ','
     << format_double(r.threshold) << ',' << format_double(r.rate_a) << ',' << format_double(r.rate_b) << ','
     << format_double(r.advantage) << ',' << format_double(r.standard_error) << ','
     << (r.predicted_advantage ? format_double(*r.predicted_advantage) : std::string()) << '\n';
}

AttackReport estimate_advantage(const Distinguisher& d, const EnsembleSpec& a, const EnsembleSpec& b,
                                std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  if (trials < 100) throw std::invalid_argument("estimate_advantage: need at least 100 trials");
  a.validate();
  b.validate();
  double threshold = 0.5;
  if (const auto* o = std::get_if<PlusOverlapAttack>(&d)) {
    threshold = o->threshold.value_or(std::sqrt(a.expected_overlap() * b.expected_overlap()));
  }

  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  std::vector<std::uint64_t> hits_a(workers, 0), hits_b(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < trials; i += workers) {
        CounterRng ra(seed, 2 * i);
        CounterRng rb(seed, 2 * i + 1);
        hits_a[w] += run_trial(d, a, threshold, ra) ? 1 : 0;
        hits_b[w] += run_trial(d, b, threshold, rb) ? 1 : 0;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::uint64_t total_a = 0, total_b = 0;
  for (unsigned w = 0; w < workers; ++w) {
    total_a += hits_a[w];
    total_b += hits_b[w];
  }
  AttackReport r;
  r.attack = distinguisher_name(d);
  r.label_a = a.label();
  r.label_b = b.label();
  r.trials = trials;
  r.seed = seed;
  r.threshold = threshold;
  const double n = static_cast<double>(trials);
  r.rate_a = static_cast<double>(total_a) / n;
  r.rate_b = static_cast<double>(total_b) / n;
  r.advantage = std::abs(r.rate_a - r.rate_b);
  r.standard_error = std::sqrt(r.rate_a * (1 - r.rate_a) / n + r.rate_b * (1 - r.rate_b) / n);
  const auto pa = predicted_acceptance(d, a, threshold);
  const auto pb = predicted_acceptance(d, b, threshold);
  if (pa && pb) {
    r.predicted_advantage = std::abs(*pa - *pb);
    r.prediction_note = std::holds_alternative<BirthdayAttack>(d)
                            ? "exact: subset 1 - m!/((m-t)! m^t); Haar 1 - C(N,t)/C(N+t-1,t)"
                            : "exact: mean overlaps m/N, (1+(m-1)b^2)/N, 1/N; exact mode uses Beta(1,N-1) tail";
  }
  return r;
}

}  // namespace subsetlab
