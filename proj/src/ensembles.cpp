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

#include <sodium.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace subsetlab {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kGamma) ^ mix64(stream * 0xd1b54a32d192ed03ULL + 1))) {}

CounterRng::result_type CounterRng::operator()() { return mix64(key_ + (++counter_) * kGamma); }

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("CounterRng::below: zero bound");
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t v = (*this)();
  while (v >= limit) v = (*this)();
  return v % bound;
}

unsigned SubsetState::qubits() const {
  return dimension <= 1 ? 0U : static_cast<unsigned>(std::bit_width(dimension - 1));
}

void SubsetState::validate() const {
  if (subset.empty() || subset.size() > dimension) throw std::invalid_argument("SubsetState: need 1 <= |S| <= N");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= dimension) throw std::invalid_argument("SubsetState: label outside [N]");
    if (i > 0 && subset[i] <= subset[i - 1]) throw std::invalid_argument("SubsetState: subset not sorted/distinct");
  }
  if (phases) {
    if (phases->size() != subset.size()) throw std::invalid_argument("SubsetState: phases must cover the subset");
    for (auto p : *phases) {
      if (p != 1 && p != -1) throw std::invalid_argument("SubsetState: phases must be +/-1");
    }
  }
}

BigRational SubsetState::plus_overlap() const {
  validate();
  long long sum = static_cast<long long>(subset.size());
  if (phases) {
    sum = 0;
    for (auto p : *phases) sum += p;
  }
  const BigInt s(std::to_string(sum));
  return {s * s, BigInt(std::to_string(subset.size())) * BigInt(std::to_string(dimension))};
}

void to_json(nlohmann::json& j, const SubsetState& s) {
  j = nlohmann::json{{"n", s.qubits()}, {"N", s.dimension}, {"subset", s.subset}};
  if (s.phases) {
    std::vector<int> p(s.phases->begin(), s.phases->end());
    j["phases"] = p;
  } else {
    j["phases"] = nullptr;
  }
}

void from_json(const nlohmann::json& j, SubsetState& s) {
  s.dimension = j.contains("N") ? j.at("N").get<std::uint64_t>() : (std::uint64_t{1} << j.at("n").get<unsigned>());
  s.subset = j.at("subset").get<std::vector<std::uint64_t>>();
  s.phases.reset();
  if (j.contains("phases") && !j.at("phases").is_null()) {
    const auto p = j.at("phases").get<std::vector<int>>();
    s.phases = std::vector<std::int8_t>(p.begin(), p.end());
  }
  s.validate();
}

SubsetState sample_uniform_subset(std::uint64_t n, std::uint64_t m, CounterRng& rng) {
  if (m < 1 || m > n) throw std::invalid_argument("sample_uniform_subset: need 1 <= m <= N");
  SubsetState s{n, {}, std::nullopt};
  if (m == n) {
    s.subset.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) s.subset[i] = i;
    return s;
  }
  // Floyd: for j = N-m .. N-1 pick v in [0, j]; insert v, or j if v is taken.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = n - m; j < n; ++j) {
    const std::uint64_t v = rng.below(j + 1);
    if (!chosen.insert(v).second) chosen.insert(j);
  }
  s.subset.assign(chosen.begin(), chosen.end());
  std::sort(s.subset.begin(), s.subset.end());
  return s;
}

SubsetState sample_uniform_subset(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_uniform_subset(n, m, rng);
}

SubsetState sample_biased_phases(SubsetState s, double bias, CounterRng& rng) {
  if (!(bias >= -1.0 && bias <= 1.0)) throw std::invalid_argument("sample_biased_phases: bias must lie in [-1, 1]");
  const double p_minus = 0.5 * (1.0 + bias);  // P[f(x) = 1], sign (-1)^1
  std::vector<std::int8_t> phases(s.subset.size());
  for (auto& p : phases) p = rng.uniform() < p_minus ? std::int8_t{-1} : std::int8_t{1};
  s.phases = std::move(phases);
  return s;
}

SubsetState sample_biased_phases(SubsetState s, double bias, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_biased_phases(std::move(s), bias, rng);
}

namespace {

int ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium initialisation failed");
  return status;
}

using SubKey = std::array<unsigned char, crypto_generichash_KEYBYTES>;

SubKey derive_subkey(const PrpKey& key) {
  ensure_sodium();
  SubKey sub{};
  crypto_generichash(sub.data(), sub.size(), key.key.data(), key.key.size(), nullptr, 0);
  return sub;
}

std::uint64_t round_function(const SubKey& sub, unsigned round, std::uint64_t half, unsigned half_bits) {
  std::array<unsigned char, 12> msg{};
  for (int i = 0; i < 4; ++i) msg[i] = static_cast<unsigned char>(round >> (8 * i));
  for (int i = 0; i < 8; ++i) msg[4 + i] = static_cast<unsigned char>(half >> (8 * i));
  std::array<unsigned char, 8> out{};
  crypto_generichash(out.data(), out.size(), msg.data(), msg.size(), sub.data(), sub.size());
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(out[i]) << (8 * i);
  return half_bits >= 64 ? v : (v & ((std::uint64_t{1} << half_bits) - 1));
}

struct Network {
  SubKey sub;
  unsigned rounds;
  unsigned half_bits;

  std::uint64_t encrypt(std::uint64_t x) const {
    const std::uint64_t mask = (std::uint64_t{1} << half_bits) - 1;
    std::uint64_t left = x >> half_bits;
    std::uint64_t right = x & mask;
    for (unsigned r = 0; r < rounds; ++r) {
      const std::uint64_t next = left ^ round_function(sub, r, right, half_bits);
      left = right;
      right = next;
    }
    return (left << half_bits) | right;
  }

  std::uint64_t decrypt(std::uint64_t y) const {
    const std::uint64_t mask = (std::uint64_t{1} << half_bits) - 1;
    std::uint64_t left = y >> half_bits;
    std::uint64_t right = y & mask;
    for (unsigned r = rounds; r-- > 0;) {
      const std::uint64_t prev = right ^ round_function(sub, r, left, half_bits);
      right = left;
      left = prev;
    }
    return (left << half_bits) | right;
  }
};

Network make_network(const PrpKey& key) {
  key.validate();
  const unsigned width = key.domain_bits + (key.domain_bits % 2);
  return {derive_subkey(key), key.rounds, width / 2};
}

}  // namespace

PrpKey PrpKey::from_hex(std::string_view hex, unsigned domain_bits, unsigned rounds) {
  if (hex.size() % 2 != 0 || hex.empty()) throw std::invalid_argument("PrpKey: hex key must have even, nonzero length");
  PrpKey k;
  k.domain_bits = domain_bits;
  k.rounds = rounds;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    auto nibble = [&](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      throw std::invalid_argument("PrpKey: invalid hex digit");
    };
    k.key.push_back(static_cast<std::uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  k.validate();
  return k;
}

std::string PrpKey::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : key) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

void PrpKey::validate() const {
  if (key.empty()) throw std::invalid_argument("PrpKey: empty key");
  if (rounds < 4) throw std::invalid_argument("PrpKey: need at least 4 rounds");
  if (domain_bits < 1 || domain_bits > 62) throw std::invalid_argument("PrpKey: need 1 <= domain bits <= 62");
}

std::uint64_t feistel_permute(const PrpKey& key, std::uint64_t x) {
  const Network net = make_network(key);
  const std::uint64_t size = std::uint64_t{1} << key.domain_bits;
  if (x >= size) throw std::invalid_argument("feistel_permute: input outside [2^n]");
  std::uint64_t y = net.encrypt(x);
  while (y >= size) y = net.encrypt(y);
  return y;
}

std::uint64_t feistel_inverse(const PrpKey& key, std::uint64_t y) {
  const Network net = make_network(key);
  const std::uint64_t size = std::uint64_t{1} << key.domain_bits;
  if (y >= size) throw std::invalid_argument("feistel_inverse: input outside [2^n]");
  std::uint64_t x = net.decrypt(y);
  while (x >= size) x = net.decrypt(x);
  return x;
}

SubsetState pseudorandom_subset(const PrpKey& key, std::uint64_t m) {
  key.validate();
  const std::uint64_t n = std::uint64_t{1} << key.domain_bits;
  if (m < 1 || m > n) throw std::invalid_argument("pseudorandom_subset: need 1 <= m <= 2^n");
  SubsetState s{n, {}, std::nullopt};
  s.subset.reserve(m);
  const Network net = make_network(key);
  for (std::uint64_t x = 0; x < m; ++x) {
    std::uint64_t y = net.encrypt(x);
    while (y >= n) y = net.encrypt(y);
    s.subset.push_back(y);
  }
  std::sort(s.subset.begin(), s.subset.end());
  return s;
}

Eigen::VectorXcd sample_haar_state(std::uint64_t n, CounterRng& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_state: need N >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = {re, im};
  }
  return v / v.norm();
}

Eigen::VectorXcd sample_haar_state(std::uint64_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_haar_state(n, rng);
}

Eigen::VectorXd state_vector(const SubsetState& s) {
  s.validate();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.dimension));
  const double amp = 1.0 / std::sqrt(static_cast<double>(s.subset.size()));
  for (std::size_t i = 0; i < s.subset.size(); ++i) {
    v(static_cast<Eigen::Index>(s.subset[i])) = s.phases ? amp * (*s.phases)[i] : amp;
  }
  return v;
}

}  // namespace subsetlab
