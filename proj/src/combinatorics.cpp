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

#include "subsetlab/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace subsetlab {

EnumerationBudget EnumerationBudget::from_environment() {
  EnumerationBudget b;
  if (const char* env = std::getenv("SUBSETLAB_ENUM_BUDGET"); env != nullptr && *env != '\0') {
    b.limit = std::stoull(env);
  }
  return b;
}

void EnumerationBudget::require(const BigInt& count, const char* what) const {
  if (count > BigInt(std::to_string(limit))) {
    throw BudgetExceeded(std::string(what) + ": " + count.get_str() + " items exceeds budget " +
                         std::to_string(limit));
  }
}

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt two_row_irrep_dim(long n, long q) {
  if (q < 0 || 2 * q > n) {
    throw std::invalid_argument("two_row_irrep_dim: need 0 <= q <= N/2");
  }
  if (q == 0) return 1;
  return binomial(n, q) - binomial(n, q - 1);
}

BigInt orbit_size(long n, long t, long p) {
  if (p < 0 || p > t || 2 * t > n) throw std::invalid_argument("orbit_size: need 0 <= p <= t <= N/2");
  return binomial(t, p) * binomial(n - t, p);
}

std::uint32_t subset_distance(const Subset& a, const Subset& b) {
  std::uint32_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<std::uint32_t>(a.size()) - common;
}

void for_each_subset(std::uint32_t n, std::uint32_t k, const std::function<void(const Subset&)>& visit,
                     const EnumerationBudget& budget) {
  if (k > n) throw std::invalid_argument("for_each_subset: k > n");
  budget.require(binomial(n, k), "enumerate_subsets");
  Subset s(k);
  for (std::uint32_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    visit(s);
    // Advance to the next combination in lexicographic order.
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && s[i] == n - k + static_cast<std::uint32_t>(i)) --i;
    if (i < 0) return;
    ++s[i];
    for (auto j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

std::vector<Subset> enumerate_subsets(std::uint32_t n, std::uint32_t k, const EnumerationBudget& budget) {
  std::vector<Subset> out;
  for_each_subset(n, k, [&](const Subset& s) { out.push_back(s); }, budget);
  return out;
}

std::uint64_t subset_rank(const Subset& s, std::uint32_t n) {
  // Count subsets that precede s: at each position, those with a smaller
  // element there and the same prefix.
  const auto k = static_cast<long>(s.size());
  std::uint64_t rank = 0;
  std::uint32_t prev = 0;
  for (long i = 0; i < k; ++i) {
    const std::uint32_t lo = (i == 0) ? 0 : prev + 1;
    for (std::uint32_t v = lo; v < s[i]; ++v) {
      rank += binomial(static_cast<long>(n) - v - 1, k - i - 1).get_ui();
    }
    prev = s[i];
  }
  return rank;
}

TypeVector::TypeVector(Subset support, std::vector<std::uint32_t> multiplicities)
    : support_(std::move(support)), mult_(std::move(multiplicities)) {
  if (support_.size() != mult_.size()) throw std::invalid_argument("TypeVector: size mismatch");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (mult_[i] == 0) throw std::invalid_argument("TypeVector: zero multiplicity");
    if (i > 0 && support_[i] <= support_[i - 1]) {
      throw std::invalid_argument("TypeVector: support not strictly increasing");
    }
  }
}

TypeVector TypeVector::from_word(std::vector<std::uint32_t> word) {
  std::sort(word.begin(), word.end());
  Subset support;
  std::vector<std::uint32_t> mult;
  for (auto x : word) {
    if (!support.empty() && support.back() == x) {
      ++mult.back();
    } else {
      support.push_back(x);
      mult.push_back(1);
    }
  }
  return {std::move(support), std::move(mult)};
}

std::uint32_t TypeVector::size() const {
  std::uint32_t s = 0;
  for (auto m : mult_) s += m;
  return s;
}

bool TypeVector::is_unique() const {
  return std::all_of(mult_.begin(), mult_.end(), [](auto m) { return m == 1; });
}

std::uint32_t TypeVector::count(std::uint32_t label) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), label);
  if (it == support_.end() || *it != label) return 0;
  return mult_[static_cast<std::size_t>(it - support_.begin())];
}

BigInt TypeVector::factorial_weight() const {
  BigInt w = 1;
  for (auto m : mult_) w *= factorial(m);
  return w;
}

namespace {

void collect_types(const Subset& s, std::uint32_t t, std::size_t pos, std::vector<std::uint32_t>& counts,
                   std::vector<TypeVector>& out) {
  if (pos == s.size()) {
    if (t != 0) return;
    Subset support;
    std::vector<std::uint32_t> mult;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (counts[i] > 0) {
        support.push_back(s[i]);
        mult.push_back(counts[i]);
      }
    }
    out.emplace_back(std::move(support), std::move(mult));
    return;
  }
  for (std::uint32_t c = 0; c <= t; ++c) {
    counts[pos] = c;
    collect_types(s, t - c, pos + 1, counts, out);
  }
  counts[pos] = 0;
}

}  // namespace

std::vector<TypeVector> enumerate_types(const Subset& s, std::uint32_t t, const EnumerationBudget& budget) {
  if (s.empty() || t == 0) throw std::invalid_argument("enumerate_types: need |S| >= 1 and t >= 1");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[i - 1]) throw std::invalid_argument("enumerate_types: S must be sorted and distinct");
  }
  budget.require(binomial(static_cast<long>(s.size() + t - 1), t), "enumerate_types");
  std::vector<TypeVector> out;
  std::vector<std::uint32_t> counts(s.size(), 0);
  collect_types(s, t, 0, counts, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<BigRational, BigRational> alternating_identity(long p, long r) {
  if (p < 0) throw std::invalid_argument("alternating_identity: p must be nonnegative");
  if (r <= p) throw std::invalid_argument("alternating_identity: need r >= p + 1");
  BigRational lhs = 0;
  for (long k = 0; k <= p; ++k) {
    // 1 / (1 - k/r) = r / (r - k)
    BigRational term(binomial(p, k) * r, BigInt(r - k));
    if (k % 2 == 1) term = -term;
    lhs += term;
  }
  BigRational rhs(BigInt(p % 2 == 0 ? 1 : -1), binomial(r - 1, p));
  return {lhs, rhs};
}

}  // namespace subsetlab
