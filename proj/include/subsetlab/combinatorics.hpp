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

/// \file combinatorics.hpp
/// \brief Binomials, two-row irrep dimensions, Johnson orbit sizes, and
/// enumeration of subsets and multiset types.

#ifndef SUBSETLAB_COMBINATORICS_HPP
#define SUBSETLAB_COMBINATORICS_HPP

#include "subsetlab/exact.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subsetlab {

using Subset = std::vector<std::uint32_t>;

/// Thrown when an enumeration or dense construction would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caps the number of items an enumeration may produce.
struct EnumerationBudget {
  static constexpr std::uint64_t kDefaultLimit = 10'000'000;
  std::uint64_t limit = kDefaultLimit;

  /// Default budget, overridden by SUBSETLAB_ENUM_BUDGET when set.
  static EnumerationBudget from_environment();
  void require(const BigInt& count, const char* what) const;
};

/// C(n, k); zero when k < 0 or k > n. Throws std::invalid_argument when n < 0.
BigInt binomial(long n, long k);

/// Dimension of the symmetric-group irrep with two-row diagram [N-q, q].
BigInt two_row_irrep_dim(long n, long q);

/// Number of t-subsets of [N] at distance p (|a \ b| = p) from a fixed t-subset.
/// Requires 0 <= p <= t <= N/2.
BigInt orbit_size(long n, long t, long p);

/// Distance |a \ b| between two sorted subsets of equal size.
std::uint32_t subset_distance(const Subset& a, const Subset& b);

/// Visits the k-subsets of {0..n-1} in lexicographic order. Throws
/// std::invalid_argument when k > n.
void for_each_subset(std::uint32_t n, std::uint32_t k, const std::function<void(const Subset&)>& visit,
                     const EnumerationBudget& budget = {});
std::vector<Subset> enumerate_subsets(std::uint32_t n, std::uint32_t k,
                                      const EnumerationBudget& budget = {});

/// Lexicographic rank of a sorted k-subset of {0..n-1}, consistent with
/// enumerate_subsets.
std::uint64_t subset_rank(const Subset& s, std::uint32_t n);

/// A size-t multiset over labels, stored as its support and multiplicities.
class TypeVector {
 public:
  TypeVector() = default;
  TypeVector(Subset support, std::vector<std::uint32_t> multiplicities);
  /// Builds the type of an unordered word (labels may repeat, any order).
  static TypeVector from_word(std::vector<std::uint32_t> word);

  const Subset& support() const { return support_; }
  const std::vector<std::uint32_t>& multiplicities() const { return mult_; }
  std::uint32_t size() const;
  bool is_unique() const;
  /// Multiplicity of a label, zero when absent.
  std::uint32_t count(std::uint32_t label) const;
  /// Product of factorials of the multiplicities.
  BigInt factorial_weight() const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
  /// Canonical order: support lexicographically, then multiplicities.
  friend auto operator<=>(const TypeVector& a, const TypeVector& b) {
    if (auto c = a.support_ <=> b.support_; c != 0) return c;
    return a.mult_ <=> b.mult_;
  }

 private:
  Subset support_;
  std::vector<std::uint32_t> mult_;
};

/// All size-t multisets over the labels of s, in canonical order.
std::vector<TypeVector> enumerate_types(const Subset& s, std::uint32_t t,
                                        const EnumerationBudget& budget = {});

/// Both sides of  sum_k (-1)^k C(p,k) / (1 - k/r)  =  (-1)^p / C(r-1, p),
/// evaluated exactly. Requires r >= p + 1.
std::pair<BigRational, BigRational> alternating_identity(long p, long r);

}  // namespace subsetlab

#endif  // SUBSETLAB_COMBINATORICS_HPP
