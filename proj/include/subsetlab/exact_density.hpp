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

/// \file exact_density.hpp
/// \brief t-copy moments of subset and biased subset-phase ensembles in the
/// type basis of the symmetric subspace.
///
/// Entry (theta, phi) of the averaged moment is
///
///     (t!/m^t) C(N-u, m-u)/C(N,m) b^w / sqrt(|theta| |phi|)
///
/// where u = |supp(theta) u supp(phi)|, |theta| is the product of
/// multiplicity factorials, and w counts labels x with theta_x + phi_x odd
/// (each such label contributes a factor E[(-1)^f(x)] = -b; w is even).
/// For unique types w = 2p.

#ifndef SUBSETLAB_EXACT_DENSITY_HPP
#define SUBSETLAB_EXACT_DENSITY_HPP

#include "subsetlab/combinatorics.hpp"
#include "subsetlab/exact.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace subsetlab {

enum class BasisKind { kComputational, kType, kUniqueType };

const char* basis_name(BasisKind kind);

/// Dense square moment matrix over an explicitly listed basis.
///
/// For kType the index lists every size-t multiset over [N] in canonical
/// order; for kUniqueType only the t-subsets, in lexicographic order.
template <class Scalar>
struct MomentMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasisKind basis = BasisKind::kType;
  long n = 0;
  long t = 0;
  std::vector<TypeVector> index;
  Matrix entries;

  Eigen::Index dimension() const { return entries.rows(); }

  Scalar trace() const {
    Scalar s{0};
    for (Eigen::Index i = 0; i < entries.rows(); ++i) s += entries(i, i);
    return s;
  }

  bool is_symmetric() const {
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < entries.cols(); ++j) {
        if (!(entries(i, j) == entries(j, i))) return false;
      }
    }
    return true;
  }
};

using ExactMoment = MomentMatrix<Surd>;
using RationalMoment = MomentMatrix<BigRational>;
using NumericMoment = MomentMatrix<double>;

inline double as_double(double x) { return x; }
inline double as_double(const BigRational& x) { return x.to_double(); }
inline double as_double(const Surd& x) { return x.to_double(); }

template <class Scalar>
NumericMoment to_numeric(const MomentMatrix<Scalar>& m) {
  NumericMoment out{m.basis, m.n, m.t, m.index, Eigen::MatrixXd(m.dimension(), m.dimension())};
  for (Eigen::Index i = 0; i < m.dimension(); ++i) {
    for (Eigen::Index j = 0; j < m.dimension(); ++j) out.entries(i, j) = as_double(m.entries(i, j));
  }
  return out;
}

/// All size-t types over [N] in canonical order.
std::vector<TypeVector> type_basis(long n, long t, const EnumerationBudget& budget = {});

/// Exact closed-form entries of the averaged moment for fixed (N, m, t, b),
/// memoised on the (u, w, |theta||phi|) key.
class DensityEntryRule {
 public:
  DensityEntryRule(long n, long m, long t, BigRational bias);

  Surd operator()(const TypeVector& theta, const TypeVector& phi);
  double numeric(const TypeVector& theta, const TypeVector& phi);

  /// Number of labels with odd combined multiplicity.
  static unsigned odd_weight(const TypeVector& theta, const TypeVector& phi);
  static unsigned union_size(const TypeVector& theta, const TypeVector& phi);

 private:
  using Key = std::tuple<unsigned, unsigned, unsigned long>;
  const std::pair<Surd, double>& lookup(const TypeVector& theta, const TypeVector& phi);

  long n_, m_, t_;
  BigRational bias_;
  std::map<Key, std::pair<Surd, double>> cache_;
};

/// |S><S|^{(x)t} (optionally with +/-1 phases on S) in the type basis over [N].
ExactMoment subset_moment(long n, const Subset& s, long t, const std::optional<std::vector<int>>& phases = std::nullopt,
                          const EnumerationBudget& budget = {});

/// E_{S, f} |S, f><S, f|^{(x)t} from the closed form. Requires 1 <= m <= N.
ExactMoment average_density_closed_form(long n, long m, long t, const BigRational& bias,
                                        const EnumerationBudget& budget = {});
NumericMoment average_density_closed_form_numeric(long n, long m, long t, const BigRational& bias,
                                                  const EnumerationBudget& budget = {});

/// The same average by enumerating every subset and phase assignment and
/// expanding each state over computational-basis words. Falls back to the
/// per-label expectation E[(-1)^f(x)] = -b when phase enumeration is over budget.
ExactMoment average_density_bruteforce(long n, long m, long t, const BigRational& bias,
                                       const EnumerationBudget& budget = {});

/// Identity / C(N+t-1, t) in the type basis.
ExactMoment haar_moment(long n, long t, const EnumerationBudget& budget = {});

/// M = C(N+t-1, t) Pi_unique rho Pi_unique, over t-subsets.
RationalMoment restrict_unique_rescaled(const ExactMoment& rho);

/// M built entry by entry over t-subsets without materialising the full
/// type-basis matrix. Requires t <= m.
RationalMoment rescaled_unique_block(long n, long m, long t, const BigRational& bias,
                                     const EnumerationBudget& budget = {});

/// CSV rows "row,col,numerator,denominator,radicand" for every entry, value
/// = numerator/denominator * sqrt(radicand).
void write_csv(const ExactMoment& m, std::ostream& os);

/// Little-endian uint64 dimension followed by row-major float64 entries.
void write_binary(const NumericMoment& m, std::ostream& os);
Eigen::MatrixXd read_binary(std::istream& is);

}  // namespace subsetlab

#endif  // SUBSETLAB_EXACT_DENSITY_HPP
