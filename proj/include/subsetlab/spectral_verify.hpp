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

/// \file spectral_verify.hpp
/// \brief Numerical checks around the exact spectra: trace distances, the
/// dominant-block bound, S_N invariance, and an eigen-oracle built from the
/// distance matrices of t-subsets.

#ifndef SUBSETLAB_SPECTRAL_VERIFY_HPP
#define SUBSETLAB_SPECTRAL_VERIFY_HPP

#include "subsetlab/combinatorics.hpp"
#include "subsetlab/exact_density.hpp"
#include "subsetlab/johnson_scheme.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <string>
#include <vector>

namespace subsetlab {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kSpectralTolerance = 1e-9;

/// 1/2 ||A - B||_1 for real symmetric A, B.
double trace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

template <class Scalar>
double trace_distance(const MomentMatrix<Scalar>& a, const MomentMatrix<Scalar>& b) {
  if (a.basis != b.basis || a.dimension() != b.dimension()) {
    throw std::invalid_argument("trace_distance: basis or dimension mismatch");
  }
  return trace_distance(to_numeric(a).entries, to_numeric(b).entries);
}

/// Exact restricted trace distance on the unique-type subspace,
/// (1 / (2 C(N+t-1,t))) sum_q d_q |mu_q - 1|.
BigRational block_trace_distance_exact(const SpectralDecomposition& spec);
double block_trace_distance(const SpectralDecomposition& spec);

/// Split H = H1 (+) H2 with H1 the first d1 coordinates.
struct BlockSplit {
  Eigen::Index total = 0;
  Eigen::Index d1 = 0;
  Eigen::Index d2 = 0;
  double epsilon = 0;  ///< d2 / D
  double delta = 0;    ///< TD(Pi1 rho Pi1, Pi1 / D)
};

struct NearbyBound {
  BlockSplit split;
  double bound = 0;   ///< 2 delta + 2 epsilon
  double actual = 0;  ///< TD(rho, I / D)
  bool holds() const { return actual <= bound + kSpectralTolerance; }
};

/// Evaluates both sides of TD(rho, I/D) <= 2 delta + 2 epsilon. rho must be a
/// real density matrix already expressed in a basis whose first d1 vectors
/// span H1.
NearbyBound nearby_matrices_bound(const Eigen::MatrixXd& rho, Eigen::Index d1);

/// Induced permutation of t-subsets under the transposition (i, i+1).
std::vector<std::size_t> transposition_action(const std::vector<Subset>& subsets, std::uint32_t n, std::uint32_t i);

/// True iff M is invariant under every adjacent transposition acting on
/// t-subsets of [N] (exact comparison).
bool circulant_check(const RationalMoment& m, long n, long t);
/// Same check with an absolute tolerance.
bool circulant_check(const Eigen::MatrixXd& m, long n, long t, double tolerance = kSpectralTolerance);

/// A_p over t-subsets: entry 1 where |a \ b| = p.
std::vector<Eigen::MatrixXd> distance_matrices(long n, long t);

struct JohnsonEigenspace {
  long q = 0;
  Eigen::Index dimension = 0;
  Eigen::MatrixXd basis;       ///< orthonormal columns
  Eigen::MatrixXd projector;
  std::vector<double> distance_eigenvalues;  ///< eigenvalue of A_p, p = 0..t
  double residual = 0;                       ///< max |A_p V - lambda_p V|
};

struct JohnsonOracle {
  long n = 0;
  long t = 0;
  std::vector<JohnsonEigenspace> eigenspaces;  ///< indexed by q after labelling
  double max_commutator = 0;                   ///< max |A_p A_r - A_r A_p|
  double max_residual = 0;
  double completeness_error = 0;               ///< |sum of projectors - I|
};

/// Jointly diagonalises all distance matrices of t-subsets of [N] and labels
/// each joint eigenspace by the smallest q such that it lies in the span of
/// indicator vectors of supersets of q-subsets.
JohnsonOracle johnson_graph_oracle(long n, long t, std::size_t max_dimension = 5000);

/// max over q, p of |oracle eigenvalue - orbit_size * Phi_q(p)|.
double spherical_deviation(const JohnsonOracle& oracle);

/// Orthonormal frame of the full type basis whose leading columns span the
/// top irrep block [N-t, t] inside the unique-type subspace.
Eigen::MatrixXd top_block_frame(const JohnsonOracle& oracle, const std::vector<TypeVector>& type_index);

/// TD(rho, rho0) on the full two-copy symmetric subspace, reduced by S_N
/// isotypic components: two 2x2 blocks (q = 0, 1) and one scalar (q = 2).
double two_copy_trace_distance(long n, long m, const BigRational& bias);

struct TheoremCheck {
  long n = 0, m = 0, t = 0;
  BigRational bias = 1;
  double td_full = 0;
  double delta = 0;
  double epsilon = 0;
  double bound = 0;
  std::string method;
  bool holds() const { return td_full <= bound + kSpectralTolerance; }
};

/// Full-subspace trace distance against the dominant-block bound with H1 the
/// [N-t, t] block. Uses a dense solve when the type basis fits in
/// dense_limit, otherwise the two-copy reduction (t = 2 only).
TheoremCheck theorem_bound_check(long n, long m, long t, const BigRational& bias, Eigen::Index dense_limit = 2500,
                                 const EnumerationBudget& budget = {});

/// {params, quantities, bound, pass}
struct VerificationReport {
  std::string check;
  nlohmann::json params;
  nlohmann::json quantities;
  double bound = 0;
  bool pass = false;
};

void to_json(nlohmann::json& j, const VerificationReport& r);

}  // namespace subsetlab

#endif  // SUBSETLAB_SPECTRAL_VERIFY_HPP
