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

/// \file johnson_scheme.hpp
/// \brief Exact spectral theory of S_N-invariant matrices on t-subsets.
///
/// The rescaled unique-type block M of the averaged subset-state moment is
/// constant on distance classes p = |a \ b|, so it is a polynomial in the
/// Johnson scheme. Its eigenvalue on the two-row irrep block [N-q, q] is
///
///     mu_q = sum_p nu(p) * orbit_size(N, t, p) * Phi_q(p)
///
/// with Phi_q the spherical function of (S_N, S_t x S_{N-t}). All quantities
/// here are exact rationals.

#ifndef SUBSETLAB_JOHNSON_SCHEME_HPP
#define SUBSETLAB_JOHNSON_SCHEME_HPP

#include "subsetlab/combinatorics.hpp"
#include "subsetlab/exact.hpp"

#include <vector>

namespace subsetlab {

/// Distance-class values nu(0..t) of the rescaled unique-type block.
struct CirculantProfile {
  long n = 0;
  long m = 0;
  long t = 0;
  BigRational bias = 1;
  std::vector<BigRational> values;

  /// Builds the exact profile; throws std::invalid_argument on bad parameters.
  static CirculantProfile exact(long n, long m, long t, const BigRational& bias);
  void validate() const;
};

struct SpectralBlock {
  long q = 0;
  BigRational eigenvalue;
  BigInt multiplicity;
};

/// Eigenvalues of M by irrep block q = 0..t with their multiplicities.
struct SpectralDecomposition {
  long n = 0;
  long t = 0;
  std::vector<SpectralBlock> blocks;

  BigInt total_multiplicity() const;
  /// sum_q d_q mu_q
  BigRational weighted_trace() const;
};

/// Phi_{[N-q,q]}(p). Requires 0 <= q, p <= t <= N/2.
BigRational spherical_function(long n, long t, long q, long p);

/// nu(p) = C(N+t-1,t) (t!/m^t) C(N-t-p, m-t-p)/C(N,m) b^(2p).
/// Zero when m < t + p; throws when m < t.
BigRational circulant_exact(long n, long m, long t, const BigRational& bias, long p);

/// Eigenvalue of M on the [N-q, q] block via the spherical-function sum.
BigRational eigenvalue(const CirculantProfile& profile, long q);

/// Eigenvalue on the top block [N-t, t] via sum_p (-1)^p nu(p) C(t,p).
BigRational top_eigenvalue_closed_form(const CirculantProfile& profile);

SpectralDecomposition spectrum(const CirculantProfile& profile);

}  // namespace subsetlab

#endif  // SUBSETLAB_JOHNSON_SCHEME_HPP
