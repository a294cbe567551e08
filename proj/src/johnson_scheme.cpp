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

#include "subsetlab/johnson_scheme.hpp"

#include <stdexcept>
#include <string>

namespace subsetlab {

namespace {

void require_johnson_range(long n, long t) {
  if (t < 0 || 2 * t > n) {
    throw std::invalid_argument("need 0 <= t <= N/2 (got N=" + std::to_string(n) +
                                ", t=" + std::to_string(t) + ")");
  }
}

void require_bias(const BigRational& b) {
  if (b < BigRational(-1) || b > BigRational(1)) throw std::invalid_argument("bias must lie in [-1, 1]");
}

}  // namespace

BigRational spherical_function(long n, long t, long q, long p) {
  require_johnson_range(n, t);
  if (q < 0 || q > t || p < 0 || p > t) throw std::invalid_argument("spherical_function: need 0 <= q, p <= t");
  BigRational sum = 0;
  for (long k = 0; k <= q; ++k) {
    const BigInt num = binomial(q, k) * binomial(p, k) * binomial(n - q + 1, k);
    if (num == 0) continue;
    BigRational term(num, binomial(t, k) * binomial(n - t, k));
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

BigRational circulant_exact(long n, long m, long t, const BigRational& bias, long p) {
  if (t < 1 || m > n) throw std::invalid_argument("circulant_exact: need 1 <= t and m <= N");
  if (m < t) throw std::invalid_argument("circulant_exact: m < t, no size-m subset holds a t-type");
  require_bias(bias);
  if (p < 0 || p > t) throw std::invalid_argument("circulant_exact: need 0 <= p <= t");
  if (m < t + p) return 0;
  BigInt m_pow;
  mpz_ui_pow_ui(m_pow.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(t));
  BigRational v(binomial(n + t - 1, t) * factorial(static_cast<unsigned long>(t)) * binomial(n - t - p, m - t - p),
                m_pow * binomial(n, m));
  return v * pow(bias, static_cast<unsigned>(2 * p));
}

CirculantProfile CirculantProfile::exact(long n, long m, long t, const BigRational& bias) {
  require_johnson_range(n, t);
  CirculantProfile prof{n, m, t, bias, {}};
  for (long p = 0; p <= t; ++p) prof.values.push_back(circulant_exact(n, m, t, bias, p));
  return prof;
}

void CirculantProfile::validate() const {
  require_johnson_range(n, t);
  require_bias(bias);
  if (t < 1 || m < t || m > n) throw std::invalid_argument("CirculantProfile: need 1 <= t <= m <= N");
  if (values.size() != static_cast<std::size_t>(t + 1)) throw std::invalid_argument("CirculantProfile: need t+1 values");
  if (values[0].sign() <= 0) throw std::invalid_argument("CirculantProfile: nu(0) must be positive");
}

BigInt SpectralDecomposition::total_multiplicity() const {
  BigInt s = 0;
  for (const auto& b : blocks) s += b.multiplicity;
  return s;
}

BigRational SpectralDecomposition::weighted_trace() const {
  BigRational s = 0;
  for (const auto& b : blocks) s += BigRational(b.multiplicity) * b.eigenvalue;
  return s;
}

BigRational eigenvalue(const CirculantProfile& profile, long q) {
  profile.validate();
  const long n = profile.n;
  const long t = profile.t;
  if (q < 0 || q > t) throw std::invalid_argument("eigenvalue: need 0 <= q <= t");
  BigRational mu = 0;
  for (long p = 0; p <= t; ++p) {
    if (profile.values[p].is_zero()) continue;
    mu += profile.values[p] * BigRational(orbit_size(n, t, p)) * spherical_function(n, t, q, p);
  }
  return mu;
}

BigRational top_eigenvalue_closed_form(const CirculantProfile& profile) {
  profile.validate();
  BigRational mu = 0;
  for (long p = 0; p <= profile.t; ++p) {
    BigRational term = profile.values[p] * BigRational(binomial(profile.t, p));
    mu += (p % 2 == 0) ? term : -term;
  }
  return mu;
}

SpectralDecomposition spectrum(const CirculantProfile& profile) {
  profile.validate();
  SpectralDecomposition dec{profile.n, profile.t, {}};
  for (long q = 0; q <= profile.t; ++q) {
    dec.blocks.push_back({q, eigenvalue(profile, q), two_row_irrep_dim(profile.n, q)});
  }
  return dec;
}

}  // namespace subsetlab
