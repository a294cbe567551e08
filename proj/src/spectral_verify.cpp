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

#include "subsetlab/spectral_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace subsetlab {

namespace {

double max_asymmetry(const Eigen::MatrixXd& a) { return (a - a.transpose()).cwiseAbs().maxCoeff(); }

double schatten_one(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solve failed");
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

double trace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  if (a.size() == 0) return 0.0;
  if (max_asymmetry(a) > kSymmetryTolerance || max_asymmetry(b) > kSymmetryTolerance) {
    throw std::invalid_argument("trace_distance: input is not Hermitian");
  }
  return 0.5 * schatten_one(a - b);
}

BigRational block_trace_distance_exact(const SpectralDecomposition& spec) {
  BigRational sum = 0;
  for (const auto& block : spec.blocks) sum += BigRational(block.multiplicity) * abs(block.eigenvalue - BigRational(1));
  return sum / BigRational(BigInt(2 * binomial(spec.n + spec.t - 1, spec.t)));
}

double block_trace_distance(const SpectralDecomposition& spec) { return block_trace_distance_exact(spec).to_double(); }

NearbyBound nearby_matrices_bound(const Eigen::MatrixXd& rho, Eigen::Index d1) {
  const Eigen::Index total = rho.rows();
  if (rho.cols() != total || d1 <= 0 || d1 > total) throw std::invalid_argument("nearby_matrices_bound: need 0 < d1 <= D");
  if (max_asymmetry(rho) > kSymmetryTolerance) throw std::invalid_argument("nearby_matrices_bound: rho not symmetric");
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw std::invalid_argument("nearby_matrices_bound: rho must have unit trace");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("nearby_matrices_bound: rho not PSD");

  const double inv_d = 1.0 / static_cast<double>(total);
  NearbyBound r;
  r.split.total = total;
  r.split.d1 = d1;
  r.split.d2 = total - d1;
  r.split.epsilon = static_cast<double>(r.split.d2) * inv_d;
  const Eigen::MatrixXd block = rho.topLeftCorner(d1, d1);
  r.split.delta = 0.5 * schatten_one(block - inv_d * Eigen::MatrixXd::Identity(d1, d1));
  r.bound = 2.0 * r.split.delta + 2.0 * r.split.epsilon;
  r.actual = 0.5 * schatten_one(rho - inv_d * Eigen::MatrixXd::Identity(total, total));
  return r;
}

std::vector<std::size_t> transposition_action(const std::vector<Subset>& subsets, std::uint32_t n, std::uint32_t i) {
  std::vector<std::size_t> image(subsets.size());
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    Subset s = subsets[k];
    for (auto& x : s) {
      if (x == i) {
        x = i + 1;
      } else if (x == i + 1) {
        x = i;
      }
    }
    std::sort(s.begin(), s.end());
    image[k] = subset_rank(s, n);
  }
  return image;
}

namespace {

template <class Matrix, class Equal>
bool invariant_under_adjacent_transpositions(const Matrix& m, long n, long t, Equal equal) {
  const auto subsets = enumerate_subsets(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(t));
  if (static_cast<std::size_t>(m.rows()) != subsets.size() || m.rows() != m.cols()) {
    throw std::invalid_argument("circulant_check: matrix must be C(N,t) square");
  }
  for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(n); ++i) {
    const auto image = transposition_action(subsets, static_cast<std::uint32_t>(n), i);
    for (std::size_t a = 0; a < subsets.size(); ++a) {
      for (std::size_t b = 0; b < subsets.size(); ++b) {
        if (!equal(m(static_cast<Eigen::Index>(image[a]), static_cast<Eigen::Index>(image[b])),
                   m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)))) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

bool circulant_check(const RationalMoment& m, long n, long t) {
  return invariant_under_adjacent_transpositions(m.entries, n, t,
                                                 [](const BigRational& x, const BigRational& y) { return x == y; });
}

bool circulant_check(const Eigen::MatrixXd& m, long n, long t, double tolerance) {
  return invariant_under_adjacent_transpositions(
      m, n, t, [tolerance](double x, double y) { return std::abs(x - y) <= tolerance; });
}

std::vector<Eigen::MatrixXd> distance_matrices(long n, long t) {
  const auto subsets = enumerate_subsets(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(t));
  const auto dim = static_cast<Eigen::Index>(subsets.size());
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(t + 1), Eigen::MatrixXd::Zero(dim, dim));
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      out[subset_distance(subsets[a], subsets[b])](a, b) = 1.0;
    }
  }
  return out;
}

JohnsonOracle johnson_graph_oracle(long n, long t, std::size_t max_dimension) {
  if (t < 0 || 2 * t > n) throw std::invalid_argument("johnson_graph_oracle: need 0 <= t <= N/2");
  if (binomial(n, t) > BigInt(static_cast<unsigned long>(max_dimension))) {
    throw BudgetExceeded("johnson_graph_oracle: C(N,t) exceeds " + std::to_string(max_dimension));
  }
  JohnsonOracle oracle{n, t, {}, 0, 0, 0};
  const auto a = distance_matrices(n, t);
  const Eigen::Index dim = a[0].rows();

  for (std::size_t p = 0; p < a.size(); ++p) {
    for (std::size_t r = p + 1; r < a.size(); ++r) {
      oracle.max_commutator = std::max(oracle.max_commutator, (a[p] * a[r] - a[r] * a[p]).cwiseAbs().maxCoeff());
    }
  }

  // A generic combination separates the joint eigenspaces even when one
  // distance matrix alone has colliding eigenvalues.
  Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t p = 1; p < a.size(); ++p) combo += std::pow(0.61803398875 + 0.3183098862 * static_cast<double>(p), -1.5) * a[p];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(combo);
  if (es.info() != Eigen::Success) throw std::runtime_error("johnson_graph_oracle: eigen-solve failed");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double scale = 1.0 + lambda.cwiseAbs().maxCoeff();

  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= dim; ++i) {
    if (i == dim || lambda(i) - lambda(i - 1) > 1e-7 * scale) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }

  // Span of indicator vectors {a : a contains s} over q-subsets s; it equals
  // the sum of the blocks 0..q.
  auto filtration_projector = [&](long q) {
    const auto small = enumerate_subsets(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(q));
    const auto big = enumerate_subsets(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(t));
    Eigen::MatrixXd inc = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(small.size()));
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < small.size(); ++j) {
        if (std::includes(big[i].begin(), big[i].end(), small[j].begin(), small[j].end())) inc(i, static_cast<Eigen::Index>(j)) = 1.0;
      }
    }
    const Eigen::MatrixXd gram = inc.transpose() * inc;
    return Eigen::MatrixXd(inc * gram.ldlt().solve(inc.transpose()));
  };
  std::vector<Eigen::MatrixXd> filtration;
  for (long q = 0; q <= t; ++q) filtration.push_back(filtration_projector(q));

  Eigen::MatrixXd completeness = -Eigen::MatrixXd::Identity(dim, dim);
  for (const auto& [lo, hi] : clusters) {
    JohnsonEigenspace space;
    space.dimension = hi - lo;
    space.basis = es.eigenvectors().middleCols(lo, hi - lo);
    space.projector = space.basis * space.basis.transpose();
    completeness += space.projector;
    for (const auto& ap : a) {
      const Eigen::MatrixXd image = ap * space.basis;
      const double value = (space.basis.transpose() * image).trace() / static_cast<double>(space.dimension);
      space.distance_eigenvalues.push_back(value);
      space.residual = std::max(space.residual, (image - value * space.basis).cwiseAbs().maxCoeff());
    }
    space.q = -1;
    for (long q = 0; q <= t; ++q) {
      if ((space.basis - filtration[q] * space.basis).cwiseAbs().maxCoeff() < 1e-6) {
        space.q = q;
        break;
      }
    }
    oracle.max_residual = std::max(oracle.max_residual, space.residual);
    oracle.eigenspaces.push_back(std::move(space));
  }
  oracle.completeness_error = completeness.cwiseAbs().maxCoeff();
  std::sort(oracle.eigenspaces.begin(), oracle.eigenspaces.end(),
            [](const auto& x, const auto& y) { return x.q < y.q; });
  return oracle;
}

double spherical_deviation(const JohnsonOracle& oracle) {
  double worst = 0;
  for (const auto& space : oracle.eigenspaces) {
    if (space.q < 0) return std::numeric_limits<double>::infinity();
    for (long p = 0; p <= oracle.t; ++p) {
      const double expected =
          (BigRational(orbit_size(oracle.n, oracle.t, p)) * spherical_function(oracle.n, oracle.t, space.q, p)).to_double();
      worst = std::max(worst, std::abs(space.distance_eigenvalues[static_cast<std::size_t>(p)] - expected));
    }
  }
  return worst;
}

Eigen::MatrixXd top_block_frame(const JohnsonOracle& oracle, const std::vector<TypeVector>& type_index) {
  const JohnsonEigenspace* top = nullptr;
  for (const auto& space : oracle.eigenspaces) {
    if (space.q == oracle.t) top = &space;
  }
  if (top == nullptr) throw std::logic_error("top_block_frame: oracle has no q = t block");
  const auto dim = static_cast<Eigen::Index>(type_index.size());
  std::vector<Eigen::Index> unique_rows;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (type_index[static_cast<std::size_t>(i)].is_unique()) unique_rows.push_back(i);
  }
  if (static_cast<Eigen::Index>(unique_rows.size()) != top->basis.rows()) {
    throw std::invalid_argument("top_block_frame: type basis does not match oracle");
  }
  Eigen::MatrixXd lead = Eigen::MatrixXd::Zero(dim, top->dimension);
  for (std::size_t k = 0; k < unique_rows.size(); ++k) lead.row(unique_rows[k]) = top->basis.row(static_cast<Eigen::Index>(k));

  const Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(dim, dim) - lead * lead.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(complement);
  const Eigen::Index rest = dim - top->dimension;
  Eigen::MatrixXd frame(dim, dim);
  frame.leftCols(top->dimension) = lead;
  frame.rightCols(rest) = es.eigenvectors().rightCols(rest);  // eigenvalue 1 block
  return frame;
}

double two_copy_trace_distance(long n, long m, const BigRational& bias) {
  constexpr long t = 2;
  if (n < 4) throw std::invalid_argument("two_copy_trace_distance: need N >= 4");
  const auto spec = spectrum(CirculantProfile::exact(n, m, t, bias));
  DensityEntryRule rule(n, m, t, bias);
  const TypeVector xx({0}, {2});
  const TypeVector yy({1}, {2});
  const TypeVector x_in({0, 1}, {1, 1});
  const TypeVector x_out({1, 2}, {1, 1});

  const double dim = BigRational(binomial(n + 1, 2)).to_double();
  const double nd = static_cast<double>(n);
  const double pairs = nd * (nd - 1.0) / 2.0;
  const double diag_same = rule.numeric(xx, xx);
  const double diag_other = rule.numeric(xx, yy);
  const double cross_in = rule.numeric(xx, x_in);
  const double cross_out = rule.numeric(xx, x_out);
  auto mu = [&](long q) { return spec.blocks[static_cast<std::size_t>(q)].eigenvalue.to_double() / dim; };

  // Eigenvalues of a symmetric 2x2 block [[a, c], [c, d]].
  auto pair_eigenvalues = [](double a, double c, double d) {
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), c);
    return std::pair{mean - radius, mean + radius};
  };
  const double inv = 1.0 / dim;
  double norm = 0;

  // q = 0: constant vectors on doubled and on unique types.
  {
    const double a = diag_same + (nd - 1.0) * diag_other;
    const double c = std::sqrt(pairs / nd) * (cross_out * nd + 2.0 * (cross_in - cross_out));
    const auto [l1, l2] = pair_eigenvalues(a, c, mu(0));
    norm += std::abs(l1 - inv) + std::abs(l2 - inv);
  }
  // q = 1: (e_0 - e_1)/sqrt 2 on doubled types paired with its image under
  // the incidence map on unique types; multiplicity N - 1.
  {
    const double a = diag_same - diag_other;
    const double c = (cross_in - cross_out) * std::sqrt(nd - 2.0);
    const auto [l1, l2] = pair_eigenvalues(a, c, mu(1));
    norm += (nd - 1.0) * (std::abs(l1 - inv) + std::abs(l2 - inv));
  }
  // q = 2 lives only on unique types.
  norm += BigRational(two_row_irrep_dim(n, 2)).to_double() * std::abs(mu(2) - inv);
  return 0.5 * norm;
}

TheoremCheck theorem_bound_check(long n, long m, long t, const BigRational& bias, Eigen::Index dense_limit,
                                 const EnumerationBudget& budget) {
  TheoremCheck check{n, m, t, bias, 0, 0, 0, 0, {}};
  const auto spec = spectrum(CirculantProfile::exact(n, m, t, bias));
  const BigRational d_sym(binomial(n + t - 1, t));
  const auto& top = spec.blocks.back();
  const BigRational delta = BigRational(top.multiplicity) * abs(top.eigenvalue - BigRational(1)) / (BigRational(2) * d_sym);
  const BigRational epsilon = BigRational(1) - BigRational(top.multiplicity) / d_sym;
  check.delta = delta.to_double();
  check.epsilon = epsilon.to_double();
  check.bound = (BigRational(2) * delta + BigRational(2) * epsilon).to_double();

  if (binomial(n + t - 1, t) <= BigInt(static_cast<unsigned long>(dense_limit))) {
    const auto rho = average_density_closed_form_numeric(n, m, t, bias, budget);
    const auto dim = rho.dimension();
    check.td_full = trace_distance(rho.entries, Eigen::MatrixXd::Identity(dim, dim) / static_cast<double>(dim));
    check.method = "dense";
  } else if (t == 2) {
    check.td_full = two_copy_trace_distance(n, m, bias);
    check.method = "two-copy-reduction";
  } else {
    throw BudgetExceeded("theorem_bound_check: type basis exceeds dense limit and t != 2");
  }
  return check;
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"check", r.check}, {"params", r.params}, {"quantities", r.quantities}, {"bound", r.bound}, {"pass", r.pass}};
}

}  // namespace subsetlab
