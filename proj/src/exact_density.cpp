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

#include "subsetlab/exact_density.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace subsetlab {

const char* basis_name(BasisKind kind) {
  switch (kind) {
    case BasisKind::kComputational:
      return "computational";
    case BasisKind::kType:
      return "type";
    case BasisKind::kUniqueType:
      return "unique-type";
  }
  return "?";
}

namespace {

void require_bias(const BigRational& b) {
  if (b < BigRational(-1) || b > BigRational(1)) throw std::invalid_argument("bias must lie in [-1, 1]");
}

void require_moment_params(long n, long m, long t) {
  if (n < 1 || t < 1) throw std::invalid_argument("need N >= 1 and t >= 1");
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= N");
}

// Merges two sorted supports and reports (union size, odd combined multiplicities).
std::pair<unsigned, unsigned> merge_stats(const TypeVector& a, const TypeVector& b) {
  const auto& sa = a.support();
  const auto& sb = b.support();
  const auto& ma = a.multiplicities();
  const auto& mb = b.multiplicities();
  std::size_t i = 0, j = 0;
  unsigned u = 0, odd = 0;
  while (i < sa.size() || j < sb.size()) {
    std::uint32_t combined = 0;
    if (j == sb.size() || (i < sa.size() && sa[i] < sb[j])) {
      combined = ma[i++];
    } else if (i == sa.size() || sb[j] < sa[i]) {
      combined = mb[j++];
    } else {
      combined = ma[i++] + mb[j++];
    }
    ++u;
    odd += combined % 2;
  }
  return {u, odd};
}

unsigned long small_weight(const TypeVector& x) {
  unsigned long w = 1;
  for (auto k : x.multiplicities()) {
    for (unsigned long f = 2; f <= k; ++f) w *= f;
  }
  return w;
}

BigInt pow_ui(long base, long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

}  // namespace

std::vector<TypeVector> type_basis(long n, long t, const EnumerationBudget& budget) {
  if (n < 1 || t < 1) throw std::invalid_argument("type_basis: need N >= 1 and t >= 1");
  Subset all(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i);
  return enumerate_types(all, static_cast<std::uint32_t>(t), budget);
}

DensityEntryRule::DensityEntryRule(long n, long m, long t, BigRational bias)
    : n_(n), m_(m), t_(t), bias_(std::move(bias)) {
  require_moment_params(n, m, t);
  require_bias(bias_);
}

unsigned DensityEntryRule::odd_weight(const TypeVector& theta, const TypeVector& phi) {
  return merge_stats(theta, phi).second;
}

unsigned DensityEntryRule::union_size(const TypeVector& theta, const TypeVector& phi) {
  return merge_stats(theta, phi).first;
}

const std::pair<Surd, double>& DensityEntryRule::lookup(const TypeVector& theta, const TypeVector& phi) {
  const auto [u, w] = merge_stats(theta, phi);
  const Key key{u, w, small_weight(theta) * small_weight(phi)};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    Surd value = 0;
    if (static_cast<long>(u) <= m_) {
      const BigRational scalar(factorial(static_cast<unsigned long>(t_)) * binomial(n_ - u, m_ - u),
                               pow_ui(m_, t_) * binomial(n_, m_));
      value = Surd(scalar * pow(bias_, w)) * Surd::inverse_sqrt(BigInt(std::get<2>(key)));
    }
    const double d = value.to_double();
    it = cache_.emplace(key, std::make_pair(std::move(value), d)).first;
  }
  return it->second;
}

Surd DensityEntryRule::operator()(const TypeVector& theta, const TypeVector& phi) { return lookup(theta, phi).first; }

double DensityEntryRule::numeric(const TypeVector& theta, const TypeVector& phi) {
  return lookup(theta, phi).second;
}

ExactMoment subset_moment(long n, const Subset& s, long t, const std::optional<std::vector<int>>& phases,
                          const EnumerationBudget& budget) {
  if (s.empty() || t < 1) throw std::invalid_argument("subset_moment: need |S| >= 1 and t >= 1");
  if (s.back() >= static_cast<std::uint32_t>(n)) throw std::invalid_argument("subset_moment: label outside [N]");
  if (phases && phases->size() != s.size()) throw std::invalid_argument("subset_moment: phases must cover S");
  budget.require(pow_ui(static_cast<long>(s.size()), t), "subset_moment");
  ExactMoment out{BasisKind::kType, n, t, type_basis(n, t, budget), {}};
  const auto dim = static_cast<Eigen::Index>(out.index.size());
  out.entries = ExactMoment::Matrix::Constant(dim, dim, Surd(0));

  // <theta|S>^{(x)t} = sqrt(t!/|theta|) m^{-t/2} prod_x s_x^{theta_x}
  std::vector<int> sign(out.index.size(), 0);
  std::vector<Eigen::Index> inside;
  for (std::size_t i = 0; i < out.index.size(); ++i) {
    int sg = 1;
    bool contained = true;
    const auto& ty = out.index[i];
    for (std::size_t k = 0; k < ty.support().size(); ++k) {
      auto it = std::lower_bound(s.begin(), s.end(), ty.support()[k]);
      if (it == s.end() || *it != ty.support()[k]) {
        contained = false;
        break;
      }
      if (phases && (*phases)[static_cast<std::size_t>(it - s.begin())] < 0 && ty.multiplicities()[k] % 2 == 1) sg = -sg;
    }
    if (contained) {
      sign[i] = sg;
      inside.push_back(static_cast<Eigen::Index>(i));
    }
  }
  const BigRational scale(factorial(static_cast<unsigned long>(t)), pow_ui(static_cast<long>(s.size()), t));
  for (auto i : inside) {
    for (auto j : inside) {
      const BigInt w = out.index[i].factorial_weight() * out.index[j].factorial_weight();
      out.entries(i, j) = Surd(scale * BigRational(sign[i] * sign[j])) * Surd::inverse_sqrt(w);
    }
  }
  return out;
}

ExactMoment average_density_closed_form(long n, long m, long t, const BigRational& bias,
                                        const EnumerationBudget& budget) {
  DensityEntryRule rule(n, m, t, bias);
  ExactMoment out{BasisKind::kType, n, t, type_basis(n, t, budget), {}};
  const auto dim = static_cast<Eigen::Index>(out.index.size());
  budget.require(BigInt(static_cast<unsigned long>(dim)) * dim, "average_density_closed_form");
  out.entries.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      out.entries(i, j) = rule(out.index[i], out.index[j]);
      out.entries(j, i) = out.entries(i, j);
    }
  }
  return out;
}

NumericMoment average_density_closed_form_numeric(long n, long m, long t, const BigRational& bias,
                                                  const EnumerationBudget& budget) {
  DensityEntryRule rule(n, m, t, bias);
  NumericMoment out{BasisKind::kType, n, t, type_basis(n, t, budget), {}};
  const auto dim = static_cast<Eigen::Index>(out.index.size());
  budget.require(BigInt(static_cast<unsigned long>(dim)) * dim, "average_density_closed_form_numeric");
  out.entries.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      out.entries(i, j) = rule.numeric(out.index[i], out.index[j]);
      out.entries(j, i) = out.entries(i, j);
    }
  }
  return out;
}

namespace {

struct WordTable {
  // One entry per length-t word over S: the type it belongs to and its letters
  // as positions in S.
  std::vector<std::size_t> type_of_word;
  std::vector<std::vector<std::uint32_t>> letters;
};

WordTable expand_words(const Subset& s, long t, const std::map<TypeVector, std::size_t>& lookup) {
  WordTable table;
  const auto m = s.size();
  std::vector<std::uint32_t> pos(static_cast<std::size_t>(t), 0);
  while (true) {
    std::vector<std::uint32_t> word(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) word[i] = s[pos[i]];
    table.type_of_word.push_back(lookup.at(TypeVector::from_word(word)));
    table.letters.push_back(pos);
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == m) pos[i++] = 0;
    if (i == pos.size()) break;
  }
  return table;
}

}  // namespace

ExactMoment average_density_bruteforce(long n, long m, long t, const BigRational& bias,
                                       const EnumerationBudget& budget) {
  require_moment_params(n, m, t);
  require_bias(bias);
  ExactMoment out{BasisKind::kType, n, t, type_basis(n, t, budget), {}};
  const auto dim = out.index.size();
  std::map<TypeVector, std::size_t> lookup;
  for (std::size_t i = 0; i < dim; ++i) lookup.emplace(out.index[i], i);

  const BigInt subsets = binomial(n, m);
  const BigInt words = pow_ui(m, t);
  budget.require(subsets * words, "average_density_bruteforce");

  // Word counts per type, measured rather than taken from t!/|theta|.
  std::vector<long> word_count(dim, 0);
  auto record_counts = [&](const WordTable& table) {
    std::vector<long> local(dim, 0);
    for (auto ty : table.type_of_word) ++local[ty];
    for (std::size_t i = 0; i < dim; ++i) {
      if (local[i] == 0) continue;
      if (word_count[i] != 0 && word_count[i] != local[i]) throw std::logic_error("inconsistent word counts");
      word_count[i] = local[i];
    }
  };

  const BigInt num = bias.numerator();
  const BigInt den = bias.denominator();
  // Integer phase weights are products of (den +/- num); keep every
  // accumulator inside int64.
  BigInt weight_bound;
  const BigInt two_den = 2 * den;
  mpz_pow_ui(weight_bound.get_mpz_t(), two_den.get_mpz_t(), static_cast<unsigned long>(m));
  const BigInt t_fact = factorial(static_cast<unsigned long>(t));
  const bool enumerate_phases = m < 62 &&
                                BigInt(subsets * words) * pow_ui(2, m) <= BigInt(std::to_string(budget.limit)) &&
                                weight_bound * subsets * t_fact * t_fact < pow_ui(2, 62);

  std::vector<BigRational> value(dim * dim, BigRational(0));
  if (enumerate_phases) {
    // Phase f on S drawn with P[f(x)=1] = (1+b)/2, sign (-1)^f(x). Scaling
    // each probability by 2*den makes all weights integers.
    const long long w_minus = BigInt(den + num).get_si();  // sign -1
    const long long w_plus = BigInt(den - num).get_si();   // sign +1
    std::vector<long long> acc(dim * dim, 0);
    std::vector<long> word_sum(dim, 0);
    for_each_subset(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m), [&](const Subset& s) {
      const WordTable table = expand_words(s, t, lookup);
      record_counts(table);
      for (std::uint64_t f = 0; f < (std::uint64_t{1} << m); ++f) {
        long long weight = 1;
        for (long x = 0; x < m; ++x) weight *= ((f >> x) & 1U) ? w_minus : w_plus;
        if (weight == 0) continue;
        std::fill(word_sum.begin(), word_sum.end(), 0);
        for (std::size_t w = 0; w < table.letters.size(); ++w) {
          int sg = 1;
          for (auto p : table.letters[w]) {
            if ((f >> p) & 1U) sg = -sg;
          }
          word_sum[table.type_of_word[w]] += sg;
        }
        for (std::size_t i = 0; i < dim; ++i) {
          if (word_sum[i] == 0) continue;
          for (std::size_t j = 0; j < dim; ++j) {
            if (word_sum[j] == 0) continue;
            acc[i * dim + j] += weight * (word_sum[i] * word_sum[j]);
          }
        }
      }
    }, budget);
    const BigInt norm = weight_bound * subsets * words;
    for (std::size_t k = 0; k < dim * dim; ++k) value[k] = BigRational(BigInt(std::to_string(acc[k])), norm);
  } else {
    // Factorised phase average: a pair of words (w, w') contributes
    // prod over labels of E[s^c] = (-b)^(number of labels with odd count).
    const auto max_odd = static_cast<std::size_t>(2 * t);
    std::vector<long long> acc(dim * dim * (max_odd + 1), 0);
    budget.require(subsets * words * words, "average_density_bruteforce (factorised)");
    for_each_subset(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m), [&](const Subset& s) {
      const WordTable table = expand_words(s, t, lookup);
      record_counts(table);
      std::vector<unsigned> parity(static_cast<std::size_t>(m), 0);
      for (std::size_t a = 0; a < table.letters.size(); ++a) {
        for (std::size_t b = 0; b < table.letters.size(); ++b) {
          std::fill(parity.begin(), parity.end(), 0U);
          for (auto p : table.letters[a]) parity[p] ^= 1U;
          for (auto p : table.letters[b]) parity[p] ^= 1U;
          std::size_t odd = 0;
          for (auto v : parity) odd += v;
          acc[(table.type_of_word[a] * dim + table.type_of_word[b]) * (max_odd + 1) + odd] += 1;
        }
      }
    }, budget);
    std::vector<BigRational> factor(max_odd + 1);
    for (std::size_t k = 0; k <= max_odd; ++k) factor[k] = pow(-bias, static_cast<unsigned>(k));
    const BigRational norm(BigInt(1), subsets * words);
    for (std::size_t k = 0; k < dim * dim; ++k) {
      BigRational v = 0;
      for (std::size_t odd = 0; odd <= max_odd; ++odd) {
        const long long c = acc[k * (max_odd + 1) + odd];
        if (c != 0) v += BigRational(static_cast<long>(c)) * factor[odd];
      }
      value[k] = v * norm;
    }
  }

  // Amplitude of |theta> is (sum over its words) / sqrt(word count).
  out.entries.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& v = value[i * dim + j];
      out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          v.is_zero() ? Surd(0) : Surd(v) * Surd::inverse_sqrt(BigInt(word_count[i]) * word_count[j]);
    }
  }
  return out;
}

ExactMoment haar_moment(long n, long t, const EnumerationBudget& budget) {
  ExactMoment out{BasisKind::kType, n, t, type_basis(n, t, budget), {}};
  const auto dim = static_cast<Eigen::Index>(out.index.size());
  out.entries = ExactMoment::Matrix::Constant(dim, dim, Surd(0));
  const Surd diag(BigRational(BigInt(1), binomial(n + t - 1, t)));
  for (Eigen::Index i = 0; i < dim; ++i) out.entries(i, i) = diag;
  return out;
}

RationalMoment restrict_unique_rescaled(const ExactMoment& rho) {
  if (rho.basis != BasisKind::kType) throw std::invalid_argument("restrict_unique_rescaled: need type basis");
  std::vector<Eigen::Index> keep;
  RationalMoment out{BasisKind::kUniqueType, rho.n, rho.t, {}, {}};
  for (std::size_t i = 0; i < rho.index.size(); ++i) {
    if (rho.index[i].is_unique()) {
      keep.push_back(static_cast<Eigen::Index>(i));
      out.index.push_back(rho.index[i]);
    }
  }
  const BigRational scale(binomial(rho.n + rho.t - 1, rho.t));
  const auto dim = static_cast<Eigen::Index>(keep.size());
  out.entries.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const Surd& v = rho.entries(keep[i], keep[j]);
      if (!v.is_rational()) throw std::logic_error("unique-type entry is irrational");
      out.entries(i, j) = v.coefficient() * scale;
    }
  }
  return out;
}

RationalMoment rescaled_unique_block(long n, long m, long t, const BigRational& bias, const EnumerationBudget& budget) {
  if (m < t) throw std::invalid_argument("rescaled_unique_block: m < t");
  DensityEntryRule rule(n, m, t, bias);
  RationalMoment out{BasisKind::kUniqueType, n, t, {}, {}};
  for (const auto& s : enumerate_subsets(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(t), budget)) {
    out.index.emplace_back(s, std::vector<std::uint32_t>(s.size(), 1));
  }
  const auto dim = static_cast<Eigen::Index>(out.index.size());
  budget.require(BigInt(static_cast<unsigned long>(dim)) * dim, "rescaled_unique_block");
  const BigRational scale(binomial(n + t - 1, t));
  out.entries.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      out.entries(i, j) = rule(out.index[i], out.index[j]).coefficient() * scale;
      out.entries(j, i) = out.entries(i, j);
    }
  }
  return out;
}

void write_csv(const ExactMoment& m, std::ostream& os) {
  os << "row,col,numerator,denominator,radicand\n";
  for (Eigen::Index i = 0; i < m.dimension(); ++i) {
    for (Eigen::Index j = 0; j < m.dimension(); ++j) {
      const Surd& v = m.entries(i, j);
      os << i << ',' << j << ',' << v.coefficient().numerator().get_str() << ','
         << v.coefficient().denominator().get_str() << ',' << v.radicand().get_str() << '\n';
    }
  }
}

namespace {

template <class T>
void put_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw std::runtime_error("read_binary: truncated input");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_binary(const NumericMoment& m, std::ostream& os) {
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(m.dimension()));
  for (Eigen::Index i = 0; i < m.dimension(); ++i) {
    for (Eigen::Index j = 0; j < m.dimension(); ++j) put_le<double>(os, m.entries(i, j));
  }
}

Eigen::MatrixXd read_binary(std::istream& is) {
  const auto dim = static_cast<Eigen::Index>(get_le<std::uint64_t>(is));
  Eigen::MatrixXd out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) out(i, j) = get_le<double>(is);
  }
  return out;
}

}  // namespace subsetlab
