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

#include "cli.hpp"

#include "subsetlab/attacks.hpp"
#include "subsetlab/combinatorics.hpp"
#include "subsetlab/ensembles.hpp"
#include "subsetlab/exact_density.hpp"
#include "subsetlab/johnson_scheme.hpp"
#include "subsetlab/spectral_verify.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace subsetlab::cli {

namespace {

using nlohmann::json;

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

EnumerationBudget make_budget(std::uint64_t limit) {
  if (limit == 0) return EnumerationBudget::from_environment();
  EnumerationBudget b;
  b.limit = limit;
  return b;
}

/// Output sink: a file when a path is given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool binary = false) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
    if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

/// Runs fn(i) for i in [0, count) on a bounded pool; results land by index.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto loop = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(loop, w);
  loop(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  long n = 0, m = 0, t = 0;
  std::string b = "1";
  std::string format = "csv";
  std::string output;
};

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const auto profile = CirculantProfile::exact(a.n, a.m, a.t, BigRational::parse(a.b));
  const auto spec = spectrum(profile);
  Sink sink(a.output, out);
  if (a.format == "json") {
    json rows = json::array();
    for (const auto& blk : spec.blocks) {
      rows.push_back({{"q", blk.q},
                      {"multiplicity", blk.multiplicity.get_str()},
                      {"eigenvalue", blk.eigenvalue.str()},
                      {"eigenvalue_decimal", blk.eigenvalue.to_double()}});
    }
    *sink << json{{"N", a.n}, {"m", a.m}, {"t", a.t}, {"b", profile.bias.str()}, {"blocks", rows}}.dump(2) << '\n';
    return kExitOk;
  }
  *sink << "q,multiplicity,eigenvalue,eigenvalue_decimal\n";
  for (const auto& blk : spec.blocks) {
    *sink << blk.q << ',' << blk.multiplicity.get_str() << ',' << blk.eigenvalue.str() << ','
          << decimal(blk.eigenvalue.to_double()) << '\n';
  }
  return kExitOk;
}

// ----------------------------------------------------------- trace-distance

struct TraceArgs {
  long n = 0, m = 0, t = 0;
  std::string b = "1";
  std::string method = "both";
  std::uint64_t dense_limit = 2500;
  std::string output;
};

double unique_block_td_dense(const RationalMoment& block, const BigInt& d_sym) {
  const Eigen::MatrixXd a = to_numeric(block).entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double scale = d_sym.get_d();
  return 0.5 * (es.eigenvalues().array() - 1.0).abs().sum() / scale;
}

int cmd_trace_distance(const TraceArgs& a, std::ostream& out, const EnumerationBudget& budget) {
  const BigRational bias = BigRational::parse(a.b);
  const auto spec = spectrum(CirculantProfile::exact(a.n, a.m, a.t, bias));
  const BigInt d_sym = binomial(a.n + a.t - 1, a.t);
  const BigInt d_unique = binomial(a.n, a.t);
  const bool want_matrix = a.method == "matrix" || a.method == "both";
  const bool want_blocks = a.method == "blocks" || a.method == "both";

  json report{{"N", a.n}, {"m", a.m}, {"t", a.t}, {"b", bias.str()}, {"dimension", d_sym.get_str()},
              {"unique_dimension", d_unique.get_str()}, {"method", a.method}};
  std::optional<double> matrix_unique;
  std::optional<double> blocks_unique;
  if (want_matrix) {
    const BigInt limit(std::to_string(a.dense_limit));
    if (d_sym > limit) {
      throw BudgetExceeded("trace-distance: symmetric dimension " + d_sym.get_str() + " exceeds dense limit " +
                           limit.get_str());
    }
    const auto rho = average_density_closed_form_numeric(a.n, a.m, a.t, bias, budget);
    const auto dim = rho.dimension();
    const double td_full = trace_distance(rho.entries, Eigen::MatrixXd::Identity(dim, dim) / static_cast<double>(dim));
    matrix_unique = unique_block_td_dense(rescaled_unique_block(a.n, a.m, a.t, bias, budget), d_sym);
    report["matrix"] = {{"td_full", td_full}, {"td_unique", *matrix_unique}};
  }
  if (want_blocks) {
    const BigRational exact = block_trace_distance_exact(spec);
    blocks_unique = exact.to_double();
    json blocks{{"td_unique", exact.str()}, {"td_unique_decimal", *blocks_unique}, {"td_full", nullptr}};
    if (a.t == 2 && a.n >= 4) blocks["td_full"] = two_copy_trace_distance(a.n, a.m, bias);
    if (a.t == 1) blocks["td_full"] = *blocks_unique;  // Sym^1 has only unique types
    report["blocks"] = blocks;
  }
  if (matrix_unique && blocks_unique) report["delta"] = std::abs(*matrix_unique - *blocks_unique);
  Sink sink(a.output, out);
  *sink << report.dump(2) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  SweepConfig config;
  std::string config_path;
  bool inject_perturbation = false;
  std::uint64_t dense_limit = 2500;
};

bool moments_equal(const ExactMoment& a, const ExactMoment& b) {
  if (a.dimension() != b.dimension() || a.index != b.index) return false;
  for (Eigen::Index i = 0; i < a.dimension(); ++i) {
    for (Eigen::Index j = 0; j < a.dimension(); ++j) {
      if (!(a.entries(i, j) == b.entries(i, j))) return false;
    }
  }
  return true;
}

std::vector<VerificationReport> verify_point(const SweepConfig::Point& p, const VerifyArgs& args,
                                             const EnumerationBudget& budget, const JohnsonOracle* oracle) {
  std::vector<VerificationReport> reports;
  const json params{{"N", p.n}, {"m", p.m}, {"t", p.t}, {"b", p.b.str()}};
  const double tol = args.config.tolerance;
  auto add = [&](std::string check, json quantities, double bound, bool pass) {
    reports.push_back({std::move(check), params, std::move(quantities), bound, pass});
  };

  // Closed form against brute force, exactly.
  try {
    auto closed = average_density_closed_form(p.n, p.m, p.t, p.b, budget);
    if (args.inject_perturbation) closed.entries(0, 0) += Surd(BigRational(BigInt(1), BigInt(1000000)));
    const auto brute = average_density_bruteforce(p.n, p.m, p.t, p.b, budget);
    add("density_equality", {{"dimension", closed.dimension()}}, 0.0, moments_equal(closed, brute));
  } catch (const BudgetExceeded& e) {
    add("density_equality", {{"skipped", e.what()}}, 0.0, true);
  }

  const auto profile = CirculantProfile::exact(p.n, p.m, p.t, p.b);
  const auto spec = spectrum(profile);
  add("top_eigenvalue", {{"closed_form", top_eigenvalue_closed_form(profile).str()},
                         {"eigenvalue", spec.blocks.back().eigenvalue.str()}},
      0.0, top_eigenvalue_closed_form(profile) == spec.blocks.back().eigenvalue);

  if (binomial(p.n, p.t) <= BigInt(std::to_string(args.dense_limit))) {
    const auto block = rescaled_unique_block(p.n, p.m, p.t, p.b, budget);
    add("circulant", {{"dimension", block.dimension()}}, 0.0, circulant_check(block, p.n, p.t));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_numeric(block).entries, Eigen::EigenvaluesOnly);
    std::vector<double> expected;
    for (const auto& blk : spec.blocks) {
      expected.insert(expected.end(), static_cast<std::size_t>(blk.multiplicity.get_ui()), blk.eigenvalue.to_double());
    }
    std::sort(expected.begin(), expected.end());
    double worst = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const double got = es.eigenvalues()(static_cast<Eigen::Index>(i));
      worst = std::max(worst, std::abs(got - expected[i]) / std::max(1.0, std::abs(expected[i])));
    }
    add("spectrum_equality", {{"max_relative_error", worst}}, tol, worst <= tol);
  }

  if (binomial(p.n + p.t - 1, p.t) <= BigInt(std::to_string(args.dense_limit)) || p.t == 2) {
    const auto th = theorem_bound_check(p.n, p.m, p.t, p.b, static_cast<Eigen::Index>(args.dense_limit), budget);
    add("theorem_bound", {{"td_full", th.td_full}, {"delta", th.delta}, {"epsilon", th.epsilon}, {"method", th.method}},
        th.bound, th.holds());
  }

  if (oracle != nullptr && binomial(p.n + p.t - 1, p.t) <= BigInt(std::to_string(args.dense_limit))) {
    const auto rho = average_density_closed_form_numeric(p.n, p.m, p.t, p.b, budget);
    const Eigen::MatrixXd frame = top_block_frame(*oracle, rho.index);
    const Eigen::MatrixXd rotated = frame.transpose() * rho.entries * frame;
    const Eigen::MatrixXd sym = 0.5 * (rotated + rotated.transpose());
    const auto nb = nearby_matrices_bound(sym, oracle->eigenspaces.back().dimension);
    add("lemma_bound", {{"actual", nb.actual}, {"delta", nb.split.delta}, {"epsilon", nb.split.epsilon}}, nb.bound,
        nb.holds());
  }
  return reports;
}

std::vector<VerificationReport> verify_johnson(long n, long t, const JohnsonOracle& o, double tol) {
  std::vector<VerificationReport> reports;
  bool dims_ok = static_cast<long>(o.eigenspaces.size()) == t + 1;
  json dims = json::array();
  for (const auto& space : o.eigenspaces) {
    dims.push_back({{"q", space.q}, {"dimension", space.dimension}});
    dims_ok = dims_ok && BigInt(static_cast<unsigned long>(space.dimension)) == two_row_irrep_dim(n, space.q);
  }
  const double sph = spherical_deviation(o);
  const double worst = std::max({o.max_commutator, o.max_residual, o.completeness_error, sph});
  reports.push_back({"johnson_oracle",
                     {{"N", n}, {"t", t}},
                     {{"eigenspaces", dims},
                      {"max_commutator", o.max_commutator},
                      {"max_residual", o.max_residual},
                      {"completeness_error", o.completeness_error},
                      {"spherical_deviation", sph}},
                     tol,
                     dims_ok && worst <= tol});
  return reports;
}

int cmd_verify(VerifyArgs args, std::ostream& out, std::ostream& err) {
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw std::invalid_argument("cannot read config '" + args.config_path + "'");
    const auto from_file = SweepConfig::from_json(json::parse(in));
    // Command-line grids win over the file.
    if (args.config.n.empty()) args.config.n = from_file.n;
    if (args.config.m.empty() && !args.config.m_scale) {
      args.config.m = from_file.m;
      args.config.m_scale = from_file.m_scale;
    }
    if (args.config.t.empty()) args.config.t = from_file.t;
    if (args.config.b.empty()) args.config.b = from_file.b;
    if (args.config.output.empty()) args.config.output = from_file.output;
    if (args.config.budget == 0) args.config.budget = from_file.budget;
    args.config.tolerance = from_file.tolerance;
  } else if (args.config.n.empty() && args.config.m.empty() && args.config.t.empty() && args.config.b.empty()) {
    args.config.n = {4, 5, 6, 8};
    args.config.m = {2, 3, 4};
    args.config.t = {1, 2};
    args.config.b = {BigRational(0), BigRational(1, 2), BigRational(1)};
  }
  args.config.validate();
  const auto budget = make_budget(args.config.budget);
  const auto points = args.config.points();

  std::vector<VerificationReport> reports;
  std::map<std::pair<long, long>, JohnsonOracle> oracles;
  std::size_t skipped = 0;
  for (const auto& p : points) {
    if (!valid_point(p.n, p.m, p.t)) {
      ++skipped;
      continue;
    }
    const auto key = std::pair{p.n, p.t};
    if (!oracles.count(key) && binomial(p.n, p.t) <= BigInt(std::to_string(args.dense_limit))) {
      oracles.emplace(key, johnson_graph_oracle(p.n, p.t, args.dense_limit));
      for (auto& r : verify_johnson(p.n, p.t, oracles.at(key), args.config.tolerance)) reports.push_back(std::move(r));
    }
    const auto it = oracles.find(key);
    for (auto& r : verify_point(p, args, budget, it == oracles.end() ? nullptr : &it->second)) {
      reports.push_back(std::move(r));
    }
  }
  if (reports.empty()) {
    err << "verify: no valid grid points (need t <= m <= N and t <= N/2)\n";
    return kExitUsage;
  }
  std::size_t failed = 0;
  json items = json::array();
  for (const auto& r : reports) {
    failed += r.pass ? 0 : 1;
    items.push_back(r);
  }
  Sink sink(args.config.output, out);
  *sink << json{{"checks", items},
                {"total", reports.size()},
                {"failed", failed},
                {"skipped_points", skipped},
                {"pass", failed == 0}}
               .dump(2)
        << '\n';
  if (failed != 0) err << "verify: " << failed << " of " << reports.size() << " checks failed\n";
  return failed == 0 ? kExitOk : kExitVerificationFailed;
}

// ------------------------------------------------------------------ attack

struct AttackArgs {
  std::string attack = "birthday";
  std::string ensemble_a;
  std::string ensemble_b;
  std::uint64_t copies = 2;
  std::string mode = "sampled";
  std::optional<double> threshold;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string format = "json";
  std::string output;
};

int cmd_attack(const AttackArgs& a, std::ostream& out) {
  Distinguisher d;
  if (a.attack == "birthday") {
    if (a.copies < 2) throw std::invalid_argument("attack: birthday needs --copies >= 2");
    d = BirthdayAttack{a.copies};
  } else if (a.attack == "overlap") {
    d = PlusOverlapAttack{a.threshold, a.mode == "exact" ? OverlapMode::kExact : OverlapMode::kSampled};
  } else {
    throw std::invalid_argument("attack: unknown attack '" + a.attack + "'");
  }
  const auto report =
      estimate_advantage(d, EnsembleSpec::parse(a.ensemble_a), EnsembleSpec::parse(a.ensemble_b), a.trials, a.seed, a.workers);
  Sink sink(a.output, out);
  if (a.format == "csv") {
    write_csv_header(*sink);
    write_csv_row(report, *sink);
  } else {
    *sink << json(report).dump(2) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  SweepConfig config;
  std::string config_path;
  std::uint64_t dense_limit = 2500;
};

int cmd_sweep(SweepArgs args, std::ostream& out, std::ostream& err) {
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw std::invalid_argument("cannot read config '" + args.config_path + "'");
    auto from_file = SweepConfig::from_json(json::parse(in));
    if (args.config.n.empty()) args.config.n = from_file.n;
    if (args.config.m.empty() && !args.config.m_scale) {
      args.config.m = from_file.m;
      args.config.m_scale = from_file.m_scale;
    }
    if (args.config.t.empty()) args.config.t = from_file.t;
    if (args.config.b.empty()) args.config.b = from_file.b;
    if (args.config.output.empty()) args.config.output = from_file.output;
    if (args.config.budget == 0) args.config.budget = from_file.budget;
    if (args.config.workers == 0) args.config.workers = from_file.workers;
  }
  if (args.config.b.empty()) args.config.b = {BigRational(1)};
  args.config.validate();
  const auto budget = make_budget(args.config.budget);

  std::vector<SweepConfig::Point> points;
  for (const auto& p : args.config.points()) {
    if (valid_point(p.n, p.m, p.t)) {
      points.push_back(p);
    } else {
      err << "sweep: skipping N=" << p.n << " m=" << p.m << " t=" << p.t
          << " (need t <= m <= N and t <= N/2)\n";
    }
  }
  std::vector<std::optional<TheoremCheck>> results(points.size());
  std::vector<std::string> failures(points.size());
  parallel_for(points.size(), args.config.workers, [&](std::size_t i) {
    const auto& p = points[i];
    try {
      results[i] = theorem_bound_check(p.n, p.m, p.t, p.b, static_cast<Eigen::Index>(args.dense_limit), budget);
    } catch (const BudgetExceeded& e) {
      failures[i] = e.what();
    }
  });

  Sink sink(args.config.output, out);
  *sink << "N,m,t,b,TD,bound_term1,bound_term2,ratio\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!results[i]) {
      err << "sweep: skipping N=" << p.n << " m=" << p.m << " t=" << p.t << ": " << failures[i] << '\n';
      continue;
    }
    const double term1 = static_cast<double>(p.t * p.m) / static_cast<double>(p.n);
    const double term2 = static_cast<double>(p.t * p.t) / static_cast<double>(p.m);
    const double td = results[i]->td_full;
    *sink << p.n << ',' << p.m << ',' << p.t << ',' << p.b.str() << ',' << decimal(td) << ',' << decimal(term1) << ','
          << decimal(term2) << ',' << decimal(td / (term1 + term2)) << '\n';
  }
  return kExitOk;
}

// ----------------------------------------------------------------- density

struct DensityArgs {
  long n = 0, m = 0, t = 0;
  std::string b = "1";
  std::string kind = "closed-form";
  std::string format = "csv";
  std::string output;
};

int cmd_density(const DensityArgs& a, std::ostream& out, const EnumerationBudget& budget) {
  const BigRational bias = BigRational::parse(a.b);
  ExactMoment rho;
  if (a.kind == "closed-form") {
    rho = average_density_closed_form(a.n, a.m, a.t, bias, budget);
  } else if (a.kind == "bruteforce") {
    rho = average_density_bruteforce(a.n, a.m, a.t, bias, budget);
  } else if (a.kind == "haar") {
    rho = haar_moment(a.n, a.t, budget);
  } else if (a.kind == "unique") {
    const auto block = rescaled_unique_block(a.n, a.m, a.t, bias, budget);
    rho = ExactMoment{block.basis, block.n, block.t, block.index, ExactMoment::Matrix(block.dimension(), block.dimension())};
    for (Eigen::Index i = 0; i < block.dimension(); ++i) {
      for (Eigen::Index j = 0; j < block.dimension(); ++j) rho.entries(i, j) = Surd(block.entries(i, j));
    }
  } else {
    throw std::invalid_argument("density: unknown kind '" + a.kind + "'");
  }
  if (a.format == "binary") {
    Sink sink(a.output, out, true);
    write_binary(to_numeric(rho), *sink);
  } else {
    Sink sink(a.output, out);
    write_csv(rho, *sink);
  }
  return kExitOk;
}

void add_grid_options(CLI::App* sub, SweepConfig& c, std::vector<std::string>& biases, std::string& config_path) {
  sub->add_option("--N", c.n, "dimension grid (comma separated)")->delimiter(',');
  sub->add_option("--m", c.m, "subset-size grid")->delimiter(',');
  sub->add_option("--m-scale", c.m_scale, "use m = round(sqrt(N)) * k instead of --m");
  sub->add_option("--t", c.t, "copy-number grid")->delimiter(',');
  sub->add_option("--b", biases, "bias grid, e.g. 0,1/2,1")->delimiter(',');
  sub->add_option("--tolerance", c.tolerance, "numeric tolerance");
  sub->add_option("--budget", c.budget, "enumeration budget (0: default or env)");
  sub->add_option("--output,-o", c.output, "output path (default stdout)");
  sub->add_option("--seed", c.seed, "seed");
  sub->add_option("--workers", c.workers, "worker threads (0: all cores)");
  sub->add_option("--config", config_path, "JSON config mirroring the grid fields");
}

}  // namespace

bool valid_point(long n, long m, long t) { return t >= 1 && t <= m && m <= n && 2 * t <= n; }

SweepConfig SweepConfig::from_json(const json& j) {
  SweepConfig c;
  auto longs = [&](const char* key) {
    std::vector<long> v;
    if (j.contains(key)) v = j.at(key).get<std::vector<long>>();
    return v;
  };
  c.n = longs("N");
  c.m = longs("m");
  c.t = longs("t");
  if (j.contains("b")) {
    for (const auto& v : j.at("b")) {
      c.b.push_back(v.is_string() ? BigRational::parse(v.get<std::string>()) : BigRational::parse(v.dump()));
    }
  }
  if (j.contains("m_scale")) c.m_scale = j.at("m_scale").get<long>();
  c.tolerance = j.value("tolerance", c.tolerance);
  c.budget = j.value("budget", c.budget);
  c.output = j.value("output", c.output);
  c.seed = j.value("seed", c.seed);
  c.workers = j.value("workers", c.workers);
  return c;
}

void SweepConfig::validate() const {
  if (n.empty() || t.empty() || b.empty() || (m.empty() && !m_scale)) {
    throw std::invalid_argument("grid is empty: N, m (or m-scale), t and b all need at least one value");
  }
  if (m_scale && *m_scale < 1) throw std::invalid_argument("m-scale must be >= 1");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
}

std::vector<SweepConfig::Point> SweepConfig::points() const {
  std::vector<Point> out;
  for (long nn : n) {
    std::vector<long> ms = m;
    if (m_scale) ms = {std::lround(std::sqrt(static_cast<double>(nn))) * *m_scale};
    for (long mm : ms) {
      for (long tt : t) {
        for (const auto& bb : b) out.push_back({nn, mm, tt, bb});
      }
    }
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact moments, spectra and distinguishers for random subset states", "subsetlab"};
  app.require_subcommand(1);

  SpectrumArgs spec_args;
  auto* spec = app.add_subcommand("spectrum", "block eigenvalues of the rescaled unique-type moment");
  spec->add_option("--N", spec_args.n, "dimension")->required();
  spec->add_option("--m", spec_args.m, "subset size")->required();
  spec->add_option("--t", spec_args.t, "copies")->required();
  spec->add_option("--b", spec_args.b, "phase bias in [0, 1]");
  spec->add_option("--format", spec_args.format)->check(CLI::IsMember({"csv", "json"}));
  spec->add_option("--output,-o", spec_args.output);

  TraceArgs td_args;
  auto* td = app.add_subcommand("trace-distance", "trace distance to the Haar moment");
  td->add_option("--N", td_args.n)->required();
  td->add_option("--m", td_args.m)->required();
  td->add_option("--t", td_args.t)->required();
  td->add_option("--b", td_args.b);
  td->add_option("--method", td_args.method)->check(CLI::IsMember({"matrix", "blocks", "both"}));
  td->add_option("--dense-limit", td_args.dense_limit, "largest dense dimension");
  td->add_option("--output,-o", td_args.output);

  VerifyArgs ver_args;
  std::vector<std::string> ver_biases;
  auto* ver = app.add_subcommand("verify", "run the oracle suite over a parameter grid");
  add_grid_options(ver, ver_args.config, ver_biases, ver_args.config_path);
  ver->add_flag("--inject-perturbation", ver_args.inject_perturbation, "negative control: perturb one entry");
  ver->add_option("--dense-limit", ver_args.dense_limit);

  AttackArgs atk_args;
  auto* atk = app.add_subcommand("attack", "estimate a distinguisher's advantage between two ensembles");
  atk->add_option("--attack", atk_args.attack)->check(CLI::IsMember({"birthday", "overlap"}));
  atk->add_option("--ensemble-a,-A", atk_args.ensemble_a, "e.g. subset:N=1024,m=16")->required();
  atk->add_option("--ensemble-b,-B", atk_args.ensemble_b, "e.g. haar:N=1024")->required();
  atk->add_option("--copies", atk_args.copies, "copies for the birthday attack");
  atk->add_option("--mode", atk_args.mode)->check(CLI::IsMember({"exact", "sampled"}));
  atk->add_option("--threshold", atk_args.threshold);
  atk->add_option("--trials", atk_args.trials);
  atk->add_option("--seed", atk_args.seed);
  atk->add_option("--workers", atk_args.workers);
  atk->add_option("--format", atk_args.format)->check(CLI::IsMember({"json", "csv"}));
  atk->add_option("--output,-o", atk_args.output);

  SweepArgs sw_args;
  std::vector<std::string> sw_biases;
  auto* sw = app.add_subcommand("sweep", "CSV of trace distance against the bound terms");
  add_grid_options(sw, sw_args.config, sw_biases, sw_args.config_path);
  sw->add_option("--dense-limit", sw_args.dense_limit);

  DensityArgs den_args;
  auto* den = app.add_subcommand("density", "dump a moment matrix");
  den->add_option("--N", den_args.n)->required();
  den->add_option("--m", den_args.m);
  den->add_option("--t", den_args.t)->required();
  den->add_option("--b", den_args.b);
  den->add_option("--kind", den_args.kind)->check(CLI::IsMember({"closed-form", "bruteforce", "haar", "unique"}));
  den->add_option("--format", den_args.format)->check(CLI::IsMember({"csv", "binary"}));
  den->add_option("--output,-o", den_args.output);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const auto budget = EnumerationBudget::from_environment();
    for (const auto& s : ver_biases) ver_args.config.b.push_back(BigRational::parse(s));
    for (const auto& s : sw_biases) sw_args.config.b.push_back(BigRational::parse(s));
    if (spec->parsed()) return cmd_spectrum(spec_args, out);
    if (td->parsed()) return cmd_trace_distance(td_args, out, budget);
    if (ver->parsed()) return cmd_verify(ver_args, out, err);
    if (atk->parsed()) return cmd_attack(atk_args, out);
    if (sw->parsed()) return cmd_sweep(sw_args, out, err);
    if (den->parsed()) return cmd_density(den_args, out, budget);
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace subsetlab::cli
