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

/// \file cli.hpp
/// \brief Batch front-end. Subcommands: spectrum, trace-distance, verify,
/// attack, sweep, density.

#ifndef SUBSETLAB_TOOLS_CLI_HPP
#define SUBSETLAB_TOOLS_CLI_HPP

#include "subsetlab/exact.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace subsetlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parameter grids for verify and sweep.
struct SweepConfig {
  std::vector<long> n;
  std::vector<long> m;
  std::vector<long> t;
  std::vector<BigRational> b;
  /// When set, m = round(sqrt(N)) * m_scale replaces the m grid.
  std::optional<long> m_scale;
  double tolerance = 1e-9;
  std::uint64_t budget = 0;  ///< 0: environment default
  std::string output;        ///< empty: stdout
  std::uint64_t seed = 0;
  unsigned workers = 0;      ///< 0: hardware concurrency

  /// Fields mirror the struct; b entries may be strings ("1/2") or numbers.
  static SweepConfig from_json(const nlohmann::json& j);
  /// Throws std::invalid_argument when any grid is empty.
  void validate() const;
  /// Cartesian product in grid order (N outermost, b innermost).
  struct Point {
    long n, m, t;
    BigRational b;
  };
  std::vector<Point> points() const;
};

/// True iff t <= m <= N and t <= N/2, with t >= 1.
bool valid_point(long n, long m, long t);

/// Runs the command line; returns the process exit code. Errors go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subsetlab::cli

#endif  // SUBSETLAB_TOOLS_CLI_HPP
