/*
 * Copyright 2026 The codedcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file commands.hpp
 * @brief The simulate, verify and sweep commands behind the CLI.
 *
 * Each run_* function writes its report to `out`, diagnostics to `err`,
 * and returns a process exit code.
 */

#pragma once

#include "codedcache/combin.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace codedcache {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitFailure = 3 };

struct SimulateOptions {
  int files = 0;
  int users = 0;
  int group_size = 0;
  std::vector<int> demand;
  std::uint64_t seed = 1;
  std::size_t subfile_bytes = 64;
};

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  int n_min = 2;
  int n_max = 4;
  int k_max = 6;
  std::uint64_t cap = 4096;  // largest N^K enumerated
  bool drop_last = false;    // fault injection
  std::size_t subfile_bytes = 1;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
};

/// One (N, K, g) grid.
struct VerifyRow {
  int files = 0;
  int users = 0;
  int group_size = 0;
  std::uint64_t demands = 0;          // N^K
  bool skipped = false;               // N^K > cap
  std::uint64_t failures = 0;         // demands with any failed check
  std::uint64_t decode_failures = 0;  // user decodes that failed or were not bit-exact
  std::uint64_t oracle_failures = 0;  // users the oracle rejects
  std::uint64_t disagreements = 0;    // decoder and oracle verdicts differ
  std::uint64_t count_mismatches = 0; // demands whose counts miss a closed form
  std::uint64_t formula_mismatches = 0; // of which the log total misses T(N_e)
};

struct VerifySummary {
  std::vector<VerifyRow> rows;

  std::uint64_t instances() const;
  std::uint64_t failures() const;
  std::size_t skipped() const;
};

/// Enumerates every demand on every grid with n_min <= N <= n_max,
/// N <= K <= k_max, 1 <= g <= N. Throws std::invalid_argument on bad options.
VerifySummary verify_grid(const VerifyOptions& options);

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

struct SweepConfig {
  int files = 0;
  int users = 0;
  int resolution = 100;  // grid has resolution + 1 points over [0, N/K]
  std::vector<std::string> curves{"new", "sota", "cutset", "stc"};
  bool exact = false;     // add p/q columns
  std::string output;     // empty: write to `out`
};

/// Curve names accepted in SweepConfig::curves.
const std::vector<std::string>& sweep_curve_names();

/// Throws std::invalid_argument on bad config, including an empty curve set.
void write_sweep_csv(const SweepConfig& config, std::ostream& out);

int run_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

/// "%.15g".
std::string format_decimal(const Rational& value);

}  // namespace codedcache
