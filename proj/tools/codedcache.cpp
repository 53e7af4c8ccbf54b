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

// codedcache: simulate one demand, verify a grid exhaustively, or export
// rate-memory curves as CSV.

#include "codedcache/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace codedcache;

  CLI::App app{"Coded caching with coded prefetching"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run placement, delivery and decoding for one demand");
  simulate->add_option("-N,--files", sim.files, "Number of files")->required();
  simulate->add_option("-K,--users", sim.users, "Number of users")->required();
  simulate->add_option("-g,--group-size", sim.group_size, "Files per cached symbol")->required();
  simulate->add_option("-d,--demand", sim.demand, "Requested file per user, e.g. 1,1,2,2")
      ->required()
      ->delimiter(',');
  simulate->add_option("--seed", sim.seed, "Library seed")->capture_default_str();
  simulate->add_option("--subfile-bytes", sim.subfile_bytes, "Bytes per subfile")->capture_default_str();

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Check every demand on a grid of (N, K, g)");
  verify->add_option("--n-min", ver.n_min, "Smallest N")->capture_default_str();
  verify->add_option("--n-max", ver.n_max, "Largest N")->capture_default_str();
  verify->add_option("--k-max", ver.k_max, "Largest K")->capture_default_str();
  verify->add_option("--cap", ver.cap, "Skip grids with more than this many demands")->capture_default_str();
  verify->add_flag("--drop-last", ver.drop_last, "Drop the final broadcast of every delivery");
  verify->add_option("--subfile-bytes", ver.subfile_bytes, "Bytes per subfile")->capture_default_str();
  verify->add_option("-j,--jobs", ver.jobs, "Worker threads")->capture_default_str();
  verify->add_option("--seed", ver.seed, "Library seed")->capture_default_str();

  SweepConfig sweep_config;
  auto* sweep = app.add_subcommand("sweep", "Write rate-memory curves as CSV");
  sweep->add_option("-N,--files", sweep_config.files, "Number of files")->required();
  sweep->add_option("-K,--users", sweep_config.users, "Number of users")->required();
  sweep->add_option("--resolution", sweep_config.resolution, "Grid intervals over [0, N/K]")->capture_default_str();
  sweep->add_option("--curves", sweep_config.curves, "Subset of new,sota,cutset,stc")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_flag("--exact", sweep_config.exact, "Add exact p/q columns");
  sweep->add_option("-o,--output", sweep_config.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*simulate) return run_simulate(sim, std::cout, std::cerr);
  if (*verify) return run_verify(ver, std::cout, std::cerr);
  return run_sweep(sweep_config, std::cout, std::cerr);
}
