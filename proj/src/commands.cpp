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

#include "codedcache/commands.hpp"

#include "codedcache/bounds.hpp"
#include "codedcache/rates.hpp"
#include "codedcache/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <span>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace codedcache {

std::string format_decimal(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value.convert_to<double>());
  return buf;
}

namespace {

std::string join(std::span<const int> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

int run_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  std::optional<SystemParams> params;
  std::optional<Demand> demand;
  try {
    params.emplace(options.files, options.users, options.group_size, options.subfile_bytes);
    demand.emplace(*params, options.demand);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Simulation sim = simulate(*params, *demand, options.seed);
  const InstanceCheck check = check_simulation(sim);
  const auto& log = sim.log;
  const auto per_file = params->subfiles_per_file();
  const Rational rate(BigInt(log.total()), BigInt(per_file));

  out << "params N=" << params->files() << " K=" << params->users() << " g=" << params->group_size()
      << " M=" << to_string(params->memory()) << " subfile_bytes=" << params->subfile_bytes()
      << " seed=" << options.seed << '\n';
  const auto leaders = leader_users(sim.leaders);
  out << "demand " << join(demand->requests()) << " distinct=" << demand->distinct() << " leaders=" << join(leaders)
      << '\n';
  out << "transmissions T_I=" << log.type1() << " T_II=" << log.type2() << " T_III=" << log.type3()
      << " total=" << log.total() << '\n';
  out << "phases";
  for (Phase phase : {Phase::TypeI, Phase::TypeIIPhase1, Phase::TypeIIPhase2, Phase::TypeIIIPhase1,
                      Phase::TypeIIIPhase2}) {
    out << ' ' << to_string(phase) << '=' << log.count(phase);
  }
  out << '\n';
  out << "rate " << log.total() << '/' << per_file << " = " << to_string(rate) << " = " << format_decimal(rate)
      << '\n';
  out << "closed_form total=" << check.expected.total() << " counts=" << (check.counts_match ? "match" : "MISMATCH")
      << " formula=" << (check.formula_match ? "match" : "MISMATCH") << '\n';
  for (const auto& u : check.users) {
    out << "user " << u.user << " file=" << demand->of(u.user)
        << " decode=" << (u.decoded ? (u.bit_exact ? "OK" : "WRONG") : "FAIL")
        << " oracle=" << (u.oracle ? "OK" : "FAIL");
    if (!u.error.empty()) out << " error=\"" << u.error << '"';
    out << '\n';
  }
  out << "status " << (check.ok() ? "OK" : "FAILED") << '\n';
  return check.ok() ? kExitOk : kExitFailure;
}

std::uint64_t VerifySummary::instances() const {
  std::uint64_t n = 0;
  for (const auto& r : rows) n += r.skipped ? 0 : r.demands;
  return n;
}

std::uint64_t VerifySummary::failures() const {
  std::uint64_t n = 0;
  for (const auto& r : rows) n += r.failures;
  return n;
}

std::size_t VerifySummary::skipped() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.skipped; }));
}

namespace {

// N^K, or nullopt past `limit`.
std::optional<std::uint64_t> demand_space(int files, int users, std::uint64_t limit) {
  std::uint64_t n = 1;
  for (int i = 0; i < users; ++i) {
    if (n > limit / static_cast<std::uint64_t>(files)) return std::nullopt;
    n *= static_cast<std::uint64_t>(files);
  }
  return n;
}

std::vector<int> demand_from_index(int files, int users, std::uint64_t index) {
  std::vector<int> d(static_cast<std::size_t>(users));
  for (int i = users - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(files)) + 1;
    index /= static_cast<std::uint64_t>(files);
  }
  return d;
}

void verify_range(const VerifyOptions& options, const SystemParams& params, std::uint64_t begin, std::uint64_t end,
                  VerifyRow& row) {
  // Library and placement do not depend on the demand.
  Simulation sim = simulate(params, Demand(params, std::vector<int>(params.users(), 1)), options.seed);
  for (std::uint64_t index = begin; index < end; ++index) {
    sim.demand = Demand(params, demand_from_index(params.files(), params.users(), index));
    sim.leaders = select_leaders(sim.demand);
    sim.log = deliver(sim.library, sim.placement, sim.demand, sim.leaders);
    if (options.drop_last) sim.log.drop_last();
    const InstanceCheck check = check_simulation(sim);
    if (!check.ok()) ++row.failures;
    if (!check.counts_match || !check.formula_match) ++row.count_mismatches;
    if (!check.formula_match) ++row.formula_mismatches;
    for (const auto& u : check.users) {
      if (!u.decoded || !u.bit_exact) ++row.decode_failures;
      if (!u.oracle) ++row.oracle_failures;
    }
    row.disagreements += check.disagreements();
  }
}

void verify_grid_row(const VerifyOptions& options, VerifyRow& row) {
  const SystemParams params(row.files, row.users, row.group_size, options.subfile_bytes);
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(row.demands)));
  if (jobs == 1) {
    verify_range(options, params, 0, row.demands, row);
    return;
  }
  std::vector<VerifyRow> parts(jobs, row);
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (row.demands + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(row.demands, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(row.demands, begin + chunk);
    workers.emplace_back([&, w, begin, end] { verify_range(options, params, begin, end, parts[w]); });
  }
  for (auto& t : workers) t.join();
  for (const auto& p : parts) {
    row.failures += p.failures;
    row.decode_failures += p.decode_failures;
    row.oracle_failures += p.oracle_failures;
    row.disagreements += p.disagreements;
    row.count_mismatches += p.count_mismatches;
    row.formula_mismatches += p.formula_mismatches;
  }
}

}  // namespace

VerifySummary verify_grid(const VerifyOptions& options) {
  if (options.n_min < 1 || options.n_max < options.n_min) throw std::invalid_argument("need 1 <= n-min <= n-max");
  if (options.k_max < options.n_min) throw std::invalid_argument("need k-max >= n-min");
  if (options.subfile_bytes == 0) throw std::invalid_argument("subfile bytes must be positive");
  VerifySummary summary;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    for (int k = n; k <= options.k_max; ++k) {
      const auto space = demand_space(n, k, options.cap);
      for (int g = 1; g <= n; ++g) {
        VerifyRow row;
        row.files = n;
        row.users = k;
        row.group_size = g;
        row.skipped = !space.has_value();
        if (space) {
          row.demands = *space;
          verify_grid_row(options, row);
        }
        summary.rows.push_back(row);
      }
    }
  }
  return summary;
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  VerifySummary summary;
  try {
    summary = verify_grid(options);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << std::setw(3) << "N" << std::setw(4) << "K" << std::setw(4) << "g" << std::setw(9) << "demands"
      << std::setw(10) << "failures" << std::setw(9) << "decode" << std::setw(9) << "oracle" << std::setw(9)
      << "disagree" << std::setw(9) << "counts" << '\n';
  for (const auto& r : summary.rows) {
    out << std::setw(3) << r.files << std::setw(4) << r.users << std::setw(4) << r.group_size;
    if (r.skipped) {
      out << "  skipped: " << r.files << '^' << r.users << " demands exceed cap " << options.cap << '\n';
      continue;
    }
    out << std::setw(9) << r.demands << std::setw(10) << r.failures << std::setw(9) << r.decode_failures
        << std::setw(9) << r.oracle_failures << std::setw(9) << r.disagreements << std::setw(9) << r.count_mismatches
        << '\n';
  }
  out << "instances " << summary.instances() << " grids " << summary.rows.size() - summary.skipped() << " skipped "
      << summary.skipped() << " failures " << summary.failures() << '\n';
  return summary.failures() == 0 ? kExitOk : kExitFailure;
}

const std::vector<std::string>& sweep_curve_names() {
  static const std::vector<std::string> names{"new", "sota", "cutset", "stc"};
  return names;
}

namespace {

struct SweepColumn {
  std::string name;
  std::function<std::optional<Rational>(const Rational&)> eval;
};

std::function<std::optional<Rational>(const Rational&)> optional_of(RateCurve curve) {
  return [curve = std::move(curve)](const Rational& m) -> std::optional<Rational> {
    if (!curve.envelope.covers(m)) return std::nullopt;
    return curve(m);
  };
}

std::function<std::optional<Rational>(const Rational&)> optional_of(BoundCurve curve) {
  return [curve = std::move(curve)](const Rational& m) -> std::optional<Rational> {
    if (!curve.covers(m)) return std::nullopt;
    return curve(m);
  };
}

std::vector<SweepColumn> sweep_columns(const SweepConfig& config) {
  std::vector<SweepColumn> columns;
  for (const auto& name : sweep_curve_names()) {
    if (std::find(config.curves.begin(), config.curves.end(), name) == config.curves.end()) continue;
    if (name == "new") columns.push_back({"R_new", optional_of(scheme_envelope(config.files, config.users))});
    if (name == "sota") columns.push_back({"R_sota", optional_of(sota_envelope(config.files, config.users))});
    if (name == "cutset") columns.push_back({"R_cutset", optional_of(cutset_curve(config.files, config.users))});
    if (name == "stc") columns.push_back({"R_stc", optional_of(stc_curve(config.files, config.users))});
  }
  for (const auto& name : config.curves) {
    const auto& known = sweep_curve_names();
    if (!name.empty() && std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown curve '" + name + "'");
    }
  }
  if (columns.empty()) throw std::invalid_argument("empty curve selection");
  return columns;
}

struct SweepRow {
  std::string kind;
  std::string label;
  std::optional<int> parameter;
  Rational memory;
  std::optional<Rational> rate;
};

}  // namespace

void write_sweep_csv(const SweepConfig& config, std::ostream& out) {
  if (config.files < 2 || config.users < config.files) throw std::invalid_argument("need 2 <= N <= K");
  if (config.resolution < 1) throw std::invalid_argument("resolution must be positive");
  const auto columns = sweep_columns(config);

  std::vector<SweepRow> rows;
  const Rational top(config.files, config.users);
  for (int i = 0; i <= config.resolution; ++i) {
    rows.push_back({"grid", "", std::nullopt, top * i / config.resolution, std::nullopt});
  }
  std::vector<RateMemoryPoint> vertices{cfl_point(config.files, config.users), gbc_point(config.files, config.users)};
  for (auto& p : mds_points(config.files, config.users)) vertices.push_back(std::move(p));
  for (auto& p : scheme_envelope(config.files, config.users).points) vertices.push_back(std::move(p));
  for (const auto& v : vertices) rows.push_back({"vertex", v.label, v.parameter, v.memory, v.rate});

  auto cell = [](const std::optional<Rational>& v) { return v ? format_decimal(*v) : std::string(); };
  auto exact_cell = [](const std::optional<Rational>& v) { return v ? to_string(*v) : std::string(); };

  out << "row,label,param,M,R_point";
  for (const auto& c : columns) out << ',' << c.name;
  if (config.exact) {
    out << ",M_exact,R_point_exact";
    for (const auto& c : columns) out << ',' << c.name << "_exact";
  }
  out << '\n';
  for (const auto& r : rows) {
    std::vector<std::optional<Rational>> values;
    for (const auto& c : columns) values.push_back(c.eval(r.memory));
    out << r.kind << ',' << r.label << ',' << (r.parameter ? std::to_string(*r.parameter) : "") << ','
        << format_decimal(r.memory) << ',' << cell(r.rate);
    for (const auto& v : values) out << ',' << cell(v);
    if (config.exact) {
      out << ',' << to_string(r.memory) << ',' << exact_cell(r.rate);
      for (const auto& v : values) out << ',' << exact_cell(v);
    }
    out << '\n';
  }
}

int run_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  try {
    write_sweep_csv(config, csv);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (config.output.empty()) {
    out << csv.str();
    return kExitOk;
  }
  std::ofstream file(config.output, std::ios::binary);
  if (!(file << csv.str())) {
    err << "cannot write " << config.output << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace codedcache
