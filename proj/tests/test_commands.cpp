// simulate / verify / sweep through their in-process entry points.

#include "codedcache/commands.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

using namespace codedcache;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  REQUIRE(it != header.end());
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

TEST_CASE("simulate the N=3 K=6 worked example") {
  std::ostringstream out, err;
  const int code = run_simulate({3, 6, 2, {1, 1, 2, 2, 3, 3}, 1, 64}, out, err);
  CHECK(code == kExitOk);
  const std::string s = out.str();
  CHECK(s.find("T_I=0 T_II=18 T_III=10 total=28") != std::string::npos);
  CHECK(s.find("rate 28/12 = 7/3 = 2.33333333333333") != std::string::npos);
  CHECK(s.find("status OK") != std::string::npos);
  CHECK(s.find("FAIL") == std::string::npos);
}

TEST_CASE("simulate N=2 K=2 g=2") {
  std::ostringstream out, err;
  CHECK(run_simulate({2, 2, 2, {1, 2}, 1, 64}, out, err) == kExitOk);
  CHECK(out.str().find("rate 2/2 = 1 = 1") != std::string::npos);
}

TEST_CASE("simulate output is deterministic") {
  std::ostringstream a, b, err;
  run_simulate({4, 5, 2, {1, 2, 3, 1, 4}, 7, 16}, a, err);
  run_simulate({4, 5, 2, {1, 2, 3, 1, 4}, 7, 16}, b, err);
  CHECK(a.str() == b.str());
}

TEST_CASE("simulate usage errors") {
  std::ostringstream out, err;
  CHECK(run_simulate({3, 6, 2, {0, 1, 2, 2, 3, 3}, 1, 64}, out, err) == kExitUsage);
  CHECK(run_simulate({3, 6, 2, {1, 1}, 1, 64}, out, err) == kExitUsage);
  CHECK(run_simulate({3, 2, 2, {1, 1}, 1, 64}, out, err) == kExitUsage);
  CHECK(err.str().find("usage error") != std::string::npos);
  CHECK(out.str().empty());
}

TEST_CASE("verify a small grid, with and without the injected fault") {
  VerifyOptions opt;
  opt.n_max = 3;
  opt.k_max = 4;
  const VerifySummary ok = verify_grid(opt);
  CHECK(ok.failures() == 0);
  CHECK(ok.instances() == (4 + 8 + 16) * 2 + (27 + 81) * 3);
  CHECK(ok.skipped() == 0);

  opt.drop_last = true;
  std::ostringstream out, err;
  CHECK(run_verify(opt, out, err) == kExitFailure);
  CHECK(verify_grid(opt).failures() > 0);
}

TEST_CASE("verify skips grids past the cap and is independent of jobs") {
  VerifyOptions opt;
  opt.n_max = 3;
  opt.k_max = 5;
  opt.cap = 100;
  std::ostringstream out1, out2, err;
  CHECK(run_verify(opt, out1, err) == kExitOk);
  CHECK(out1.str().find("skipped: 3^5 demands exceed cap 100") != std::string::npos);
  const VerifySummary s = verify_grid(opt);
  CHECK(s.skipped() == 3);
  opt.jobs = 3;
  CHECK(run_verify(opt, out2, err) == kExitOk);
  CHECK(out1.str() == out2.str());

  VerifyOptions bad;
  bad.n_min = 3;
  bad.n_max = 2;
  CHECK(run_verify(bad, out1, err) == kExitUsage);
}

TEST_CASE("sweep N=3 K=6 at M=1/4") {
  SweepConfig cfg;
  cfg.files = 3;
  cfg.users = 6;
  cfg.exact = true;
  std::ostringstream out;
  write_sweep_csv(cfg, out);
  const auto rows = parse_csv(out.str());
  const auto& h = rows.front();
  CHECK(h[0] == "row");
  const auto m = column(h, "M_exact");
  bool found = false;
  for (const auto& r : rows) {
    if (r[0] != "grid" || r[m] != "1/4") continue;
    found = true;
    CHECK(r[column(h, "R_new")] == "2.33333333333333");
    CHECK(r[column(h, "R_sota_exact")] == "85/36");
    CHECK(r[column(h, "R_stc")] == "2.25");
    CHECK(r[column(h, "R_cutset_exact")] == "9/4");
  }
  CHECK(found);
  // 101 grid rows, CFL, GBC, 7 MDS and 3 scheme vertices.
  CHECK(rows.size() == 1 + 101 + 2 + 7 + 3);
  // Below 1/K the scheme curve is undefined and left empty.
  CHECK(rows[1][column(h, "R_new")].empty());
}

TEST_CASE("sweep N=10 K=15 vertex rows") {
  SweepConfig cfg;
  cfg.files = 10;
  cfg.users = 15;
  cfg.exact = true;
  std::ostringstream out;
  write_sweep_csv(cfg, out);
  const auto rows = parse_csv(out.str());
  const auto& h = rows.front();
  const auto label = column(h, "label");
  const auto m = column(h, "M_exact");
  const auto r = column(h, "R_point_exact");
  std::set<std::string> seen;
  for (const auto& row : rows) {
    if (row[0] != "vertex") continue;
    seen.insert(row[label] + " " + row[m] + " " + row[r]);
  }
  CHECK(seen.count("CFL 1/15 28/3"));
  CHECK(seen.count("GBC 2/3 19/3"));
  CHECK(seen.count("new 1/3 68/9"));
}

TEST_CASE("sweep curve selection") {
  SweepConfig cfg;
  cfg.files = 3;
  cfg.users = 6;
  cfg.curves = {"stc"};
  std::ostringstream out, err;
  CHECK(run_sweep(cfg, out, err) == kExitOk);
  CHECK(out.str().substr(0, out.str().find('\n')) == "row,label,param,M,R_point,R_stc");

  cfg.curves = {};
  CHECK(run_sweep(cfg, out, err) == kExitUsage);
  CHECK(err.str().find("empty curve selection") != std::string::npos);
  cfg.curves = {"bogus"};
  CHECK(run_sweep(cfg, out, err) == kExitUsage);
  cfg.curves = {"new"};
  cfg.files = 1;
  CHECK(run_sweep(cfg, out, err) == kExitUsage);
}

TEST_CASE("sweep output is byte-identical across runs") {
  SweepConfig cfg;
  cfg.files = 4;
  cfg.users = 7;
  cfg.exact = true;
  std::ostringstream a, b;
  write_sweep_csv(cfg, a);
  write_sweep_csv(cfg, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("decimal format keeps 15 significant digits") {
  CHECK(format_decimal(Rational(1, 3)) == "0.333333333333333");
  CHECK(format_decimal(Rational(85, 36)) == "2.36111111111111");
  CHECK(format_decimal(Rational(2)) == "2");
}
