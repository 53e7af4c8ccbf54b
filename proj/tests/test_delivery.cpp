// Symbol classes, leaders, r_V and the delivery phases.

#include "codedcache/delivery.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace codedcache;

namespace {

struct Fixture {
  SystemParams params;
  Demand demand;
  Library library;
  PlacementResult placement;
  LeaderSet leaders;
  TransmissionLog log;

  Fixture(int n, int k, int g, std::vector<int> d, std::size_t bytes = 4)
      : params(n, k, g, bytes),
        demand(params, std::move(d)),
        library(make_library(params, 11)),
        placement(build_placement(params, library)),
        leaders(select_leaders(demand)),
        log(deliver(library, placement, demand, leaders)) {}
};

// Message content as an unordered set of subfile names.
using Parts = std::multiset<std::string>;

std::multiset<Parts> phase_parts(const TransmissionLog& log, Phase phase) {
  std::multiset<Parts> out;
  for (const auto& m : log.messages()) {
    if (m.phase != phase) continue;
    Parts p;
    for (const auto& id : m.parts) p.insert(id.to_string());
    out.insert(p);
  }
  return out;
}

// "W2{1,2}^1" for W^{(1)}_{2,{1,2}}.
std::string w(int file, int a, int b, int user) {
  std::ostringstream s;
  s << 'W' << file << '{' << a << ',' << b << "}^" << user;
  return s.str();
}

// Brute-force class of Z_A^{(i)} from the set definitions.
SymbolType brute_class(const Demand& d, UserIndex i, const FileSubset& a) {
  std::size_t requested = 0;
  for (int f : a.members()) requested += d.is_requested(f) ? 1 : 0;
  if (requested == 0) return SymbolType::AllUnrequested;
  if (requested < a.size()) return SymbolType::TypeI;
  return a.contains(d.of(i)) ? SymbolType::TypeII : SymbolType::TypeIII;
}

}  // namespace

TEST_CASE("classification for d=(1,1,2,2,3,3)") {
  Fixture fx(3, 6, 2, {1, 1, 2, 2, 3, 3});
  const auto cls = classify_symbols(fx.placement, fx.demand);
  CHECK(cls.at(1, FileSubset({1, 2})) == SymbolType::TypeII);
  CHECK(cls.at(1, FileSubset({1, 3})) == SymbolType::TypeII);
  CHECK(cls.at(1, FileSubset({2, 3})) == SymbolType::TypeIII);
  CHECK(cls.count(SymbolType::TypeI) == 0);
  CHECK(cls.count(SymbolType::TypeII) == 12);
  CHECK(cls.count(SymbolType::TypeIII) == 6);
}

TEST_CASE("classification degenerate and mixed cases") {
  Fixture ones(3, 6, 2, {1, 1, 1, 1, 1, 1});
  const auto c1 = classify_symbols(ones.placement, ones.demand);
  CHECK(c1.at(2, FileSubset({1, 2})) == SymbolType::TypeI);
  CHECK(c1.at(2, FileSubset({2, 3})) == SymbolType::AllUnrequested);
  CHECK(c1.count(SymbolType::TypeII) == 0);

  Fixture mixed(4, 4, 2, {1, 1, 2, 2});
  const auto c2 = classify_symbols(mixed.placement, mixed.demand);
  CHECK(c2.at(1, FileSubset({3, 4})) == SymbolType::AllUnrequested);
  CHECK(c2.at(1, FileSubset({2, 3})) == SymbolType::TypeI);
  CHECK(c2.at(1, FileSubset({1, 2})) == SymbolType::TypeII);
  CHECK(c2.at(3, FileSubset({1, 2})) == SymbolType::TypeII);
}

TEST_CASE("classification agrees with the set definitions on random demands") {
  std::uint64_t state = 99;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const int k = n + trial % 3;
    const int g = 1 + trial % n;
    std::vector<int> d;
    for (int i = 0; i < k; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      d.push_back(static_cast<int>((state >> 33) % static_cast<std::uint64_t>(n)) + 1);
    }
    Fixture fx(n, k, g, d, 1);
    const auto cls = classify_symbols(fx.placement, fx.demand);
    for (UserIndex i = 1; i <= k; ++i)
      for (const auto& a : enumerate_subsets(n, g)) CHECK(cls.at(i, a) == brute_class(fx.demand, i, a));
  }
}

TEST_CASE("leaders") {
  const SystemParams p(3, 6, 2);
  CHECK(leader_users(select_leaders(Demand(p, {1, 1, 2, 2, 3, 3}))) == std::vector<UserIndex>{1, 3, 5});
  const SystemParams q(2, 3, 1);
  const LeaderSet l = select_leaders(Demand(q, {2, 1, 1}));
  CHECK(l.at(2) == 1);
  CHECK(l.at(1) == 2);
  const SystemParams r(3, 3, 1);
  CHECK(leader_users(select_leaders(Demand(r, {3, 1, 2}))) == std::vector<UserIndex>{1, 2, 3});

  const Demand d(p, {1, 1, 2, 2, 3, 3});
  CHECK_THROWS_AS(check_leaders({{1, 1}, {2, 3}}, d), std::invalid_argument);
  CHECK_THROWS_AS(check_leaders({{1, 3}, {2, 3}, {3, 5}}, d), std::invalid_argument);
  CHECK_NOTHROW(check_leaders({{1, 2}, {2, 4}, {3, 6}}, d));
}

TEST_CASE("r_V is a derangement onto the demanded files") {
  const SystemParams p(3, 6, 2);
  const Demand d(p, {1, 1, 2, 2, 3, 3});
  const std::vector<UserIndex> v{1, 3, 5};
  const auto r = assign_rv(v, d);
  CHECK(r.at(1) == 2);
  CHECK(r.at(3) == 3);
  CHECK(r.at(5) == 1);

  const SystemParams q(2, 2, 1);
  const Demand swap(q, {2, 1});
  const std::vector<UserIndex> pair{1, 2};
  const auto rs = assign_rv(pair, swap);
  CHECK(rs.at(1) == 1);
  CHECK(rs.at(2) == 2);

  const SystemParams big(6, 6, 3);
  const Demand perm(big, {4, 6, 1, 5, 2, 3});
  for (const auto& s : enumerate_subsets(6, 4)) {
    const std::vector<UserIndex> vv(s.members().begin(), s.members().end());
    const auto rv = assign_rv(vv, perm);
    std::set<FileIndex> targets, demanded;
    for (UserIndex j : vv) {
      CHECK(rv.at(j) != perm.of(j));
      targets.insert(rv.at(j));
      demanded.insert(perm.of(j));
    }
    CHECK(targets == demanded);
  }
  const std::vector<UserIndex> dup{1, 2};
  CHECK_THROWS_AS(assign_rv(dup, d), std::invalid_argument);
}

TEST_CASE("counts and ordering for d=(1,1,2,2,3,3)") {
  Fixture fx(3, 6, 2, {1, 1, 2, 2, 3, 3});
  CHECK(fx.log.type1() == 0);
  CHECK(fx.log.count(Phase::TypeIIPhase1) == 12);
  CHECK(fx.log.count(Phase::TypeIIPhase2) == 6);
  CHECK(fx.log.count(Phase::TypeIIIPhase1) == 9);
  CHECK(fx.log.count(Phase::TypeIIIPhase2) == 1);
  CHECK(fx.log.total() == 28);
  const auto msgs = fx.log.messages();
  CHECK(std::is_sorted(msgs.begin(), msgs.end(), [](const auto& a, const auto& b) { return a.phase < b.phase; }));
}

TEST_CASE("Type II broadcast sets") {
  Fixture fx(3, 6, 2, {1, 1, 2, 2, 3, 3});
  std::multiset<Parts> p1;
  for (const auto& s : {w(2, 1, 2, 1), w(3, 1, 3, 1), w(2, 1, 2, 2), w(3, 1, 3, 2), w(1, 1, 2, 3), w(3, 2, 3, 3),
                        w(1, 1, 2, 4), w(3, 2, 3, 4), w(1, 1, 3, 5), w(2, 2, 3, 5), w(1, 1, 3, 6), w(2, 2, 3, 6)}) {
    p1.insert(Parts{s});
  }
  CHECK(phase_parts(fx.log, Phase::TypeIIPhase1) == p1);

  const std::multiset<Parts> p2{
      {w(1, 1, 2, 1), w(1, 1, 2, 2)}, {w(1, 1, 3, 1), w(1, 1, 3, 2)}, {w(2, 1, 2, 3), w(2, 1, 2, 4)},
      {w(2, 2, 3, 3), w(2, 2, 3, 4)}, {w(3, 1, 3, 5), w(3, 1, 3, 6)}, {w(3, 2, 3, 5), w(3, 2, 3, 6)}};
  CHECK(phase_parts(fx.log, Phase::TypeIIPhase2) == p2);
}

TEST_CASE("Type III broadcast sets") {
  Fixture fx(3, 6, 2, {1, 1, 2, 2, 3, 3});
  const std::multiset<Parts> p1{
      {w(3, 2, 3, 1), w(3, 1, 3, 3)},  // U1
      {w(2, 2, 3, 2), w(2, 2, 3, 1)},  // U2
      {w(3, 2, 3, 2), w(3, 1, 3, 3)},
      {w(1, 1, 3, 3), w(1, 1, 2, 5)},  // U3
      {w(1, 1, 3, 4), w(1, 1, 2, 5)},  // U4
      {w(3, 1, 3, 4), w(3, 1, 3, 3)},
      {w(2, 1, 2, 5), w(2, 2, 3, 1)},  // U5
      {w(2, 1, 2, 6), w(2, 2, 3, 1)},  // U6
      {w(1, 1, 2, 6), w(1, 1, 2, 5)},
  };
  CHECK(phase_parts(fx.log, Phase::TypeIIIPhase1) == p1);
  const std::multiset<Parts> p2{{w(1, 1, 2, 5), w(2, 2, 3, 1), w(3, 1, 3, 3)}};
  CHECK(phase_parts(fx.log, Phase::TypeIIIPhase2) == p2);
}

TEST_CASE("message payloads are the XOR of their parts") {
  Fixture fx(4, 5, 2, {1, 2, 3, 4, 2});
  const auto& ix = fx.placement.indexer();
  for (const auto& m : fx.log.messages()) {
    Bytes x(fx.params.subfile_bytes(), 0);
    Footprint fp = ix.empty();
    for (const auto& id : m.parts) {
      xor_into(x, subfile_payload(ix, fx.library, id));
      fp.flip(ix.index(id));
    }
    CHECK(x == m.payload);
    CHECK(fp == m.footprint);
    CHECK(m.footprint.count() == m.parts.size());
    const std::size_t weight = m.parts.size();
    switch (m.phase) {
      case Phase::TypeI:
      case Phase::TypeIIPhase1: CHECK(weight == 1); break;
      case Phase::TypeIIPhase2:
      case Phase::TypeIIIPhase1: CHECK(weight == 2); break;
      case Phase::TypeIIIPhase2: CHECK(weight == 3); break;
    }
  }
}

TEST_CASE("closed-form counts on small examples") {
  {
    Fixture fx(4, 4, 2, {1, 1, 2, 2});
    CHECK(fx.log.type1() == 16);
    CHECK(fx.log.count(Phase::TypeIIPhase1) == 4);
    CHECK(fx.log.type2() == 6);
    CHECK(fx.log.type3() == 0);
    CHECK(fx.log.total() == 22);
  }
  {
    Fixture fx(3, 6, 2, {1, 1, 1, 1, 1, 1});
    CHECK(fx.log.type1() == 12);
  }
  {
    Fixture fx(3, 6, 2, {1, 1, 1, 2, 2, 3});
    CHECK(fx.log.count(Phase::TypeIIPhase2) == 6);
  }
  {
    Fixture fx(4, 4, 2, {1, 2, 3, 4});
    CHECK(fx.log.type1() == 0);
    CHECK(fx.log.count(Phase::TypeIIPhase2) == 0);
    CHECK(fx.log.type3() == 16);
  }
  {
    Fixture fx(3, 4, 1, {1, 2, 1, 2});
    CHECK(fx.log.count(Phase::TypeIIPhase1) == 0);
  }
  {
    Fixture fx(3, 4, 3, {1, 2, 1, 2});
    CHECK(fx.log.type3() == 0);
  }
}

TEST_CASE("expected_counts against direct enumeration of the phase rules") {
  // Count messages from the set rules without the emitters: Type I sends
  // each requested subfile of a mixed symbol, Phase 1 sends the g-1
  // companions of each Type II symbol, Phase 2 pairs each non-leader with
  // its leader per Type II symbol.
  for (int n = 2; n <= 5; ++n) {
    for (int k = n; k <= 7; ++k) {
      for (int g = 1; g <= n; ++g) {
        for (int ne = 1; ne <= n; ++ne) {
          std::vector<int> d;
          for (int i = 0; i < k; ++i) d.push_back(i < ne ? i + 1 : 1);
          const SystemParams p(n, k, g, 1);
          const Demand dem(p, d);
          std::uint64_t t1 = 0, p1 = 0, p2 = 0;
          const auto leaders = select_leaders(dem);
          for (UserIndex i = 1; i <= k; ++i) {
            const bool leader = leaders.at(dem.of(i)) == i;
            for (const auto& a : enumerate_subsets(n, g)) {
              const auto c = brute_class(dem, i, a);
              if (c == SymbolType::TypeI)
                for (int f : a.members()) t1 += dem.is_requested(f) ? 1 : 0;
              if (c == SymbolType::TypeII) {
                p1 += static_cast<std::uint64_t>(g - 1);
                p2 += leader ? 0 : 1;
              }
            }
          }
          const auto e = expected_counts(n, k, g, ne);
          CHECK(e.type1 == t1);
          CHECK(e.type2_phase1 == p1);
          CHECK(e.type2_phase2 == p2);
          const BigInt total = BigInt(k) * ne * binomial(n - 1, g - 1) - BigInt(g) * binomial(ne + 1, g + 1);
          CHECK(BigInt(e.total()) == total);

          const auto lib = make_library(p, 1);
          const auto pl = build_placement(p, lib);
          const auto log = deliver(lib, pl, dem, leaders);
          CHECK(log.type1() == e.type1);
          CHECK(log.count(Phase::TypeIIIPhase1) == e.type3_phase1_leaders + e.type3_phase1_others);
          CHECK(log.count(Phase::TypeIIIPhase2) == e.type3_phase2);
        }
      }
    }
  }
}

TEST_CASE("deliver rejects an inconsistent leader set") {
  Fixture fx(3, 6, 2, {1, 1, 2, 2, 3, 3});
  const LeaderSet wrong{{1, 3}, {2, 4}, {3, 5}};
  CHECK_THROWS_AS(deliver(fx.library, fx.placement, fx.demand, wrong), std::invalid_argument);
}
