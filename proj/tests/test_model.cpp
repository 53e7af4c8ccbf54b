// System parameters, demands, subfile indexing and the library.

#include "codedcache/model.hpp"

#include <doctest.h>

#include <set>

using namespace codedcache;

TEST_CASE("SystemParams sizes") {
  const SystemParams p(3, 6, 2);
  CHECK(p.memory() == Rational(1, 4));
  CHECK(p.subfiles_per_user_file() == 2);
  CHECK(p.subfiles_per_file() == 12);
  CHECK(p.symbols_per_user() == 3);
  CHECK(p.total_subfiles() == 36);
  CHECK(p.file_bytes() == 12 * 64);

  const SystemParams q(10, 15, 2, 1);
  CHECK(q.memory() == Rational(1, 3));
  CHECK(q.subfiles_per_file() == 135);
}

TEST_CASE("SystemParams rejects bad shapes") {
  CHECK_THROWS_AS(SystemParams(3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(SystemParams(3, 6, 0), std::invalid_argument);
  CHECK_THROWS_AS(SystemParams(3, 6, 4), std::invalid_argument);
  CHECK_THROWS_AS(SystemParams(0, 6, 1), std::invalid_argument);
  CHECK_THROWS_AS(SystemParams(3, 6, 1, 0), std::invalid_argument);
}

TEST_CASE("Demand") {
  const SystemParams p(3, 6, 2);
  const Demand d(p, {1, 1, 2, 2, 3, 3});
  CHECK(d.distinct() == 3);
  CHECK(d.of(4) == 2);
  CHECK(d.requesters(2) == std::vector<UserIndex>{3, 4});
  CHECK(d.all_requested(FileSubset({1, 3})));

  const Demand e(p, {2, 2, 2, 2, 2, 2});
  CHECK(e.distinct() == 1);
  CHECK_FALSE(e.is_requested(1));
  CHECK(e.any_requested(FileSubset({1, 2})));
  CHECK_FALSE(e.all_requested(FileSubset({1, 2})));
  CHECK_FALSE(e.any_requested(FileSubset({1, 3})));

  CHECK_THROWS_AS(Demand(p, {1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Demand(p, {0, 1, 1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Demand(p, {4, 1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("subfile index is a bijection onto [0, N K C(N-1,g-1))") {
  for (int n = 1; n <= 5; ++n) {
    for (int k = n; k <= 6; ++k) {
      for (int g = 1; g <= n; ++g) {
        const SystemParams p(n, k, g);
        const SubfileIndexer ix(p);
        std::set<std::uint64_t> seen;
        for (int f = 1; f <= n; ++f) {
          for (int i = 1; i <= k; ++i) {
            for (const auto& a : enumerate_subsets(n, g)) {
              if (!a.contains(f)) continue;
              const SubfileId id{f, i, a};
              const auto idx = ix.index(id);
              CHECK(idx < p.total_subfiles());
              CHECK(ix.id(idx) == id);
              CHECK(subfile_from_index(p, subfile_index(p, id)) == id);
              CHECK(ix.slot_in_file(id) == idx - static_cast<std::uint64_t>(f - 1) * p.subfiles_per_file());
              seen.insert(idx);
            }
          }
        }
        CHECK(seen.size() == p.total_subfiles());
      }
    }
  }
}

TEST_CASE("index layout at N=3 K=6 g=2") {
  const SystemParams p(3, 6, 2);
  const SubfileIndexer ix(p);
  CHECK(ix.size() == 36);
  CHECK(ix.index({1, 1, FileSubset({1, 2})}) == 0);
  CHECK(ix.index({1, 1, FileSubset({1, 3})}) == 1);
  CHECK(ix.index({1, 2, FileSubset({1, 2})}) == 2);
  CHECK(ix.index({2, 1, FileSubset({1, 2})}) == 12);
  CHECK(ix.index({2, 1, FileSubset({2, 3})}) == 13);
  CHECK(ix.index({3, 6, FileSubset({2, 3})}) == 35);
  CHECK((SubfileId{2, 3, FileSubset({1, 2})}).to_string() == "W2{1,2}^3");
  CHECK_THROWS_AS(ix.index({3, 1, FileSubset({1, 2})}), std::invalid_argument);
  CHECK_THROWS_AS(ix.index({1, 7, FileSubset({1, 2})}), std::invalid_argument);
}

TEST_CASE("library is deterministic and payload slices line up") {
  const SystemParams p(3, 4, 2, 8);
  const Library a = make_library(p, 7);
  const Library b = make_library(p, 7);
  const Library c = make_library(p, 8);
  CHECK(a == b);
  CHECK(a != c);
  REQUIRE(a.size() == 3);
  CHECK(a[0].size() == p.file_bytes());
  CHECK_NOTHROW(check_library(p, a));

  const SubfileIndexer ix(p);
  const SubfileId id{2, 3, FileSubset({2, 3})};
  const auto slice = subfile_payload(ix, a, id);
  const auto offset = ix.slot_in_file(id) * p.subfile_bytes();
  CHECK(std::equal(slice.begin(), slice.end(), a[1].begin() + static_cast<std::ptrdiff_t>(offset)));

  Library bad = a;
  bad[2].pop_back();
  CHECK_THROWS_WITH_AS(check_library(p, bad), doctest::Contains("3"), std::invalid_argument);
}

TEST_CASE("xor_into and transmission log") {
  Bytes x{1, 2, 3};
  const Bytes y{1, 0, 7};
  xor_into(x, y);
  CHECK(x == Bytes{0, 2, 4});

  TransmissionLog log;
  log.append({Phase::TypeIIPhase1, {}, {}, {}});
  log.append({Phase::TypeIIPhase2, {}, {}, {}});
  log.append({Phase::TypeIIIPhase2, {}, {}, {}});
  CHECK(log.type2() == 2);
  CHECK(log.type3() == 1);
  log.drop_last();
  CHECK(log.total() == 2);
  CHECK(std::string(to_string(Phase::TypeIIIPhase1)) == "III-P1");
}
