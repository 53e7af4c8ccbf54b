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

#include "codedcache/combin.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace codedcache {

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("bad number: " + text);
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad number: " + text);
  }
  return BigInt(text[0] == '+' ? text.substr(1) : text);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  const BigInt num = parse_integer(text.substr(0, slash));
  const BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  return Rational(num, den);
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays exact: result is C(n-k+i-1, i-1).
    result = result * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      std::ostringstream msg;
      msg << "binomial(" << n << ", " << k << ") overflows 64 bits";
      throw std::overflow_error(msg.str());
    }
  }
  return static_cast<std::uint64_t>(result);
}

FileSubset::FileSubset(std::vector<int> members) : members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1) throw std::invalid_argument("file index must be >= 1");
    if (i > 0 && members_[i] <= members_[i - 1]) {
      throw std::invalid_argument("file subset must be strictly increasing");
    }
  }
}

bool FileSubset::contains(int file) const {
  return std::binary_search(members_.begin(), members_.end(), file);
}

bool FileSubset::within(int n) const { return members_.empty() || members_.back() <= n; }

FileSubset FileSubset::without(int file) const {
  FileSubset out;
  out.members_.reserve(members_.size());
  for (int m : members_) {
    if (m != file) out.members_.push_back(m);
  }
  return out;
}

FileSubset FileSubset::with(int file) const {
  if (file < 1) throw std::invalid_argument("file index must be >= 1");
  FileSubset out = *this;
  auto it = std::lower_bound(out.members_.begin(), out.members_.end(), file);
  if (it == out.members_.end() || *it != file) out.members_.insert(it, file);
  return out;
}

std::string FileSubset::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(members_[i]);
  }
  return out + "}";
}

std::vector<FileSubset> enumerate_subsets(int n, int g) {
  if (n < 1 || g < 1) throw std::invalid_argument("enumerate_subsets: need n >= 1 and g >= 1");
  std::vector<FileSubset> out;
  if (g > n) return out;
  out.reserve(binomial(n, g));
  std::vector<int> cur(g);
  for (int i = 0; i < g; ++i) cur[i] = i + 1;
  while (true) {
    out.emplace_back(cur);
    int pos = g - 1;
    while (pos >= 0 && cur[pos] == n - g + pos + 1) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int i = pos + 1; i < g; ++i) cur[i] = cur[i - 1] + 1;
  }
  return out;
}

std::vector<FileSubset> subsets_containing(int n, int g, int file) {
  if (file < 1 || file > n) throw std::invalid_argument("subsets_containing: file out of range");
  std::vector<FileSubset> out;
  for (auto& s : enumerate_subsets(n, g)) {
    if (s.contains(file)) out.push_back(std::move(s));
  }
  return out;
}

std::uint64_t subset_rank(int n, const FileSubset& subset) {
  const auto members = subset.members();
  const auto k = static_cast<std::int64_t>(members.size());
  if (!subset.within(n)) throw std::invalid_argument("subset_rank: member exceeds n");
  std::uint64_t rank = 0;
  int prev = 0;
  for (std::int64_t p = 0; p < k; ++p) {
    for (int x = prev + 1; x < members[p]; ++x) rank += binomial(n - x, k - p - 1);
    prev = members[p];
  }
  return rank;
}

FileSubset subset_unrank(int n, int k, std::uint64_t rank) {
  if (rank >= binomial(n, k)) throw std::out_of_range("subset_unrank: rank too large");
  std::vector<int> members;
  members.reserve(k);
  int x = 1;
  for (int p = 0; p < k; ++p) {
    while (true) {
      const std::uint64_t block = binomial(n - x, k - p - 1);
      if (rank < block) break;
      rank -= block;
      ++x;
    }
    members.push_back(x);
    ++x;
  }
  return FileSubset(std::move(members));
}

bool Envelope::covers(const Rational& memory) const {
  return memory >= min_memory() && memory <= max_memory();
}

Rational Envelope::operator()(const Rational& memory) const {
  if (!covers(memory)) {
    throw std::domain_error("envelope queried at M=" + to_string(memory) + " outside [" +
                            to_string(min_memory()) + ", " + to_string(max_memory()) + "]");
  }
  auto hi = std::lower_bound(vertices_.begin(), vertices_.end(), memory,
                             [](const CurvePoint& p, const Rational& m) { return p.memory < m; });
  if (hi->memory == memory) return hi->rate;
  auto lo = hi - 1;
  return lo->rate + (hi->rate - lo->rate) * (memory - lo->memory) / (hi->memory - lo->memory);
}

Envelope lower_convex_envelope(std::span<const CurvePoint> points) {
  if (points.empty()) throw std::invalid_argument("lower_convex_envelope: no points");
  std::vector<CurvePoint> sorted(points.begin(), points.end());
  for (const auto& p : sorted) {
    if (p.memory < 0 || p.rate < 0) {
      throw std::invalid_argument("lower_convex_envelope: negative coordinate");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const CurvePoint& a, const CurvePoint& b) {
    return a.memory < b.memory || (a.memory == b.memory && a.rate < b.rate);
  });

  Envelope env;
  auto& hull = env.vertices_;
  for (const auto& p : sorted) {
    if (!hull.empty() && hull.back().memory == p.memory) continue;  // keeps the lowest rate
    // Drop the last vertex while it is on or above the chord to p.
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross =
          (b.memory - a.memory) * (p.rate - a.rate) - (b.rate - a.rate) * (p.memory - a.memory);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return env;
}

}  // namespace codedcache
