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
 * @file combin.hpp
 * @brief Exact combinatorial primitives: binomials, k-subset enumeration and
 *        ranking, and lower convex envelopes over exact rationals.
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace codedcache {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" (or "p" when q == 1).
std::string to_string(const Rational& value);

/// Parses "p/q" or an integer. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

/// C(n, k); 0 when k < 0 or k > n. Throws std::overflow_error when the
/// result does not fit in 64 bits and std::invalid_argument when n < 0.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// A sorted set of distinct 1-based file indices.
class FileSubset {
 public:
  FileSubset() = default;

  /// Throws std::invalid_argument unless members are strictly increasing
  /// and positive.
  explicit FileSubset(std::vector<int> members);

  std::span<const int> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(int file) const;
  bool within(int n) const;

  /// Copy with `file` removed (no-op when absent).
  FileSubset without(int file) const;
  /// Copy with `file` inserted (no-op when present).
  FileSubset with(int file) const;

  std::string to_string() const;

  // Lexicographic on the sorted member list.
  auto operator<=>(const FileSubset&) const = default;
  bool operator==(const FileSubset&) const = default;

 private:
  std::vector<int> members_;
};

/// All g-subsets of {1..n} in lexicographic order; empty when g > n.
std::vector<FileSubset> enumerate_subsets(int n, int g);

/// The C(n-1, g-1) g-subsets of {1..n} that contain `file`, lexicographic.
std::vector<FileSubset> subsets_containing(int n, int g, int file);

/// Position of `subset` in enumerate_subsets(n, subset.size()).
std::uint64_t subset_rank(int n, const FileSubset& subset);

/// Inverse of subset_rank. Throws std::out_of_range for rank >= C(n, k).
FileSubset subset_unrank(int n, int k, std::uint64_t rank);

struct CurvePoint {
  Rational memory;
  Rational rate;
};

/// Piecewise-linear lower convex hull of a point set, vertices sorted by
/// memory. Evaluation is restricted to [min_memory, max_memory].
class Envelope {
 public:
  std::span<const CurvePoint> vertices() const { return vertices_; }
  const Rational& min_memory() const { return vertices_.front().memory; }
  const Rational& max_memory() const { return vertices_.back().memory; }
  bool covers(const Rational& memory) const;

  /// Throws std::domain_error outside [min_memory, max_memory].
  Rational operator()(const Rational& memory) const;

 private:
  friend Envelope lower_convex_envelope(std::span<const CurvePoint> points);
  std::vector<CurvePoint> vertices_;
};

/// Throws std::invalid_argument on empty input or negative coordinates.
Envelope lower_convex_envelope(std::span<const CurvePoint> points);

}  // namespace codedcache
