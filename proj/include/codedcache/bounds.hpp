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
 * @file bounds.hpp
 * @brief Baseline achievable pairs and converse bounds used for comparison.
 *
 * Everything is exact. Lower bounds that go negative are clamped to 0.
 * Functions need 2 <= N <= K unless noted, and throw std::invalid_argument
 * otherwise.
 */

#pragma once

#include "codedcache/combin.hpp"
#include "codedcache/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace codedcache {

/// (M, R) = (1/K, N - N/K).
RateMemoryPoint cfl_point(int files, int users);

/// (M, R) = (N/K, N - N(N+1)/(2K)).
RateMemoryPoint gbc_point(int files, int users);

/// t = 0..K: (M, R) = (t[(N-1)t + K - N] / (K(K-1)), N(K-t)/K).
std::vector<RateMemoryPoint> mds_points(int files, int users);

/// A named rate function of memory over [lo, hi].
struct BoundCurve {
  std::string name;
  Rational lo;
  Rational hi;
  std::function<Rational(const Rational&)> fn;

  bool covers(const Rational& memory) const { return memory >= lo && memory <= hi; }
  /// Throws std::domain_error outside [lo, hi].
  Rational operator()(const Rational& memory) const;
};

/// Lower convex envelope of (0, N), the CFL and GBC pairs and all MDS pairs.
BoundCurve sota_envelope(int files, int users);

/// Memory the MDS pairs need at rate R, extended to a convex curve in R:
/// (N-R)((N-R)(NK-K) + N(K-N)) / (N^2 (K-1)).
Rational mds_memory_lb(int files, int users, const Rational& rate);

struct DominanceRow {
  int group_size;
  Rational memory;         // N/(gK)
  Rational rate;           // worst-demand rate at g
  Rational memory_lb;      // mds_memory_lb(rate)
  bool dominates;          // memory <= memory_lb
  Rational user_threshold; // (N^2 g + 1)/(g + 1)
  bool below_threshold;    // K <= user_threshold
};

struct DominanceReport {
  std::vector<DominanceRow> rows;
  /// K <= (N^2 + 1)/2.
  bool sufficient_condition = false;
  /// dominates holds for every g.
  bool dominates_everywhere = false;
  /// dominates <=> below_threshold for every g < N, and memory == memory_lb
  /// at g = N (where the threshold test degenerates).
  bool consistent = false;
};

DominanceReport corollary3_check(int files, int users);

/// s - s M / floor(N/s) for one cut size s.
Rational cutset_term(int files, int cut, const Rational& memory);

/// max over s in 1..min(N,K) of cutset_term, clamped at 0. Needs 0 <= M <= N.
Rational cutset_bound(int files, int users, const Rational& memory);

/// (N/K)(N/g - (N+1)/(g+1)).
Rational cutset_gap_difference_form(int files, int users, int group_size);
/// C(N, g+1) / (K C(N-1, g-1)).
Rational cutset_gap_binomial_form(int files, int users, int group_size);

/// Distance between the scheme's rate at M = N/(gK) and the s = N cut
/// N - N M. Throws std::logic_error if the two closed forms disagree.
Rational cutset_gap(int files, int users, int group_size);

/// max over s in 1..K, l in 1..ceil(N/s) of
///   (1/l)(N - s M - mu (N - l s)^+ / (s + mu) - (N - K l)^+),
/// mu = min((N - l s)/l, K - s), clamped at 0. Needs 0 <= M <= N.
Rational stc_bound(int files, int users, const Rational& memory);

BoundCurve cutset_curve(int files, int users);
BoundCurve stc_curve(int files, int users);

}  // namespace codedcache
