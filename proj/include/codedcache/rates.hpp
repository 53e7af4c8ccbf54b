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
 * @file rates.hpp
 * @brief Closed-form delivery rates of the coded-prefetching scheme.
 *
 * Counts are in subfile transmissions; a file is K C(N-1, g-1) subfiles, so
 * rate = count / (K C(N-1, g-1)). All functions require 1 <= N <= K and
 * 1 <= g <= N and throw std::invalid_argument otherwise.
 */

#pragma once

#include "codedcache/combin.hpp"
#include "codedcache/model.hpp"

#include <vector>

namespace codedcache {

/// T(N_e) = K N_e C(N-1,g-1) - g C(N_e+1,g+1).
BigInt transmission_count(int files, int users, int group_size, int distinct);

/// T(N_e) / (K C(N-1,g-1)).
Rational rate_theorem1(int files, int users, int group_size, int distinct);

/// Worst-demand pair at integer g: (M, R) = (N/(gK), N - (N/K)(N+1)/(g+1)).
RateMemoryPoint rate_corollary2(int files, int users, int group_size);

/// T(x+1) - T(x) = K C(N-1,g-1) - (x+1) C(x,g-1).
BigInt transmission_increment(int files, int users, int group_size, int x);

/// rate_theorem1 at N_e = N, the maximiser over demands.
Rational worst_demand_rate(int files, int users, int group_size);

/// The scheme's integer-g points with their memory-sharing envelope,
/// defined on [1/K, N/K].
struct RateCurve {
  std::vector<RateMemoryPoint> points;  // g = 1..N, so M decreasing
  Envelope envelope;

  /// Throws std::domain_error outside [1/K, N/K].
  Rational operator()(const Rational& memory) const { return envelope(memory); }
};

RateCurve scheme_envelope(int files, int users);

}  // namespace codedcache
