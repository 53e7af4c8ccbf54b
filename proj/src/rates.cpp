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

#include "codedcache/rates.hpp"

#include <stdexcept>

namespace codedcache {

namespace {

void check_shape(int files, int users, int group_size) {
  if (files < 1 || users < files) throw std::invalid_argument("need 1 <= N <= K");
  if (group_size < 1 || group_size > files) throw std::invalid_argument("need 1 <= g <= N");
}

BigInt big_binomial(int n, int k) { return BigInt(binomial(n, k)); }

}  // namespace

BigInt transmission_count(int files, int users, int group_size, int distinct) {
  check_shape(files, users, group_size);
  if (distinct < 1 || distinct > files) throw std::invalid_argument("need 1 <= N_e <= N");
  return BigInt(users) * distinct * big_binomial(files - 1, group_size - 1) -
         BigInt(group_size) * big_binomial(distinct + 1, group_size + 1);
}

Rational rate_theorem1(int files, int users, int group_size, int distinct) {
  const BigInt count = transmission_count(files, users, group_size, distinct);
  return Rational(count, BigInt(users) * big_binomial(files - 1, group_size - 1));
}

RateMemoryPoint rate_corollary2(int files, int users, int group_size) {
  check_shape(files, users, group_size);
  const Rational n(files);
  const Rational rate = n - Rational(files, users) * Rational(files + 1, group_size + 1);
  return {Rational(files, users * group_size), rate, "new", group_size};
}

BigInt transmission_increment(int files, int users, int group_size, int x) {
  check_shape(files, users, group_size);
  if (x < 1 || x > files - 1) throw std::invalid_argument("need 1 <= x <= N-1");
  return BigInt(users) * big_binomial(files - 1, group_size - 1) - BigInt(x + 1) * big_binomial(x, group_size - 1);
}

Rational worst_demand_rate(int files, int users, int group_size) {
  return rate_theorem1(files, users, group_size, files);
}

RateCurve scheme_envelope(int files, int users) {
  check_shape(files, users, 1);
  RateCurve curve;
  std::vector<CurvePoint> pts;
  for (int g = 1; g <= files; ++g) {
    curve.points.push_back(rate_corollary2(files, users, g));
    pts.push_back({curve.points.back().memory, curve.points.back().rate});
  }
  curve.envelope = lower_convex_envelope(pts);
  return curve;
}

}  // namespace codedcache
