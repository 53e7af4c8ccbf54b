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

#include "codedcache/bounds.hpp"

#include "codedcache/rates.hpp"

#include <algorithm>
#include <stdexcept>

namespace codedcache {

namespace {

void check_pair(int files, int users) {
  if (files < 2 || users < files) throw std::invalid_argument("need 2 <= N <= K");
}

void check_memory(int files, const Rational& memory) {
  if (memory < 0 || memory > files) {
    throw std::invalid_argument("memory " + to_string(memory) + " outside [0, N]");
  }
}

Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }

}  // namespace

Rational BoundCurve::operator()(const Rational& memory) const {
  if (!covers(memory)) {
    throw std::domain_error(name + " queried at M=" + to_string(memory) + " outside [" + to_string(lo) + ", " +
                            to_string(hi) + "]");
  }
  return fn(memory);
}

RateMemoryPoint cfl_point(int files, int users) {
  check_pair(files, users);
  return {Rational(1, users), Rational(files) - Rational(files, users), "CFL", std::nullopt};
}

RateMemoryPoint gbc_point(int files, int users) {
  check_pair(files, users);
  return {Rational(files, users), Rational(files) - Rational(files * (files + 1), 2 * users), "GBC", std::nullopt};
}

std::vector<RateMemoryPoint> mds_points(int files, int users) {
  check_pair(files, users);
  std::vector<RateMemoryPoint> out;
  for (int t = 0; t <= users; ++t) {
    const Rational memory(BigInt(t) * ((files - 1) * t + users - files), BigInt(users) * (users - 1));
    out.push_back({memory, Rational(files * (users - t), users), "MDS", t});
  }
  return out;
}

BoundCurve sota_envelope(int files, int users) {
  std::vector<CurvePoint> pts{{Rational(0), Rational(files)}};
  for (const auto& p : {cfl_point(files, users), gbc_point(files, users)}) pts.push_back({p.memory, p.rate});
  for (const auto& p : mds_points(files, users)) pts.push_back({p.memory, p.rate});
  Envelope env = lower_convex_envelope(pts);
  Rational lo = env.min_memory();
  Rational hi = env.max_memory();
  return {"SOTA", lo, hi, [env = std::move(env)](const Rational& m) { return env(m); }};
}

Rational mds_memory_lb(int files, int users, const Rational& rate) {
  check_pair(files, users);
  const Rational gap = Rational(files) - rate;
  const BigInt n(files);
  const BigInt k(users);
  return gap * (gap * (n * k - k) + n * (k - n)) / Rational(n * n * (k - 1));
}

DominanceReport corollary3_check(int files, int users) {
  check_pair(files, users);
  DominanceReport report;
  report.sufficient_condition = Rational(users) <= Rational(files * files + 1, 2);
  report.dominates_everywhere = true;
  report.consistent = true;
  for (int g = 1; g <= files; ++g) {
    const auto point = rate_corollary2(files, users, g);
    DominanceRow row;
    row.group_size = g;
    row.memory = point.memory;
    row.rate = point.rate;
    row.memory_lb = mds_memory_lb(files, users, point.rate);
    row.dominates = row.memory <= row.memory_lb;
    row.user_threshold = Rational(files * files * g + 1, g + 1);
    row.below_threshold = Rational(users) <= row.user_threshold;
    report.dominates_everywhere = report.dominates_everywhere && row.dominates;
    if (g < files) {
      report.consistent = report.consistent && row.dominates == row.below_threshold;
    } else {
      report.consistent = report.consistent && row.memory == row.memory_lb;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Rational cutset_term(int files, int cut, const Rational& memory) {
  if (cut < 1 || cut > files) throw std::invalid_argument("cut size must lie in [1, N]");
  return Rational(cut) - Rational(cut, files / cut) * memory;
}

Rational cutset_bound(int files, int users, const Rational& memory) {
  check_pair(files, users);
  check_memory(files, memory);
  Rational best(0);
  for (int s = 1; s <= std::min(files, users); ++s) best = std::max(best, cutset_term(files, s, memory));
  return best;
}

Rational cutset_gap_difference_form(int files, int users, int group_size) {
  check_pair(files, users);
  return Rational(files, users) * (Rational(files, group_size) - Rational(files + 1, group_size + 1));
}

Rational cutset_gap_binomial_form(int files, int users, int group_size) {
  check_pair(files, users);
  return Rational(BigInt(binomial(files, group_size + 1)),
                  BigInt(users) * BigInt(binomial(files - 1, group_size - 1)));
}

Rational cutset_gap(int files, int users, int group_size) {
  const Rational a = cutset_gap_difference_form(files, users, group_size);
  const Rational b = cutset_gap_binomial_form(files, users, group_size);
  if (a != b) throw std::logic_error("cut-set gap closed forms disagree: " + to_string(a) + " vs " + to_string(b));
  return a;
}

Rational stc_bound(int files, int users, const Rational& memory) {
  check_pair(files, users);
  check_memory(files, memory);
  Rational best(0);
  for (int s = 1; s <= users; ++s) {
    const int max_l = (files + s - 1) / s;
    for (int l = 1; l <= max_l; ++l) {
      const Rational remaining = positive_part(Rational(files - l * s));
      Rational correction(0);
      if (remaining > 0) {
        const Rational mu = std::min(Rational(files - l * s, l), Rational(users - s));
        correction = mu * remaining / (s + mu);
      }
      const Rational value =
          (Rational(files) - s * memory - correction - positive_part(Rational(files - users * l))) / l;
      best = std::max(best, value);
    }
  }
  return best;
}

BoundCurve cutset_curve(int files, int users) {
  check_pair(files, users);
  return {"cut-set", Rational(0), Rational(files),
          [files, users](const Rational& m) { return cutset_bound(files, users, m); }};
}

BoundCurve stc_curve(int files, int users) {
  check_pair(files, users);
  return {"STC", Rational(0), Rational(files), [files, users](const Rational& m) { return stc_bound(files, users, m); }};
}

}  // namespace codedcache
