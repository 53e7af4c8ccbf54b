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

#pragma once

#include "codedcache/decoder.hpp"
#include "codedcache/delivery.hpp"
#include "codedcache/placement.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codedcache {

/// Placement plus delivery for one demand.
struct Simulation {
  SystemParams params;
  Library library;
  PlacementResult placement;
  Demand demand;
  LeaderSet leaders;
  TransmissionLog log;
};

/// Leaders default to select_leaders(demand). `drop_last` removes the final
/// broadcast (negative control).
Simulation simulate(const SystemParams& params, const Demand& demand, std::uint64_t seed,
                    bool drop_last = false);

struct UserCheck {
  UserIndex user = 0;
  bool decoded = false;          // constructive decode succeeded
  bool bit_exact = false;        // and matches the library file
  bool oracle = false;           // span oracle says decodable
  std::string error;             // decode failure text, if any
};

struct InstanceCheck {
  std::vector<UserCheck> users;
  TransmissionCounts expected;
  std::size_t log_total = 0;
  bool counts_match = false;     // per phase and total vs closed forms
  bool formula_match = false;    // log total == K N_e C(N-1,g-1) - g C(N_e+1,g+1)

  bool ok() const;
  /// Users whose constructive result and oracle verdict disagree.
  std::size_t disagreements() const;
};

/// Decodes every user both ways and compares counts with the closed forms.
InstanceCheck check_simulation(const Simulation& sim);

}  // namespace codedcache
