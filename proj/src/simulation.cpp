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

#include "codedcache/simulation.hpp"

#include "codedcache/rates.hpp"

#include <algorithm>

namespace codedcache {

Simulation simulate(const SystemParams& params, const Demand& demand, std::uint64_t seed, bool drop_last) {
  Library library = make_library(params, seed);
  PlacementResult placement = build_placement(params, library);
  LeaderSet leaders = select_leaders(demand);
  TransmissionLog log = deliver(library, placement, demand, leaders);
  if (drop_last) log.drop_last();
  return Simulation{params, std::move(library), std::move(placement), demand, std::move(leaders), std::move(log)};
}

bool InstanceCheck::ok() const {
  return counts_match && formula_match && std::all_of(users.begin(), users.end(), [](const UserCheck& u) {
           return u.decoded && u.bit_exact && u.oracle;
         });
}

std::size_t InstanceCheck::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(users.begin(), users.end(), [](const UserCheck& u) { return u.decoded != u.oracle; }));
}

InstanceCheck check_simulation(const Simulation& sim) {
  const auto& p = sim.params;
  InstanceCheck check;
  check.expected = expected_counts(p.files(), p.users(), p.group_size(), sim.demand.distinct());
  check.log_total = sim.log.total();
  const auto& log = sim.log;
  check.counts_match = log.type1() == check.expected.type1 &&
                       log.count(Phase::TypeIIPhase1) == check.expected.type2_phase1 &&
                       log.count(Phase::TypeIIPhase2) == check.expected.type2_phase2 &&
                       log.count(Phase::TypeIIIPhase1) ==
                           check.expected.type3_phase1_leaders + check.expected.type3_phase1_others &&
                       log.count(Phase::TypeIIIPhase2) == check.expected.type3_phase2;
  check.formula_match =
      BigInt(log.total()) == transmission_count(p.files(), p.users(), p.group_size(), sim.demand.distinct());

  for (UserIndex user = 1; user <= p.users(); ++user) {
    const UserView view = make_view(sim.placement, sim.log, sim.demand, sim.leaders, user);
    UserCheck uc;
    uc.user = user;
    try {
      const DecodeResult result = constructive_decode(view);
      uc.decoded = true;
      uc.bit_exact = result.file == sim.library[sim.demand.of(user) - 1];
    } catch (const DecodeError& e) {
      uc.error = e.what();
    }
    uc.oracle = span_oracle(view).decodable;
    check.users.push_back(std::move(uc));
  }
  return check;
}

}  // namespace codedcache
