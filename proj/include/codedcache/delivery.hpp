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
 * @file delivery.hpp
 * @brief Three-type, two-phase delivery for coded-prefetched caches.
 *
 * Every cached symbol Z_A^{(i)} falls in exactly one class for a demand d
 * with requested set S:
 *
 *   - TypeI:          A meets S and also holds an unrequested file. Its
 *                     requested subfiles are broadcast uncoded.
 *   - TypeII:         A is inside S and d(i) is in A. Phase 1 sends the
 *                     g-1 companions of W_{d(i),A}^{(i)}; phase 2 lets the
 *                     users of one demand group swap through their leader.
 *   - TypeIII:        A is inside S and d(i) is not in A. Handled per set V
 *                     of g+1 leaders with distinct demands B(V).
 *   - AllUnrequested: A misses S; nothing to deliver.
 *
 * Message order in the log: I, II-P1, II-P2, III-P1, III-P2. Inside a phase
 * users ascend, subsets are lexicographic and leader sets V are
 * lexicographic in leader user index.
 */

#pragma once

#include "codedcache/placement.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace codedcache {

enum class SymbolType { TypeI, TypeII, TypeIII, AllUnrequested };

const char* to_string(SymbolType type);

/// Class of every (user, subset) symbol for one demand.
class SymbolClassification {
 public:
  SymbolClassification(const SubfileIndexer& indexer, const Demand& demand);

  SymbolType at(UserIndex user, std::size_t subset_position) const;
  SymbolType at(UserIndex user, const FileSubset& subset) const;
  std::size_t count(SymbolType type) const;
  std::size_t count(UserIndex user, SymbolType type) const;

 private:
  const SubfileIndexer* indexer_;
  std::size_t per_user_;
  std::vector<SymbolType> types_;
};

SymbolClassification classify_symbols(const PlacementResult& placement, const Demand& demand);

/// One leader per requested file; the leader requests that file.
using LeaderSet = std::map<FileIndex, UserIndex>;

/// Lowest-index requester of each requested file.
LeaderSet select_leaders(const Demand& demand);

/// Throws std::invalid_argument when `leaders` is not a valid leader set.
void check_leaders(const LeaderSet& leaders, const Demand& demand);

/// Leader user indices, ascending.
std::vector<UserIndex> leader_users(const LeaderSet& leaders);

/// r_V: maps each leader j in V to a file of B(V) other than d(j), all
/// distinct. V is sorted by demanded file and each leader gets the demand
/// of the next one, cyclically. Throws std::invalid_argument when V has
/// fewer than two users or repeated demands.
std::map<UserIndex, FileIndex> assign_rv(std::span<const UserIndex> leader_set, const Demand& demand);

/// Server-side state shared by the emitters.
struct DeliveryContext {
  const Library& library;
  const PlacementResult& placement;
  const Demand& demand;
  const SymbolClassification& classes;
  const LeaderSet& leaders;
};

std::vector<BroadcastMessage> emit_type1(const DeliveryContext& ctx);
std::vector<BroadcastMessage> emit_type2_phase1(const DeliveryContext& ctx);
std::vector<BroadcastMessage> emit_type2_phase2(const DeliveryContext& ctx);
/// Phase-1 messages followed by phase-2 messages; empty when N_e <= g.
/// Throws std::logic_error if a leader set V does not yield exactly
/// (g-1)(g+1) leader messages.
std::vector<BroadcastMessage> emit_type3(const DeliveryContext& ctx);

/// Throws std::invalid_argument on an inconsistent leader set.
TransmissionLog deliver(const Library& library, const PlacementResult& placement, const Demand& demand,
                        const LeaderSet& leaders);

/// Closed-form message counts for a demand with N_e distinct requests.
struct TransmissionCounts {
  std::uint64_t type1 = 0;
  std::uint64_t type2_phase1 = 0;
  std::uint64_t type2_phase2 = 0;
  std::uint64_t type3_phase1_leaders = 0;
  std::uint64_t type3_phase1_others = 0;
  std::uint64_t type3_phase2 = 0;

  std::uint64_t type2() const { return type2_phase1 + type2_phase2; }
  std::uint64_t type3() const { return type3_phase1_leaders + type3_phase1_others + type3_phase2; }
  std::uint64_t total() const { return type1 + type2() + type3(); }
};

TransmissionCounts expected_counts(int files, int users, int group_size, int distinct);

}  // namespace codedcache
