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

#include "codedcache/delivery.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace codedcache {

const char* to_string(SymbolType type) {
  switch (type) {
    case SymbolType::TypeI: return "TypeI";
    case SymbolType::TypeII: return "TypeII";
    case SymbolType::TypeIII: return "TypeIII";
    case SymbolType::AllUnrequested: return "AllUnrequested";
  }
  return "?";
}

SymbolClassification::SymbolClassification(const SubfileIndexer& indexer, const Demand& demand)
    : indexer_(&indexer), per_user_(indexer.subsets().size()) {
  const auto& params = indexer.params();
  if (demand.users() != params.users()) throw std::invalid_argument("demand does not match the placement");
  types_.reserve(per_user_ * params.users());
  for (UserIndex user = 1; user <= params.users(); ++user) {
    for (const auto& subset : indexer.subsets()) {
      SymbolType type;
      if (!demand.any_requested(subset)) {
        type = SymbolType::AllUnrequested;
      } else if (!demand.all_requested(subset)) {
        type = SymbolType::TypeI;
      } else if (subset.contains(demand.of(user))) {
        type = SymbolType::TypeII;
      } else {
        type = SymbolType::TypeIII;
      }
      types_.push_back(type);
    }
  }
}

SymbolType SymbolClassification::at(UserIndex user, std::size_t subset_position) const {
  if (subset_position >= per_user_) throw std::out_of_range("subset position out of range");
  return types_.at(static_cast<std::size_t>(user - 1) * per_user_ + subset_position);
}

SymbolType SymbolClassification::at(UserIndex user, const FileSubset& subset) const {
  const auto& subsets = indexer_->subsets();
  auto it = std::lower_bound(subsets.begin(), subsets.end(), subset);
  if (it == subsets.end() || *it != subset) throw std::invalid_argument("unknown subset " + subset.to_string());
  return at(user, static_cast<std::size_t>(it - subsets.begin()));
}

std::size_t SymbolClassification::count(SymbolType type) const {
  return static_cast<std::size_t>(std::count(types_.begin(), types_.end(), type));
}

std::size_t SymbolClassification::count(UserIndex user, SymbolType type) const {
  auto first = types_.begin() + static_cast<std::ptrdiff_t>((user - 1) * per_user_);
  return static_cast<std::size_t>(std::count(first, first + static_cast<std::ptrdiff_t>(per_user_), type));
}

SymbolClassification classify_symbols(const PlacementResult& placement, const Demand& demand) {
  return SymbolClassification(placement.indexer(), demand);
}

LeaderSet select_leaders(const Demand& demand) {
  LeaderSet leaders;
  for (UserIndex user = 1; user <= demand.users(); ++user) leaders.try_emplace(demand.of(user), user);
  return leaders;
}

void check_leaders(const LeaderSet& leaders, const Demand& demand) {
  if (static_cast<int>(leaders.size()) != demand.distinct()) {
    throw std::invalid_argument("leader set must name exactly one leader per requested file");
  }
  for (const auto& [file, user] : leaders) {
    if (!demand.is_requested(file)) {
      throw std::invalid_argument("leader given for unrequested file W" + std::to_string(file));
    }
    if (user < 1 || user > demand.users() || demand.of(user) != file) {
      std::ostringstream msg;
      msg << "user " << user << " cannot lead file W" << file;
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<UserIndex> leader_users(const LeaderSet& leaders) {
  std::vector<UserIndex> out;
  out.reserve(leaders.size());
  for (const auto& [file, user] : leaders) out.push_back(user);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<UserIndex, FileIndex> assign_rv(std::span<const UserIndex> leader_set, const Demand& demand) {
  if (leader_set.size() < 2) throw std::invalid_argument("assign_rv needs at least two users");
  std::vector<UserIndex> by_demand(leader_set.begin(), leader_set.end());
  std::sort(by_demand.begin(), by_demand.end(),
            [&](UserIndex a, UserIndex b) { return demand.of(a) < demand.of(b); });
  for (std::size_t k = 1; k < by_demand.size(); ++k) {
    if (demand.of(by_demand[k]) == demand.of(by_demand[k - 1])) {
      throw std::invalid_argument("assign_rv needs users with distinct demands");
    }
  }
  std::map<UserIndex, FileIndex> rv;
  for (std::size_t k = 0; k < by_demand.size(); ++k) {
    rv[by_demand[k]] = demand.of(by_demand[(k + 1) % by_demand.size()]);
  }
  return rv;
}

namespace {

BroadcastMessage make_message(const DeliveryContext& ctx, Phase phase, std::vector<SubfileId> parts) {
  const auto& indexer = ctx.placement.indexer();
  BroadcastMessage msg{phase, Bytes(indexer.params().subfile_bytes()), indexer.empty(), std::move(parts)};
  for (const auto& id : msg.parts) {
    xor_into(msg.payload, subfile_payload(indexer, ctx.library, id));
    msg.footprint.flip(indexer.index(id));
  }
  return msg;
}

}  // namespace

std::vector<BroadcastMessage> emit_type1(const DeliveryContext& ctx) {
  std::vector<BroadcastMessage> out;
  const auto& subsets = ctx.placement.indexer().subsets();
  for (UserIndex user = 1; user <= ctx.demand.users(); ++user) {
    for (std::size_t pos = 0; pos < subsets.size(); ++pos) {
      if (ctx.classes.at(user, pos) != SymbolType::TypeI) continue;
      for (FileIndex f : subsets[pos].members()) {
        if (ctx.demand.is_requested(f)) out.push_back(make_message(ctx, Phase::TypeI, {{f, user, subsets[pos]}}));
      }
    }
  }
  return out;
}

std::vector<BroadcastMessage> emit_type2_phase1(const DeliveryContext& ctx) {
  std::vector<BroadcastMessage> out;
  const auto& subsets = ctx.placement.indexer().subsets();
  for (UserIndex user = 1; user <= ctx.demand.users(); ++user) {
    for (std::size_t pos = 0; pos < subsets.size(); ++pos) {
      if (ctx.classes.at(user, pos) != SymbolType::TypeII) continue;
      for (FileIndex f : subsets[pos].members()) {
        if (f != ctx.demand.of(user)) out.push_back(make_message(ctx, Phase::TypeIIPhase1, {{f, user, subsets[pos]}}));
      }
    }
  }
  return out;
}

std::vector<BroadcastMessage> emit_type2_phase2(const DeliveryContext& ctx) {
  std::vector<BroadcastMessage> out;
  const auto& indexer = ctx.placement.indexer();
  for (UserIndex user = 1; user <= ctx.demand.users(); ++user) {
    const FileIndex file = ctx.demand.of(user);
    const UserIndex leader = ctx.leaders.at(file);
    if (leader == user) continue;
    for (const auto& subset : indexer.subsets_with(file)) {
      if (!ctx.demand.all_requested(subset)) continue;
      out.push_back(make_message(ctx, Phase::TypeIIPhase2, {{file, user, subset}, {file, leader, subset}}));
    }
  }
  return out;
}

std::vector<BroadcastMessage> emit_type3(const DeliveryContext& ctx) {
  const int g = ctx.placement.params().group_size();
  const int distinct = ctx.demand.distinct();
  std::vector<BroadcastMessage> phase1;
  std::vector<BroadcastMessage> phase2;
  if (distinct < g + 1) return phase1;

  const auto leaders = leader_users(ctx.leaders);
  for (const auto& positions : enumerate_subsets(distinct, g + 1)) {
    std::vector<UserIndex> group;
    std::vector<int> files;
    for (int p : positions.members()) {
      group.push_back(leaders[p - 1]);
      files.push_back(ctx.demand.of(leaders[p - 1]));
    }
    std::sort(files.begin(), files.end());
    const FileSubset demanded(files);  // B(V)
    const auto rv = assign_rv(group, ctx.demand);
    auto selected = [&](UserIndex j) {
      return SubfileId{rv.at(j), j, demanded.without(ctx.demand.of(j))};
    };

    std::size_t leader_messages = 0;
    for (UserIndex user = 1; user <= ctx.demand.users(); ++user) {
      const FileIndex wanted = ctx.demand.of(user);
      if (!demanded.contains(wanted)) continue;
      const bool is_leader = std::find(group.begin(), group.end(), user) != group.end();
      const FileSubset own = demanded.without(wanted);
      for (UserIndex j : group) {
        if (j == user || rv.at(j) == wanted) continue;
        if (is_leader && rv.at(j) == rv.at(user)) continue;
        phase1.push_back(
            make_message(ctx, Phase::TypeIIIPhase1, {{rv.at(j), user, own}, selected(j)}));
        if (is_leader) ++leader_messages;
      }
    }
    if (leader_messages != static_cast<std::size_t>((g - 1) * (g + 1))) {
      std::ostringstream msg;
      msg << "leader set V produced " << leader_messages << " leader messages, expected " << (g - 1) * (g + 1);
      throw std::logic_error(msg.str());
    }

    std::vector<SubfileId> all_selected;
    for (UserIndex j : group) all_selected.push_back(selected(j));
    phase2.push_back(make_message(ctx, Phase::TypeIIIPhase2, std::move(all_selected)));
  }

  phase1.insert(phase1.end(), std::make_move_iterator(phase2.begin()), std::make_move_iterator(phase2.end()));
  return phase1;
}

TransmissionLog deliver(const Library& library, const PlacementResult& placement, const Demand& demand,
                        const LeaderSet& leaders) {
  check_library(placement.params(), library);
  check_leaders(leaders, demand);
  const auto classes = classify_symbols(placement, demand);
  const DeliveryContext ctx{library, placement, demand, classes, leaders};

  TransmissionLog log;
  for (auto* emit : {&emit_type1, &emit_type2_phase1, &emit_type2_phase2, &emit_type3}) {
    for (auto& msg : emit(ctx)) log.append(std::move(msg));
  }
  return log;
}

TransmissionCounts expected_counts(int files, int users, int group_size, int distinct) {
  if (distinct < 1 || distinct > files) throw std::invalid_argument("need 1 <= N_e <= N");
  const std::uint64_t k = static_cast<std::uint64_t>(users);
  const std::uint64_t g = static_cast<std::uint64_t>(group_size);
  const std::uint64_t ne = static_cast<std::uint64_t>(distinct);
  const std::uint64_t pairs_requested = binomial(distinct - 1, group_size - 1);

  TransmissionCounts out;
  out.type1 = k * ne * (binomial(files - 1, group_size - 1) - pairs_requested);
  out.type2_phase1 = k * (g - 1) * pairs_requested;
  out.type2_phase2 = (k - ne) * pairs_requested;
  const std::uint64_t leader_sets = binomial(distinct, group_size + 1);
  out.type3_phase1_leaders = leader_sets * (g - 1) * (g + 1);
  out.type3_phase1_others = g * (k - ne) * binomial(distinct - 1, group_size);
  out.type3_phase2 = leader_sets;
  return out;
}

}  // namespace codedcache
