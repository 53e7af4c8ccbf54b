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

#include "codedcache/decoder.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

namespace codedcache {

UserView make_view(const PlacementResult& placement, const TransmissionLog& log, const Demand& demand,
                   const LeaderSet& leaders, UserIndex user) {
  return UserView{placement.params(), user, placement.cache(user), log, demand, leaders};
}

DecodeError::DecodeError(SubfileId subfile, Phase phase, const std::string& what)
    : std::runtime_error(subfile.to_string() + " [" + to_string(phase) + "]: " + what),
      subfile_(std::move(subfile)),
      phase_(phase) {}

namespace {

class ConstructiveDecoder {
 public:
  explicit ConstructiveDecoder(const UserView& view)
      : view_(view),
        indexer_(view.params),
        wanted_(view.demand.of(view.user)),
        known_(indexer_.size()) {
    for (const auto& msg : view.log.messages()) by_footprint_.try_emplace({msg.phase, msg.footprint}, &msg);
  }

  DecodeResult run() {
    type1();
    type2_phase1();
    type2_phase2();
    if (view_.demand.distinct() > view_.params.group_size()) type3();
    return assemble();
  }

 private:
  const Bytes& broadcast(Phase phase, std::initializer_list<SubfileId> parts, const SubfileId& target) const {
    Footprint fp = indexer_.empty();
    for (const auto& id : parts) fp.flip(indexer_.index(id));
    auto it = by_footprint_.find({phase, fp});
    if (it == by_footprint_.end()) throw DecodeError(target, phase, "required broadcast is missing");
    return it->second->payload;
  }

  const Bytes& known(const SubfileId& id, Phase phase, const SubfileId& target) const {
    const auto& slot = known_[indexer_.index(id)];
    if (!slot) throw DecodeError(target, phase, "depends on unrecovered " + id.to_string());
    return *slot;
  }

  void learn(const SubfileId& id, Bytes payload, Phase phase, std::size_t operands) {
    auto& slot = known_[indexer_.index(id)];
    if (!slot) {
      slot = std::move(payload);
      steps_.push_back({phase, id, operands});
    }
  }

  const CacheSymbol& own_symbol(const FileSubset& subset) const {
    const auto& subsets = indexer_.subsets();
    auto it = std::lower_bound(subsets.begin(), subsets.end(), subset);
    return view_.cache[static_cast<std::size_t>(it - subsets.begin())];
  }

  // Requested subfiles sitting next to an unrequested one arrive uncoded.
  void type1() {
    for (const auto& msg : view_.log.messages()) {
      if (msg.phase == Phase::TypeI && msg.parts.size() == 1 && msg.parts[0].file == wanted_) {
        learn(msg.parts[0], msg.payload, Phase::TypeI, 1);
      }
    }
  }

  // Own symbols: strip the g-1 broadcast companions. Other groups' symbols:
  // the wanted subfile is itself a companion and arrives directly.
  void type2_phase1() {
    const UserIndex me = view_.user;
    for (const auto& subset : indexer_.subsets_with(wanted_)) {
      if (!view_.demand.all_requested(subset)) continue;
      const SubfileId target{wanted_, me, subset};
      Bytes acc = own_symbol(subset).payload;
      for (FileIndex f : subset.members()) {
        if (f == wanted_) continue;
        xor_into(acc, broadcast(Phase::TypeIIPhase1, {{f, me, subset}}, target));
      }
      learn(target, std::move(acc), Phase::TypeIIPhase1, subset.size());
    }
    for (const auto& msg : view_.log.messages()) {
      if (msg.phase == Phase::TypeIIPhase1 && msg.parts.size() == 1 && msg.parts[0].file == wanted_) {
        learn(msg.parts[0], msg.payload, Phase::TypeIIPhase1, 1);
      }
    }
  }

  // Y = W^(i) + W^(u) between each group member i and the group leader u.
  void type2_phase2() {
    const UserIndex me = view_.user;
    const UserIndex leader = view_.leaders.at(wanted_);
    const auto group = view_.demand.requesters(wanted_);
    for (const auto& subset : indexer_.subsets_with(wanted_)) {
      if (!view_.demand.all_requested(subset)) continue;
      const SubfileId leader_part{wanted_, leader, subset};
      if (me != leader) {
        const SubfileId mine{wanted_, me, subset};
        Bytes acc = broadcast(Phase::TypeIIPhase2, {mine, leader_part}, leader_part);
        xor_into(acc, known(mine, Phase::TypeIIPhase2, leader_part));
        learn(leader_part, std::move(acc), Phase::TypeIIPhase2, 2);
      }
      for (UserIndex other : group) {
        if (other == leader || other == me) continue;
        const SubfileId target{wanted_, other, subset};
        Bytes acc = broadcast(Phase::TypeIIPhase2, {target, leader_part}, target);
        xor_into(acc, known(leader_part, Phase::TypeIIPhase2, target));
        learn(target, std::move(acc), Phase::TypeIIPhase2, 2);
      }
    }
  }

  struct LeaderGroup {
    std::vector<UserIndex> members;
    FileSubset demanded;
    std::map<UserIndex, FileIndex> rv;
    SubfileId selected(UserIndex j, const Demand& d) const { return {rv.at(j), j, demanded.without(d.of(j))}; }
  };

  void type3() {
    const int g = view_.params.group_size();
    const UserIndex me = view_.user;
    const auto leaders = leader_users(view_.leaders);

    std::vector<LeaderGroup> groups;
    for (const auto& positions : enumerate_subsets(view_.demand.distinct(), g + 1)) {
      LeaderGroup grp;
      std::vector<int> files;
      for (int p : positions.members()) {
        grp.members.push_back(leaders[p - 1]);
        files.push_back(view_.demand.of(leaders[p - 1]));
      }
      std::sort(files.begin(), files.end());
      grp.demanded = FileSubset(files);
      if (!grp.demanded.contains(wanted_)) continue;
      grp.rv = assign_rv(grp.members, view_.demand);
      groups.push_back(std::move(grp));
    }

    // Phase 1: own symbol Z_{B\d}^{(me)} plus the pairwise messages leaves
    // the XOR of the selected subfiles of every file except the wanted one.
    std::vector<Bytes> partial;
    std::vector<std::size_t> partial_operands;
    for (const auto& grp : groups) {
      const FileSubset own = grp.demanded.without(wanted_);
      const SubfileId anchor = selected_for(grp, wanted_);
      Bytes acc = own_symbol(own).payload;
      std::size_t operands = 1;
      for (UserIndex j : grp.members) {
        if (j == me || grp.rv.at(j) == wanted_) continue;
        xor_into(acc, broadcast(Phase::TypeIIIPhase1, {{grp.rv.at(j), me, own}, grp.selected(j, view_.demand)}, anchor));
        ++operands;
      }
      partial.push_back(std::move(acc));
      partial_operands.push_back(operands);
    }

    // Phase 2: the XOR of all selected subfiles isolates the wanted one, which
    // then unlocks every pairwise message carrying that file.
    for (std::size_t v = 0; v < groups.size(); ++v) {
      const auto& grp = groups[v];
      const SubfileId anchor = selected_for(grp, wanted_);
      Footprint fp = indexer_.empty();
      for (UserIndex j : grp.members) fp.flip(indexer_.index(grp.selected(j, view_.demand)));
      auto it = by_footprint_.find({Phase::TypeIIIPhase2, fp});
      if (it == by_footprint_.end()) throw DecodeError(anchor, Phase::TypeIIIPhase2, "required broadcast is missing");
      Bytes sel = partial[v];
      xor_into(sel, it->second->payload);
      learn(anchor, sel, Phase::TypeIIIPhase2, partial_operands[v] + 1);

      for (UserIndex other = 1; other <= view_.demand.users(); ++other) {
        const FileIndex theirs = view_.demand.of(other);
        if (theirs == wanted_ || !grp.demanded.contains(theirs)) continue;
        const SubfileId target{wanted_, other, grp.demanded.without(theirs)};
        if (target == anchor) continue;
        Bytes acc = broadcast(Phase::TypeIIIPhase1, {target, anchor}, target);
        xor_into(acc, sel);
        learn(target, std::move(acc), Phase::TypeIIIPhase2, 2);
      }
    }
  }

  SubfileId selected_for(const LeaderGroup& grp, FileIndex file) const {
    for (UserIndex j : grp.members) {
      if (grp.rv.at(j) == file) return grp.selected(j, view_.demand);
    }
    throw std::logic_error("r_V does not cover file W" + std::to_string(file));
  }

  Phase expected_phase(const SubfileId& id) const {
    if (!view_.demand.all_requested(id.subset)) return Phase::TypeI;
    const FileIndex owner_wants = view_.demand.of(id.user);
    if (!id.subset.contains(owner_wants)) return Phase::TypeIIIPhase2;
    if (owner_wants != wanted_ || id.user == view_.user) return Phase::TypeIIPhase1;
    return Phase::TypeIIPhase2;
  }

  DecodeResult assemble() {
    const std::size_t bytes = view_.params.subfile_bytes();
    DecodeResult result{Bytes(view_.params.file_bytes()), std::move(steps_)};
    for (UserIndex user = 1; user <= view_.params.users(); ++user) {
      for (const auto& subset : indexer_.subsets_with(wanted_)) {
        const SubfileId id{wanted_, user, subset};
        const auto& slot = known_[indexer_.index(id)];
        if (!slot) throw DecodeError(id, expected_phase(id), "not recovered");
        std::copy(slot->begin(), slot->end(),
                  result.file.begin() + static_cast<std::ptrdiff_t>(indexer_.slot_in_file(id) * bytes));
      }
    }
    return result;
  }

  const UserView& view_;
  SubfileIndexer indexer_;
  FileIndex wanted_;
  std::vector<std::optional<Bytes>> known_;
  std::map<std::pair<Phase, Footprint>, const BroadcastMessage*> by_footprint_;
  std::vector<DecodeStep> steps_;
};

}  // namespace

DecodeResult constructive_decode(const UserView& view) { return ConstructiveDecoder(view).run(); }

void Gf2RowSpace::reduce(Footprint& row) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (row.test(pivots_[k])) row ^= rows_[k];
  }
}

bool Gf2RowSpace::insert(Footprint row) {
  if (row.size() != columns_) throw std::invalid_argument("row has the wrong dimension");
  reduce(row);
  const std::size_t pivot = row.find_first();
  if (pivot == Footprint::npos) return false;
  for (auto& existing : rows_) {
    if (existing.test(pivot)) existing ^= row;
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(pivot);
  return true;
}

bool Gf2RowSpace::contains(Footprint row) const {
  if (row.size() != columns_) throw std::invalid_argument("row has the wrong dimension");
  reduce(row);
  return row.none();
}

OracleReport span_oracle(const UserView& view) {
  const std::size_t columns = view.params.total_subfiles();
  Gf2RowSpace space(columns);
  for (const auto& sym : view.cache) space.insert(sym.footprint);
  for (const auto& msg : view.log.messages()) space.insert(msg.footprint);

  // Coordinates of the wanted file form one contiguous block.
  const std::size_t per_file = view.params.subfiles_per_file();
  const std::size_t first = static_cast<std::size_t>(view.demand.of(view.user) - 1) * per_file;
  OracleReport report;
  report.rank = space.rank();
  report.targets = per_file;
  for (std::size_t c = first; c < first + per_file; ++c) {
    Footprint unit(columns);
    unit.set(c);
    if (space.contains(std::move(unit))) ++report.targets_in_span;
  }
  report.decodable = report.targets_in_span == report.targets;
  return report;
}

}  // namespace codedcache
