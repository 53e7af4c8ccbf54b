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

#include "codedcache/placement.hpp"

#include <algorithm>
#include <stdexcept>

namespace codedcache {

PlacementResult::PlacementResult(SystemParams params, std::vector<std::vector<CacheSymbol>> caches)
    : indexer_(std::make_shared<const SubfileIndexer>(params)), caches_(std::move(caches)) {
  if (static_cast<int>(caches_.size()) != params.users()) {
    throw std::invalid_argument("placement needs one cache per user");
  }
}

std::span<const CacheSymbol> PlacementResult::cache(UserIndex user) const {
  return caches_.at(user - 1);
}

const CacheSymbol& PlacementResult::symbol(UserIndex user, const FileSubset& subset) const {
  const auto& subsets = indexer_->subsets();
  auto it = std::lower_bound(subsets.begin(), subsets.end(), subset);
  if (it == subsets.end() || *it != subset) {
    throw std::invalid_argument("no cached symbol for subset " + subset.to_string());
  }
  return caches_.at(user - 1).at(static_cast<std::size_t>(it - subsets.begin()));
}

std::span<const FileSubset> PlacementResult::assigned_subsets(FileIndex file, UserIndex user) const {
  if (user < 1 || user > params().users()) throw std::invalid_argument("user out of range");
  return indexer_->subsets_with(file);
}

std::size_t PlacementResult::cache_bits(UserIndex user) const {
  std::size_t bits = 0;
  for (const auto& sym : cache(user)) bits += sym.payload.size() * 8;
  return bits;
}

PlacementResult build_placement(const SystemParams& params, const Library& library) {
  check_library(params, library);
  const SubfileIndexer indexer(params);
  std::vector<std::vector<CacheSymbol>> caches(params.users());
  for (UserIndex user = 1; user <= params.users(); ++user) {
    auto& cache = caches[user - 1];
    cache.reserve(indexer.subsets().size());
    for (const auto& subset : indexer.subsets()) {
      CacheSymbol sym{user, subset, Bytes(params.subfile_bytes()), indexer.empty()};
      for (FileIndex f : subset.members()) {
        const SubfileId id{f, user, subset};
        xor_into(sym.payload, subfile_payload(indexer, library, id));
        sym.footprint.set(indexer.index(id));
      }
      cache.push_back(std::move(sym));
    }
  }
  return PlacementResult(params, std::move(caches));
}

}  // namespace codedcache
