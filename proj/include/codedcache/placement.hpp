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

#include "codedcache/model.hpp"

#include <memory>
#include <span>
#include <vector>

namespace codedcache {

/// Coded prefetching: user i stores one symbol Z_A^{(i)} per g-subset A.
class PlacementResult {
 public:
  PlacementResult(SystemParams params, std::vector<std::vector<CacheSymbol>> caches);

  const SystemParams& params() const { return indexer_->params(); }
  const SubfileIndexer& indexer() const { return *indexer_; }

  /// The C(N, g) symbols of `user`, ordered like indexer().subsets().
  std::span<const CacheSymbol> cache(UserIndex user) const;
  const CacheSymbol& symbol(UserIndex user, const FileSubset& subset) const;

  /// Subsets A receiving the C(N-1, g-1) subfiles of file f held by user i,
  /// in subfile order.
  std::span<const FileSubset> assigned_subsets(FileIndex file, UserIndex user) const;

  /// Bits stored at `user`.
  std::size_t cache_bits(UserIndex user) const;

 private:
  std::shared_ptr<const SubfileIndexer> indexer_;
  std::vector<std::vector<CacheSymbol>> caches_;
};

/// Throws std::invalid_argument (naming the file) when a payload has the
/// wrong length.
PlacementResult build_placement(const SystemParams& params, const Library& library);

}  // namespace codedcache
