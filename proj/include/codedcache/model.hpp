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
 * @file model.hpp
 * @brief Domain types shared by placement, delivery and decoding.
 *
 * Files and users are 1-based throughout, matching the usual W_1..W_N and
 * U_1..U_K naming. Every cached or broadcast symbol carries a GF(2)
 * footprint: one coordinate per subfile W_{f,A}^{(i)}, set when that
 * subfile is XORed into the symbol.
 */

#pragma once

#include "codedcache/combin.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace codedcache {

using FileIndex = int;
using UserIndex = int;
using Bytes = std::vector<std::uint8_t>;
using Footprint = boost::dynamic_bitset<std::uint64_t>;

/// (N files, K users, group size g, subfile payload size).
class SystemParams {
 public:
  /// Throws std::invalid_argument unless 1 <= N <= K, 1 <= g <= N and
  /// subfile_bytes > 0.
  SystemParams(int files, int users, int group_size, std::size_t subfile_bytes = 64);

  int files() const { return files_; }
  int users() const { return users_; }
  int group_size() const { return group_size_; }
  std::size_t subfile_bytes() const { return subfile_bytes_; }

  /// M = N / (g K).
  Rational memory() const;
  /// C(N-1, g-1): subfiles of one file assigned to one user.
  std::uint64_t subfiles_per_user_file() const { return per_user_file_; }
  /// K C(N-1, g-1).
  std::uint64_t subfiles_per_file() const { return users_ * per_user_file_; }
  /// C(N, g): coded symbols cached by each user.
  std::uint64_t symbols_per_user() const { return symbols_per_user_; }
  /// N K C(N-1, g-1): footprint dimension.
  std::uint64_t total_subfiles() const { return files_ * subfiles_per_file(); }
  std::size_t file_bytes() const { return subfiles_per_file() * subfile_bytes_; }

  std::string to_string() const;

 private:
  int files_;
  int users_;
  int group_size_;
  std::size_t subfile_bytes_;
  std::uint64_t per_user_file_;
  std::uint64_t symbols_per_user_;
};

class Demand {
 public:
  /// Throws std::invalid_argument unless there is one entry per user and
  /// every entry lies in [1, N].
  Demand(const SystemParams& params, std::vector<FileIndex> requests);

  FileIndex of(UserIndex user) const { return requests_.at(user - 1); }
  int users() const { return static_cast<int>(requests_.size()); }
  std::span<const FileIndex> requests() const { return requests_; }

  /// N_e(d).
  int distinct() const { return static_cast<int>(requested_.size()); }
  /// Distinct requested files, ascending.
  std::span<const FileIndex> requested_files() const { return requested_; }
  bool is_requested(FileIndex file) const;
  bool all_requested(const FileSubset& subset) const;
  bool any_requested(const FileSubset& subset) const;
  /// Users requesting `file`, ascending.
  std::vector<UserIndex> requesters(FileIndex file) const;

  std::string to_string() const;

 private:
  std::vector<FileIndex> requests_;
  std::vector<FileIndex> requested_;
};

/// W_{f,A}^{(i)}.
struct SubfileId {
  FileIndex file = 0;
  UserIndex user = 0;
  FileSubset subset;

  std::string to_string() const;
  auto operator<=>(const SubfileId&) const = default;
  bool operator==(const SubfileId&) const = default;
};

/// Bijection between SubfileIds and [0, N K C(N-1,g-1)).
///
/// Index = (f-1) K C + (i-1) C + j where j is the position of A among the
/// lexicographically ordered subsets containing f. The same (i-1) C + j is
/// the subfile's slot inside file f, so the j-th subfile of (f, i) is the
/// one assigned to the j-th subset containing f.
class SubfileIndexer {
 public:
  explicit SubfileIndexer(const SystemParams& params);

  const SystemParams& params() const { return params_; }
  std::uint64_t size() const { return params_.total_subfiles(); }

  /// Throws std::invalid_argument when f is not in A or ids are out of range.
  std::uint64_t index(const SubfileId& id) const;
  SubfileId id(std::uint64_t index) const;
  /// Slot of the subfile inside its file, in units of subfile_bytes.
  std::uint64_t slot_in_file(const SubfileId& id) const;

  Footprint empty() const { return Footprint(size()); }
  Footprint unit(const SubfileId& id) const;

  /// All g-subsets, lexicographic.
  const std::vector<FileSubset>& subsets() const { return subsets_; }
  /// g-subsets containing `file`, lexicographic.
  const std::vector<FileSubset>& subsets_with(FileIndex file) const;

 private:
  SystemParams params_;
  std::vector<FileSubset> subsets_;
  std::vector<std::vector<FileSubset>> subsets_with_;
};

std::uint64_t subfile_index(const SystemParams& params, const SubfileId& id);
SubfileId subfile_from_index(const SystemParams& params, std::uint64_t index);

/// N file payloads, each params.file_bytes() long.
using Library = std::vector<Bytes>;

/// Deterministic pseudo-random library (mt19937_64 seeded with `seed`).
Library make_library(const SystemParams& params, std::uint64_t seed);

/// Throws std::invalid_argument naming the first file whose length is wrong.
void check_library(const SystemParams& params, const Library& library);

std::span<const std::uint8_t> subfile_payload(const SubfileIndexer& indexer, const Library& library,
                                              const SubfileId& id);

void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

/// Z_A^{(i)}: XOR of the g subfiles W_{f,A}^{(i)}, f in A.
struct CacheSymbol {
  UserIndex owner = 0;
  FileSubset subset;
  Bytes payload;
  Footprint footprint;
};

enum class Phase { TypeI, TypeIIPhase1, TypeIIPhase2, TypeIIIPhase1, TypeIIIPhase2 };

/// "I", "II-P1", "II-P2", "III-P1", "III-P2".
const char* to_string(Phase phase);

/// One subfile-length broadcast. `parts` lists the XORed subfiles; for
/// pairwise messages the first part belongs to the user the message serves.
struct BroadcastMessage {
  Phase phase = Phase::TypeI;
  Bytes payload;
  Footprint footprint;
  std::vector<SubfileId> parts;

  std::string describe() const;
};

class TransmissionLog {
 public:
  void append(BroadcastMessage message) { messages_.push_back(std::move(message)); }
  void drop_last();

  std::span<const BroadcastMessage> messages() const { return messages_; }
  std::size_t count(Phase phase) const;
  std::size_t type1() const { return count(Phase::TypeI); }
  std::size_t type2() const { return count(Phase::TypeIIPhase1) + count(Phase::TypeIIPhase2); }
  std::size_t type3() const { return count(Phase::TypeIIIPhase1) + count(Phase::TypeIIIPhase2); }
  std::size_t total() const { return messages_.size(); }

 private:
  std::vector<BroadcastMessage> messages_;
};

struct RateMemoryPoint {
  Rational memory;
  Rational rate;
  std::string label;
  std::optional<int> parameter;
};

}  // namespace codedcache
