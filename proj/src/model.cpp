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

#include "codedcache/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace codedcache {

SystemParams::SystemParams(int files, int users, int group_size, std::size_t subfile_bytes)
    : files_(files), users_(users), group_size_(group_size), subfile_bytes_(subfile_bytes) {
  if (files < 1) throw std::invalid_argument("need at least one file");
  if (users < files) throw std::invalid_argument("need N <= K (at least as many users as files)");
  if (group_size < 1 || group_size > files) throw std::invalid_argument("group size g must lie in [1, N]");
  if (subfile_bytes == 0) throw std::invalid_argument("subfile size must be positive");
  per_user_file_ = binomial(files - 1, group_size - 1);
  symbols_per_user_ = binomial(files, group_size);
}

Rational SystemParams::memory() const { return Rational(files_, group_size_ * users_); }

std::string SystemParams::to_string() const {
  std::ostringstream out;
  out << "N=" << files_ << " K=" << users_ << " g=" << group_size_;
  return out.str();
}

Demand::Demand(const SystemParams& params, std::vector<FileIndex> requests)
    : requests_(std::move(requests)) {
  if (static_cast<int>(requests_.size()) != params.users()) {
    std::ostringstream msg;
    msg << "demand has " << requests_.size() << " entries, expected K=" << params.users();
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t k = 0; k < requests_.size(); ++k) {
    if (requests_[k] < 1 || requests_[k] > params.files()) {
      std::ostringstream msg;
      msg << "demand of user " << k + 1 << " is " << requests_[k] << ", outside [1, "
          << params.files() << "]";
      throw std::invalid_argument(msg.str());
    }
  }
  requested_ = requests_;
  std::sort(requested_.begin(), requested_.end());
  requested_.erase(std::unique(requested_.begin(), requested_.end()), requested_.end());
}

bool Demand::is_requested(FileIndex file) const {
  return std::binary_search(requested_.begin(), requested_.end(), file);
}

bool Demand::all_requested(const FileSubset& subset) const {
  return std::all_of(subset.members().begin(), subset.members().end(),
                     [this](int f) { return is_requested(f); });
}

bool Demand::any_requested(const FileSubset& subset) const {
  return std::any_of(subset.members().begin(), subset.members().end(),
                     [this](int f) { return is_requested(f); });
}

std::vector<UserIndex> Demand::requesters(FileIndex file) const {
  std::vector<UserIndex> out;
  for (std::size_t k = 0; k < requests_.size(); ++k) {
    if (requests_[k] == file) out.push_back(static_cast<UserIndex>(k + 1));
  }
  return out;
}

std::string Demand::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < requests_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(requests_[k]);
  }
  return out + ")";
}

std::string SubfileId::to_string() const {
  std::ostringstream out;
  out << "W" << file << subset.to_string() << "^" << user;
  return out.str();
}

SubfileIndexer::SubfileIndexer(const SystemParams& params)
    : params_(params), subsets_(enumerate_subsets(params.files(), params.group_size())) {
  subsets_with_.reserve(params.files());
  for (FileIndex f = 1; f <= params.files(); ++f) {
    subsets_with_.push_back(subsets_containing(params.files(), params.group_size(), f));
  }
}

const std::vector<FileSubset>& SubfileIndexer::subsets_with(FileIndex file) const {
  return subsets_with_.at(file - 1);
}

std::uint64_t SubfileIndexer::slot_in_file(const SubfileId& id) const {
  if (id.file < 1 || id.file > params_.files()) throw std::invalid_argument("file index out of range: " + id.to_string());
  if (id.user < 1 || id.user > params_.users()) throw std::invalid_argument("user index out of range: " + id.to_string());
  if (static_cast<int>(id.subset.size()) != params_.group_size() || !id.subset.within(params_.files())) {
    throw std::invalid_argument("subset is not a g-subset of the files: " + id.to_string());
  }
  const auto& with = subsets_with(id.file);
  auto it = std::lower_bound(with.begin(), with.end(), id.subset);
  if (it == with.end() || *it != id.subset) {
    throw std::invalid_argument("file is not a member of the subset: " + id.to_string());
  }
  const auto position = static_cast<std::uint64_t>(it - with.begin());
  return static_cast<std::uint64_t>(id.user - 1) * params_.subfiles_per_user_file() + position;
}

std::uint64_t SubfileIndexer::index(const SubfileId& id) const {
  return static_cast<std::uint64_t>(id.file - 1) * params_.subfiles_per_file() + slot_in_file(id);
}

SubfileId SubfileIndexer::id(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("subfile index out of range");
  const std::uint64_t per_file = params_.subfiles_per_file();
  const std::uint64_t per_user = params_.subfiles_per_user_file();
  SubfileId out;
  out.file = static_cast<FileIndex>(index / per_file + 1);
  const std::uint64_t slot = index % per_file;
  out.user = static_cast<UserIndex>(slot / per_user + 1);
  out.subset = subsets_with(out.file)[slot % per_user];
  return out;
}

Footprint SubfileIndexer::unit(const SubfileId& id) const {
  Footprint fp(size());
  fp.set(index(id));
  return fp;
}

std::uint64_t subfile_index(const SystemParams& params, const SubfileId& id) {
  return SubfileIndexer(params).index(id);
}

SubfileId subfile_from_index(const SystemParams& params, std::uint64_t index) {
  return SubfileIndexer(params).id(index);
}

Library make_library(const SystemParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Library library(params.files(), Bytes(params.file_bytes()));
  for (auto& file : library) {
    for (auto& byte : file) byte = static_cast<std::uint8_t>(rng() >> 56);
  }
  return library;
}

void check_library(const SystemParams& params, const Library& library) {
  if (static_cast<int>(library.size()) != params.files()) {
    std::ostringstream msg;
    msg << "library holds " << library.size() << " files, expected N=" << params.files();
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t f = 0; f < library.size(); ++f) {
    if (library[f].size() != params.file_bytes()) {
      std::ostringstream msg;
      msg << "file W" << f + 1 << " has " << library[f].size() << " bytes, expected "
          << params.file_bytes();
      throw std::invalid_argument(msg.str());
    }
  }
}

std::span<const std::uint8_t> subfile_payload(const SubfileIndexer& indexer, const Library& library,
                                              const SubfileId& id) {
  const std::size_t bytes = indexer.params().subfile_bytes();
  return std::span<const std::uint8_t>(library.at(id.file - 1))
      .subspan(indexer.slot_in_file(id) * bytes, bytes);
}

void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  if (dst.size() != src.size()) throw std::invalid_argument("xor_into: length mismatch");
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::TypeI: return "I";
    case Phase::TypeIIPhase1: return "II-P1";
    case Phase::TypeIIPhase2: return "II-P2";
    case Phase::TypeIIIPhase1: return "III-P1";
    case Phase::TypeIIIPhase2: return "III-P2";
  }
  return "?";
}

std::string BroadcastMessage::describe() const {
  std::string out = std::string(to_string(phase)) + ":";
  for (std::size_t p = 0; p < parts.size(); ++p) {
    out += p ? " + " : " ";
    out += parts[p].to_string();
  }
  return out;
}

void TransmissionLog::drop_last() {
  if (!messages_.empty()) messages_.pop_back();
}

std::size_t TransmissionLog::count(Phase phase) const {
  return static_cast<std::size_t>(std::count_if(messages_.begin(), messages_.end(),
                                                [phase](const BroadcastMessage& m) { return m.phase == phase; }));
}

}  // namespace codedcache
