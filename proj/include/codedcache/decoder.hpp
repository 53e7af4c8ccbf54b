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
 * @file decoder.hpp
 * @brief User-side reconstruction.
 *
 * constructive_decode() replays the delivery rules phase by phase, XORing
 * payloads it locates by footprint. span_oracle() ignores the scheme and
 * asks only whether each wanted subfile lies in the GF(2) span of what the
 * user holds.
 */

#pragma once

#include "codedcache/delivery.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace codedcache {

/// Everything one user can see: its own cache, the broadcast, and the
/// public demand and leader set. No library access.
struct UserView {
  SystemParams params;
  UserIndex user;
  std::span<const CacheSymbol> cache;
  const TransmissionLog& log;
  const Demand& demand;
  const LeaderSet& leaders;
};

UserView make_view(const PlacementResult& placement, const TransmissionLog& log, const Demand& demand,
                   const LeaderSet& leaders, UserIndex user);

/// One recovered subfile; `operands` counts the payloads XORed to get it
/// (1 for a direct pickup).
struct DecodeStep {
  Phase phase;
  SubfileId target;
  std::size_t operands;
};

struct DecodeResult {
  Bytes file;
  std::vector<DecodeStep> steps;
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(SubfileId subfile, Phase phase, const std::string& what);
  const SubfileId& subfile() const { return subfile_; }
  Phase phase() const { return phase_; }

 private:
  SubfileId subfile_;
  Phase phase_;
};

/// Throws DecodeError naming the first subfile that cannot be recovered.
DecodeResult constructive_decode(const UserView& view);

struct OracleReport {
  bool decodable = false;
  /// GF(2) rank of the cache and broadcast footprints.
  std::size_t rank = 0;
  std::size_t targets = 0;
  std::size_t targets_in_span = 0;
};

OracleReport span_oracle(const UserView& view);

/// Incremental GF(2) row space with a fully reduced basis.
class Gf2RowSpace {
 public:
  explicit Gf2RowSpace(std::size_t columns) : columns_(columns) {}

  /// Returns true when `row` raised the rank.
  bool insert(Footprint row);
  bool contains(Footprint row) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(Footprint& row) const;

  std::size_t columns_;
  std::vector<Footprint> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace codedcache
