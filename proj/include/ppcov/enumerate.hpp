// Copyright 2026 The ppcov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ppcov/cfg.hpp"

namespace ppcov {

inline constexpr std::size_t kDefaultPathLimit = 250000;

struct PrimePathSet {
  /// Lexicographically ordered; empty when limit_exceeded.
  std::vector<Path> paths;
  bool limit_exceeded = false;
  std::size_t limit = kDefaultPathLimit;
  /// Running insertion count when enumeration finished or stopped.
  std::size_t insertions_counted = 0;
  /// Suffix tree work, for checking the pruning cost.
  std::size_t tree_work = 0;
  std::size_t candidate_count = 0;
  std::size_t longest_candidate = 0;
};

/// Called once per candidate; return false to stop the enumeration.
using CandidateSink = std::function<bool(std::span<const VertexId>)>;

/// Streams every forward-maximal simple path and every simple cycle of `g`.
///
/// Each vertex, in ascending order, seeds a single-vertex path that is
/// extended depth-first by successors in ascending order. A successor not yet
/// on the path extends it; a successor equal to the first vertex closes a
/// cycle, which is emitted and not extended. A path is emitted when nothing
/// extends it.
void extend_candidates(const ControlFlowGraph& g, const CandidateSink& sink);

/// Collects extend_candidates into a vector, in emission order.
std::vector<Path> extend_candidates(const ControlFlowGraph& g);

/// Enumerates the prime paths of `g` by feeding candidates into a suffix
/// tree. Stops with limit_exceeded once more than `limit` insertions created
/// new nodes; the count is never corrected for paths subsumed later.
PrimePathSet prime_paths(const ControlFlowGraph& g, std::size_t limit = kDefaultPathLimit);

}  // namespace ppcov
