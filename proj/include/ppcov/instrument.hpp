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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppcov/bitset.hpp"
#include "ppcov/cfg.hpp"
#include "ppcov/enumerate.hpp"

namespace ppcov {

/// Numbering of the prime paths of one function. Indices are 1-based and
/// index n is bit n-1 of every bitset over paths.
class PathIndex {
 public:
  PathIndex() = default;

  /// Numbers `paths` in the given order. Throws std::invalid_argument on an
  /// empty path or a duplicate. Used directly to reproduce a published
  /// numbering; index_paths() is the canonical lexicographic one.
  static PathIndex from_ordered(std::vector<Path> paths);

  [[nodiscard]] std::size_t size() const { return paths_.size(); }
  [[nodiscard]] bool empty() const { return paths_.empty(); }
  /// 1-based.
  [[nodiscard]] const Path& path(std::size_t index) const;
  [[nodiscard]] const std::vector<Path>& paths() const { return paths_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const Path& path) const;

 private:
  std::vector<Path> paths_;
  std::map<Path, std::size_t> lookup_;
};

/// Lexicographic 1-based numbering. Throws std::invalid_argument when the
/// enumeration was aborted.
PathIndex index_paths(const PrimePathSet& paths);

/// Sorted 1-based path indices.
using IndexSet = std::vector<std::size_t>;
/// One entry for every vertex of the graph, possibly empty.
using VertexSets = std::map<VertexId, IndexSet>;

/// R(v): paths ending at v.
VertexSets record_sets(const ControlFlowGraph& g, const PathIndex& idx);
/// I(v): paths starting at v.
VertexSets init_sets(const ControlFlowGraph& g, const PathIndex& idx);

struct DiscardSets {
  /// Ground truth. P is discarded on p->v when p occurs in P with a successor
  /// and no occurrence of p in P is followed by v.
  std::map<Edge, IndexSet> per_edge;
  /// Union over the incoming edges of each vertex.
  VertexSets per_vertex;
  /// Vertex-level discard is exact: every incoming edge has the same set.
  std::map<VertexId, bool> hoistable;
};

DiscardSets discard_sets(const PathIndex& idx, const ControlFlowGraph& g);

bool is_supported_word_size(unsigned w);

struct InstrumentationTable {
  std::size_t path_count = 0;
  unsigned word_size = 64;
  std::map<VertexId, Bitset> record;
  std::map<VertexId, Bitset> init;
  /// Stored uninverted; the plan applies them as `L &= ~mask`.
  std::map<Edge, Bitset> discard_edge;
  std::map<VertexId, Bitset> discard_vertex;
  std::map<VertexId, bool> hoistable;

  /// k = ceil(path_count / word_size).
  [[nodiscard]] std::size_t bin_count() const;
};

/// Encodes the sets as bitsets. Throws std::invalid_argument unless `w` is
/// 8, 16, 32 or 64.
InstrumentationTable build_bitmasks(const VertexSets& record, const DiscardSets& discard,
                                    const VertexSets& init, const PathIndex& idx, unsigned w);

/// record_sets + discard_sets + init_sets + build_bitmasks.
InstrumentationTable build_table(const ControlFlowGraph& g, const PathIndex& idx, unsigned w);

struct BinMask {
  std::size_t bin = 0;
  std::uint64_t value = 0;

  friend bool operator==(const BinMask&, const BinMask&) = default;
};

/// Non-zero w-bit bins of `mask`; bin j covers path indices j*w+1..(j+1)*w.
std::vector<BinMask> partition_bins(const Bitset& mask, unsigned w);

enum class StepKind { record, discard, initialize };

struct Step {
  StepKind kind = StepKind::record;
  std::vector<BinMask> bins;
};

/// Elided instrumentation: only non-empty steps, only affected bins.
struct InstrumentationPlan {
  std::string function;
  std::size_t path_count = 0;
  unsigned word_size = 64;
  std::size_t bin_count = 0;
  /// Per vertex, in execution order record, discard, initialize.
  std::map<VertexId, std::vector<Step>> vertex_steps;
  /// Discards that cannot be hoisted into the target vertex; executed while
  /// taking the edge.
  std::map<Edge, std::vector<Step>> edge_steps;
};

InstrumentationPlan build_plan(const ControlFlowGraph& g, const InstrumentationTable& table);

/// C-like listing of the plan, e.g.
///
///   block 4:
///     P |= L & 00100000;
///     L &= ~00010001;
///     L |= 00110000;
///
/// Masks print the meaningful bits of each bin, most significant first;
/// bins are subscripted when there is more than one.
std::string render_pseudo_source(const InstrumentationPlan& plan, const ControlFlowGraph& g);

/// `mask` as its bins, most significant bin first, separated by spaces.
std::string render_mask(const Bitset& mask, unsigned w);

/// Path list, R/D/I table (paths by vertices) and bitmask table.
std::string render_tables(const ControlFlowGraph& g, const PathIndex& idx,
                          const InstrumentationTable& table);

}  // namespace ppcov
