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
#include <span>
#include <string>
#include <vector>

#include "ppcov/cfg.hpp"

namespace ppcov {

/// Generalized suffix tree over vertex IDs, used to prune candidate paths
/// down to the prime paths.
///
/// The tree is an uncompressed trie: each node carries one vertex ID and its
/// children are ordered by ID, so a depth-first walk visits root-paths in
/// lexicographic order. A node is *final* when its root-path is an inserted
/// path that no other inserted path contains. Sequences are stored directly;
/// there is no backing string.
///
/// Finals are exact when the inserted sequences are simple paths or simple
/// cycles (at most one repeated vertex, at the ends), which is all the
/// enumerator ever inserts.
class SuffixTree {
 public:
  struct InsertOutcome {
    /// At least one node was created.
    bool created_node = false;
    /// The insertion grew past a final leaf and cleared its mark.
    bool was_extension = false;
  };

  SuffixTree();

  /// Inserts `path` from the root and marks its terminal final when a node
  /// was created. A path that is exhausted on existing nodes changes
  /// nothing. Throws std::invalid_argument on an empty path.
  InsertOutcome insert(std::span<const VertexId> path);

  /// Inserts `path` (terminal final) and then its proper suffixes (never
  /// final), stopping at the first suffix that creates no node: everything
  /// shorter is already in the tree. Returns whether `path` itself was
  /// recorded as a new final. Throws std::invalid_argument on empty input.
  bool insert_with_suffixes(std::span<const VertexId> path);

  /// True iff `path` is a contiguous subsequence of an inserted path.
  /// Does not modify the tree.
  [[nodiscard]] bool contains_as_subpath(std::span<const VertexId> path) const;

  /// Root-paths of all final nodes, in lexicographic order.
  [[nodiscard]] std::vector<Path> enumerate_final() const;

  /// Full-path insertions that created at least one node.
  [[nodiscard]] std::size_t insert_counter() const { return insert_counter_; }
  /// Node visits and creations across all insertions.
  [[nodiscard]] std::size_t work_counter() const { return work_counter_; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }

  /// Indented dump, one node per line, `*` after final nodes:
  ///
  ///   root
  ///     1
  ///       4
  ///         5 *
  [[nodiscard]] std::string dump() const;

 private:
  using NodeId = std::uint32_t;

  struct Node {
    VertexId label = 0;
    bool final = false;
    std::map<VertexId, NodeId> children;
  };

  struct Placement {
    NodeId terminal = 0;
    bool created_node = false;
    bool was_extension = false;
  };

  Placement place(std::span<const VertexId> path);

  std::vector<Node> nodes_;
  std::size_t insert_counter_ = 0;
  std::size_t work_counter_ = 0;
};

}  // namespace ppcov
