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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppcov {

using VertexId = std::uint32_t;

/// A vertex sequence: a path, cycle or execution trace through a CFG.
using Path = std::vector<VertexId>;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct SourceLine {
  std::uint32_t number = 0;
  std::string text;

  friend bool operator==(const SourceLine&, const SourceLine&) = default;
};

/// Thrown by the CFG text parser. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Directed control flow graph of one function. Vertex and successor lists
/// are kept sorted by numeric ID. The graph is filled in by the parser (or a
/// test) and treated as immutable afterwards.
class ControlFlowGraph {
 public:
  ControlFlowGraph() = default;
  explicit ControlFlowGraph(std::string name) : name_(std::move(name)) {}

  // Construction. These throw std::invalid_argument on duplicates or unknown
  // vertices; the parser turns that into a ParseError with a line number.
  void add_vertex(VertexId v);
  void add_edge(VertexId src, VertexId dst, std::optional<bool> label = std::nullopt);
  void set_entry(VertexId v);
  void add_line(VertexId v, SourceLine line);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::optional<VertexId> entry() const { return entry_; }

  [[nodiscard]] std::size_t vertex_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
  [[nodiscard]] bool has_vertex(VertexId v) const { return nodes_.contains(v); }
  [[nodiscard]] bool has_edge(VertexId src, VertexId dst) const;

  /// Sorted vertex IDs.
  [[nodiscard]] std::vector<VertexId> vertices() const;
  /// Sorted (src, dst) pairs.
  [[nodiscard]] std::vector<Edge> edges() const;
  /// Vertices without outgoing edges, sorted.
  [[nodiscard]] std::vector<VertexId> exits() const;

  [[nodiscard]] std::span<const VertexId> successors(VertexId v) const;
  [[nodiscard]] std::span<const VertexId> predecessors(VertexId v) const;

  [[nodiscard]] std::optional<bool> edge_label(VertexId src, VertexId dst) const;
  [[nodiscard]] std::span<const SourceLine> lines(VertexId v) const;

 private:
  struct Node {
    std::vector<VertexId> succs;
    std::vector<VertexId> preds;
    std::vector<SourceLine> lines;
  };

  const Node& node(VertexId v) const;

  std::string name_;
  std::optional<VertexId> entry_;
  std::map<VertexId, Node> nodes_;
  std::map<Edge, bool> labels_;
  std::size_t edge_count_ = 0;
};

/// Parses one graph in the line-oriented CFG text format:
///
///   graph <name>
///   vertex <id>
///   line <n> <text...>        attaches a source line to the preceding vertex
///   edge <src> <dst> [true|false]
///   entry <id>
///
/// `#` starts a comment, except inside the text of a `line` directive.
ControlFlowGraph parse_cfg_text(std::string_view text);

/// Inverse of parse_cfg_text, in canonical (sorted) order.
std::string to_cfg_text(const ControlFlowGraph& g);

struct ValidationResult {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks the well-formedness conditions: entry present without incoming
/// edges, every vertex reachable from entry, some exit reachable from every
/// vertex. Violations are returned, never thrown.
ValidationResult validate(const ControlFlowGraph& g);

struct SccPartition {
  /// Components in topological order of the condensation; members sorted.
  std::vector<std::vector<VertexId>> components;
  std::map<VertexId, std::size_t> component_of;
  /// Deduplicated, sorted edges between component indices.
  std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;
};

/// Maximal strongly connected components (Tarjan).
SccPartition scc_partition(const ControlFlowGraph& g);

struct ComponentDiagnostics {
  std::size_t component_count = 0;
  std::size_t largest_component = 0;
  std::size_t singleton_components = 0;
  /// The component graph is the CFG itself: no cycles at all.
  bool condensation_isomorphic = false;
};

ComponentDiagnostics component_diagnostics(const ControlFlowGraph& g);

/// FNV-1a/64 over the canonical serialization: the name, then each sorted
/// vertex ID, then each sorted edge as "src dst", one item per line. Line
/// metadata and edge labels are not part of it.
std::uint64_t canonical_checksum(const ControlFlowGraph& g);

/// Whether `path` follows edges of `g` (a single vertex must exist in `g`).
bool is_walk(const ControlFlowGraph& g, std::span<const VertexId> path);

std::string path_to_string(std::span<const VertexId> path, std::string_view sep = " ");

}  // namespace ppcov
