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

#include "ppcov/instrument.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ppcov {

PathIndex PathIndex::from_ordered(std::vector<Path> paths) {
  PathIndex out;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].empty()) throw std::invalid_argument("empty path in path index");
    if (!out.lookup_.emplace(paths[i], i + 1).second) {
      throw std::invalid_argument("duplicate path in path index: " + path_to_string(paths[i]));
    }
  }
  out.paths_ = std::move(paths);
  return out;
}

const Path& PathIndex::path(std::size_t index) const {
  if (index == 0 || index > paths_.size()) {
    throw std::out_of_range("path index " + std::to_string(index) + " out of range");
  }
  return paths_[index - 1];
}

std::optional<std::size_t> PathIndex::index_of(const Path& path) const {
  auto it = lookup_.find(path);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

PathIndex index_paths(const PrimePathSet& paths) {
  if (paths.limit_exceeded) {
    throw std::invalid_argument("cannot index paths of an aborted enumeration");
  }
  auto sorted = paths.paths;
  std::sort(sorted.begin(), sorted.end());
  return PathIndex::from_ordered(std::move(sorted));
}

namespace {

VertexSets empty_sets(const ControlFlowGraph& g) {
  VertexSets out;
  for (auto v : g.vertices()) out[v];
  return out;
}

Bitset to_bitset(const IndexSet& set, std::size_t count) {
  Bitset b(count);
  for (auto n : set) b.set(n - 1);
  return b;
}

}  // namespace

VertexSets record_sets(const ControlFlowGraph& g, const PathIndex& idx) {
  auto out = empty_sets(g);
  for (std::size_t n = 1; n <= idx.size(); ++n) out[idx.path(n).back()].push_back(n);
  return out;
}

VertexSets init_sets(const ControlFlowGraph& g, const PathIndex& idx) {
  auto out = empty_sets(g);
  for (std::size_t n = 1; n <= idx.size(); ++n) out[idx.path(n).front()].push_back(n);
  return out;
}

DiscardSets discard_sets(const PathIndex& idx, const ControlFlowGraph& g) {
  DiscardSets out;
  for (const auto& e : g.edges()) out.per_edge[e];
  out.per_vertex = empty_sets(g);

  for (std::size_t n = 1; n <= idx.size(); ++n) {
    const auto& path = idx.path(n);
    // In-path successors of every vertex that has one. A cycle's first and
    // last vertex are two occurrences; only the first has a successor.
    std::map<VertexId, std::set<VertexId>> followers;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) followers[path[i]].insert(path[i + 1]);
    for (const auto& [p, next] : followers) {
      if (!g.has_vertex(p)) continue;
      for (auto v : g.successors(p)) {
        if (!next.contains(v)) out.per_edge[Edge{p, v}].push_back(n);
      }
    }
  }

  for (auto v : g.vertices()) {
    std::set<std::size_t> uni;
    bool equal = true;
    const IndexSet* first = nullptr;
    for (auto p : g.predecessors(v)) {
      const auto& set = out.per_edge[Edge{p, v}];
      uni.insert(set.begin(), set.end());
      if (first == nullptr) {
        first = &set;
      } else if (*first != set) {
        equal = false;
      }
    }
    out.per_vertex[v].assign(uni.begin(), uni.end());
    out.hoistable[v] = equal;
  }
  return out;
}

bool is_supported_word_size(unsigned w) { return w == 8 || w == 16 || w == 32 || w == 64; }

std::size_t InstrumentationTable::bin_count() const {
  return (path_count + word_size - 1) / word_size;
}

InstrumentationTable build_bitmasks(const VertexSets& record, const DiscardSets& discard,
                                    const VertexSets& init, const PathIndex& idx, unsigned w) {
  if (!is_supported_word_size(w)) {
    throw std::invalid_argument("unsupported word size " + std::to_string(w) +
                                " (expected 8, 16, 32 or 64)");
  }
  InstrumentationTable t;
  t.path_count = idx.size();
  t.word_size = w;
  for (const auto& [v, set] : record) t.record[v] = to_bitset(set, t.path_count);
  for (const auto& [v, set] : init) t.init[v] = to_bitset(set, t.path_count);
  for (const auto& [e, set] : discard.per_edge) t.discard_edge[e] = to_bitset(set, t.path_count);
  for (const auto& [v, set] : discard.per_vertex) {
    t.discard_vertex[v] = to_bitset(set, t.path_count);
  }
  t.hoistable = discard.hoistable;
  return t;
}

InstrumentationTable build_table(const ControlFlowGraph& g, const PathIndex& idx, unsigned w) {
  return build_bitmasks(record_sets(g, idx), discard_sets(idx, g), init_sets(g, idx), idx, w);
}

std::vector<BinMask> partition_bins(const Bitset& mask, unsigned w) {
  if (w == 0 || w > 64) throw std::invalid_argument("bin width must be in [1, 64]");
  std::vector<BinMask> out;
  const std::size_t bins = (mask.size() + w - 1) / w;
  for (std::size_t j = 0; j < bins; ++j) {
    if (auto value = mask.bin(j, w); value != 0) out.push_back(BinMask{j, value});
  }
  return out;
}

InstrumentationPlan build_plan(const ControlFlowGraph& g, const InstrumentationTable& table) {
  InstrumentationPlan plan;
  plan.function = g.name();
  plan.path_count = table.path_count;
  plan.word_size = table.word_size;
  plan.bin_count = table.bin_count();

  auto add = [&](std::vector<Step>& steps, StepKind kind, const Bitset& mask) {
    auto bins = partition_bins(mask, table.word_size);
    if (!bins.empty()) steps.push_back(Step{kind, std::move(bins)});
  };

  for (auto v : g.vertices()) {
    std::vector<Step> steps;
    add(steps, StepKind::record, table.record.at(v));
    if (table.hoistable.at(v)) {
      add(steps, StepKind::discard, table.discard_vertex.at(v));
    } else {
      for (auto p : g.predecessors(v)) {
        std::vector<Step> edge;
        add(edge, StepKind::discard, table.discard_edge.at(Edge{p, v}));
        if (!edge.empty()) plan.edge_steps[Edge{p, v}] = std::move(edge);
      }
    }
    add(steps, StepKind::initialize, table.init.at(v));
    if (!steps.empty()) plan.vertex_steps[v] = std::move(steps);
  }
  return plan;
}

namespace {

unsigned bin_digits(std::size_t path_count, unsigned w, std::size_t bin) {
  const std::size_t first = bin * w;
  return static_cast<unsigned>(std::min<std::size_t>(w, path_count - first));
}

void render_steps(std::ostream& out, const InstrumentationPlan& plan,
                  const std::vector<Step>& steps) {
  const bool subscript = plan.bin_count > 1;
  for (const auto& step : steps) {
    for (const auto& b : step.bins) {
      const auto sub = subscript ? "[" + std::to_string(b.bin) + "]" : std::string();
      const auto mask = to_binary(b.value, bin_digits(plan.path_count, plan.word_size, b.bin));
      out << "  ";
      switch (step.kind) {
        case StepKind::record:
          out << "P" << sub << " |= L" << sub << " & " << mask << ";\n";
          break;
        case StepKind::discard:
          out << "L" << sub << " &= ~" << mask << ";\n";
          break;
        case StepKind::initialize:
          out << "L" << sub << " |= " << mask << ";\n";
          break;
      }
    }
  }
}

}  // namespace

std::string render_pseudo_source(const InstrumentationPlan& plan, const ControlFlowGraph& g) {
  std::ostringstream out;
  out << "function " << plan.function << ": " << plan.path_count << " prime paths, "
      << plan.bin_count << (plan.bin_count == 1 ? " bin" : " bins") << " of "
      << plan.word_size << " bits\n";
  for (auto v : g.vertices()) {
    for (auto p : g.predecessors(v)) {
      auto it = plan.edge_steps.find(Edge{p, v});
      if (it == plan.edge_steps.end()) continue;
      out << "edge " << p << " -> " << v << ":\n";
      render_steps(out, plan, it->second);
    }
    auto it = plan.vertex_steps.find(v);
    if (it == plan.vertex_steps.end()) continue;
    out << "block " << v << ":\n";
    render_steps(out, plan, it->second);
  }
  return out.str();
}

std::string render_mask(const Bitset& mask, unsigned w) {
  const std::size_t bins = (mask.size() + w - 1) / w;
  if (bins == 0) return "-";
  std::string out;
  for (std::size_t j = bins; j-- > 0;) {
    if (!out.empty()) out += ' ';
    out += to_binary(mask.bin(j, w), bin_digits(mask.size(), w, j));
  }
  return out;
}

std::string render_tables(const ControlFlowGraph& g, const PathIndex& idx,
                          const InstrumentationTable& table) {
  std::ostringstream out;
  const auto verts = g.vertices();
  out << "function " << g.name() << ": " << idx.size() << " prime paths, word size "
      << table.word_size << ", " << table.bin_count()
      << (table.bin_count() == 1 ? " bin" : " bins") << "\n";

  out << "paths:\n";
  for (std::size_t n = 1; n <= idx.size(); ++n) {
    out << "  " << n << ": " << path_to_string(idx.path(n)) << "\n";
  }

  std::size_t cell = 3;
  for (auto v : verts) cell = std::max(cell, std::to_string(v).size() + 1);
  auto pad = [&](std::string s, std::size_t width) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
  };

  auto row_end = [&out](std::string row) {
    row.erase(row.find_last_not_of(' ') + 1);
    out << row << "\n";
  };
  out << "table:\n";
  std::string head = "  " + pad("path", 6);
  for (auto v : verts) head += pad(std::to_string(v), cell);
  row_end(head);
  for (std::size_t n = 1; n <= idx.size(); ++n) {
    std::string row = "  " + pad(std::to_string(n), 6);
    for (auto v : verts) {
      std::string c;
      if (table.record.at(v).test(n - 1)) c += 'R';
      if (table.discard_vertex.at(v).test(n - 1)) c += 'D';
      if (table.init.at(v).test(n - 1)) c += 'I';
      row += pad(c.empty() ? "." : c, cell);
    }
    row_end(row);
  }

  std::size_t width = 3;
  for (auto v : verts) width = std::max(width, render_mask(table.record.at(v), table.word_size).size());
  std::size_t vwidth = 1;
  for (auto v : verts) vwidth = std::max(vwidth, std::to_string(v).size());
  out << "masks:\n  " << pad("v", vwidth) << "  " << pad("B_R", width) << "  "
      << pad("B_D", width) << "  B_I\n";
  for (auto v : verts) {
    out << "  " << pad(std::to_string(v), vwidth) << "  "
        << pad(render_mask(table.record.at(v), table.word_size), width) << "  "
        << pad(render_mask(table.discard_vertex.at(v), table.word_size), width) << "  "
        << render_mask(table.init.at(v), table.word_size) << "\n";
  }

  bool any_edge = false;
  for (auto v : verts) {
    if (table.hoistable.at(v)) continue;
    if (!any_edge) out << "edge discards:\n";
    any_edge = true;
    for (auto p : g.predecessors(v)) {
      out << "  " << p << " -> " << v << "  "
          << render_mask(table.discard_edge.at(Edge{p, v}), table.word_size) << "\n";
    }
  }
  return out.str();
}

}  // namespace ppcov
