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

#include "ppcov/cfg.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ppcov {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

void ControlFlowGraph::add_vertex(VertexId v) {
  if (!nodes_.try_emplace(v).second) {
    throw std::invalid_argument("duplicate vertex " + std::to_string(v));
  }
}

void ControlFlowGraph::add_edge(VertexId src, VertexId dst, std::optional<bool> label) {
  auto s = nodes_.find(src);
  if (s == nodes_.end()) {
    throw std::invalid_argument("edge references undeclared vertex " + std::to_string(src));
  }
  auto d = nodes_.find(dst);
  if (d == nodes_.end()) {
    throw std::invalid_argument("edge references undeclared vertex " + std::to_string(dst));
  }
  auto& succs = s->second.succs;
  auto at = std::lower_bound(succs.begin(), succs.end(), dst);
  if (at != succs.end() && *at == dst) {
    throw std::invalid_argument("duplicate edge " + std::to_string(src) + " " +
                                std::to_string(dst));
  }
  succs.insert(at, dst);
  auto& preds = d->second.preds;
  preds.insert(std::lower_bound(preds.begin(), preds.end(), src), src);
  if (label) labels_[Edge{src, dst}] = *label;
  ++edge_count_;
}

void ControlFlowGraph::set_entry(VertexId v) {
  if (!has_vertex(v)) {
    throw std::invalid_argument("entry references undeclared vertex " + std::to_string(v));
  }
  entry_ = v;
}

void ControlFlowGraph::add_line(VertexId v, SourceLine line) {
  auto it = nodes_.find(v);
  if (it == nodes_.end()) {
    throw std::invalid_argument("line attached to undeclared vertex " + std::to_string(v));
  }
  it->second.lines.push_back(std::move(line));
}

bool ControlFlowGraph::has_edge(VertexId src, VertexId dst) const {
  auto it = nodes_.find(src);
  if (it == nodes_.end()) return false;
  return std::binary_search(it->second.succs.begin(), it->second.succs.end(), dst);
}

std::vector<VertexId> ControlFlowGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(nodes_.size());
  for (const auto& [v, n] : nodes_) out.push_back(v);
  return out;
}

std::vector<Edge> ControlFlowGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& [v, n] : nodes_) {
    for (auto s : n.succs) out.push_back(Edge{v, s});
  }
  return out;
}

std::vector<VertexId> ControlFlowGraph::exits() const {
  std::vector<VertexId> out;
  for (const auto& [v, n] : nodes_) {
    if (n.succs.empty()) out.push_back(v);
  }
  return out;
}

const ControlFlowGraph::Node& ControlFlowGraph::node(VertexId v) const {
  auto it = nodes_.find(v);
  if (it == nodes_.end()) throw std::out_of_range("no vertex " + std::to_string(v));
  return it->second;
}

std::span<const VertexId> ControlFlowGraph::successors(VertexId v) const {
  return node(v).succs;
}

std::span<const VertexId> ControlFlowGraph::predecessors(VertexId v) const {
  return node(v).preds;
}

std::optional<bool> ControlFlowGraph::edge_label(VertexId src, VertexId dst) const {
  auto it = labels_.find(Edge{src, dst});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::span<const SourceLine> ControlFlowGraph::lines(VertexId v) const { return node(v).lines; }

// ---------------------------------------------------------------------------
// Text format

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Splits off the first whitespace-delimited token.
std::string_view next_token(std::string_view& s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  std::size_t n = 0;
  while (n < s.size() && !is_space(s[n])) ++n;
  auto tok = s.substr(0, n);
  s.remove_prefix(n);
  return tok;
}

std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto tok = next_token(s); !tok.empty(); tok = next_token(s)) out.push_back(tok);
  return out;
}

template <typename Int>
Int parse_uint(std::string_view tok, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

ControlFlowGraph parse_cfg_text(std::string_view text) {
  std::optional<ControlFlowGraph> g;
  VertexId last_vertex = 0;
  bool after_vertex = false;
  bool have_entry = false;
  std::size_t line_no = 0;

  for (std::size_t start = 0; start < text.size();) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::string_view rest = raw;
    if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
    auto directive = next_token(rest);
    if (directive.empty() || directive.front() == '#') continue;

    if (directive == "line") {
      if (!g) throw ParseError(line_no, "expected 'graph' as the first directive");
      if (!after_vertex) {
        throw ParseError(line_no, "'line' must directly follow a 'vertex' or 'line' directive");
      }
      auto num = next_token(rest);
      if (num.empty()) throw ParseError(line_no, "'line' needs a line number");
      auto number = parse_uint<std::uint32_t>(num, line_no, "line number");
      // One separator after the number; the rest is verbatim source text.
      if (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
      g->add_line(last_vertex, SourceLine{number, std::string(rest)});
      continue;
    }

    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    auto args = tokenize(rest);
    after_vertex = false;

    if (directive == "graph") {
      if (g) throw ParseError(line_no, "duplicate 'graph' directive");
      if (args.size() != 1) throw ParseError(line_no, "'graph' takes exactly one name");
      g.emplace(std::string(args[0]));
    } else if (!g) {
      throw ParseError(line_no, "expected 'graph' as the first directive");
    } else if (directive == "vertex") {
      if (args.size() != 1) throw ParseError(line_no, "'vertex' takes exactly one id");
      auto v = parse_uint<VertexId>(args[0], line_no, "vertex id");
      if (g->has_vertex(v)) throw ParseError(line_no, "duplicate vertex " + std::to_string(v));
      g->add_vertex(v);
      last_vertex = v;
      after_vertex = true;
    } else if (directive == "edge") {
      if (args.size() != 2 && args.size() != 3) {
        throw ParseError(line_no, "'edge' takes <src> <dst> [true|false]");
      }
      auto src = parse_uint<VertexId>(args[0], line_no, "vertex id");
      auto dst = parse_uint<VertexId>(args[1], line_no, "vertex id");
      std::optional<bool> label;
      if (args.size() == 3) {
        if (args[2] == "true") {
          label = true;
        } else if (args[2] == "false") {
          label = false;
        } else {
          throw ParseError(line_no, "edge label must be 'true' or 'false', got '" +
                                        std::string(args[2]) + "'");
        }
      }
      for (auto v : {src, dst}) {
        if (!g->has_vertex(v)) {
          throw ParseError(line_no, "edge references undeclared vertex " + std::to_string(v));
        }
      }
      if (g->has_edge(src, dst)) {
        throw ParseError(line_no,
                         "duplicate edge " + std::to_string(src) + " " + std::to_string(dst));
      }
      g->add_edge(src, dst, label);
    } else if (directive == "entry") {
      if (args.size() != 1) throw ParseError(line_no, "'entry' takes exactly one id");
      if (have_entry) throw ParseError(line_no, "duplicate 'entry' directive");
      auto v = parse_uint<VertexId>(args[0], line_no, "vertex id");
      if (!g->has_vertex(v)) {
        throw ParseError(line_no, "entry references undeclared vertex " + std::to_string(v));
      }
      g->set_entry(v);
      have_entry = true;
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(directive) + "'");
    }
  }

  if (!g) throw ParseError(line_no, "missing 'graph' directive");
  if (!have_entry) throw ParseError(line_no, "missing 'entry' directive");
  return std::move(*g);
}

std::string to_cfg_text(const ControlFlowGraph& g) {
  std::ostringstream out;
  out << "graph " << g.name() << '\n';
  for (auto v : g.vertices()) {
    out << "vertex " << v << '\n';
    for (const auto& line : g.lines(v)) out << "line " << line.number << ' ' << line.text << '\n';
  }
  for (const auto& e : g.edges()) {
    out << "edge " << e.src << ' ' << e.dst;
    if (auto label = g.edge_label(e.src, e.dst)) out << (*label ? " true" : " false");
    out << '\n';
  }
  if (auto entry = g.entry()) out << "entry " << *entry << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Analysis

namespace {

std::map<VertexId, bool> reachable(const ControlFlowGraph& g, std::span<const VertexId> roots,
                                   bool forward) {
  std::map<VertexId, bool> seen;
  std::vector<VertexId> stack(roots.begin(), roots.end());
  for (auto r : roots) seen[r] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : forward ? g.successors(v) : g.predecessors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

ValidationResult validate(const ControlFlowGraph& g) {
  ValidationResult result;
  auto& out = result.violations;
  if (g.vertex_count() == 0) {
    out.emplace_back("graph has no vertices");
    return result;
  }
  if (!g.entry()) {
    out.emplace_back("graph has no entry vertex");
  } else {
    const auto entry = *g.entry();
    for (auto p : g.predecessors(entry)) {
      out.push_back("entry has incoming edge " + std::to_string(p) + " -> " +
                    std::to_string(entry));
    }
    const VertexId roots[] = {entry};
    auto fwd = reachable(g, roots, true);
    for (auto v : g.vertices()) {
      if (!fwd[v]) out.push_back("vertex " + std::to_string(v) + " is unreachable from entry");
    }
  }
  auto exits = g.exits();
  if (exits.empty()) {
    out.emplace_back("graph has no exit vertex");
  } else {
    auto bwd = reachable(g, exits, false);
    for (auto v : g.vertices()) {
      if (!bwd[v]) out.push_back("no exit is reachable from vertex " + std::to_string(v));
    }
  }
  return result;
}

SccPartition scc_partition(const ControlFlowGraph& g) {
  const auto verts = g.vertices();
  const std::size_t n = verts.size();
  std::map<VertexId, std::size_t> dense;
  for (std::size_t i = 0; i < n; ++i) dense[verts[i]] = i;

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> found;  // reverse topological
  std::size_t counter = 0;

  // Iterative Tarjan: frames of (vertex, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      auto succs = g.successors(verts[v]);
      if (pos < succs.size()) {
        auto w = dense[succs[pos++]];
        if (order[w] == kUnvisited) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        auto parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == order[done]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != done);
        found.push_back(std::move(comp));
      }
    }
  }

  SccPartition out;
  for (auto it = found.rbegin(); it != found.rend(); ++it) {
    std::vector<VertexId> members;
    for (auto d : *it) members.push_back(verts[d]);
    std::sort(members.begin(), members.end());
    for (auto v : members) out.component_of[v] = out.components.size();
    out.components.push_back(std::move(members));
  }
  for (const auto& e : g.edges()) {
    auto a = out.component_of[e.src];
    auto b = out.component_of[e.dst];
    if (a != b) out.condensation_edges.emplace_back(a, b);
  }
  std::sort(out.condensation_edges.begin(), out.condensation_edges.end());
  out.condensation_edges.erase(
      std::unique(out.condensation_edges.begin(), out.condensation_edges.end()),
      out.condensation_edges.end());
  return out;
}

ComponentDiagnostics component_diagnostics(const ControlFlowGraph& g) {
  auto part = scc_partition(g);
  ComponentDiagnostics d;
  d.component_count = part.components.size();
  for (const auto& c : part.components) {
    d.largest_component = std::max(d.largest_component, c.size());
    if (c.size() == 1) ++d.singleton_components;
  }
  bool self_loop = false;
  for (const auto& e : g.edges()) self_loop = self_loop || e.src == e.dst;
  // A self-loop is collapsed by the condensation, so it breaks isomorphism
  // even though its component is a singleton.
  d.condensation_isomorphic = d.singleton_components == d.component_count && !self_loop;
  return d;
}

std::uint64_t canonical_checksum(const ControlFlowGraph& g) {
  std::string canon = g.name() + '\n';
  for (auto v : g.vertices()) canon += std::to_string(v) + '\n';
  for (const auto& e : g.edges()) {
    canon += std::to_string(e.src) + ' ' + std::to_string(e.dst) + '\n';
  }
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

bool is_walk(const ControlFlowGraph& g, std::span<const VertexId> path) {
  if (path.empty()) return false;
  if (!g.has_vertex(path.front())) return false;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!g.has_edge(path[i - 1], path[i])) return false;
  }
  return true;
}

std::string path_to_string(std::span<const VertexId> path, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(path[i]);
  }
  return out;
}

}  // namespace ppcov
