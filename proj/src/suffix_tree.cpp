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

#include "ppcov/suffix_tree.hpp"

#include <stdexcept>

namespace ppcov {

SuffixTree::SuffixTree() { nodes_.emplace_back(); }

SuffixTree::Placement SuffixTree::place(std::span<const VertexId> path) {
  NodeId at = 0;
  std::size_t i = 0;
  for (; i < path.size(); ++i) {
    auto& children = nodes_[at].children;
    auto it = children.find(path[i]);
    if (it == children.end()) break;
    at = it->second;
    ++work_counter_;
  }

  Placement out;
  if (i == path.size()) {
    out.terminal = at;
    return out;
  }

  // Growing past a final node means its path is no longer maximal.
  if (nodes_[at].final) {
    nodes_[at].final = false;
    out.was_extension = true;
  }
  for (; i < path.size(); ++i) {
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{path[i], false, {}});
    nodes_[at].children.emplace(path[i], id);
    at = id;
    ++work_counter_;
  }
  out.terminal = at;
  out.created_node = true;
  return out;
}

SuffixTree::InsertOutcome SuffixTree::insert(std::span<const VertexId> path) {
  if (path.empty()) throw std::invalid_argument("cannot insert an empty path");
  auto placed = place(path);
  if (placed.created_node) {
    nodes_[placed.terminal].final = true;
    ++insert_counter_;
  }
  return InsertOutcome{placed.created_node, placed.was_extension};
}

bool SuffixTree::insert_with_suffixes(std::span<const VertexId> path) {
  if (path.empty()) throw std::invalid_argument("cannot insert an empty path");
  if (!insert(path).created_node) return false;
  for (std::size_t skip = 1; skip < path.size(); ++skip) {
    auto placed = place(path.subspan(skip));
    // A proper suffix of the path just inserted can never be prime, even if
    // it was inserted (and marked) earlier on its own.
    nodes_[placed.terminal].final = false;
    if (!placed.created_node) break;
  }
  return true;
}

bool SuffixTree::contains_as_subpath(std::span<const VertexId> path) const {
  NodeId at = 0;
  for (auto v : path) {
    const auto& children = nodes_[at].children;
    auto it = children.find(v);
    if (it == children.end()) return false;
    at = it->second;
  }
  return true;
}

std::vector<Path> SuffixTree::enumerate_final() const {
  std::vector<Path> out;
  Path prefix;
  // Frames of (node, iterator to the next child to visit).
  std::vector<std::pair<NodeId, std::map<VertexId, NodeId>::const_iterator>> frames;
  frames.emplace_back(0, nodes_[0].children.begin());
  while (!frames.empty()) {
    auto& [node, next] = frames.back();
    if (next == nodes_[node].children.end()) {
      frames.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    const NodeId child = (next++)->second;
    prefix.push_back(nodes_[child].label);
    if (nodes_[child].final) out.push_back(prefix);
    frames.emplace_back(child, nodes_[child].children.begin());
  }
  return out;
}

std::string SuffixTree::dump() const {
  std::string out = "root\n";
  std::vector<std::pair<NodeId, std::size_t>> stack;
  const auto& top = nodes_[0].children;
  for (auto it = top.rbegin(); it != top.rend(); ++it) stack.emplace_back(it->second, 1);
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    out.append(2 * depth, ' ');
    out += std::to_string(nodes_[node].label);
    if (nodes_[node].final) out += " *";
    out += '\n';
    const auto& children = nodes_[node].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      stack.emplace_back(it->second, depth + 1);
    }
  }
  return out;
}

}  // namespace ppcov
