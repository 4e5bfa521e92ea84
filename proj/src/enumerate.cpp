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

#include "ppcov/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

#include "ppcov/suffix_tree.hpp"

namespace ppcov {
namespace {

// Depth-first extension over dense vertex indices.
class CandidateWalker {
 public:
  CandidateWalker(const ControlFlowGraph& g, const CandidateSink& sink)
      : verts_(g.vertices()), sink_(sink) {
    std::map<VertexId, std::size_t> dense;
    for (std::size_t i = 0; i < verts_.size(); ++i) dense[verts_[i]] = i;
    succs_.resize(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      for (auto s : g.successors(verts_[i])) succs_[i].push_back(dense[s]);
    }
    on_path_.assign(verts_.size(), false);
  }

  void run() {
    for (std::size_t v = 0; v < verts_.size() && !stopped_; ++v) {
      path_.assign(1, verts_[v]);
      on_path_[v] = true;
      extend(v, v);
      on_path_[v] = false;
    }
  }

 private:
  void emit() {
    if (!stopped_ && !sink_(path_)) stopped_ = true;
  }

  void extend(std::size_t first, std::size_t last) {
    bool extended = false;
    for (auto s : succs_[last]) {
      if (stopped_) return;
      if (s == first) {
        path_.push_back(verts_[s]);
        emit();
        path_.pop_back();
        extended = true;
      } else if (!on_path_[s]) {
        path_.push_back(verts_[s]);
        on_path_[s] = true;
        extend(first, s);
        on_path_[s] = false;
        path_.pop_back();
        extended = true;
      }
    }
    if (!extended) emit();
  }

  std::vector<VertexId> verts_;
  std::vector<std::vector<std::size_t>> succs_;
  std::vector<bool> on_path_;
  Path path_;
  const CandidateSink& sink_;
  bool stopped_ = false;
};

}  // namespace

void extend_candidates(const ControlFlowGraph& g, const CandidateSink& sink) {
  CandidateWalker(g, sink).run();
}

std::vector<Path> extend_candidates(const ControlFlowGraph& g) {
  std::vector<Path> out;
  extend_candidates(g, [&](std::span<const VertexId> p) {
    out.emplace_back(p.begin(), p.end());
    return true;
  });
  return out;
}

PrimePathSet prime_paths(const ControlFlowGraph& g, std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("path limit must be at least 1");
  PrimePathSet out;
  out.limit = limit;
  SuffixTree tree;
  extend_candidates(g, [&](std::span<const VertexId> p) {
    ++out.candidate_count;
    out.longest_candidate = std::max(out.longest_candidate, p.size());
    tree.insert_with_suffixes(p);
    if (tree.insert_counter() > limit) {
      out.limit_exceeded = true;
      return false;
    }
    return true;
  });
  out.insertions_counted = tree.insert_counter();
  out.tree_work = tree.work_counter();
  if (!out.limit_exceeded) out.paths = tree.enumerate_final();
  return out;
}

}  // namespace ppcov
