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

#include "ppcov/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ppcov {

std::vector<ReportLine> path_directions(const ControlFlowGraph& g, const Path& path) {
  if (!is_walk(g, path)) {
    throw std::invalid_argument("not a path of " + g.name() + ": " + path_to_string(path));
  }
  std::vector<ReportLine> out;
  out.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    ReportLine line;
    line.vertex = path[i];
    if (i + 1 < path.size()) line.decision = g.edge_label(path[i], path[i + 1]);
    auto src = g.lines(path[i]);
    line.source.assign(src.begin(), src.end());
    out.push_back(std::move(line));
  }
  return out;
}

namespace {

std::string decision_tag(const std::optional<bool>& d) {
  if (!d) return {};
  return *d ? "(true)" : "(false)";
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

void check_sizes(const PathIndex& idx, const CoverageState& state) {
  if (idx.size() != state.path_count) {
    throw std::invalid_argument("path count mismatch for " + state.function);
  }
}

}  // namespace

std::string render_directions(const std::vector<ReportLine>& lines) {
  std::size_t width = 2;
  for (const auto& block : lines) {
    for (const auto& src : block.source) width = std::max(width, std::to_string(src.number).size());
  }
  std::string out;
  for (const auto& block : lines) {
    const auto head = "BB " + std::to_string(block.vertex) + ":";
    if (block.source.empty()) {
      out += head + decision_tag(block.decision) + "\n";
      continue;
    }
    // The branch sits at the end of the block, so the decision goes on its
    // last source line.
    for (std::size_t i = 0; i < block.source.size(); ++i) {
      const bool last = i + 1 == block.source.size();
      const auto tag = last ? decision_tag(block.decision) : std::string();
      out += head + pad_right(tag, 8) +
             pad_left(std::to_string(block.source[i].number), width) + ":" + block.source[i].text +
             "\n";
    }
  }
  return out;
}

std::string text_report(const ControlFlowGraph& g, const PathIndex& idx,
                        const CoverageState& state) {
  std::ostringstream out;
  out << "function " << g.name() << ": ";
  if (state.aborted) {
    out << "aborted: path limit exceeded\n";
    return out.str();
  }
  check_sizes(idx, state);
  out << "covered " << coverage_summary(state).to_string() << "\n";
  for (std::size_t n = 1; n <= idx.size(); ++n) {
    if (state.covered.test(n - 1)) continue;
    out << "path " << n << " not covered:\n";
    out << render_directions(path_directions(g, idx.path(n)));
  }
  return out.str();
}

std::string machine_report(const ControlFlowGraph& g, const PathIndex& idx,
                           const CoverageState& state) {
  std::ostringstream out;
  const auto& f = g.name();
  if (state.aborted) {
    out << f << ":summary:aborted\n";
    return out.str();
  }
  check_sizes(idx, state);
  out << f << ":summary:" << coverage_summary(state).to_string() << "\n";
  for (std::size_t n = 1; n <= idx.size(); ++n) {
    out << f << ":path:" << n << ":" << (state.covered.test(n - 1) ? "covered" : "uncovered")
        << ":" << path_to_string(idx.path(n), ",") << "\n";
  }
  return out.str();
}

}  // namespace ppcov
