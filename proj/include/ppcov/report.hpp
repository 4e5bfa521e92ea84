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

#include <optional>
#include <string>
#include <vector>

#include "ppcov/cfg.hpp"
#include "ppcov/coverage.hpp"
#include "ppcov/instrument.hpp"

namespace ppcov {

/// One block of an execution direction. `decision` is the label of the edge
/// taken out of this block towards the next one on the path.
struct ReportLine {
  VertexId vertex = 0;
  std::optional<bool> decision;
  std::vector<SourceLine> source;
};

/// The blocks of `path` in the order they must be executed. Throws
/// std::invalid_argument if `path` does not follow edges of `g`.
std::vector<ReportLine> path_directions(const ControlFlowGraph& g, const Path& path);

/// Directions rendered gcov-style, e.g. "BB 3:(false) 12:    if (val != 0)".
/// Line numbers are right-aligned to the widest one, at least two columns.
std::string render_directions(const std::vector<ReportLine>& lines);

/// Human-readable report: a `function <name>: covered X/N` header, then a
/// `path <n> not covered:` section with directions for every uncovered path.
std::string text_report(const ControlFlowGraph& g, const PathIndex& idx,
                        const CoverageState& state);

/// `<function>:summary:<covered>/<total>` followed by one
/// `<function>:path:<n>:<covered|uncovered>:<v1,v2,...>` line per path.
/// An aborted function is the single line `<function>:summary:aborted`.
std::string machine_report(const ControlFlowGraph& g, const PathIndex& idx,
                           const CoverageState& state);

}  // namespace ppcov
