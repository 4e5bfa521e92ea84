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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppcov/bitset.hpp"
#include "ppcov/cfg.hpp"
#include "ppcov/enumerate.hpp"
#include "ppcov/instrument.hpp"

namespace ppcov {

class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Persistent coverage of one function: bit n-1 of `covered` is prime path n.
struct CoverageState {
  std::string function;
  std::uint64_t checksum = 0;
  std::size_t path_count = 0;
  /// Enumeration hit the path limit; there are no paths to cover.
  bool aborted = false;
  Bitset covered;
  std::uint64_t runs = 0;

  friend bool operator==(const CoverageState&, const CoverageState&) = default;
};

/// One recorded execution of a function.
struct Trace {
  std::string function;
  Path vertices;
  /// Source line in the trace file, 0 when not read from a file.
  std::size_t line = 0;
};

/// Empty state bound to `g`'s checksum.
CoverageState new_state(const ControlFlowGraph& g, const PrimePathSet& paths);

/// Throws CoverageError unless the trace starts at the entry and only takes
/// edges of `g`. An empty trace is accepted.
void validate_trace(const ControlFlowGraph& g, const Trace& trace);

/// Replays one run through the elided plan: per-edge discards while taking
/// an edge, then record, discard, initialize at the target block. The first
/// block only records (a no-op) and initializes. A single-vertex prime path
/// is covered by visiting its vertex. An empty trace changes nothing.
///
/// Throws CoverageError on a checksum or path-count mismatch or an invalid
/// trace.
CoverageState replay_run(CoverageState state, const ControlFlowGraph& g, const PathIndex& idx,
                         const InstrumentationPlan& plan, const Trace& trace);

/// Same semantics, full-width bitsets straight from the table and always the
/// per-edge discard sets. Reference for the elided plan.
CoverageState replay_run(CoverageState state, const ControlFlowGraph& g, const PathIndex& idx,
                         const InstrumentationTable& table, const Trace& trace);

/// Union of two states of the same function; runs are summed. Throws
/// CoverageError naming the first mismatching identity field.
CoverageState merge(const CoverageState& a, const CoverageState& b);

struct CoverageSummary {
  std::size_t covered = 0;
  std::size_t total = 0;
  bool aborted = false;

  [[nodiscard]] double ratio() const;
  /// "5/8", or "aborted".
  [[nodiscard]] std::string to_string() const;
};

CoverageSummary coverage_summary(const CoverageState& state);

/// Counts file:
///
///   ppcov-counts 1
///   function <name> <checksum-hex16> <path-count> <aborted:0|1> <runs>
///   <ceil(path-count / 64) lines of 16 hex digits, least significant first>
///
/// Records are written sorted by function name.
void write_counts(std::ostream& out, std::span<const CoverageState> states);
std::vector<CoverageState> read_counts(std::istream& in);

/// Writes to a temporary file beside `path` and renames it into place.
void save_counts(const std::filesystem::path& path, std::span<const CoverageState> states);
std::vector<CoverageState> load_counts(const std::filesystem::path& path);

/// Trace file: one run per line, `<function>: v1 v2 ...`; blank lines and
/// `#` comments are skipped.
std::vector<Trace> parse_traces(std::string_view text);

}  // namespace ppcov
