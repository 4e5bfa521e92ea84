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

#include "ppcov/coverage.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace ppcov {

CoverageState new_state(const ControlFlowGraph& g, const PrimePathSet& paths) {
  CoverageState s;
  s.function = g.name();
  s.checksum = canonical_checksum(g);
  s.aborted = paths.limit_exceeded;
  s.path_count = s.aborted ? 0 : paths.paths.size();
  s.covered = Bitset(s.path_count);
  return s;
}

void validate_trace(const ControlFlowGraph& g, const Trace& trace) {
  const auto& v = trace.vertices;
  if (v.empty()) return;
  auto where = [&] {
    return trace.line ? "trace at line " + std::to_string(trace.line) : std::string("trace");
  };
  if (!g.entry() || v.front() != *g.entry()) {
    throw CoverageError(where() + ": starts at " + std::to_string(v.front()) +
                        ", not at the entry of " + g.name());
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!g.has_edge(v[i - 1], v[i])) {
      throw CoverageError(where() + ": " + std::to_string(v[i - 1]) + " -> " +
                          std::to_string(v[i]) + " is not an edge of " + g.name());
    }
  }
}

namespace {

void check_binding(const CoverageState& state, const ControlFlowGraph& g, const PathIndex& idx,
                   const Trace& trace) {
  if (state.function != g.name()) {
    throw CoverageError("function name mismatch: state for " + state.function + ", graph " +
                        g.name());
  }
  if (!trace.vertices.empty() && trace.function != g.name()) {
    throw CoverageError("function name mismatch: trace for " + trace.function + ", graph " +
                        g.name());
  }
  if (state.checksum != canonical_checksum(g)) throw CoverageError("cfg checksum mismatch");
  if (!state.aborted && state.path_count != idx.size()) {
    throw CoverageError("path count mismatch");
  }
  validate_trace(g, trace);
}

// Single-vertex prime paths cannot be recorded by the record-then-initialize
// order, so they are credited on any visit of their vertex.
void credit_single_vertex_paths(CoverageState& state, const PathIndex& idx, const Path& trace) {
  std::set<VertexId> visited(trace.begin(), trace.end());
  for (std::size_t n = 1; n <= idx.size(); ++n) {
    const auto& p = idx.path(n);
    if (p.size() == 1 && visited.contains(p.front())) state.covered.set(n - 1);
  }
}

class BinnedReplay {
 public:
  explicit BinnedReplay(const InstrumentationPlan& plan)
      : plan_(plan), live_(plan.bin_count, 0), recorded_(plan.bin_count, 0) {}

  void enter(VertexId v) { apply(plan_.vertex_steps, v); }

  void take(VertexId from, VertexId to) {
    apply(plan_.edge_steps, Edge{from, to});
    apply(plan_.vertex_steps, to);
  }

  void flush(Bitset& covered) const {
    for (std::size_t j = 0; j < recorded_.size(); ++j) {
      covered.set_bin(j, plan_.word_size, covered.bin(j, plan_.word_size) | recorded_[j]);
    }
  }

 private:
  template <typename Key>
  void apply(const std::map<Key, std::vector<Step>>& steps, const Key& key) {
    auto it = steps.find(key);
    if (it == steps.end()) return;
    for (const auto& step : it->second) {
      for (const auto& b : step.bins) {
        switch (step.kind) {
          case StepKind::record:
            recorded_[b.bin] |= live_[b.bin] & b.value;
            break;
          case StepKind::discard:
            live_[b.bin] &= ~b.value;
            break;
          case StepKind::initialize:
            live_[b.bin] |= b.value;
            break;
        }
      }
    }
  }

  const InstrumentationPlan& plan_;
  std::vector<std::uint64_t> live_;
  std::vector<std::uint64_t> recorded_;
};

}  // namespace

CoverageState replay_run(CoverageState state, const ControlFlowGraph& g, const PathIndex& idx,
                         const InstrumentationPlan& plan, const Trace& trace) {
  check_binding(state, g, idx, trace);
  const auto& v = trace.vertices;
  if (v.empty()) return state;
  ++state.runs;
  if (state.aborted) return state;
  if (plan.path_count != state.path_count) throw CoverageError("path count mismatch");

  BinnedReplay replay(plan);
  replay.enter(v.front());
  for (std::size_t i = 1; i < v.size(); ++i) replay.take(v[i - 1], v[i]);
  replay.flush(state.covered);
  credit_single_vertex_paths(state, idx, v);
  return state;
}

CoverageState replay_run(CoverageState state, const ControlFlowGraph& g, const PathIndex& idx,
                         const InstrumentationTable& table, const Trace& trace) {
  check_binding(state, g, idx, trace);
  const auto& v = trace.vertices;
  if (v.empty()) return state;
  ++state.runs;
  if (state.aborted) return state;
  if (table.path_count != state.path_count) throw CoverageError("path count mismatch");

  Bitset live(state.path_count);
  auto visit = [&](VertexId at) {
    auto hit = live;
    hit &= table.record.at(at);
    state.covered |= hit;
    live |= table.init.at(at);
  };
  visit(v.front());
  for (std::size_t i = 1; i < v.size(); ++i) {
    live.and_not(table.discard_edge.at(Edge{v[i - 1], v[i]}));
    visit(v[i]);
  }
  credit_single_vertex_paths(state, idx, v);
  return state;
}

CoverageState merge(const CoverageState& a, const CoverageState& b) {
  if (a.function != b.function) throw CoverageError("function name mismatch");
  if (a.checksum != b.checksum) throw CoverageError("cfg checksum mismatch");
  if (a.path_count != b.path_count) throw CoverageError("path count mismatch");
  if (a.aborted != b.aborted) throw CoverageError("aborted flag mismatch");
  CoverageState out = a;
  out.covered |= b.covered;
  out.runs = a.runs + b.runs;
  return out;
}

double CoverageSummary::ratio() const {
  return total == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(total);
}

std::string CoverageSummary::to_string() const {
  if (aborted) return "aborted";
  return std::to_string(covered) + "/" + std::to_string(total);
}

CoverageSummary coverage_summary(const CoverageState& state) {
  CoverageSummary s;
  s.aborted = state.aborted;
  s.total = state.path_count;
  s.covered = state.covered.count();
  return s;
}

// ---------------------------------------------------------------------------
// Counts file

namespace {

constexpr std::string_view kCountsMagic = "ppcov-counts";
constexpr int kCountsVersion = 1;

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <typename Int>
bool parse_number(std::string_view tok, Int& out, int base = 10) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out, base);
  return !tok.empty() && ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

void write_counts(std::ostream& out, std::span<const CoverageState> states) {
  std::vector<const CoverageState*> sorted;
  for (const auto& s : states) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->function < b->function; });
  out << kCountsMagic << ' ' << kCountsVersion << '\n';
  for (const auto* s : sorted) {
    out << "function " << s->function << ' ' << hex16(s->checksum) << ' ' << s->path_count << ' '
        << (s->aborted ? 1 : 0) << ' ' << s->runs << '\n';
    for (auto w : s->covered.words()) out << hex16(w) << '\n';
  }
}

std::vector<CoverageState> read_counts(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  auto fail = [&](const std::string& what) -> CoverageError {
    return CoverageError("counts file: line " + std::to_string(line_no) + ": " + what);
  };
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next()) throw CoverageError("counts file: empty file");
  {
    auto head = split_ws(line);
    if (head.size() != 2 || head[0] != kCountsMagic) throw fail("bad magic");
    int version = 0;
    if (!parse_number(head[1], version) || version != kCountsVersion) {
      throw fail("unsupported version '" + head[1] + "'");
    }
  }

  std::vector<CoverageState> out;
  std::set<std::string> seen;
  while (next()) {
    if (line.empty()) continue;
    auto f = split_ws(line);
    if (f.size() != 6 || f[0] != "function" || f[2].size() != 16) {
      throw fail("malformed function record");
    }
    CoverageState s;
    s.function = f[1];
    int aborted = 0;
    if (!parse_number(f[2], s.checksum, 16) || !parse_number(f[3], s.path_count) ||
        !parse_number(f[4], aborted) || aborted < 0 || aborted > 1 ||
        !parse_number(f[5], s.runs)) {
      throw fail("malformed function record");
    }
    s.aborted = aborted == 1;
    if (s.aborted && s.path_count != 0) throw fail("aborted function with paths");
    if (!seen.insert(s.function).second) throw fail("duplicate function record " + s.function);

    std::vector<std::uint64_t> words((s.path_count + 63) / 64);
    for (auto& w : words) {
      if (!next()) throw fail("truncated coverage words for " + s.function);
      if (line.size() != 16 || !parse_number(line, w, 16)) throw fail("malformed coverage word");
    }
    try {
      s.covered = Bitset::from_words(s.path_count, words);
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

void save_counts(const std::filesystem::path& path, std::span<const CoverageState> states) {
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CoverageError("cannot write " + tmp.string());
    write_counts(out, states);
    out.flush();
    if (!out) throw CoverageError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw CoverageError("cannot replace " + path.string() + ": " + ec.message());
  }
}

std::vector<CoverageState> load_counts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CoverageError("cannot read " + path.string());
  return read_counts(in);
}

// ---------------------------------------------------------------------------
// Trace file

std::vector<Trace> parse_traces(std::string_view text) {
  std::vector<Trace> out;
  std::size_t line_no = 0;
  for (std::size_t start = 0; start < text.size();) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw CoverageError("trace file: line " + std::to_string(line_no) +
                          ": expected '<function>: <vertices>'");
    }
    auto name = split_ws(line.substr(0, colon));
    if (name.size() != 1) {
      throw CoverageError("trace file: line " + std::to_string(line_no) +
                          ": expected one function name before ':'");
    }
    Trace t;
    t.function = name[0];
    t.line = line_no;
    for (const auto& tok : split_ws(line.substr(colon + 1))) {
      VertexId v = 0;
      if (!parse_number(tok, v)) {
        throw CoverageError("trace file: line " + std::to_string(line_no) + ": invalid vertex '" +
                            tok + "'");
      }
      t.vertices.push_back(v);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace ppcov
