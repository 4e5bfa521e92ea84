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

#include "ppcov/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "ppcov/cfg.hpp"
#include "ppcov/coverage.hpp"
#include "ppcov/enumerate.hpp"
#include "ppcov/instrument.hpp"
#include "ppcov/report.hpp"

namespace ppcov::cli {
namespace {

// Carries an exit status out of a subcommand.
struct Failure {
  int status = kExitError;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ControlFlowGraph load_graph(const std::string& path) {
  ControlFlowGraph g;
  try {
    g = parse_cfg_text(read_file(path));
  } catch (const ParseError& e) {
    throw Failure{kExitError, path + ": " + e.what()};
  }
  auto verdict = validate(g);
  if (!verdict.ok()) {
    std::string msg = path + ": invalid control flow graph " + g.name();
    for (const auto& v : verdict.violations) msg += "\n  " + v;
    throw Failure{kExitError, msg};
  }
  return g;
}

std::string abort_notice(const ControlFlowGraph& g, const PrimePathSet& paths) {
  auto diag = component_diagnostics(g);
  return g.name() + ": aborted: path limit " + std::to_string(paths.limit) +
         " exceeded after " + std::to_string(paths.insertions_counted) +
         " insertions (largest strongly connected component: " +
         std::to_string(diag.largest_component) + " of " + std::to_string(g.vertex_count()) +
         " vertices)";
}

// Enumerates or fails with the path-limit status.
PathIndex enumerate_or_abort(const ControlFlowGraph& g, std::size_t limit, std::ostream& out) {
  auto paths = prime_paths(g, limit);
  if (paths.limit_exceeded) {
    out << abort_notice(g, paths) << "\n";
    throw Failure{kExitPathLimit, {}};
  }
  return index_paths(paths);
}

void check_word_size(unsigned w) {
  if (!is_supported_word_size(w)) {
    throw Failure{kExitError, "unsupported word size " + std::to_string(w) +
                                  " (expected 8, 16, 32 or 64)"};
  }
}

struct Options {
  std::string cfg;
  std::vector<std::string> traces;
  std::vector<std::string> counts_inputs;
  std::string counts;
  std::string output;
  std::size_t path_limit = kDefaultPathLimit;
  unsigned word_size = 64;
  std::string format = "text";
  bool machine = false;
};

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) throw Failure{kExitError, "cannot write " + opt.output};
}

int cmd_paths(const Options& opt, std::ostream& out) {
  auto g = load_graph(opt.cfg);
  auto paths = prime_paths(g, opt.path_limit);
  if (paths.limit_exceeded) {
    if (opt.format == "machine") {
      out << g.name() << ":aborted\n";
    } else {
      out << abort_notice(g, paths) << "\n";
    }
    return kExitPathLimit;
  }
  auto idx = index_paths(paths);
  std::ostringstream text;
  for (std::size_t n = 1; n <= idx.size(); ++n) {
    if (opt.format == "machine") {
      text << g.name() << ":path:" << n << ":" << path_to_string(idx.path(n), ",") << "\n";
    } else {
      text << path_to_string(idx.path(n)) << "\n";
    }
  }
  emit(opt, text.str(), out);
  return kExitOk;
}

int cmd_tables(const Options& opt, std::ostream& out) {
  check_word_size(opt.word_size);
  auto g = load_graph(opt.cfg);
  auto idx = enumerate_or_abort(g, opt.path_limit, out);
  emit(opt, render_tables(g, idx, build_table(g, idx, opt.word_size)), out);
  return kExitOk;
}

int cmd_plan(const Options& opt, std::ostream& out) {
  check_word_size(opt.word_size);
  auto g = load_graph(opt.cfg);
  auto idx = enumerate_or_abort(g, opt.path_limit, out);
  auto plan = build_plan(g, build_table(g, idx, opt.word_size));
  emit(opt, render_pseudo_source(plan, g), out);
  return kExitOk;
}

std::vector<CoverageState> load_counts_or_empty(const std::string& path) {
  if (!std::filesystem::exists(path)) return {};
  try {
    return load_counts(path);
  } catch (const CoverageError& e) {
    throw Failure{kExitError, path + ": " + e.what()};
  }
}

CoverageState* find_state(std::vector<CoverageState>& states, const std::string& function) {
  for (auto& s : states) {
    if (s.function == function) return &s;
  }
  return nullptr;
}

int cmd_run(const Options& opt, std::ostream& out) {
  check_word_size(opt.word_size);
  auto g = load_graph(opt.cfg);
  auto states = load_counts_or_empty(opt.counts);
  auto* existing = find_state(states, g.name());
  if (existing != nullptr && existing->checksum != canonical_checksum(g)) {
    throw Failure{kExitError, opt.counts + ": " + g.name() + ": cfg checksum mismatch"};
  }

  auto paths = prime_paths(g, opt.path_limit);
  auto fresh = new_state(g, paths);

  std::vector<Trace> traces;
  for (const auto& file : opt.traces) {
    try {
      for (auto& t : parse_traces(read_file(file))) {
        if (t.function != g.name()) {
          throw CoverageError("trace file: line " + std::to_string(t.line) + ": function " +
                              t.function + " does not match graph " + g.name());
        }
        validate_trace(g, t);
        traces.push_back(std::move(t));
      }
    } catch (const CoverageError& e) {
      throw Failure{kExitError, file + ": " + e.what()};
    }
  }

  if (!fresh.aborted) {
    auto idx = index_paths(paths);
    auto plan = build_plan(g, build_table(g, idx, opt.word_size));
    for (const auto& t : traces) fresh = replay_run(std::move(fresh), g, idx, plan, t);
  } else {
    for (const auto& t : traces) {
      if (!t.vertices.empty()) ++fresh.runs;
    }
  }

  if (existing != nullptr) {
    try {
      *existing = merge(*existing, fresh);
    } catch (const CoverageError& e) {
      throw Failure{kExitError, opt.counts + ": " + g.name() + ": " + e.what()};
    }
  } else {
    states.push_back(fresh);
    existing = &states.back();
  }
  try {
    save_counts(opt.counts, states);
  } catch (const CoverageError& e) {
    throw Failure{kExitError, e.what()};
  }

  if (existing->aborted) {
    out << abort_notice(g, paths) << "\n";
    return kExitPathLimit;
  }
  out << g.name() << ": covered " << coverage_summary(*existing).to_string() << "\n";
  return kExitOk;
}

int cmd_report(const Options& opt, std::ostream& out) {
  auto g = load_graph(opt.cfg);
  if (!std::filesystem::exists(opt.counts)) {
    throw Failure{kExitError, "cannot read " + opt.counts};
  }
  auto states = load_counts_or_empty(opt.counts);
  auto* state = find_state(states, g.name());
  if (state == nullptr) {
    throw Failure{kExitError, opt.counts + ": no coverage record for " + g.name()};
  }
  if (state->checksum != canonical_checksum(g)) {
    throw Failure{kExitError, opt.counts + ": " + g.name() + ": cfg checksum mismatch"};
  }

  // Functions marked aborted are not enumerated again.
  PathIndex idx;
  if (!state->aborted) {
    idx = enumerate_or_abort(g, opt.path_limit, out);
    if (idx.size() != state->path_count) {
      throw Failure{kExitError, opt.counts + ": " + g.name() + ": path count mismatch"};
    }
  }
  emit(opt, opt.machine ? machine_report(g, idx, *state) : text_report(g, idx, *state), out);
  return kExitOk;
}

int cmd_merge(const Options& opt, std::ostream& out) {
  std::vector<CoverageState> merged;
  for (const auto& file : opt.counts_inputs) {
    std::vector<CoverageState> states;
    try {
      states = load_counts(file);
    } catch (const CoverageError& e) {
      throw Failure{kExitError, file + ": " + e.what()};
    }
    for (auto& s : states) {
      if (auto* have = find_state(merged, s.function)) {
        try {
          *have = merge(*have, s);
        } catch (const CoverageError& e) {
          throw Failure{kExitError, file + ": " + s.function + ": " + e.what()};
        }
      } else {
        merged.push_back(std::move(s));
      }
    }
  }
  try {
    save_counts(opt.output, merged);
  } catch (const CoverageError& e) {
    throw Failure{kExitError, e.what()};
  }
  for (const auto& s : merged) {
    out << s.function << ": covered " << coverage_summary(s).to_string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime path coverage: enumeration, instrumentation tables, trace replay and "
               "reports"};
  app.name(args.empty() ? "ppcov" : args.front());
  app.require_subcommand(1);

  Options opt;
  auto add_limit = [&](CLI::App* sub) {
    sub->add_option("--path-limit", opt.path_limit, "Abort enumeration after this many paths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_word = [&](CLI::App* sub) {
    sub->add_option("--word-size", opt.word_size, "Bits per bitset bin (8, 16, 32 or 64)")
        ->capture_default_str();
  };

  auto* paths = app.add_subcommand("paths", "List the prime paths of a CFG");
  paths->add_option("cfg", opt.cfg, "CFG file")->required();
  add_limit(paths);
  paths->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  paths->add_option("-o,--output", opt.output, "Write to a file instead of standard output");

  auto* tables = app.add_subcommand("tables", "Dump the record/discard/initialize tables");
  tables->add_option("cfg", opt.cfg, "CFG file")->required();
  add_limit(tables);
  add_word(tables);
  tables->add_option("-o,--output", opt.output, "Write to a file instead of standard output");

  auto* plan = app.add_subcommand("plan", "Render the elided instrumentation as pseudo-source");
  plan->add_option("cfg", opt.cfg, "CFG file")->required();
  add_limit(plan);
  add_word(plan);
  plan->add_option("-o,--output", opt.output, "Write to a file instead of standard output");

  auto* runc = app.add_subcommand("run", "Replay trace files into a counts file");
  runc->add_option("cfg", opt.cfg, "CFG file")->required();
  runc->add_option("traces", opt.traces, "Trace files")->required();
  runc->add_option("--counts", opt.counts, "Counts file to update")->required();
  add_limit(runc);
  add_word(runc);

  auto* report = app.add_subcommand("report", "Report prime path coverage");
  report->add_option("cfg", opt.cfg, "CFG file")->required();
  report->add_option("--counts", opt.counts, "Counts file")->required();
  report->add_flag("--machine", opt.machine, "Condensed line-oriented output");
  add_limit(report);
  report->add_option("-o,--output", opt.output, "Write to a file instead of standard output");

  auto* mergec = app.add_subcommand("merge", "Merge counts files");
  mergec->add_option("inputs", opt.counts_inputs, "Counts files")->required()->expected(2, -1);
  mergec->add_option("-o,--output", opt.output, "Merged counts file")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("ppcov");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (*paths) return cmd_paths(opt, out);
    if (*tables) return cmd_tables(opt, out);
    if (*plan) return cmd_plan(opt, out);
    if (*runc) return cmd_run(opt, out);
    if (*report) return cmd_report(opt, out);
    if (*mergec) return cmd_merge(opt, out);
  } catch (const Failure& f) {
    if (!f.message.empty()) err << "ppcov: " << f.message << "\n";
    return f.status;
  } catch (const std::exception& e) {
    err << "ppcov: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace ppcov::cli
