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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "ppcov/coverage.hpp"

namespace ppcov {
namespace {

namespace fs = std::filesystem;
using testing::fixture_path;
using testing::read_text;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result ppcov(std::vector<std::string> args) {
  args.insert(args.begin(), "ppcov");
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::size_t lines_of(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("ppcov_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = (dir / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string tmp(const std::string& name) { return (dir / name).string(); }

  fs::path dir;
};

TEST_F(Cli, PathsListing) {
  auto r = ppcov({"paths", fixture_path("getcwd.cfg")});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(lines_of(r.out), 8u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "1 2 3 4 6 8");
  auto m = ppcov({"paths", fixture_path("bdd4.cfg"), "--format", "machine"});
  EXPECT_EQ(m.status, 0);
  EXPECT_EQ(m.out.substr(0, m.out.find('\n')), "bdd4:path:1:1,2,3,4,5");
}

TEST_F(Cli, PathsAbort) {
  auto r = ppcov({"paths", fixture_path("diamond10.cfg"), "--path-limit", "100"});
  EXPECT_EQ(r.status, cli::kExitPathLimit);
  EXPECT_NE(r.out.find("aborted"), std::string::npos);
  auto ok = ppcov({"paths", fixture_path("diamond10.cfg")});
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(lines_of(ok.out), 1024u);
}

TEST_F(Cli, InvalidGraph) {
  auto r = ppcov({"paths", fixture_path("bad.cfg")});
  EXPECT_EQ(r.status, cli::kExitError);
  EXPECT_NE(r.err.find("vertex 3 is unreachable"), std::string::npos);
  auto syntax = ppcov({"paths", write("s.cfg", "graph t\nvertex 1\nedge 1 9\nentry 1\n")});
  EXPECT_EQ(syntax.status, cli::kExitError);
  EXPECT_NE(syntax.err.find("line 3"), std::string::npos);
}

TEST_F(Cli, Tables) {
  auto r = ppcov({"tables", fixture_path("getcwd.cfg"), "--word-size", "8"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, read_text(std::string(PPCOV_GOLDEN_DIR) + "/getcwd_tables.txt"));
  auto l = ppcov({"tables", fixture_path("looped5.cfg")});
  EXPECT_EQ(l.status, 0);
  EXPECT_NE(l.out.find("  1  000000  000000  000011\n"), std::string::npos) << l.out;
  EXPECT_EQ(ppcov({"tables", tmp("missing.cfg")}).status, cli::kExitError);
  EXPECT_EQ(ppcov({"tables", fixture_path("getcwd.cfg"), "--word-size", "12"}).status,
            cli::kExitError);
  EXPECT_EQ(ppcov({"tables", fixture_path("diamond10.cfg"), "--path-limit", "100"}).status,
            cli::kExitPathLimit);
}

TEST_F(Cli, PlanToFile) {
  auto out = tmp("plan.txt");
  auto r = ppcov({"plan", fixture_path("getcwd.cfg"), "--word-size", "8", "-o", out});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(read_text(out), read_text(std::string(PPCOV_GOLDEN_DIR) + "/getcwd_plan.txt"));
}

TEST_F(Cli, RunAndReport) {
  auto counts = tmp("out.pcov");
  auto r = ppcov({"run", fixture_path("getcwd.cfg"), fixture_path("getcwd.trace"), "--counts",
                  counts});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "gnu_getcwd: covered 5/8\n");
  auto first = load_counts(counts);

  auto again = ppcov({"run", fixture_path("getcwd.cfg"), fixture_path("getcwd.trace"),
                      "--counts", counts});
  EXPECT_EQ(again.out, "gnu_getcwd: covered 5/8\n");
  auto second = load_counts(counts);
  ASSERT_EQ(second.size(), 1u);
  EXPECT_EQ(second[0].covered, first[0].covered);
  EXPECT_EQ(second[0].runs, 4u);

  auto text = ppcov({"report", fixture_path("getcwd.cfg"), "--counts", counts});
  EXPECT_EQ(text.status, 0);
  std::size_t sections = 0;
  for (auto p = text.out.find("not covered:"); p != std::string::npos;
       p = text.out.find("not covered:", p + 1)) {
    ++sections;
  }
  EXPECT_EQ(sections, 3u);

  auto machine = ppcov({"report", fixture_path("getcwd.cfg"), "--counts", counts, "--machine"});
  EXPECT_EQ(machine.status, 0);
  EXPECT_EQ(lines_of(machine.out), 9u);
  EXPECT_EQ(machine.out.substr(0, machine.out.find('\n')), "gnu_getcwd:summary:5/8");
}

TEST_F(Cli, McdcTraces) {
  auto counts = tmp("bdd.pcov");
  auto r = ppcov({"run", fixture_path("bdd4.cfg"), fixture_path("bdd4_mcdc.trace"), "--counts",
                  counts});
  EXPECT_EQ(r.out, "bdd4: covered 5/6\n");
  auto m = ppcov({"report", fixture_path("bdd4.cfg"), "--counts", counts, "--machine"});
  EXPECT_NE(m.out.find("bdd4:path:1:uncovered:1,2,3,4,5\n"), std::string::npos);
}

TEST_F(Cli, InvalidTraceLeavesCountsUntouched) {
  auto counts = tmp("out.pcov");
  ppcov({"run", fixture_path("getcwd.cfg"), fixture_path("getcwd.trace"), "--counts", counts});
  const auto before = read_text(counts);
  auto bad = write("bad.trace", "gnu_getcwd: 1 2 3 5 7\n\ngnu_getcwd: 1 2 4\n");
  auto r = ppcov({"run", fixture_path("getcwd.cfg"), bad, "--counts", counts});
  EXPECT_EQ(r.status, cli::kExitError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(read_text(counts), before);

  auto foreign = write("foreign.trace", "search: 1 2 4 9\n");
  auto f = ppcov({"run", fixture_path("getcwd.cfg"), foreign, "--counts", counts});
  EXPECT_EQ(f.status, cli::kExitError);
  EXPECT_NE(f.err.find("line 1"), std::string::npos) << f.err;
  EXPECT_EQ(read_text(counts), before);
}

TEST_F(Cli, ChecksumMismatch) {
  auto counts = tmp("out.pcov");
  ppcov({"run", fixture_path("getcwd.cfg"), fixture_path("getcwd.trace"), "--counts", counts});
  const auto before = read_text(counts);
  auto text = read_text(fixture_path("getcwd.cfg"));
  text.replace(text.find("edge 8 2"), 8, "edge 8 2\nedge 6 2");
  auto changed = write("changed.cfg", text);

  auto report = ppcov({"report", changed, "--counts", counts});
  EXPECT_EQ(report.status, cli::kExitError);
  EXPECT_NE(report.err.find("cfg checksum mismatch"), std::string::npos);

  auto trace = write("t.trace", "gnu_getcwd: 1 2 3 5 7\n");
  auto run = ppcov({"run", changed, trace, "--counts", counts});
  EXPECT_EQ(run.status, cli::kExitError);
  EXPECT_NE(run.err.find("cfg checksum mismatch"), std::string::npos);
  EXPECT_EQ(read_text(counts), before);
}

TEST_F(Cli, CountsKeepOtherFunctions) {
  auto counts = tmp("out.pcov");
  ppcov({"run", fixture_path("getcwd.cfg"), fixture_path("getcwd.trace"), "--counts", counts});
  ppcov({"run", fixture_path("bdd4.cfg"), fixture_path("bdd4_mcdc.trace"), "--counts", counts});
  auto states = load_counts(counts);
  ASSERT_EQ(states.size(), 2u);
  EXPECT_EQ(states[0].function, "bdd4");
  EXPECT_EQ(states[1].function, "gnu_getcwd");
  auto missing = ppcov({"report", fixture_path("bsearch.cfg"), "--counts", counts});
  EXPECT_EQ(missing.status, cli::kExitError);
  EXPECT_EQ(ppcov({"report", fixture_path("getcwd.cfg"), "--counts", tmp("none.pcov")}).status,
            cli::kExitError);
}

TEST_F(Cli, Merge) {
  auto a = tmp("a.pcov"), b = tmp("b.pcov"), c = tmp("c.pcov");
  ppcov({"run", fixture_path("getcwd.cfg"), write("1.trace", "gnu_getcwd: 1 2 3 5 7\n"),
         "--counts", a});
  ppcov({"run", fixture_path("getcwd.cfg"),
         write("2.trace", "gnu_getcwd: 1 2 3 4 6 8 2 3 5 7\n"), "--counts", b});
  auto r = ppcov({"merge", a, b, "-o", c});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "gnu_getcwd: covered 5/8\n");
  auto merged = load_counts(c);
  auto sa = load_counts(a), sb = load_counts(b);
  EXPECT_EQ(merged[0], merge(sa[0], sb[0]));

  auto other = tmp("other.pcov");
  auto text = read_text(fixture_path("getcwd.cfg"));
  text.replace(text.find("edge 8 2"), 8, "edge 8 2\nedge 6 2");
  ppcov({"run", write("changed.cfg", text), write("3.trace", "gnu_getcwd: 1 2 3 5 7\n"),
         "--counts", other});
  auto bad = ppcov({"merge", a, other, "-o", tmp("d.pcov")});
  EXPECT_EQ(bad.status, cli::kExitError);
  EXPECT_NE(bad.err.find("cfg checksum mismatch"), std::string::npos);
  EXPECT_FALSE(fs::exists(tmp("d.pcov")));
}

TEST_F(Cli, AbortedRunAndReport) {
  auto counts = tmp("out.pcov");
  auto trace = write("t.trace", "diamond10: 1 2 4 5 7\n");
  auto r = ppcov({"run", fixture_path("diamond10.cfg"), trace, "--counts", counts,
                  "--path-limit", "100"});
  EXPECT_EQ(r.status, cli::kExitPathLimit);
  auto states = load_counts(counts);
  ASSERT_EQ(states.size(), 1u);
  EXPECT_TRUE(states[0].aborted);
  auto rep = ppcov({"report", fixture_path("diamond10.cfg"), "--counts", counts});
  EXPECT_EQ(rep.status, 0);
  EXPECT_EQ(rep.out, "function diamond10: aborted: path limit exceeded\n");
}

TEST_F(Cli, Usage) {
  EXPECT_EQ(ppcov({"--help"}).status, 0);
  EXPECT_EQ(ppcov({}).status, cli::kExitError);
  EXPECT_EQ(ppcov({"frobnicate"}).status, cli::kExitError);
  EXPECT_EQ(ppcov({"paths"}).status, cli::kExitError);
  EXPECT_EQ(ppcov({"paths", fixture_path("getcwd.cfg"), "--path-limit", "0"}).status,
            cli::kExitError);
  EXPECT_EQ(ppcov({"paths", fixture_path("getcwd.cfg"), "--format", "xml"}).status,
            cli::kExitError);
}

TEST_F(Cli, Deterministic) {
  for (auto sub : {"paths", "tables", "plan"}) {
    auto a = ppcov({sub, fixture_path("bsearch.cfg")});
    auto b = ppcov({sub, fixture_path("bsearch.cfg")});
    EXPECT_EQ(a.out, b.out) << sub;
  }
}

}  // namespace
}  // namespace ppcov
