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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"

namespace ppcov {
namespace {

using testing::load_fixture;

bool mentions(const ValidationResult& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

TEST(ParseCfg, GetcwdFixture) {
  auto g = load_fixture("getcwd");
  EXPECT_EQ(g.name(), "gnu_getcwd");
  EXPECT_EQ(g.vertex_count(), 8u);
  EXPECT_EQ(g.edge_count(), 8u);
  EXPECT_EQ(g.entry(), 1u);
  std::vector<Edge> expected{{1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 7}, {6, 8}, {8, 2}};
  EXPECT_EQ(g.edges(), expected);
  EXPECT_EQ(g.exits(), (std::vector<VertexId>{7}));
  EXPECT_EQ(g.edge_label(3, 4), false);
  EXPECT_EQ(g.edge_label(3, 5), true);
  EXPECT_EQ(g.edge_label(1, 2), std::nullopt);
  ASSERT_EQ(g.lines(4).size(), 2u);
  EXPECT_EQ(g.lines(4)[0].number, 14u);
  EXPECT_EQ(g.lines(4)[1].text, "    release (buffer);");
}

TEST(ParseCfg, MinimalChain) {
  auto g = parse_cfg_text("graph t\nvertex 1\nvertex 2\nedge 1 2\nentry 1\n");
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(validate(g).ok());
}

TEST(ParseCfg, UndeclaredVertexNamesVertexAndLine) {
  try {
    parse_cfg_text("graph t\nvertex 1\nedge 1 9\nentry 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    std::string msg = e.what();
    EXPECT_NE(msg.find("9"), std::string::npos);
    EXPECT_NE(msg.find("line 3"), std::string::npos);
  }
}

TEST(ParseCfg, Errors) {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_cfg_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("vertex 1\n"), 1u);
  EXPECT_EQ(line_of("graph t\nvertex 1\n"), 2u);  // missing entry, reported at the last line
  EXPECT_EQ(line_of("graph t\nvertex 1\nvertex 1\nentry 1\n"), 3u);
  EXPECT_EQ(line_of("graph t\nvertex 1\nvertex 2\nedge 1 2\nedge 1 2\nentry 1\n"), 5u);
  EXPECT_EQ(line_of("graph t\nvertex 1\nentry 1\nentry 1\n"), 4u);
  EXPECT_EQ(line_of("graph t\nvertex 1\nvertex 2\nedge 1 2 maybe\nentry 1\n"), 4u);
  EXPECT_EQ(line_of("graph t\nvertex x\nentry 1\n"), 2u);
  EXPECT_EQ(line_of("graph t\nvertex 1\nfrobnicate\nentry 1\n"), 3u);
  EXPECT_EQ(line_of("graph t\nentry 1\nvertex 1\n"), 2u);
  EXPECT_EQ(line_of("graph t\nvertex 1\nentry 1\nline 3 x\n"), 4u);
  EXPECT_EQ(line_of("graph t\ngraph u\n"), 2u);
}

TEST(ParseCfg, CommentsAndLineText) {
  auto g = parse_cfg_text(
      "# leading comment\n"
      "graph t   # trailing\n"
      "\n"
      "vertex 1\n"
      "line 10   x = 1;  # not a comment\n"
      "line 11\n"
      "vertex 2\n"
      "edge 1 2 true\n"
      "entry 1\n");
  ASSERT_EQ(g.lines(1).size(), 2u);
  EXPECT_EQ(g.lines(1)[0].text, "  x = 1;  # not a comment");
  EXPECT_EQ(g.lines(1)[1].text, "");
  EXPECT_EQ(g.edge_label(1, 2), true);
}

TEST(ParseCfg, SelfEdgeAccepted) {
  auto g = parse_cfg_text("graph t\nvertex 1\nvertex 2\nedge 1 2\nedge 2 2\nvertex 3\nedge 2 3\n"
                          "entry 1\n");
  EXPECT_TRUE(g.has_edge(2, 2));
  EXPECT_TRUE(validate(g).ok());
}

TEST(ParseCfg, RoundTripThroughText) {
  auto g = load_fixture("getcwd");
  auto again = parse_cfg_text(to_cfg_text(g));
  EXPECT_EQ(again.edges(), g.edges());
  EXPECT_EQ(again.name(), g.name());
  EXPECT_EQ(again.entry(), g.entry());
  for (auto v : g.vertices()) {
    EXPECT_TRUE(std::equal(g.lines(v).begin(), g.lines(v).end(), again.lines(v).begin(),
                           again.lines(v).end()));
  }
  for (const auto& e : g.edges()) EXPECT_EQ(again.edge_label(e.src, e.dst), g.edge_label(e.src, e.dst));
}

TEST(Validate, FixturesAreValid) {
  for (auto name : {"diamond2", "bsearch", "getcwd", "looped5", "bdd4", "fazlibad", "diamond10"}) {
    auto r = validate(load_fixture(name));
    EXPECT_TRUE(r.ok()) << name << ": " << (r.ok() ? "" : r.violations.front());
  }
}

TEST(Validate, EdgeIntoEntry) {
  auto g = parse_cfg_text("graph t\nvertex 1\nvertex 2\nvertex 3\nedge 1 2\nedge 2 1\nedge 2 3\n"
                          "entry 1\n");
  auto r = validate(g);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "entry has incoming edge"));
}

TEST(Validate, UnreachableVertexNamed) {
  auto r = validate(load_fixture("bad"));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "vertex 3 is unreachable"));
}

TEST(Validate, NoExitReachable) {
  auto g = parse_cfg_text("graph t\nvertex 1\nvertex 2\nvertex 3\nvertex 4\n"
                          "edge 1 2\nedge 2 3\nedge 3 2\nedge 1 4\nentry 1\n");
  auto r = validate(g);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "no exit is reachable from vertex 2"));
  EXPECT_TRUE(mentions(r, "no exit is reachable from vertex 3"));
  auto cyclic = parse_cfg_text("graph t\nvertex 1\nvertex 2\nedge 1 2\nedge 2 2\nentry 1\n");
  EXPECT_TRUE(mentions(validate(cyclic), "no exit vertex"));
}

TEST(Scc, Getcwd) {
  auto g = load_fixture("getcwd");
  auto p = scc_partition(g);
  std::set<std::vector<VertexId>> comps(p.components.begin(), p.components.end());
  std::set<std::vector<VertexId>> expected{{1}, {2, 3, 4, 6, 8}, {5}, {7}};
  EXPECT_EQ(comps, expected);
  auto d = component_diagnostics(g);
  EXPECT_FALSE(d.condensation_isomorphic);
  EXPECT_EQ(d.largest_component, 5u);
  EXPECT_EQ(d.singleton_components, 3u);
}

TEST(Scc, Diamond2AllSingletons) {
  auto g = load_fixture("diamond2");
  auto p = scc_partition(g);
  EXPECT_EQ(p.components.size(), 8u);
  auto d = component_diagnostics(g);
  EXPECT_TRUE(d.condensation_isomorphic);
  EXPECT_EQ(d.largest_component, 1u);
}

TEST(Scc, MostOfGraphInOneComponent) {
  // The loop nest 2 -> 3 -> 4 -> {5 -> 8 -> 4, 6 -> 7 -> 2} is strongly
  // connected as drawn: 6 and 7 close the outer loop back to 2.
  auto g = load_fixture("fazlibad");
  auto p = scc_partition(g);
  std::vector<VertexId> big;
  for (const auto& c : p.components) {
    if (c.size() > 1) big = c;
  }
  EXPECT_EQ(big, (std::vector<VertexId>{2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(component_diagnostics(g).largest_component, 7u);
  for (auto u : big) {
    for (auto v : big) EXPECT_TRUE(testing::reaches(g, u, v));
  }
  EXPECT_FALSE(testing::reaches(g, 9, 2));
}

TEST(Scc, SingleVertex) {
  auto g = parse_cfg_text("graph t\nvertex 4\nentry 4\n");
  auto d = component_diagnostics(g);
  EXPECT_TRUE(d.condensation_isomorphic);
  EXPECT_EQ(d.largest_component, 1u);
  EXPECT_TRUE(validate(g).ok());
}

TEST(Scc, TopologicalOrderAndAcyclicCondensation) {
  auto p = scc_partition(load_fixture("bsearch"));
  for (const auto& [a, b] : p.condensation_edges) EXPECT_LT(a, b);
}

TEST(Checksum, DeterministicAndStructural) {
  auto a = load_fixture("getcwd");
  auto b = load_fixture("getcwd");
  EXPECT_EQ(canonical_checksum(a), canonical_checksum(b));

  auto text = testing::read_text(testing::fixture_path("getcwd.cfg"));
  auto no_back = text;
  no_back.replace(no_back.find("edge 8 2\n"), 9, "");
  EXPECT_NE(canonical_checksum(parse_cfg_text(no_back)), canonical_checksum(a));

  auto relined = text;
  relined.replace(relined.find("line 16"), 7, "line 99");
  auto c = parse_cfg_text(relined);
  EXPECT_EQ(canonical_checksum(c), canonical_checksum(a));
  auto unlabeled = text;
  unlabeled.replace(unlabeled.find("edge 3 4 false"), 14, "edge 3 4");
  EXPECT_EQ(canonical_checksum(parse_cfg_text(unlabeled)), canonical_checksum(a));
}

TEST(Checksum, NameMatters) {
  auto a = parse_cfg_text("graph t\nvertex 1\nentry 1\n");
  auto b = parse_cfg_text("graph u\nvertex 1\nentry 1\n");
  EXPECT_NE(canonical_checksum(a), canonical_checksum(b));
}

TEST(Walk, IsWalk) {
  auto g = load_fixture("getcwd");
  EXPECT_TRUE(is_walk(g, Path{1, 2, 3, 4, 6, 8, 2}));
  EXPECT_TRUE(is_walk(g, Path{5}));
  EXPECT_FALSE(is_walk(g, Path{1, 3}));
  EXPECT_FALSE(is_walk(g, Path{42}));
  EXPECT_EQ(path_to_string(Path{1, 2, 3}, ","), "1,2,3");
}

}  // namespace
}  // namespace ppcov
