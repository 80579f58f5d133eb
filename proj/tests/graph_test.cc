// Copyright 2026 The advsgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "advsgm/graph.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "advsgm/errors.h"
#include "test_util.h"

namespace advsgm {
namespace {

Graph FromText(const std::string& text) {
  std::istringstream in(text);
  return LoadEdgeList(in);
}

TEST(GraphTest, FromEdgesCanonicalizesAndDeduplicates) {
  const Graph g = Graph::FromEdges(4, {{1, 0}, {0, 1}, {2, 3}, {3, 1}});
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.HasEdge(0, 1));
  EXPECT_TRUE(g.HasEdge(1, 0));
  EXPECT_TRUE(g.HasEdge(1, 3));
  EXPECT_FALSE(g.HasEdge(0, 2));
  EXPECT_EQ(g.degree(1), 2u);
  const std::vector<NodeId> nbrs(g.neighbors(1).begin(), g.neighbors(1).end());
  EXPECT_EQ(nbrs, (std::vector<NodeId>{0, 3}));
}

TEST(GraphTest, FromEdgesRejectsSelfLoopsAndRange) {
  EXPECT_THROW(Graph::FromEdges(3, {{1, 1}}), ValidationError);
  EXPECT_THROW(Graph::FromEdges(3, {{0, 3}}), ValidationError);
}

TEST(LoadEdgeListTest, CompactsIdsInFirstSeenOrder) {
  const Graph g = FromText("# comment\n10 20\n\n20 30\n30 10\n20 10\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.original_id(0), 10);
  EXPECT_EQ(g.original_id(2), 30);
  EXPECT_EQ(g.FindOriginal(20), NodeId{1});
  EXPECT_FALSE(g.FindOriginal(99).has_value());
}

TEST(LoadEdgeListTest, SelfLoopOnlyNodeStaysIsolated) {
  const Graph g = FromText("1 2\n5 5\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.degree(*g.FindOriginal(5)), 0u);
}

TEST(LoadEdgeListTest, ReportsMalformedLine) {
  try {
    FromText("1 2\n3 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(FromText("1 2 3\n"), ParseError);
  EXPECT_THROW(FromText("# nothing\n"), ValidationError);
}

TEST(LoadEdgeListTest, RandomFileMatchesCountedOracle) {
  const auto path = testing::DataPath("random_edges.txt");
  std::ifstream header(path);
  std::string line;
  std::getline(header, line);
  std::size_t ids = 0;
  std::size_t pairs = 0;
  ASSERT_EQ(std::sscanf(line.c_str(),
                        "# distinct ids: %zu distinct non-loop pairs: %zu",
                        &ids, &pairs),
            2);
  const Graph g = LoadEdgeListFile(path.string());
  EXPECT_EQ(g.num_nodes(), ids);
  EXPECT_EQ(g.num_edges(), pairs);
}

TEST(LoadLabelsTest, AttachesAndValidates) {
  const Graph g = FromText("10 20\n20 30\n");
  std::istringstream labels("10 1\n30 2\n");
  const Graph labeled = LoadLabels(labels, g);
  EXPECT_TRUE(labeled.has_labels());
  EXPECT_EQ(labeled.label(0), Label{1});
  EXPECT_FALSE(labeled.label(1).has_value());
  EXPECT_EQ(labeled.label(2), Label{2});
  std::istringstream unknown("99 1\n");
  EXPECT_THROW(LoadLabels(unknown, g), ValidationError);
  std::istringstream conflict("10 1\n10 2\n");
  EXPECT_THROW(LoadLabels(conflict, g), ValidationError);
}

TEST(GraphIoTest, RoundTrips) {
  const Graph g = FromText("7 8\n8 9\n9 7\n9 11\n");
  std::stringstream gs;
  WriteGraph(g, gs);
  const Graph back = ReadGraph(gs);
  EXPECT_EQ(back.num_nodes(), g.num_nodes());
  EXPECT_TRUE(std::ranges::equal(back.edges(), g.edges()));

  std::stringstream ids;
  WriteIdMap(g, ids);
  const auto originals = ReadIdMap(ids, g.num_nodes());
  EXPECT_TRUE(std::ranges::equal(originals, g.original_ids()));

  const std::vector<Edge> pairs{{0, 1}, {2, 3}};
  std::stringstream ps;
  WritePairs(pairs, ps);
  EXPECT_EQ(ReadPairs(ps), pairs);
}

Graph Sbm(std::uint64_t seed) {
  const std::vector<std::size_t> blocks{100, 100, 100, 100};
  return GenerateSbm(blocks, 0.15, 0.01, seed);
}

TEST(SbmTest, DeterministicWithPlantedLabels) {
  const Graph a = Sbm(3);
  const Graph b = Sbm(3);
  EXPECT_TRUE(std::ranges::equal(a.edges(), b.edges()));
  EXPECT_FALSE(std::ranges::equal(a.edges(), Sbm(4).edges()));
  EXPECT_EQ(a.num_nodes(), 400u);
  EXPECT_EQ(a.label(0), Label{0});
  EXPECT_EQ(a.label(399), Label{3});
  // Expected count 4*C(100,2)*0.15 + 6*100*100*0.01 = 2970 + 600.
  EXPECT_NEAR(static_cast<double>(a.num_edges()), 3570.0, 4 * std::sqrt(3570.0));
  std::size_t within = 0;
  for (const Edge& e : a.edges()) within += a.label(e.u) == a.label(e.v);
  EXPECT_GT(within, a.num_edges() * 3 / 4);
}

TEST(SbmTest, RejectsBadProbabilities) {
  const std::vector<std::size_t> blocks{5, 5};
  EXPECT_THROW(GenerateSbm(blocks, 1.5, 0.0, 1), ConfigError);
}

TEST(SplitEdgesTest, PartitionsAndSamplesNonEdges) {
  const Graph g = Sbm(1);
  const EdgeSplit split = SplitEdges(g, 0.9, 5);
  const auto num_test = static_cast<std::size_t>(
      std::llround(static_cast<double>(g.num_edges()) * 0.1));
  EXPECT_EQ(split.test_pos.size(), num_test);
  EXPECT_EQ(split.test_neg.size(), num_test);
  EXPECT_EQ(split.train_graph.num_edges() + num_test, g.num_edges());
  EXPECT_EQ(split.train_graph.num_nodes(), g.num_nodes());
  for (const Edge& e : split.test_pos) {
    EXPECT_TRUE(g.HasEdge(e.u, e.v));
    EXPECT_FALSE(split.train_graph.HasEdge(e.u, e.v));
  }
  std::set<Edge> neg(split.test_neg.begin(), split.test_neg.end());
  EXPECT_EQ(neg.size(), num_test);
  for (const Edge& e : split.test_neg) {
    EXPECT_NE(e.u, e.v);
    EXPECT_FALSE(g.HasEdge(e.u, e.v));
  }
  const EdgeSplit again = SplitEdges(g, 0.9, 5);
  EXPECT_EQ(again.test_pos, split.test_pos);
  EXPECT_EQ(again.test_neg, split.test_neg);
}

TEST(SplitEdgesTest, RejectsBadInputs) {
  const Graph g = Sbm(1);
  EXPECT_THROW(SplitEdges(g, 1.0, 0), ConfigError);
  EXPECT_THROW(SplitEdges(g, 0.0, 0), ConfigError);
  std::vector<Edge> complete;
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = u + 1; v < 6; ++v) complete.push_back({u, v});
  }
  EXPECT_THROW(SplitEdges(Graph::FromEdges(6, complete), 0.5, 0), ConfigError);
}

}  // namespace
}  // namespace advsgm
