// Copyright 2026 The graphmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>

#include "graphmix/graphon.hpp"
#include "graphmix/line_graph.hpp"
#include "graphmix/mass_partition.hpp"
#include "support.hpp"

using namespace graphmix;

TEST(LineGraph, SmallOracles) {
  EXPECT_EQ(line_graph(Graph::path(3)), Graph::complete(2));
  EXPECT_EQ(line_graph(Graph::star(3)), Graph::complete(3));
  const auto c4 = line_graph(Graph::cycle(4));
  EXPECT_EQ(c4.node_count(), 4u);
  EXPECT_EQ(c4.edge_count(), 4u);
  for (auto d : c4.degrees()) EXPECT_EQ(d, 2u);
  EXPECT_THROW(line_graph(Graph::empty(3)), DomainError);
}

TEST(LineGraph, EdgeCountFormulaOnRandomGraphs) {
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = support::random_graph(2 + rng.index(12), rng.uniform(), rng);
    if (g.edge_count() == 0) continue;
    const auto l = line_graph(g);
    std::size_t expect = 0;
    for (auto d : g.degrees()) expect += d * (d - 1) / 2;
    ASSERT_EQ(l.node_count(), g.edge_count());
    ASSERT_EQ(l.edge_count(), expect);
    // direct construction: edges sharing an endpoint
    const auto e = g.edges();
    std::size_t direct = 0;
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b)
        if (e[a].u == e[b].u || e[a].u == e[b].v || e[a].v == e[b].u || e[a].v == e[b].v) {
          ++direct;
          ASSERT_TRUE(l.has_edge(static_cast<NodeId>(a), static_cast<NodeId>(b)));
        }
    ASSERT_EQ(direct, expect);
  }
}

TEST(LineGraph, DecomposeDisjointCliques) {
  // K3 + K2 + one isolated node, shuffled labels
  Rng rng(1);
  const auto h = support::permuted(Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}}), rng);
  const auto d = decompose_disjoint_cliques(h);
  EXPECT_EQ(d.clique_sizes, (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(d.isolated_vertex_count, 1u);
  EXPECT_EQ(d.node_count(), 6u);

  const auto empty = decompose_disjoint_cliques(Graph::empty(4));
  EXPECT_TRUE(empty.clique_sizes.empty());
  EXPECT_EQ(empty.isolated_vertex_count, 4u);

  try {
    decompose_disjoint_cliques(Graph::path(3));
    FAIL() << "path accepted";
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("3 nodes"), std::string::npos) << e.what();
  }
}

TEST(LineGraph, DecomposeAcceptsExactlyCliqueComponents) {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = support::random_graph(1 + rng.index(9), rng.uniform(), rng);
    // reference: a component with c nodes must carry C(c,2) edges
    const auto adj = g.adjacency();
    std::vector<int> comp(g.node_count(), -1);
    bool cliques = true;
    for (std::size_t s = 0; s < g.node_count(); ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::size_t> stack{s}, members;
      comp[s] = static_cast<int>(s);
      while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (auto w : adj[v])
          if (comp[w] < 0) {
            comp[w] = static_cast<int>(s);
            stack.push_back(w);
          }
      }
      std::size_t deg_sum = 0;
      for (auto v : members) deg_sum += adj[v].size();
      if (deg_sum / 2 != members.size() * (members.size() - 1) / 2) cliques = false;
    }
    if (cliques) {
      EXPECT_NO_THROW(decompose_disjoint_cliques(g));
    } else {
      EXPECT_THROW(decompose_disjoint_cliques(g), StructuralError);
    }
  }
}

TEST(LineGraph, InverseOfCliques) {
  const auto k15 = inverse_line_graph_disjoint(Graph::complete(5));
  EXPECT_EQ(k15.node_count(), 6u);
  EXPECT_EQ(k15.edge_count(), 5u);
  EXPECT_EQ(support::star_sizes(k15), (std::vector<std::size_t>{5}));

  const auto mixed = inverse_line_graph_disjoint(Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}}));
  EXPECT_EQ(support::star_sizes(mixed), (std::vector<std::size_t>{3, 2, 1}));
  EXPECT_EQ(mixed.node_count(), 4u + 3u + 2u);
  EXPECT_EQ(mixed.edge_count(), 6u);

  // triangle goes to the claw, never to itself
  EXPECT_EQ(inverse_line_graph_disjoint(Graph::complete(3)), Graph::star(3));
  EXPECT_THROW(inverse_line_graph_disjoint(Graph::path(4)), StructuralError);
}

TEST(LineGraph, RoundTripOnRandomStarForests) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> leaves(1 + rng.index(50));
    for (auto& l : leaves) l = 1 + rng.index(100);
    const auto s = support::permuted(support::make_star_forest(leaves), rng);
    const auto back = inverse_line_graph_disjoint(line_graph(s));
    ASSERT_EQ(support::star_sizes(back), support::star_sizes(s));
    ASSERT_EQ(back.node_count(), s.node_count());
  }
}

TEST(LineGraph, ClassifyStarsPathsAndDenseSequences) {
  std::vector<SequenceStats> stars, paths, dense;
  for (std::size_t i = 2; i <= 50; ++i) stars.push_back(sequence_stats(Graph::star(i)));
  for (std::size_t n = 10; n <= 400; n += 10) paths.push_back(sequence_stats(Graph::path(n)));
  Rng rng(6);
  for (std::size_t n = 20; n <= 200; n += 20) {
    dense.push_back(sequence_stats(sample_w_random_graph(Graphon::constant(0.5), n, rng)));
  }
  // stars: d_max/m = 1 and sum d^2 / m^2 = 1 + 1/i
  const auto s = classify_sequence(stars);
  EXPECT_DOUBLE_EQ(s.max_degree_evidence, 1.0);
  EXPECT_NEAR(s.square_degree_evidence, 1.0, 0.05);
  EXPECT_GE(s.square_degree_evidence, 1.0);

  const auto p = classify_sequence(paths);
  // sum d^2 = 4n - 6 on n - 1 edges, smallest at the longest path
  EXPECT_DOUBLE_EQ(p.square_degree_evidence, (4.0 * 400 - 6) / (399.0 * 399.0));
  EXPECT_LT(p.square_degree_evidence, 0.05);

  const auto d = classify_sequence(dense);
  EXPECT_LT(d.square_degree_evidence, 0.1);
  EXPECT_LT(d.max_degree_evidence, 0.1);

  EXPECT_THROW(classify_sequence(std::vector<SequenceStats>{}), DomainError);
}
