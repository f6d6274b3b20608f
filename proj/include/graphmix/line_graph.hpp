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

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/graph.hpp"

namespace graphmix {

/// L(G): one node per edge of G (indexed in G's sorted edge order), adjacent
/// when the two edges share an endpoint.
inline Graph line_graph(const Graph& g) {
  if (g.edge_count() == 0) throw DomainError("line graph of an edgeless graph");
  std::vector<std::vector<NodeId>> incident(g.node_count());
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    incident[edges[k].u].push_back(static_cast<NodeId>(k));
    incident[edges[k].v].push_back(static_cast<NodeId>(k));
  }
  std::vector<Edge> out;
  for (const auto& inc : incident)
    for (std::size_t a = 0; a < inc.size(); ++a)
      for (std::size_t b = a + 1; b < inc.size(); ++b)
        out.emplace_back(inc[a], inc[b]);
  // two distinct edges of a simple graph share at most one endpoint
  return Graph(g.edge_count(), std::move(out));
}

struct DisjointCliqueDecomposition {
  std::vector<std::size_t> clique_sizes;  // non-increasing, each >= 2
  std::size_t isolated_vertex_count = 0;

  std::size_t node_count() const {
    return std::accumulate(clique_sizes.begin(), clique_sizes.end(),
                           isolated_vertex_count);
  }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace detail

/// Splits `h` into its components and checks that each one is complete.
/// Throws StructuralError naming the first offending component otherwise.
inline DisjointCliqueDecomposition decompose_disjoint_cliques(const Graph& h) {
  const std::size_t n = h.node_count();
  detail::DisjointSets sets(n);
  for (const auto& e : h.edges()) sets.unite(e.u, e.v);

  std::vector<std::size_t> nodes(n, 0), edges(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++nodes[sets.find(v)];
  for (const auto& e : h.edges()) ++edges[sets.find(e.u)];

  DisjointCliqueDecomposition d;
  for (std::size_t root = 0; root < n; ++root) {
    const std::size_t c = nodes[root];
    if (c == 0) continue;
    if (edges[root] != c * (c - 1) / 2) {
      throw StructuralError("component containing node " +
                            std::to_string(root) + " has " +
                            std::to_string(c) + " nodes but " +
                            std::to_string(edges[root]) +
                            " edges; not a clique");
    }
    if (c == 1) {
      ++d.isolated_vertex_count;
    } else {
      d.clique_sizes.push_back(c);
    }
  }
  std::sort(d.clique_sizes.begin(), d.clique_sizes.end(), std::greater<>());
  return d;
}

/// Star forest whose line graph is the decomposed disjoint-clique graph:
/// each clique of size c becomes K_{1,c} (hub first, then its leaves) and
/// each isolated vertex an isolated edge K_{1,1}.
inline Graph star_forest(const DisjointCliqueDecomposition& d) {
  std::vector<Edge> edges;
  NodeId next = 0;
  auto add_star = [&](std::size_t leaves) {
    const NodeId hub = next++;
    for (std::size_t i = 0; i < leaves; ++i) edges.emplace_back(hub, next++);
  };
  for (auto c : d.clique_sizes) add_star(c);
  for (std::size_t i = 0; i < d.isolated_vertex_count; ++i) add_star(1);
  return Graph(next, std::move(edges));
}

/// Inverse line graph of a disjoint union of cliques.
///
/// Whitney's theorem leaves one ambiguity: K3 is the line graph of both K3
/// and K_{1,3}. Inputs here always come from disjoint-clique graphons, so
/// every triangle is mapped to the star K_{1,3}.
inline Graph inverse_line_graph_disjoint(const Graph& h) {
  return star_forest(decompose_disjoint_cliques(h));
}

// Per-graph quantities for sparsity-class diagnostics.
struct SequenceStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d_max = 0;
  double sum_sq = 0.0;  // sum of squared degrees
};

inline SequenceStats sequence_stats(const Graph& g) {
  SequenceStats s;
  s.n = g.node_count();
  s.m = g.edge_count();
  for (auto d : g.degrees()) {
    s.d_max = std::max(s.d_max, d);
    s.sum_sq += static_cast<double>(d) * static_cast<double>(d);
  }
  return s;
}

struct SparsityEvidence {
  double square_degree_evidence = 0.0;  // min of sum d^2 / m^2
  double max_degree_evidence = 0.0;     // min of d_max / m
};

/// Numerical evidence for the square-degree property and the max-degree
/// condition along a sequence: the minimum of each ratio over the trailing
/// ceil(len/2) members. Both conditions are liminf statements, so this is
/// evidence and never a membership verdict.
inline SparsityEvidence classify_sequence(std::span<const SequenceStats> seq) {
  if (seq.empty()) throw DomainError("classify_sequence: empty sequence");
  for (const auto& s : seq) {
    if (s.m == 0) throw DomainError("classify_sequence: member with no edges");
  }
  const std::size_t tail = (seq.size() + 1) / 2;
  SparsityEvidence ev{std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity()};
  for (std::size_t i = seq.size() - tail; i < seq.size(); ++i) {
    const double m = static_cast<double>(seq[i].m);
    ev.square_degree_evidence =
        std::min(ev.square_degree_evidence, seq[i].sum_sq / (m * m));
    ev.max_degree_evidence = std::min(
        ev.max_degree_evidence, static_cast<double>(seq[i].d_max) / m);
  }
  return ev;
}

}  // namespace graphmix
