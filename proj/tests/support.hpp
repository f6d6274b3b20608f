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

// Shared helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "graphmix/graph.hpp"
#include "graphmix/rng.hpp"

namespace graphmix::support {

// Star forest with the given leaf counts, stars laid out hub first.
inline Graph make_star_forest(const std::vector<std::size_t>& leaves) {
  std::vector<Edge> edges;
  NodeId next = 0;
  for (auto l : leaves) {
    const NodeId hub = next++;
    for (std::size_t i = 0; i < l; ++i) edges.emplace_back(hub, next++);
  }
  return Graph(next, std::move(edges));
}

// Multiset of star sizes of a star forest (0 for isolated nodes is skipped).
inline std::vector<std::size_t> star_sizes(const Graph& g) {
  const auto deg = g.degrees();
  std::vector<std::size_t> sizes;
  std::vector<bool> seen(g.node_count(), false);
  for (const auto& e : g.edges()) {
    if (deg[e.u] == 1 && deg[e.v] == 1) {
      sizes.push_back(1);
      seen[e.u] = seen[e.v] = true;
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (deg[v] >= 2) sizes.push_back(deg[v]);
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

// Random simple graph with edge probability p.
inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  return Graph(n, std::move(edges));
}

// Random node relabeling of g.
inline Graph permuted(const Graph& g, Rng& rng) {
  std::vector<NodeId> perm(g.node_count());
  for (NodeId i = 0; i < perm.size(); ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
  return Graph(g.node_count(), std::move(edges));
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace graphmix::support
