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
#include <cmath>
#include <functional>
#include <cstddef>
#include <string>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"
#include "graphmix/line_graph.hpp"
#include "graphmix/partition.hpp"
#include "graphmix/rng.hpp"

namespace graphmix {

inline Graphon disjoint_clique_graphon(const MassPartition& p) {
  return Graphon::disjoint_clique(p);
}

// Interval index for one U-random vertex: inverse CDF on the cut points,
// MassPartition::npos for the leftover region.
inline std::size_t draw_clique_label(const MassPartition& p, Rng& rng) {
  return p.interval_of(rng.uniform());
}

/// Clique sizes of a U-random graph on m vertices, indexed by partition
/// entry, plus the number of vertices that fell in the leftover mass.
struct CliqueSample {
  std::vector<std::size_t> sizes;
  std::size_t leftover = 0;

  // Sizes >= 2 become cliques; size-1 groups and leftover vertices are
  // isolated.
  DisjointCliqueDecomposition decomposition() const {
    DisjointCliqueDecomposition d;
    d.isolated_vertex_count = leftover;
    for (auto c : sizes) {
      if (c >= 2) d.clique_sizes.push_back(c);
      if (c == 1) ++d.isolated_vertex_count;
    }
    std::sort(d.clique_sizes.begin(), d.clique_sizes.end(), std::greater<>());
    return d;
  }
};

inline CliqueSample sample_clique_sizes(const MassPartition& p, std::size_t m,
                                        Rng& rng) {
  CliqueSample s;
  s.sizes.assign(p.size(), 0);
  for (std::size_t t = 0; t < m; ++t) {
    const auto j = draw_clique_label(p, rng);
    if (j == MassPartition::npos) {
      ++s.leftover;
    } else {
      ++s.sizes[j];
    }
  }
  return s;
}

// Complete graphs on consecutive vertex blocks, then isolated vertices.
inline Graph disjoint_clique_graph(const DisjointCliqueDecomposition& d) {
  std::vector<Edge> edges;
  NodeId base = 0;
  for (auto c : d.clique_sizes) {
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = i + 1; j < c; ++j)
        edges.emplace_back(base + static_cast<NodeId>(i),
                           base + static_cast<NodeId>(j));
    base += static_cast<NodeId>(c);
  }
  return Graph(base + d.isolated_vertex_count, std::move(edges));
}

/// H ~ G(m, U) for the disjoint-clique graphon of `p`. The output has
/// sum C(c_j, 2) edges, so keep m modest; experiments work from
/// sample_clique_sizes directly.
inline Graph sample_disjoint_clique_graph(const MassPartition& p,
                                          std::size_t m, Rng& rng) {
  if (m == 0) throw DomainError("sample_disjoint_clique_graph needs m >= 1");
  return disjoint_clique_graph(sample_clique_sizes(p, m, rng).decomposition());
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Degree moments of the hub for p_j after joining:
///   mean = m_s p_j + c m_new / n_s
///   var  = m_s p_j (1 - p_j) + m_new (c / n_s)(1 - c / n_s)
/// Here c / n_s is the chance that one new edge lands on a given sparse node.
/// join_graphs picks exactly one sparse endpoint per new edge, i.e. c = 1,
/// whatever the edge multiplier of the JoinConfig.
inline Moments expected_hub_degree(double p_j, std::size_t m_s,
                                   std::size_t m_new, std::size_t n_s,
                                   double c) {
  if (!(p_j > 0.0 && p_j <= 1.0)) {
    throw DomainError("expected_hub_degree: p_j must lie in (0,1]");
  }
  const double ms = static_cast<double>(m_s);
  const double mn = static_cast<double>(m_new);
  double share = 0.0;
  if (m_new > 0) {
    if (n_s == 0) throw DomainError("expected_hub_degree: n_s must be positive");
    share = c / static_cast<double>(n_s);
  }
  return {ms * p_j + mn * share,
          ms * p_j * (1.0 - p_j) + mn * share * (1.0 - share)};
}

/// Upper bound 1/(alpha * k^alpha) on the mass beyond the first k entries
/// when p_i < 1/(i+1)^(1+alpha). Returned unclamped: a value above 1 means
/// the bound says nothing at this k.
inline double tail_mass_bound(double alpha, std::size_t k_hat) {
  if (!(alpha > 0.0)) throw DomainError("tail_mass_bound: alpha must be > 0");
  if (k_hat == 0) throw DomainError("tail_mass_bound: k_hat must be >= 1");
  return 1.0 / (alpha * std::pow(static_cast<double>(k_hat), alpha));
}

}  // namespace graphmix
