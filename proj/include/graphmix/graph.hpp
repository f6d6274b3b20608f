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
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphmix/error.hpp"

namespace graphmix {

using NodeId = std::uint32_t;

// Undirected edge stored canonically with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph on nodes 0..node_count-1.
///
/// The constructor canonicalizes, sorts and validates the edge list. Self
/// loops, duplicates and out-of-range endpoints are rejected with a
/// StructuralError rather than silently dropped.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t node_count, std::vector<Edge> edges)
      : node_count_(node_count), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      e = Edge(e.u, e.v);
      if (e.u == e.v) {
        throw StructuralError("self-loop at node " + std::to_string(e.u));
      }
      if (e.v >= node_count_) {
        throw StructuralError("edge (" + std::to_string(e.u) + "," +
                              std::to_string(e.v) + ") out of range for " +
                              std::to_string(node_count_) + " nodes");
      }
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw StructuralError("duplicate edge (" + std::to_string(dup->u) +
                            "," + std::to_string(dup->v) + ")");
    }
  }

  static Graph empty(std::size_t n) { return Graph(n, {}); }

  static Graph complete(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return Graph(n, std::move(edges));
  }

  // K_{1,leaves}; node 0 is the center.
  static Graph star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i)
      edges.emplace_back(0, static_cast<NodeId>(i));
    return Graph(leaves + 1, std::move(edges));
  }

  static Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
      edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    return Graph(n, std::move(edges));
  }

  static Graph cycle(std::size_t n) {
    if (n < 3) throw DomainError("cycle needs at least 3 nodes");
    auto edges = path(n).edges_;
    edges.emplace_back(0, static_cast<NodeId>(n - 1));
    return Graph(n, std::move(edges));
  }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(NodeId a, NodeId b) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(node_count_, 0);
    for (const auto& e : edges_) {
      ++deg[e.u];
      ++deg[e.v];
    }
    return deg;
  }

  // Adjacency lists, neighbors sorted ascending.
  std::vector<std::vector<NodeId>> adjacency() const {
    std::vector<std::vector<NodeId>> adj(node_count_);
    for (const auto& e : edges_) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
};

// Disjoint union; nodes of `b` are shifted by a.node_count().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  const auto shift = static_cast<NodeId>(a.node_count());
  for (const auto& e : b.edges()) edges.emplace_back(e.u + shift, e.v + shift);
  return Graph(a.node_count() + b.node_count(), std::move(edges));
}

/// Sorted degree multiset of a graph plus its distinct values.
struct DegreeSpectrum {
  std::vector<std::size_t> sorted_degrees;  // non-increasing
  std::vector<std::size_t> unique_degrees;  // strictly decreasing

  std::size_t node_count() const { return sorted_degrees.size(); }
  std::size_t degree_sum() const {
    return std::accumulate(sorted_degrees.begin(), sorted_degrees.end(),
                           std::size_t{0});
  }
};

inline DegreeSpectrum make_spectrum(std::vector<std::size_t> degrees) {
  DegreeSpectrum s;
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  s.sorted_degrees = std::move(degrees);
  s.unique_degrees = s.sorted_degrees;
  s.unique_degrees.erase(
      std::unique(s.unique_degrees.begin(), s.unique_degrees.end()),
      s.unique_degrees.end());
  return s;
}

inline DegreeSpectrum degree_spectrum(const Graph& g) {
  return make_spectrum(g.degrees());
}

// 2m / n^2
inline double edge_density(const Graph& g) {
  if (g.node_count() == 0) throw DomainError("edge density of a 0-node graph");
  const auto n = static_cast<double>(g.node_count());
  return 2.0 * static_cast<double>(g.edge_count()) / (n * n);
}

// sum(d^2) / (sum d)^2
inline double square_degree_ratio(const Graph& g) {
  if (g.edge_count() == 0) throw DomainError("square-degree ratio needs edges");
  double sq = 0.0;
  for (auto d : g.degrees()) sq += static_cast<double>(d) * static_cast<double>(d);
  const double total = 2.0 * static_cast<double>(g.edge_count());
  return sq / (total * total);
}

// d_max / m
inline double max_degree_ratio(const Graph& g) {
  if (g.edge_count() == 0) throw DomainError("max-degree ratio needs edges");
  const auto deg = g.degrees();
  const auto dmax = *std::max_element(deg.begin(), deg.end());
  return static_cast<double>(dmax) / static_cast<double>(g.edge_count());
}

inline std::vector<std::size_t> top_k_degrees(const DegreeSpectrum& spec,
                                              std::size_t k) {
  if (k == 0 || k > spec.node_count()) {
    throw DomainError("top_k_degrees: k=" + std::to_string(k) +
                      " outside [1, " + std::to_string(spec.node_count()) + "]");
  }
  return {spec.sorted_degrees.begin(),
          spec.sorted_degrees.begin() + static_cast<std::ptrdiff_t>(k)};
}

// Edge-list text: header "n <node_count>", then one "u v" per line.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << "n " << g.node_count() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      long long count = -1;
      if (!(ls >> tag >> count) || tag != "n" || count < 0) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": expected header 'n <node_count>'");
      }
      n = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": expected 'u v' with non-negative integers");
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (!have_header) throw FormatError("empty edge list (missing 'n' header)");
  return Graph(n, std::move(edges));
}

}  // namespace graphmix
