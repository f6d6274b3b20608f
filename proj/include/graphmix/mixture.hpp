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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"
#include "graphmix/mass_partition.hpp"
#include "graphmix/parallel.hpp"
#include "graphmix/partition.hpp"
#include "graphmix/rng.hpp"

namespace graphmix {

struct JoinConfig {
  // m_new = round-half-up(c * m_d)
  double edge_multiplier_c = 1.0;
  // Placement budget: collision_retries * m_new draws in total.
  std::size_t collision_retries = 100;
};

inline std::size_t new_edge_count(double c, std::size_t m_d) {
  if (!(c >= 0.0)) throw DomainError("edge multiplier c must be >= 0");
  return static_cast<std::size_t>(std::floor(c * static_cast<double>(m_d) + 0.5));
}

struct NodeOrigin {
  enum class Part { dense, sparse_hub, sparse_leaf, sparse_isolated_edge };
  static constexpr std::size_t kNoPartition = static_cast<std::size_t>(-1);

  Part part = Part::dense;
  std::size_t partition_index = kNoPartition;

  bool is_sparse() const { return part != Part::dense; }
  friend bool operator==(const NodeOrigin&, const NodeOrigin&) = default;
};

inline const char* to_string(NodeOrigin::Part part) {
  switch (part) {
    case NodeOrigin::Part::dense: return "dense";
    case NodeOrigin::Part::sparse_hub: return "sparse_hub";
    case NodeOrigin::Part::sparse_leaf: return "sparse_leaf";
    case NodeOrigin::Part::sparse_isolated_edge: return "sparse_isolated_edge";
  }
  return "?";
}

/// A joined graph with per-node provenance.
struct MixtureGraph {
  Graph graph;
  std::vector<NodeOrigin> node_origin;
  std::size_t n_d = 0;  // dense nodes
  std::size_t n_s = 0;  // sparse nodes
  std::size_t m_d = 0;  // dense edges before joining
  std::size_t m_s = 0;  // sparse edges before joining
  std::size_t m_new = 0;
  // partition index -> hub node, for every realized star (size >= 2)
  std::map<std::size_t, NodeId> hubs;
};

namespace detail {

inline std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Adds `count` distinct dense-sparse edges, endpoints uniform within each
// part, resampling pairs already present in `taken`.
inline void add_cross_edges(std::span<const NodeId> dense,
                            std::span<const NodeId> sparse, std::size_t count,
                            std::size_t retry_factor,
                            std::unordered_set<std::uint64_t>& taken,
                            std::vector<Edge>& out, Rng& rng) {
  if (count == 0) return;
  const auto capacity = static_cast<double>(dense.size()) *
                        static_cast<double>(sparse.size());
  if (static_cast<double>(taken.size() + count) > capacity) {
    throw CapacityError("cannot place " + std::to_string(count) +
                        " distinct cross edges between " +
                        std::to_string(dense.size()) + " dense and " +
                        std::to_string(sparse.size()) + " sparse nodes");
  }
  std::size_t budget = std::max<std::size_t>(1, retry_factor) * count;
  std::size_t placed = 0;
  while (placed < count) {
    if (budget-- == 0) {
      throw CapacityError("ran out of retries placing cross edges (" +
                          std::to_string(placed) + " of " +
                          std::to_string(count) + " placed)");
    }
    const NodeId d = dense[rng.index(dense.size())];
    const NodeId s = sparse[rng.index(sparse.size())];
    if (!taken.insert(pair_key(d, s)).second) continue;
    out.emplace_back(d, s);
    ++placed;
  }
}

}  // namespace detail

/// Tags a star forest structurally: stars with >= 2 leaves get hub/leaf
/// tags with partition index = rank by star size, K_{1,1} components are
/// isolated edges.
inline std::vector<NodeOrigin> star_forest_origins(const Graph& g) {
  std::vector<NodeOrigin> origin(g.node_count(),
                                 {NodeOrigin::Part::sparse_leaf,
                                  NodeOrigin::kNoPartition});
  const auto deg = g.degrees();
  std::vector<std::pair<std::size_t, NodeId>> centers;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (deg[v] >= 2) centers.emplace_back(deg[v], v);
  }
  std::stable_sort(centers.begin(), centers.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; r < centers.size(); ++r) {
    origin[centers[r].second] = {NodeOrigin::Part::sparse_hub, r};
  }
  for (const auto& e : g.edges()) {
    if (deg[e.u] == 1 && deg[e.v] == 1) {
      origin[e.u].part = NodeOrigin::Part::sparse_isolated_edge;
      origin[e.v].part = NodeOrigin::Part::sparse_isolated_edge;
    } else if (deg[e.u] >= 2 && deg[e.v] == 1) {
      origin[e.v].partition_index = origin[e.u].partition_index;
    } else if (deg[e.v] >= 2 && deg[e.u] == 1) {
      origin[e.u].partition_index = origin[e.v].partition_index;
    }
  }
  return origin;
}

/// Joins a dense and a sparse graph. Nodes of g_d keep their ids, nodes of
/// g_s are shifted by g_d.node_count(). Exactly round(c * m_d) new edges are
/// added, each between a uniform dense node and a uniform sparse node.
///
/// New edges only ever cross between the parts. The joining rules fix the
/// count and the uniformity but not the endpoints' parts; cross edges are an
/// interpretation that leaves each part's internal structure untouched.
inline MixtureGraph join_graphs(const Graph& g_d, const Graph& g_s,
                                const JoinConfig& cfg, Rng& rng,
                                std::vector<NodeOrigin> sparse_origin = {}) {
  if (g_d.node_count() == 0 || g_s.node_count() == 0) {
    throw DomainError("join_graphs: both parts need at least one node");
  }
  if (sparse_origin.empty()) sparse_origin = star_forest_origins(g_s);
  if (sparse_origin.size() != g_s.node_count()) {
    throw DomainError("join_graphs: sparse origin size mismatch");
  }
  MixtureGraph mix;
  mix.n_d = g_d.node_count();
  mix.n_s = g_s.node_count();
  mix.m_d = g_d.edge_count();
  mix.m_s = g_s.edge_count();
  mix.m_new = new_edge_count(cfg.edge_multiplier_c, mix.m_d);

  std::vector<Edge> edges(g_d.edges().begin(), g_d.edges().end());
  const auto shift = static_cast<NodeId>(mix.n_d);
  for (const auto& e : g_s.edges()) edges.emplace_back(e.u + shift, e.v + shift);

  std::vector<NodeId> dense(mix.n_d), sparse(mix.n_s);
  std::iota(dense.begin(), dense.end(), NodeId{0});
  std::iota(sparse.begin(), sparse.end(), shift);
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(mix.m_new * 2);
  detail::add_cross_edges(dense, sparse, mix.m_new, cfg.collision_retries,
                          taken, edges, rng);

  mix.node_origin.assign(mix.n_d, NodeOrigin{});
  for (std::size_t v = 0; v < mix.n_s; ++v) {
    const auto& o = sparse_origin[v];
    mix.node_origin.push_back(o);
    if (o.part == NodeOrigin::Part::sparse_hub) {
      mix.hubs[o.partition_index] = static_cast<NodeId>(v) + shift;
    }
  }
  mix.graph = Graph(mix.n_d + mix.n_s, std::move(edges));
  return mix;
}

// Edge together with the growth step that created it.
struct StampedEdge {
  Edge edge;
  std::size_t step = 0;
};

/// Nested (U,W)-mixture sequence.
///
/// Each call to grow_to() extends the current member: new dense nodes get
/// fresh latent positions and connect to all dense nodes via W, new
/// line-graph vertices join a clique via U (each adds one leaf to the
/// corresponding star), and cross edges are topped up to round(c * m_d).
/// Earlier members are therefore subgraphs of later ones, which is how a
/// growing network is observed over time.
class MixtureSequence {
 public:
  MixtureSequence(MassPartition u, Graphon w, JoinConfig cfg, Rng rng)
      : u_(std::move(u)), w_(std::move(w)), cfg_(cfg), rng_(std::move(rng)),
        hub_of_(u_.size(), kNone), clique_size_(u_.size(), 0) {}

  void grow_to(std::size_t n_d, std::size_t m_s) {
    if (n_d < dense_.size() || m_s < m_s_) {
      throw DomainError("MixtureSequence can only grow");
    }
    if (n_d == 0 || m_s == 0) throw DomainError("grow_to needs n_d, m_s >= 1");
    ++step_;
    grow_dense(n_d);
    grow_sparse(m_s);
    const std::size_t target = new_edge_count(cfg_.edge_multiplier_c, m_d_);
    std::vector<Edge> added;
    detail::add_cross_edges(dense_, sparse_, target - m_new_,
                            cfg_.collision_retries, cross_taken_, added, rng_);
    for (const auto& e : added) stamped_.push_back({e, step_});
    m_new_ = target;
  }

  std::size_t step() const { return step_; }
  std::size_t node_count() const { return origin_.size(); }
  std::span<const StampedEdge> stamped_edges() const { return stamped_; }
  const MassPartition& partition() const { return u_; }

  MixtureGraph snapshot() const {
    MixtureGraph mix;
    mix.n_d = dense_.size();
    mix.n_s = sparse_.size();
    mix.m_d = m_d_;
    mix.m_s = m_s_;
    mix.m_new = m_new_;
    mix.node_origin = origin_;
    for (std::size_t j = 0; j < hub_of_.size(); ++j) {
      if (hub_of_[j] == kNone) continue;
      if (clique_size_[j] >= 2) {
        mix.hubs[j] = hub_of_[j];
      } else {
        // a single-vertex clique inverts to an isolated edge
        mix.node_origin[hub_of_[j]].part = NodeOrigin::Part::sparse_isolated_edge;
        mix.node_origin[hub_of_[j] + 1].part =
            NodeOrigin::Part::sparse_isolated_edge;
      }
    }
    std::vector<Edge> edges;
    edges.reserve(stamped_.size());
    for (const auto& se : stamped_) edges.push_back(se.edge);
    mix.graph = Graph(origin_.size(), std::move(edges));
    return mix;
  }

 private:
  static constexpr NodeId kNone = static_cast<NodeId>(-1);

  NodeId new_node(NodeOrigin origin) {
    origin_.push_back(origin);
    return static_cast<NodeId>(origin_.size() - 1);
  }

  void grow_dense(std::size_t n_d) {
    while (dense_.size() < n_d) {
      const double x = rng_.uniform();
      const NodeId id = new_node({});
      for (std::size_t j = 0; j < dense_.size(); ++j) {
        if (rng_.bernoulli(w_(x, latent_[j]))) {
          stamped_.push_back({Edge(dense_[j], id), step_});
          ++m_d_;
        }
      }
      latent_.push_back(x);
      dense_.push_back(id);
    }
  }

  void grow_sparse(std::size_t m_s) {
    using Part = NodeOrigin::Part;
    for (; m_s_ < m_s; ++m_s_) {
      const auto j = draw_clique_label(u_, rng_);
      NodeId hub;
      NodeId leaf;
      if (j == MassPartition::npos) {
        hub = new_node({Part::sparse_isolated_edge, NodeOrigin::kNoPartition});
        leaf = new_node({Part::sparse_isolated_edge, NodeOrigin::kNoPartition});
        sparse_.push_back(hub);
      } else {
        if (hub_of_[j] == kNone) {
          hub_of_[j] = new_node({Part::sparse_hub, j});
          sparse_.push_back(hub_of_[j]);
        }
        hub = hub_of_[j];
        leaf = new_node({Part::sparse_leaf, j});
        ++clique_size_[j];
      }
      sparse_.push_back(leaf);
      stamped_.push_back({Edge(hub, leaf), step_});
    }
  }

  MassPartition u_;
  Graphon w_;
  JoinConfig cfg_;
  Rng rng_;

  std::size_t step_ = 0;
  std::vector<NodeOrigin> origin_;
  std::vector<double> latent_;
  std::vector<NodeId> dense_;
  std::vector<NodeId> sparse_;
  std::vector<NodeId> hub_of_;
  std::vector<std::size_t> clique_size_;
  std::size_t m_d_ = 0;
  std::size_t m_s_ = 0;
  std::size_t m_new_ = 0;
  std::vector<StampedEdge> stamped_;
  std::unordered_set<std::uint64_t> cross_taken_;
};

/// One (U,W)-mixture: G_d ~ G(n_d, W), H_s ~ G(m_s, U), G_s = L^-1(H_s),
/// then joined. The star forest is built from the clique sizes directly,
/// which is the same graph inverse_line_graph_disjoint(H_s) would return
/// without materializing the sum C(c_j, 2) clique edges.
inline MixtureGraph generate_mixture(const MassPartition& u, const Graphon& w,
                                     std::size_t n_d, std::size_t m_s,
                                     const JoinConfig& cfg, Rng& rng) {
  MixtureSequence seq(u, w, cfg, Rng(rng.engine()()));
  seq.grow_to(n_d, m_s);
  return seq.snapshot();
}

/// Growth schedule for n_s/n_d along a sequence: n_d(i) = base_n_d * i and
/// m_s(i) = ceil(ratio(i) * n_d(i)). Since a star forest with m_s edges has
/// m_s plus (number of stars) nodes, n_s(i) tracks ratio(i) * n_d(i).
struct RatioSchedule {
  enum class Kind { constant, sqrt_growth, linear, quadratic, inverse_sqrt };

  Kind kind = Kind::constant;
  double param = 1.0;  // c for constant, a for sqrt_growth (ratio a*sqrt(i))
  std::size_t base_n_d = 50;

  double ratio(std::size_t i) const {
    const double x = static_cast<double>(i);
    switch (kind) {
      case Kind::constant: return param;
      case Kind::sqrt_growth: return param * std::sqrt(x);
      case Kind::linear: return x;
      case Kind::quadratic: return x * x;
      case Kind::inverse_sqrt: return 1.0 / std::sqrt(x);
    }
    return 1.0;
  }

  std::size_t n_d(std::size_t i) const { return base_n_d * i; }

  std::size_t m_s(std::size_t i) const {
    const double target = std::ceil(ratio(i) * static_cast<double>(n_d(i)) - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(target));
  }
};

inline RatioSchedule::Kind parse_schedule_kind(const std::string& name) {
  using K = RatioSchedule::Kind;
  if (name == "constant") return K::constant;
  if (name == "sqrt_growth" || name == "sqrt") return K::sqrt_growth;
  if (name == "linear") return K::linear;
  if (name == "quadratic") return K::quadratic;
  if (name == "inverse_sqrt") return K::inverse_sqrt;
  throw FormatError("unknown schedule kind '" + name + "'");
}

struct DensityPoint {
  std::size_t step = 0;
  std::size_t n_d = 0;
  std::size_t n_s = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.0;
};

/// One independent mixture per step i = 1..steps (member i uses rng.split(i)),
/// recording 2m/n^2 along the schedule.
inline std::vector<DensityPoint> density_trajectory(const RatioSchedule& schedule,
                                                    const MassPartition& u,
                                                    const Graphon& w,
                                                    const JoinConfig& cfg,
                                                    std::size_t steps,
                                                    const Rng& rng) {
  if (steps < 2) throw DomainError("density_trajectory needs at least 2 steps");
  std::vector<DensityPoint> out(steps);
  parallel_for(steps, [&](std::size_t k) {
    const std::size_t i = k + 1;
    Rng member = rng.split(i);
    const auto mix = generate_mixture(u, w, schedule.n_d(i), schedule.m_s(i),
                                      cfg, member);
    out[k] = {i, mix.n_d, mix.n_s, mix.graph.node_count(),
              mix.graph.edge_count(), edge_density(mix.graph)};
  });
  return out;
}

}  // namespace graphmix
