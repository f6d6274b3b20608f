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
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/graph.hpp"
#include "graphmix/partition.hpp"
#include "graphmix/rng.hpp"

namespace graphmix {

using Kernel = std::function<double(double, double)>;

/// Symmetric kernel on the unit square with values in [0,1].
///
/// Four representations are supported: a constant, a named analytic
/// evaluator, a step function on an n x n grid (the empirical graphon of a
/// graph), and the disjoint-clique indicator of a mass-partition.
class Graphon {
 public:
  enum class Kind { constant, analytic, step, disjoint_clique };

  static Graphon constant(double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("constant graphon value must lie in [0,1]");
    }
    return Graphon(Constant{value});
  }

  static Graphon analytic(std::string name, Kernel kernel) {
    if (!kernel) throw DomainError("analytic graphon needs an evaluator");
    return Graphon(Analytic{std::move(name), std::move(kernel)});
  }

  // Row-major n x n grid; must be symmetric with entries in [0,1].
  static Graphon step(std::size_t n, std::vector<double> grid) {
    if (n == 0 || grid.size() != n * n) {
      throw DomainError("step graphon grid must be n*n with n >= 1");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = grid[i * n + j];
        if (!(v >= 0.0 && v <= 1.0)) {
          throw DomainError("step graphon entries must lie in [0,1]");
        }
        if (v != grid[j * n + i]) {
          throw DomainError("step graphon grid is not symmetric");
        }
      }
    }
    return Graphon(Step{n, std::move(grid)});
  }

  static Graphon disjoint_clique(MassPartition partition) {
    return Graphon(DisjointClique{std::move(partition)});
  }

  Kind kind() const { return static_cast<Kind>(repr_.index()); }

  double operator()(double x, double y) const {
    return std::visit([&](const auto& r) { return eval(r, x, y); }, repr_);
  }

  // Cell index of x in a step graphon: J_1 = [0, 1/n], J_i = ((i-1)/n, i/n].
  static std::size_t step_cell(double x, std::size_t n) {
    const double scaled = std::ceil(x * static_cast<double>(n));
    if (scaled <= 1.0) return 0;
    return std::min(static_cast<std::size_t>(scaled) - 1, n - 1);
  }

  std::size_t step_size() const { return as<Step>("step").n; }
  double step_value(std::size_t i, std::size_t j) const {
    const auto& s = as<Step>("step");
    return s.grid[i * s.n + j];
  }
  const std::vector<double>& step_grid() const { return as<Step>("step").grid; }

  const MassPartition& partition() const {
    return as<DisjointClique>("disjoint_clique").partition;
  }

  double constant_value() const { return as<Constant>("constant").value; }

  // Config-syntax description ("const:0.1", "exp_sum", "mass:[...]", ...).
  std::string describe() const {
    switch (kind()) {
      case Kind::constant: {
        std::ostringstream os;
        os.precision(17);
        os << "const:" << constant_value();
        return os.str();
      }
      case Kind::analytic:
        return std::get<Analytic>(repr_).name;
      case Kind::step:
        return "step:" + std::to_string(step_size());
      case Kind::disjoint_clique:
        return partition().describe();
    }
    return {};
  }

 private:
  struct Constant {
    double value;
  };
  struct Analytic {
    std::string name;
    Kernel kernel;
  };
  struct Step {
    std::size_t n;
    std::vector<double> grid;
  };
  struct DisjointClique {
    MassPartition partition;
  };
  using Repr = std::variant<Constant, Analytic, Step, DisjointClique>;

  explicit Graphon(Repr r) : repr_(std::move(r)) {}

  template <typename T>
  const T& as(const char* what) const {
    const T* p = std::get_if<T>(&repr_);
    if (!p) throw DomainError(std::string("graphon is not of kind ") + what);
    return *p;
  }

  static double eval(const Constant& c, double, double) { return c.value; }
  static double eval(const Analytic& a, double x, double y) {
    return a.kernel(x, y);
  }
  static double eval(const Step& s, double x, double y) {
    return s.grid[step_cell(x, s.n) * s.n + step_cell(y, s.n)];
  }
  static double eval(const DisjointClique& d, double x, double y) {
    const auto i = d.partition.interval_of(x);
    if (i == MassPartition::npos) return 0.0;
    return i == d.partition.interval_of(y) ? 1.0 : 0.0;
  }

  Repr repr_;
};

using AnalyticRegistry = std::map<std::string, Kernel>;

inline Graphon exp_sum_graphon() {
  return Graphon::analytic("exp_sum",
                           [](double x, double y) { return std::exp(-(x + y)); });
}

/// Parses graphon config syntax: "const:<v>", "exp_sum", any partition
/// literal (yielding the disjoint-clique graphon), or a name present in
/// `extra`.
inline Graphon parse_graphon(const std::string& text,
                             const AnalyticRegistry& extra = {}) {
  if (text.rfind("const:", 0) == 0) {
    return Graphon::constant(detail::parse_double(text.substr(6), text));
  }
  if (text == "exp_sum") return exp_sum_graphon();
  if (is_partition_literal(text)) {
    return Graphon::disjoint_clique(parse_partition(text));
  }
  if (auto it = extra.find(text); it != extra.end()) {
    return Graphon::analytic(it->first, it->second);
  }
  throw FormatError("unknown graphon '" + text + "'");
}

/// Samples G(n, W): latent x_i ~ U[0,1], edge ij with probability W(x_i, x_j).
inline Graph sample_w_random_graph(const Graphon& w, std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("sample_w_random_graph needs n >= 1");
  std::vector<double> x(n);
  for (auto& xi : x) xi = rng.uniform();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(w(x[i], x[j]))) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
      }
    }
  }
  return Graph(n, std::move(edges));
}

inline Graphon empirical_graphon(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw DomainError("empirical graphon of a 0-node graph");
  std::vector<double> grid(n * n, 0.0);
  for (const auto& e : g.edges()) {
    grid[e.u * n + e.v] = 1.0;
    grid[e.v * n + e.u] = 1.0;
  }
  return Graphon::step(n, std::move(grid));
}

/// D(x) = integral of W(x, y) dy, midpoint rule.
inline double degree_function(const Graphon& w, double x,
                              std::size_t quad_points = 4096) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("degree_function: x outside [0,1]");
  if (quad_points < 2) throw DomainError("degree_function: quad_points < 2");
  const double h = 1.0 / static_cast<double>(quad_points);
  double sum = 0.0;
  for (std::size_t k = 0; k < quad_points; ++k) {
    sum += w(x, (static_cast<double>(k) + 0.5) * h);
  }
  return sum * h;
}

struct DegreeFunctionSample {
  std::vector<double> grid_points;
  std::vector<double> values;
};

inline DegreeFunctionSample sample_degree_function(const Graphon& w,
                                                   std::size_t points,
                                                   std::size_t quad_points = 4096) {
  if (points < 2) throw DomainError("sample_degree_function: need >= 2 points");
  DegreeFunctionSample s;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(points - 1);
    s.grid_points.push_back(x);
    s.values.push_back(degree_function(w, x, quad_points));
  }
  return s;
}

namespace detail {

// max over cell unions S, T of |sum_{i in S, j in T} d_ij| / n^2
inline double step_cut_norm(const std::vector<double>& d, std::size_t n) {
  double best = 0.0;
  std::vector<double> col(n, 0.0);
  // Gray-code walk over row subsets; best T is all-positive or all-negative
  // columns of the current row-subset sum.
  for (std::size_t code = 1; code < (std::size_t{1} << n); ++code) {
    const std::size_t flip = static_cast<std::size_t>(__builtin_ctzll(code));
    const std::size_t gray = code ^ (code >> 1);
    const double sign = (gray >> flip) & 1U ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) col[j] += sign * d[flip * n + j];
    double pos = 0.0, neg = 0.0;
    for (double c : col) (c > 0.0 ? pos : neg) += c;
    best = std::max({best, pos, -neg});
  }
  return best / static_cast<double>(n * n);
}

}  // namespace detail

/// Exact cut distance between two step graphons on the same n <= 10 grid,
/// minimizing over cell permutations and maximizing over cell unions.
inline double brute_force_cut_distance(const Graphon& a, const Graphon& b) {
  if (a.kind() != Graphon::Kind::step || b.kind() != Graphon::Kind::step) {
    throw DomainError("brute_force_cut_distance needs step graphons");
  }
  const std::size_t n = a.step_size();
  if (b.step_size() != n) {
    throw DomainError("brute_force_cut_distance needs equal grid sizes");
  }
  if (n > 10) throw CapacityError("brute_force_cut_distance limited to n <= 10");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> diff(n * n);
  double best = std::numeric_limits<double>::infinity();
  do {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        diff[i * n + j] = a.step_value(i, j) - b.step_value(perm[i], perm[j]);
    best = std::min(best, detail::step_cut_norm(diff, n));
    if (best == 0.0) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace graphmix
