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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/estimators.hpp"
#include "graphmix/graphon.hpp"
#include "graphmix/mixture.hpp"
#include "graphmix/parallel.hpp"
#include "graphmix/partition.hpp"

namespace graphmix {

/// One experiment of a suite: a (U, W) pair and its graph sizes.
/// For the top-k suite (n_d, m_s) is the training member and
/// (test_n_d, test_m_s) the test member grown from it.
struct ExperimentSpec {
  std::string name;
  std::string graphon_w;
  std::string partition_u;
  std::size_t n_d = 0;
  std::size_t m_s = 0;
  std::size_t test_n_d = 0;
  std::size_t test_m_s = 0;
};

struct ReplicateResult {
  std::size_t replicate = 0;
  std::size_t k_hat = 0;
  std::size_t node_count = 0;
  double mape_proposed = 0.0;
  double mape_baseline = 0.0;
  double covered_mass = 0.0;  // sum of true p_j over j <= k_hat
};

struct Stat {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};

inline Stat summarize(const std::vector<double>& v) {
  Stat s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    for (double x : v) s.sd += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(s.sd / static_cast<double>(v.size() - 1));
  }
  return s;
}

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ReplicateResult> replicates;

  Stat proposed() const { return field(&ReplicateResult::mape_proposed); }
  Stat baseline() const { return field(&ReplicateResult::mape_baseline); }
  Stat covered_mass() const { return field(&ReplicateResult::covered_mass); }
  Stat k_hat() const {
    std::vector<double> v;
    for (const auto& r : replicates) v.push_back(static_cast<double>(r.k_hat));
    return summarize(v);
  }

 private:
  Stat field(double ReplicateResult::*f) const {
    std::vector<double> v;
    for (const auto& r : replicates) v.push_back(r.*f);
    return summarize(v);
  }
};

struct SuiteOptions {
  std::size_t replicates = 10;
  double scale = 1.0;  // multiplies every n_d and m_s
  std::uint64_t seed = 1;
  JoinConfig join;
  EstimateOptions estimate;
  std::size_t workers = 0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"table1:topk", "table1:finiteU",
                                              "table1:infiniteU"};
  return names;
}

/// Default experiments of a suite. Train/test sizes of the top-k suite are
/// chosen so that the members have about 11000 and 13200 nodes.
inline std::vector<ExperimentSpec> suite_experiments(const std::string& suite) {
  if (suite == "table1:topk") {
    auto make = [](std::string name, std::string w, std::string u) {
      // 49 is the most stars the partition can realize
      return ExperimentSpec{std::move(name), std::move(w), std::move(u),
                            300, 11000 - 300 - 49, 360, 13200 - 360 - 49};
    };
    return {make("experiment1", "exp_sum", "power:1.2:2:50"),
            make("experiment2", "exp_sum", "geom:1.2:2:50"),
            make("experiment3", "const:0.1", "power:1.2:2:50"),
            make("experiment4", "const:0.1", "geom:1.2:2:50")};
  }
  if (suite == "table1:finiteU") {
    auto make = [](std::string name, std::string u) {
      return ExperimentSpec{std::move(name), "exp_sum", std::move(u), 1000, 20000, 0, 0};
    };
    return {make("experiment1", "mass:[0.5,0.3333333333333333,0.16666666666666667]"),
            make("experiment2", "mass:[0.27,0.26,0.24,0.23]"),
            make("experiment3", "mass:[0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1]"),
            make("experiment4",
                 "mass:[0.5,0.3333333333333333,0.25,0.2,0.16666666666666667]:rescale")};
  }
  if (suite == "table1:infiniteU") {
    // each family gets its own graph size
    return {{"experiment1", "exp_sum", "power:1.2:2:50", 1000, 200000, 0, 0},
            {"experiment2", "exp_sum", "geom:1.2:2:50", 800, 250000, 0, 0},
            {"experiment3", "exp_sum", "loglaw:49", 600, 300000, 0, 0},
            {"experiment4", "exp_sum", "factorial:49", 600, 300000, 0, 0}};
  }
  throw DomainError("unknown suite '" + suite + "'");
}

namespace detail {

inline std::size_t scaled(std::size_t v, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                      static_cast<double>(v) * scale)));
}

inline double sum_head(std::span<const double> p, std::size_t k) {
  double s = 0.0;
  for (std::size_t j = 0; j < std::min(k, p.size()); ++j) s += p[j];
  return s;
}

// MAPE of estimates against the first `len` true weights; missing estimates
// count as 0.
inline double partition_mape(std::span<const double> truth,
                             std::span<const double> est, std::size_t len) {
  std::vector<double> a(truth.begin(), truth.begin() + static_cast<std::ptrdiff_t>(len));
  std::vector<double> b(len, 0.0);
  for (std::size_t j = 0; j < std::min(len, est.size()); ++j) b[j] = est[j];
  return mape(a, b);
}

inline ReplicateResult run_topk(const ExperimentSpec& e, const MassPartition& u,
                                const Graphon& w, const SuiteOptions& opt, Rng rng) {
  MixtureSequence seq(u, w, opt.join, rng);
  seq.grow_to(scaled(e.n_d, opt.scale), scaled(e.m_s, opt.scale));
  const auto train = seq.snapshot();
  seq.grow_to(std::max(scaled(e.test_n_d, opt.scale), train.n_d),
              std::max(scaled(e.test_m_s, opt.scale), train.m_s));
  const auto test = seq.snapshot();

  const auto train_spec = degree_spectrum(train.graph);
  const auto test_spec = degree_spectrum(test.graph);
  ReplicateResult r;
  r.k_hat = estimate_k_infinite(train_spec, opt.estimate.percentile_c,
                                opt.estimate.min_seg).k_hat;
  r.node_count = train.graph.node_count();
  const auto top = top_k_degrees(train_spec, r.k_hat);
  const auto actual = to_reals(top_k_degrees(test_spec, r.k_hat));
  const auto n1 = train.graph.node_count();
  const auto n2 = test.graph.node_count();
  r.mape_proposed = mape(actual, predict_top_k(top, n1, n2));
  r.mape_baseline = mape(actual, baseline_sqrt_predict(top, n1, n2));
  r.covered_mass = sum_head(u.weights(), r.k_hat);
  return r;
}

inline ReplicateResult run_partition(const ExperimentSpec& e, bool finite,
                                     const MassPartition& u, const Graphon& w,
                                     const SuiteOptions& opt, Rng rng) {
  const auto mix = generate_mixture(u, w, scaled(e.n_d, opt.scale),
                                    scaled(e.m_s, opt.scale), opt.join, rng);
  const auto spec = degree_spectrum(mix.graph);
  const auto est = finite ? estimate_finite(spec, opt.estimate)
                          : estimate_infinite(spec, opt.estimate);
  ReplicateResult r;
  r.k_hat = est.k_hat;
  r.node_count = mix.graph.node_count();
  r.covered_mass = sum_head(u.weights(), r.k_hat);
  // finite: every true weight is scored; infinite: the first k_hat of them
  const std::size_t len = finite ? u.size() : std::min(r.k_hat, u.size());
  r.mape_proposed = partition_mape(u.weights(), est.p_hat, len);
  r.mape_baseline = partition_mape(u.weights(), baseline_partition(spec, r.k_hat), len);
  return r;
}

}  // namespace detail

/// Runs one experiment: replicate r draws from Rng(seed).split(index).split(r).
inline ExperimentResult run_experiment(const std::string& suite, const ExperimentSpec& e,
                                       std::size_t index, const SuiteOptions& opt) {
  if (opt.replicates == 0) throw DomainError("replicates must be >= 1");
  if (!(opt.scale > 0.0)) throw DomainError("scale must be > 0");
  const auto u = parse_partition(e.partition_u);
  const auto w = parse_graphon(e.graphon_w);
  ExperimentResult res;
  res.spec = e;
  res.replicates.resize(opt.replicates);
  const Rng base = Rng(opt.seed).split(index);
  parallel_for(
      opt.replicates,
      [&](std::size_t r) {
        Rng rng = base.split(r);
        ReplicateResult out;
        if (suite == "table1:topk") {
          out = detail::run_topk(e, u, w, opt, rng);
        } else if (suite == "table1:finiteU") {
          out = detail::run_partition(e, true, u, w, opt, rng);
        } else if (suite == "table1:infiniteU") {
          out = detail::run_partition(e, false, u, w, opt, rng);
        } else {
          throw DomainError("unknown suite '" + suite + "'");
        }
        out.replicate = r;
        res.replicates[r] = out;
      },
      opt.workers);
  return res;
}

inline std::vector<ExperimentResult> run_suite(const std::string& suite,
                                               const SuiteOptions& opt,
                                               std::vector<ExperimentSpec> experiments = {}) {
  if (experiments.empty()) experiments = suite_experiments(suite);
  std::vector<ExperimentResult> out;
  for (std::size_t i = 0; i < experiments.size(); ++i) {
    out.push_back(run_experiment(suite, experiments[i], i + 1, opt));
  }
  return out;
}

}  // namespace graphmix
