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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/graph.hpp"

// Degrees enter every estimator through natural logs. Only differences and
// argmins of logs are used, so the base does not matter.

namespace graphmix {

// deg * n_test / n_train
inline std::vector<double> predict_top_k(std::span<const std::size_t> train_top,
                                         std::size_t n_train, std::size_t n_test) {
  if (n_train == 0 || n_test == 0) throw DomainError("predict_top_k: n must be >= 1");
  if (!std::is_sorted(train_top.begin(), train_top.end(), std::greater<>())) {
    throw DomainError("predict_top_k: train degrees must be non-increasing");
  }
  const double f = static_cast<double>(n_test) / static_cast<double>(n_train);
  std::vector<double> out;
  out.reserve(train_top.size());
  for (auto d : train_top) out.push_back(static_cast<double>(d) * f);
  return out;
}

// deg * sqrt(n_test / n_train)
inline std::vector<double> baseline_sqrt_predict(std::span<const std::size_t> train_top,
                                                 std::size_t n_train,
                                                 std::size_t n_test) {
  if (n_train == 0 || n_test == 0) {
    throw DomainError("baseline_sqrt_predict: n must be >= 1");
  }
  const double f =
      std::sqrt(static_cast<double>(n_test) / static_cast<double>(n_train));
  std::vector<double> out;
  out.reserve(train_top.size());
  for (auto d : train_top) out.push_back(static_cast<double>(d) * f);
  return out;
}

inline double mape(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size() || actual.empty()) {
    throw DomainError("mape: need two non-empty sequences of equal length");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (!(actual[i] > 0.0)) throw DomainError("mape: actual values must be > 0");
    acc += std::abs(predicted[i] - actual[i]) / actual[i];
  }
  return 100.0 * acc / static_cast<double>(actual.size());
}

inline std::vector<double> to_reals(std::span<const std::size_t> v) {
  return {v.begin(), v.end()};
}

/// q-th percentile (0..100) with linear interpolation between order
/// statistics, as numpy's default.
inline double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("percentile of an empty set");
  if (!(q >= 0.0 && q <= 100.0)) throw DomainError("percentile must be in [0,100]");
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

// Distinct nonzero degrees, descending.
inline std::vector<std::size_t> positive_unique_degrees(const DegreeSpectrum& spec) {
  std::vector<std::size_t> u;
  for (auto d : spec.unique_degrees) {
    if (d > 0) u.push_back(d);
  }
  return u;
}

// ---------------------------------------------------------------- finite U

/// Which degrees the finite log-gap scan looks at: the top max_unique
/// distinct values, further cut at the given percentile of those values.
struct SmallDegreePolicy {
  std::size_t max_unique = 64;
  double percentile = 50.0;
};

struct FiniteKResult {
  std::size_t k_hat = 0;
  // gaps[l] = ln d_(l+1) - ln d_(l+2), over retained degrees with multiplicity
  std::vector<double> log_gaps;
  std::size_t threshold_degree = 0;

  double max_gap() const {
    return log_gaps.empty() ? 0.0 : *std::max_element(log_gaps.begin(), log_gaps.end());
  }
};

inline FiniteKResult estimate_k_finite(const DegreeSpectrum& spec,
                                       const SmallDegreePolicy& policy = {}) {
  auto unique = positive_unique_degrees(spec);
  if (policy.max_unique == 0) throw DomainError("max_unique must be >= 1");
  if (unique.size() > policy.max_unique) unique.resize(policy.max_unique);
  if (unique.size() < 3) {
    throw DomainError("estimate_k_finite: need >= 3 distinct nonzero degrees, have " +
                      std::to_string(unique.size()));
  }
  const double cut = percentile({unique.begin(), unique.end()}, policy.percentile);
  std::size_t kept_unique = 0;
  for (auto d : unique) {
    if (static_cast<double>(d) >= cut) ++kept_unique;
  }
  if (kept_unique < 3) {
    throw DomainError("estimate_k_finite: fewer than 3 distinct degrees above the "
                      "exclusion threshold");
  }
  FiniteKResult res;
  res.threshold_degree = unique[kept_unique - 1];
  std::vector<double> logs;
  for (auto d : spec.sorted_degrees) {
    if (d < res.threshold_degree) break;
    logs.push_back(std::log(static_cast<double>(d)));
  }
  res.log_gaps.resize(logs.size() - 1);
  for (std::size_t l = 0; l + 1 < logs.size(); ++l) {
    res.log_gaps[l] = logs[l] - logs[l + 1];
  }
  res.k_hat = static_cast<std::size_t>(
                  std::max_element(res.log_gaps.begin(), res.log_gaps.end()) -
                  res.log_gaps.begin()) + 1;
  return res;
}

// ------------------------------------------------------------- segment fit

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double loss = 0.0;  // sum of squared residuals
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Ordinary least squares. A single point gives a flat line through it with
/// zero loss, so a one-point segment is allowed inside a segment scan.
inline LineFit ols_fit(std::span<const Point> pts) {
  if (pts.empty()) throw DomainError("ols_fit: no points");
  const auto n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  if (pts.size() == 1) return {0.0, my, 0.0};
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (!(sxx > 0.0)) throw DomainError("ols_fit: all x values are equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (const auto& p : pts) {
    const double r = p.y - f.intercept - f.slope * p.x;
    f.loss += r * r;
  }
  return f;
}

struct SegmentFit {
  std::size_t cutoff_r = 0;  // points on the first segment
  LineFit first;
  LineFit second;
  double total_loss = 0.0;
};

/// Exhaustive two-segment least squares: r runs over [min_seg, N - min_seg],
/// the first r points form one line and the rest another. Losses equal up to
/// a relative 1e-12 count as ties, resolved toward the smaller r.
inline SegmentFit fit_two_segments(std::span<const Point> pts, std::size_t min_seg = 3) {
  if (min_seg == 0) throw DomainError("fit_two_segments: min_seg must be >= 1");
  if (pts.size() < 2 * min_seg) {
    throw DomainError("fit_two_segments: need >= " + std::to_string(2 * min_seg) +
                      " points, have " + std::to_string(pts.size()));
  }
  SegmentFit best;
  bool have = false;
  for (std::size_t r = min_seg; r + min_seg <= pts.size(); ++r) {
    SegmentFit cand;
    cand.cutoff_r = r;
    cand.first = ols_fit(pts.first(r));
    cand.second = ols_fit(pts.subspan(r));
    cand.total_loss = cand.first.loss + cand.second.loss;
    if (!have ||
        cand.total_loss < best.total_loss - 1e-12 * (1.0 + std::abs(best.total_loss))) {
      best = cand;
      have = true;
    }
  }
  return best;
}

// ----------------------------------------------------------- infinite U

struct InfiniteKResult {
  std::size_t k_hat = 0;
  SegmentFit fit;
  std::vector<Point> points;  // (j, ln u_j), j from 1
  double cutoff_degree = 0.0;
};

/// Points are (j, ln u_j) for the distinct nonzero degrees strictly above the
/// given percentile of distinct nonzero degrees; the two-segment breakpoint is
/// the hub count.
inline InfiniteKResult estimate_k_infinite(const DegreeSpectrum& spec,
                                           double percentile_c = 50.0,
                                           std::size_t min_seg = 3) {
  const auto unique = positive_unique_degrees(spec);
  if (unique.empty()) throw DomainError("estimate_k_infinite: graph has no edges");
  InfiniteKResult res;
  res.cutoff_degree = percentile({unique.begin(), unique.end()}, percentile_c);
  for (auto d : unique) {
    if (static_cast<double>(d) <= res.cutoff_degree) break;
    res.points.push_back({static_cast<double>(res.points.size() + 1),
                          std::log(static_cast<double>(d))});
  }
  res.fit = fit_two_segments(res.points, min_seg);
  res.k_hat = res.fit.cutoff_r;
  return res;
}

// ------------------------------------------------------ partition estimates

enum class EstimateMode { finite, infinite };

inline const char* to_string(EstimateMode m) {
  return m == EstimateMode::finite ? "finite" : "infinite";
}

struct PartitionEstimate {
  EstimateMode mode = EstimateMode::finite;
  std::size_t k_hat = 0;
  std::vector<double> p_hat;
  std::vector<double> log_gaps;       // finite mode
  std::optional<InfiniteKResult> fit;  // infinite mode
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<double> normalized_head(const DegreeSpectrum& spec, std::size_t k,
                                           double denom) {
  std::vector<double> p;
  p.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    p.push_back(static_cast<double>(spec.sorted_degrees[j]) / denom);
  }
  return p;
}

inline double head_sum(const DegreeSpectrum& spec, std::size_t k) {
  if (k == 0 || k > spec.node_count()) {
    throw DomainError("k_hat=" + std::to_string(k) + " outside [1, " +
                      std::to_string(spec.node_count()) + "]");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < k; ++j) s += static_cast<double>(spec.sorted_degrees[j]);
  if (!(s > 0.0)) throw DomainError("top-k degrees sum to zero");
  return s;
}

}  // namespace detail

// p_j = d_(j) / sum_{l <= k} d_(l)
inline PartitionEstimate estimate_partition_finite(const DegreeSpectrum& spec,
                                                   std::size_t k_hat) {
  PartitionEstimate e;
  e.mode = EstimateMode::finite;
  e.k_hat = k_hat;
  e.p_hat = detail::normalized_head(spec, k_hat, detail::head_sum(spec, k_hat));
  return e;
}

// Same normalization; differs from the finite case only in where k_hat came from.
inline PartitionEstimate estimate_partition_infinite(const DegreeSpectrum& spec,
                                                     std::size_t k_hat) {
  auto e = estimate_partition_finite(spec, k_hat);
  e.mode = EstimateMode::infinite;
  return e;
}

// p_j = d_(j) / sum of all degrees
inline std::vector<double> baseline_partition(const DegreeSpectrum& spec,
                                              std::size_t k_hat) {
  detail::head_sum(spec, k_hat);
  return detail::normalized_head(spec, k_hat,
                                 static_cast<double>(spec.degree_sum()));
}

struct EstimateOptions {
  SmallDegreePolicy small_degrees;
  double percentile_c = 50.0;
  std::size_t min_seg = 3;
  double auto_gap_threshold = 2.302585092994046;  // ln 10
};

inline PartitionEstimate estimate_finite(const DegreeSpectrum& spec,
                                         const EstimateOptions& opt = {}) {
  auto k = estimate_k_finite(spec, opt.small_degrees);
  auto e = estimate_partition_finite(spec, k.k_hat);
  e.log_gaps = std::move(k.log_gaps);
  return e;
}

inline PartitionEstimate estimate_infinite(const DegreeSpectrum& spec,
                                           const EstimateOptions& opt = {}) {
  auto k = estimate_k_infinite(spec, opt.percentile_c, opt.min_seg);
  auto e = estimate_partition_infinite(spec, k.k_hat);
  e.fit = std::move(k);
  return e;
}

/// Finite mode when the largest retained log-gap exceeds the threshold,
/// infinite otherwise.
inline PartitionEstimate estimate_auto(const DegreeSpectrum& spec,
                                       const EstimateOptions& opt = {}) {
  std::optional<FiniteKResult> k;
  std::string why;
  try {
    k = estimate_k_finite(spec, opt.small_degrees);
  } catch (const DomainError& err) {
    why = err.what();
  }
  if (k && k->max_gap() > opt.auto_gap_threshold) {
    auto e = estimate_partition_finite(spec, k->k_hat);
    e.log_gaps = std::move(k->log_gaps);
    return e;
  }
  auto e = estimate_infinite(spec, opt);
  if (k) {
    e.warnings.push_back("auto mode: largest log-gap " + std::to_string(k->max_gap()) +
                         " is below the threshold " +
                         std::to_string(opt.auto_gap_threshold) +
                         "; no finite set of hubs stands out, using infinite mode");
    e.log_gaps = std::move(k->log_gaps);
  } else {
    e.warnings.push_back("auto mode: finite scan unavailable (" + why +
                         "); using infinite mode");
  }
  return e;
}

// ------------------------------------------------------------- plot data

struct PlotSeries {
  std::string name;
  std::vector<Point> points;
};

/// Data behind a two-segment diagnostic plot: the log-degree points, both
/// fitted lines over their own ranges, and the reference line ln(m / j).
inline std::vector<PlotSeries> segment_plot_data(const InfiniteKResult& k,
                                                 std::size_t edge_count) {
  std::vector<PlotSeries> out(4);
  out[0].name = "log_degree";
  out[0].points = k.points;
  out[1].name = "segment1";
  out[2].name = "segment2";
  out[3].name = "reference";
  const auto m = static_cast<double>(std::max<std::size_t>(edge_count, 1));
  for (std::size_t i = 0; i < k.points.size(); ++i) {
    const double x = k.points[i].x;
    const auto& line = i < k.fit.cutoff_r ? k.fit.first : k.fit.second;
    out[i < k.fit.cutoff_r ? 1 : 2].points.push_back(
        {x, line.intercept + line.slope * x});
    out[3].points.push_back({x, std::log(m / x)});
  }
  return out;
}

}  // namespace graphmix
