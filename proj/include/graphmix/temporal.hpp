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
#include <cctype>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphmix/error.hpp"
#include "graphmix/estimators.hpp"
#include "graphmix/graph.hpp"
#include "graphmix/mixture.hpp"

namespace graphmix {

enum class EventFormat { whitespace3col, csv3col };

inline EventFormat parse_event_format(const std::string& name) {
  if (name == "whitespace" || name == "whitespace3col" || name == "txt") {
    return EventFormat::whitespace3col;
  }
  if (name == "csv" || name == "csv3col") return EventFormat::csv3col;
  throw FormatError("unknown event format '" + name + "'");
}

struct TemporalEvent {
  NodeId u = 0;
  NodeId v = 0;
  long long t = 0;
  friend bool operator==(const TemporalEvent&, const TemporalEvent&) = default;
};

struct RejectedLine {
  std::size_t line = 0;
  std::string reason;
};

/// Cleaned, time-ordered edge events. Node indices are assigned in order of
/// first appearance along the time-sorted events, so the nodes touched by
/// events up to any time form a prefix of the index range.
class TemporalEdgeList {
 public:
  std::span<const TemporalEvent> events() const { return events_; }
  std::span<const std::string> external_ids() const { return ids_; }
  std::size_t node_count() const { return ids_.size(); }
  std::span<const RejectedLine> rejects() const { return rejects_; }
  std::size_t duplicates_dropped() const { return duplicates_; }
  std::size_t record_count() const { return records_; }

  long long min_time() const { return events_.front().t; }
  long long max_time() const { return events_.back().t; }

  /// Builds from raw (u, v, t) records: self-loops are rejected, repeated
  /// pairs keep their earliest time (first occurrence on equal times).
  static TemporalEdgeList from_records(
      const std::vector<std::pair<std::pair<std::string, std::string>, long long>>& raw,
      std::vector<RejectedLine> rejects = {}) {
    TemporalEdgeList tel;
    tel.rejects_ = std::move(rejects);
    tel.records_ = raw.size() + tel.rejects_.size();
    if (tel.records_ == 0) throw DomainError("no edge events in input");

    struct Rec {
      std::string a, b;
      long long t;
      std::size_t order;
    };
    std::map<std::pair<std::string, std::string>, Rec> first;
    std::size_t order = 0;
    for (const auto& [pair, t] : raw) {
      auto key = std::minmax(pair.first, pair.second);
      std::pair<std::string, std::string> k{key.first, key.second};
      auto it = first.find(k);
      if (it == first.end()) {
        first.emplace(k, Rec{pair.first, pair.second, t, order});
      } else {
        ++tel.duplicates_;
        if (t < it->second.t) it->second = Rec{pair.first, pair.second, t, order};
      }
      ++order;
    }
    std::vector<Rec> recs;
    recs.reserve(first.size());
    for (auto& [k, r] : first) recs.push_back(std::move(r));
    std::sort(recs.begin(), recs.end(), [](const Rec& x, const Rec& y) {
      return x.t != y.t ? x.t < y.t : x.order < y.order;
    });

    std::unordered_map<std::string, NodeId> index;
    auto id_of = [&](const std::string& s) {
      auto [it, fresh] = index.emplace(s, static_cast<NodeId>(tel.ids_.size()));
      if (fresh) tel.ids_.push_back(s);
      return it->second;
    };
    tel.events_.reserve(recs.size());
    for (const auto& r : recs) {
      const NodeId a = id_of(r.a);
      const NodeId b = id_of(r.b);
      tel.events_.push_back({a, b, r.t});
    }
    if (tel.events_.empty()) throw DomainError("no usable edge events in input");
    return tel;
  }

 private:
  std::vector<TemporalEvent> events_;
  std::vector<std::string> ids_;
  std::vector<RejectedLine> rejects_;
  std::size_t duplicates_ = 0;
  std::size_t records_ = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_time(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

}  // namespace detail

/// Reads "u v t" lines (whitespace) or a CSV with header u,v,t. Blank lines
/// and lines starting with '#' are skipped. Malformed lines and self-loops
/// are collected as rejects; more than 10% rejects is a format error.
inline TemporalEdgeList parse_edge_events(std::istream& is, EventFormat format) {
  std::vector<std::pair<std::pair<std::string, std::string>, long long>> raw;
  std::vector<RejectedLine> rejects;
  std::string line;
  std::size_t line_no = 0;
  bool header_checked = format != EventFormat::csv3col;
  while (std::getline(is, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::vector<std::string> fields;
    if (format == EventFormat::csv3col) {
      for (auto& f : detail::split(text, ',')) fields.push_back(detail::trim(f));
      if (!header_checked) {
        header_checked = true;
        std::string lower = text;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        lower.erase(std::remove_if(lower.begin(), lower.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    lower.end());
        if (lower != "u,v,t") throw FormatError("CSV input must start with header u,v,t");
        continue;
      }
    } else {
      std::istringstream ls(text);
      for (std::string f; ls >> f;) fields.push_back(f);
    }
    long long t = 0;
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
      rejects.push_back({line_no, "expected 3 fields"});
    } else if (!detail::parse_time(fields[2], t)) {
      rejects.push_back({line_no, "time '" + fields[2] + "' is not an integer"});
    } else if (fields[0] == fields[1]) {
      rejects.push_back({line_no, "self-loop on '" + fields[0] + "'"});
    } else {
      raw.push_back({{fields[0], fields[1]}, t});
    }
  }
  const std::size_t total = raw.size() + rejects.size();
  if (total == 0) throw DomainError("no edge events in input");
  if (static_cast<double>(rejects.size()) > 0.1 * static_cast<double>(total)) {
    throw FormatError(std::to_string(rejects.size()) + " of " + std::to_string(total) +
                      " records rejected (first at line " +
                      std::to_string(rejects.front().line) + ": " +
                      rejects.front().reason + ")");
  }
  return TemporalEdgeList::from_records(raw, std::move(rejects));
}

inline void write_edge_events(std::ostream& os, const TemporalEdgeList& tel,
                              EventFormat format) {
  const auto ids = tel.external_ids();
  const char* sep = format == EventFormat::csv3col ? "," : " ";
  if (format == EventFormat::csv3col) os << "u,v,t\n";
  for (const auto& e : tel.events()) {
    os << ids[e.u] << sep << ids[e.v] << sep << e.t << '\n';
  }
}

/// Cumulative graph of all events with time <= t. Its nodes are the ids seen
/// so far; a time before the first event gives a 0-node graph.
inline Graph snapshot_at(const TemporalEdgeList& tel, long long t) {
  const auto ev = tel.events();
  const auto end = std::upper_bound(ev.begin(), ev.end(), t,
                                    [](long long x, const TemporalEvent& e) { return x < e.t; });
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(end - ev.begin()));
  std::size_t n = 0;
  for (auto it = ev.begin(); it != end; ++it) {
    edges.emplace_back(it->u, it->v);
    n = std::max<std::size_t>(n, std::max(it->u, it->v) + 1);
  }
  return Graph(n, std::move(edges));
}

struct EvaluationRow {
  long long train_t = 0;
  long long horizon = 0;
  std::size_t rank = 0;
  double actual = 0.0;
  double predicted_proposed = 0.0;
  double predicted_baseline = 0.0;
};

struct EvaluationSummary {
  long long train_t = 0;
  long long horizon = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double mape_proposed = 0.0;
  double mape_baseline = 0.0;
};

struct EvaluationReport {
  std::vector<EvaluationRow> rows;
  std::vector<EvaluationSummary> summary;
  std::vector<std::string> warnings;

  double mean_proposed() const { return mean(&EvaluationSummary::mape_proposed); }
  double mean_baseline() const { return mean(&EvaluationSummary::mape_baseline); }

 private:
  double mean(double EvaluationSummary::*field) const {
    if (summary.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : summary) s += r.*field;
    return s / static_cast<double>(summary.size());
  }
};

/// For every (train_t, horizon) pair: top-k degrees of the snapshot at
/// train_t are scaled to train_t + horizon by both methods and compared with
/// the actual top-k there. Pairs outside the data range are skipped with a
/// warning.
inline EvaluationReport evaluation_run(const TemporalEdgeList& tel,
                                       std::span<const long long> train_times,
                                       std::span<const long long> horizons,
                                       std::size_t k) {
  if (k == 0) throw DomainError("evaluation_run: k must be >= 1");
  EvaluationReport rep;
  for (auto train_t : train_times) {
    for (auto h : horizons) {
      const long long test_t = train_t + h;
      const std::string tag =
          "train_t=" + std::to_string(train_t) + " horizon=" + std::to_string(h);
      if (h < 0 || train_t < tel.min_time() || test_t > tel.max_time()) {
        rep.warnings.push_back(tag + ": outside data range [" +
                               std::to_string(tel.min_time()) + ", " +
                               std::to_string(tel.max_time()) + "], skipped");
        continue;
      }
      const auto train = degree_spectrum(snapshot_at(tel, train_t));
      const auto test = degree_spectrum(snapshot_at(tel, test_t));
      if (train.node_count() < k) {
        rep.warnings.push_back(tag + ": fewer than k nodes at train time, skipped");
        continue;
      }
      const auto top = top_k_degrees(train, k);
      const auto actual = to_reals(top_k_degrees(test, k));
      const auto prop = predict_top_k(top, train.node_count(), test.node_count());
      const auto base = baseline_sqrt_predict(top, train.node_count(), test.node_count());
      for (std::size_t r = 0; r < k; ++r) {
        rep.rows.push_back({train_t, h, r + 1, actual[r], prop[r], base[r]});
      }
      rep.summary.push_back({train_t, h, train.node_count(), test.node_count(),
                             mape(actual, prop), mape(actual, base)});
    }
  }
  return rep;
}

/// Temporal events from a nested mixture sequence: growth step i (1-based)
/// reaches n_d = dense_step * i and m_s = sparse_step * i, and every edge
/// created in step i gets time i.
inline TemporalEdgeList mixture_temporal_fixture(const MassPartition& u, const Graphon& w,
                                                 const JoinConfig& cfg,
                                                 std::size_t steps,
                                                 std::size_t dense_step,
                                                 std::size_t sparse_step,
                                                 std::uint64_t seed) {
  if (steps == 0) throw DomainError("fixture needs at least one step");
  MixtureSequence seq(u, w, cfg, Rng(seed));
  for (std::size_t i = 1; i <= steps; ++i) seq.grow_to(dense_step * i, sparse_step * i);
  std::vector<std::pair<std::pair<std::string, std::string>, long long>> raw;
  raw.reserve(seq.stamped_edges().size());
  for (const auto& se : seq.stamped_edges()) {
    raw.push_back({{std::to_string(se.edge.u), std::to_string(se.edge.v)},
                   static_cast<long long>(se.step)});
  }
  return TemporalEdgeList::from_records(raw);
}

}  // namespace graphmix
