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
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "graphmix/error.hpp"

namespace graphmix {

/// Non-increasing sequence of positive weights with total at most one.
///
/// A partition built with `rescale` sums to one; otherwise the remaining
/// 1 - total is "leftover" mass that produces isolated vertices when the
/// partition drives a disjoint-clique graphon.
class MassPartition {
 public:
  static constexpr double kDropBelow = 1e-15;
  static constexpr double kSumTolerance = 1e-12;

  MassPartition() = default;

  static MassPartition make(std::span<const double> raw, bool rescale) {
    double sum = 0.0;
    for (double w : raw) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw DomainError("mass-partition entries must be finite and >= 0");
      }
      sum += w;
    }
    if (sum <= 0.0) throw DomainError("mass-partition has no positive entry");
    if (!rescale && sum > 1.0 + kSumTolerance) {
      throw DomainError("mass-partition sums to " + std::to_string(sum) +
                        " > 1 (pass rescale to normalize)");
    }
    MassPartition p;
    p.weights_.reserve(raw.size());
    for (double w : raw) {
      const double v = rescale ? w / sum : w;
      if (v >= kDropBelow) p.weights_.push_back(v);
    }
    if (p.weights_.empty()) {
      throw DomainError("mass-partition has no entry above 1e-15");
    }
    std::sort(p.weights_.begin(), p.weights_.end(), std::greater<>());
    p.cumulative_.resize(p.weights_.size());
    std::partial_sum(p.weights_.begin(), p.weights_.end(),
                     p.cumulative_.begin());
    p.total_ = p.cumulative_.back();
    if (rescale) {
      // absorb the rounding of the running sum into the last cut point
      p.cumulative_.back() = 1.0;
      p.total_ = 1.0;
    }
    return p;
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t j) const { return weights_[j]; }
  std::span<const double> weights() const { return weights_; }
  double total() const { return total_; }
  double leftover() const { return std::max(0.0, 1.0 - total_); }

  // Right end points of the consecutive intervals A_1, A_2, ...
  std::span<const double> cut_points() const { return cumulative_; }

  // Sum of the first k weights.
  double head_mass(std::size_t k) const {
    if (k == 0) return 0.0;
    return cumulative_[std::min(k, cumulative_.size()) - 1];
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Interval index containing x in [0,1]; npos for the leftover region.
  std::size_t interval_of(double x) const {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) {
      if (x <= 1.0 && total_ == 1.0) return weights_.size() - 1;
      return npos;
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "mass:[";
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      if (j) os << ',';
      os << weights_[j];
    }
    os << ']';
    return os.str();
  }

  friend bool operator==(const MassPartition&, const MassPartition&) = default;

 private:
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

inline MassPartition make_mass_partition(std::span<const double> raw,
                                         bool rescale) {
  return MassPartition::make(raw, rescale);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

inline double parse_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad number '" + s + "' in '" + ctx + "'");
  }
}

inline long parse_long(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError("bad integer '" + s + "' in '" + ctx + "'");
  }
}

}  // namespace detail

/// True when `text` looks like one of the partition literal families.
inline bool is_partition_literal(const std::string& text) {
  for (const char* prefix : {"mass:", "power:", "geom:", "loglaw:", "factorial:"}) {
    if (text.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

/// Parses a partition literal.
///
///   mass:[w1,w2,...]        explicit weights, used as given (sum <= 1)
///   mass:[w1,w2,...]:rescale explicit weights normalized to sum 1
///   power:<a>:<jmin>:<jmax>  p_j ∝ 1/j^a,             j = jmin..jmax
///   geom:<r>:<jmin>:<jmax>   p_j ∝ 1/r^j,             j = jmin..jmax
///   loglaw:<jmax>            p_j ∝ 1/((j+1) log(j+1)), j = 1..jmax
///   factorial:<jmax>         p_j ∝ 1/(j+1)!,           j = 1..jmax
///
/// The four generator families are always rescaled to sum 1.
inline MassPartition parse_partition(const std::string& text) {
  if (text.rfind("mass:", 0) == 0) {
    const auto open = text.find('[');
    const auto close = text.find(']');
    if (open != 5 || close == std::string::npos) {
      throw FormatError("expected mass:[w1,w2,...] in '" + text + "'");
    }
    const std::string tail = text.substr(close + 1);
    bool rescale = false;
    if (tail == ":rescale") {
      rescale = true;
    } else if (!tail.empty()) {
      throw FormatError("unexpected suffix '" + tail + "' in '" + text + "'");
    }
    std::vector<double> raw;
    const std::string body = text.substr(open + 1, close - open - 1);
    for (const auto& tok : detail::split(body, ',')) {
      std::string t = tok;
      t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
      if (t.empty()) continue;
      raw.push_back(detail::parse_double(t, text));
    }
    if (raw.empty()) throw FormatError("empty mass list in '" + text + "'");
    return MassPartition::make(raw, rescale);
  }

  const auto parts = detail::split(text, ':');
  const std::string& family = parts[0];
  std::vector<double> raw;
  if (family == "power" || family == "geom") {
    if (parts.size() != 4) {
      throw FormatError("expected " + family + ":<param>:<jmin>:<jmax>");
    }
    const double param = detail::parse_double(parts[1], text);
    const long jmin = detail::parse_long(parts[2], text);
    const long jmax = detail::parse_long(parts[3], text);
    if (jmin < 1 || jmax < jmin || param <= 0.0) {
      throw FormatError("invalid range or parameter in '" + text + "'");
    }
    for (long j = jmin; j <= jmax; ++j) {
      const double jj = static_cast<double>(j);
      raw.push_back(family == "power" ? std::pow(jj, -param)
                                      : std::pow(param, -jj));
    }
  } else if (family == "loglaw" || family == "factorial") {
    if (parts.size() != 2) throw FormatError("expected " + family + ":<jmax>");
    const long jmax = detail::parse_long(parts[1], text);
    if (jmax < 1) throw FormatError("jmax must be >= 1 in '" + text + "'");
    double fact = 1.0;  // (j+1)!
    for (long j = 1; j <= jmax; ++j) {
      const double jp1 = static_cast<double>(j + 1);
      if (family == "loglaw") {
        raw.push_back(1.0 / (jp1 * std::log(jp1)));
      } else {
        fact *= jp1;
        raw.push_back(1.0 / fact);
      }
    }
  } else {
    throw FormatError("unknown partition family in '" + text + "'");
  }
  return MassPartition::make(raw, /*rescale=*/true);
}

}  // namespace graphmix
