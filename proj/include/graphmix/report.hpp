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

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "graphmix/estimators.hpp"
#include "graphmix/experiments.hpp"
#include "graphmix/mixture.hpp"
#include "graphmix/temporal.hpp"

// JSON and CSV renderings of results.

namespace graphmix {

using Json = nlohmann::ordered_json;

inline Json to_json(const LineFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"loss", f.loss}};
}

inline Json to_json(const SegmentFit& f) {
  return {{"cutoff_r", f.cutoff_r},
          {"first", to_json(f.first)},
          {"second", to_json(f.second)},
          {"total_loss", f.total_loss}};
}

inline Json to_json(const PartitionEstimate& e) {
  Json j;
  j["mode"] = to_string(e.mode);
  j["k_hat"] = e.k_hat;
  j["p_hat"] = e.p_hat;
  Json diag = Json::object();
  if (!e.log_gaps.empty()) diag["log_gaps"] = e.log_gaps;
  if (e.fit) {
    diag["segment_fit"] = to_json(e.fit->fit);
    diag["percentile_cutoff_degree"] = e.fit->cutoff_degree;
    diag["points"] = e.fit->points.size();
  }
  j["diagnostics"] = diag;
  if (!e.warnings.empty()) j["warnings"] = e.warnings;
  return j;
}

inline Json to_json(const std::vector<PlotSeries>& series) {
  Json out = Json::object();
  for (const auto& s : series) {
    Json pts = Json::array();
    for (const auto& p : s.points) pts.push_back({p.x, p.y});
    out[s.name] = pts;
  }
  return out;
}

inline void write_plot_csv(std::ostream& os, const std::vector<PlotSeries>& series) {
  os << "series,x,y\n";
  for (const auto& s : series) {
    for (const auto& p : s.points) os << s.name << ',' << p.x << ',' << p.y << '\n';
  }
}

inline Json to_json(const ExperimentResult& r) {
  Json reps = Json::array();
  for (const auto& x : r.replicates) {
    reps.push_back({{"replicate", x.replicate},
                    {"k_hat", x.k_hat},
                    {"node_count", x.node_count},
                    {"mape_proposed", x.mape_proposed},
                    {"mape_baseline", x.mape_baseline},
                    {"covered_mass", x.covered_mass}});
  }
  auto stat = [](const Stat& s) { return Json{{"mean", s.mean}, {"sd", s.sd}}; };
  return {{"experiment", r.spec.name},
          {"graphon_w", r.spec.graphon_w},
          {"partition_u", r.spec.partition_u},
          {"n_d", r.spec.n_d},
          {"m_s", r.spec.m_s},
          {"k_hat", stat(r.k_hat())},
          {"mape_proposed", stat(r.proposed())},
          {"mape_baseline", stat(r.baseline())},
          {"covered_mass", stat(r.covered_mass())},
          {"replicates", reps}};
}

inline void write_experiment_csv(std::ostream& os, const std::string& suite,
                                 const std::vector<ExperimentResult>& results) {
  os << "suite,experiment,graphon_w,partition_u,replicates,k_hat_mean,"
        "mape_proposed_mean,mape_proposed_sd,mape_baseline_mean,mape_baseline_sd,"
        "covered_mass_mean\n";
  for (const auto& r : results) {
    os << suite << ',' << r.spec.name << ',' << r.spec.graphon_w << ",\""
       << r.spec.partition_u << "\"," << r.replicates.size() << ',' << r.k_hat().mean
       << ',' << r.proposed().mean << ',' << r.proposed().sd << ','
       << r.baseline().mean << ',' << r.baseline().sd << ',' << r.covered_mass().mean
       << '\n';
  }
}

inline void write_origin_csv(std::ostream& os, const MixtureGraph& mix) {
  os << "node,part,partition_index\n";
  for (std::size_t v = 0; v < mix.node_origin.size(); ++v) {
    const auto& o = mix.node_origin[v];
    os << v << ',' << to_string(o.part) << ',';
    if (o.partition_index != NodeOrigin::kNoPartition) os << o.partition_index;
    os << '\n';
  }
}

inline void write_density_csv(std::ostream& os, const std::vector<DensityPoint>& pts) {
  os << "step,n_d,n_s,n,m,density\n";
  for (const auto& p : pts) {
    os << p.step << ',' << p.n_d << ',' << p.n_s << ',' << p.n << ',' << p.m << ','
       << p.density << '\n';
  }
}

inline void write_evaluation_rows_csv(std::ostream& os, const EvaluationReport& rep) {
  os << "train_t,horizon,rank,actual,predicted_proposed,predicted_baseline\n";
  for (const auto& r : rep.rows) {
    os << r.train_t << ',' << r.horizon << ',' << r.rank << ',' << r.actual << ','
       << r.predicted_proposed << ',' << r.predicted_baseline << '\n';
  }
}

inline void write_evaluation_summary_csv(std::ostream& os, const EvaluationReport& rep) {
  os << "train_t,horizon,n_train,n_test,mape_proposed,mape_baseline\n";
  for (const auto& s : rep.summary) {
    os << s.train_t << ',' << s.horizon << ',' << s.n_train << ',' << s.n_test << ','
       << s.mape_proposed << ',' << s.mape_baseline << '\n';
  }
}

inline Json to_json(const EvaluationReport& rep) {
  Json rows = Json::array();
  for (const auto& s : rep.summary) {
    rows.push_back({{"train_t", s.train_t},
                    {"horizon", s.horizon},
                    {"n_train", s.n_train},
                    {"n_test", s.n_test},
                    {"mape_proposed", s.mape_proposed},
                    {"mape_baseline", s.mape_baseline}});
  }
  Json j{{"summary", rows},
         {"mean_mape_proposed", rep.mean_proposed()},
         {"mean_mape_baseline", rep.mean_baseline()}};
  if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
  return j;
}

}  // namespace graphmix
