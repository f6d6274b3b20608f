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

// graphmix command-line front end.
//
// Exit codes: 0 ok, 2 usage or configuration error, 3 data error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "graphmix/estimators.hpp"
#include "graphmix/experiments.hpp"
#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"
#include "graphmix/mixture.hpp"
#include "graphmix/partition.hpp"
#include "graphmix/report.hpp"
#include "graphmix/temporal.hpp"

namespace fs = std::filesystem;
using namespace graphmix;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string config;
  std::string out;
  double scale = 1.0;
  std::string format = "json";
};

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
}

template <typename T>
T cfg_get(const Json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const Json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

// Parses config literals, turning library errors into usage errors.
template <typename Fn>
auto as_usage(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::vector<long long> parse_times(const std::string& text, const char* what) {
  std::vector<long long> out;
  for (const auto& f : detail::split(text, ',')) {
    long long t = 0;
    if (!detail::parse_time(detail::trim(f), t)) {
      throw UsageError(std::string(what) + ": '" + f + "' is not an integer");
    }
    out.push_back(t);
  }
  return out;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  bool content = false;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const auto t = detail::trim(line);
    if (!t.empty() && t[0] != '#') {
      content = true;
      break;
    }
  }
  if (!content) throw UsageError("graph file '" + path + "' is empty");
  std::istringstream is(text);
  return read_edge_list(is);
}

TemporalEdgeList read_events_file(const std::string& path, std::string format) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open event file '" + path + "'");
  if (format.empty()) {
    format = fs::path(path).extension() == ".csv" ? "csv" : "whitespace";
  }
  const auto fmt = as_usage([&] { return parse_event_format(format); });
  return parse_edge_events(in, fmt);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

// Result goes to --out (a file) when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text(g.out, text);
  }
}

void check_format(const Globals& g) {
  if (g.format != "json" && g.format != "csv") {
    throw UsageError("--format must be json or csv");
  }
}

// ------------------------------------------------------------------ generate

struct GenerateArgs {
  std::string graphon_w;
  std::string partition_u;
  std::string schedule;
  double param = 0.0;
  std::size_t base_n_d = 0;
  std::size_t steps = 0;
  double c = -1.0;
  bool events = false;
};

int run_generate(const Globals& g, const GenerateArgs& a) {
  check_format(g);
  const Json cfg = load_config(g.config);
  const Json sched = cfg.value("schedule", Json::object());
  const Json join = cfg.value("join", Json::object());

  const auto w_text = a.graphon_w.empty() ? cfg_get<std::string>(cfg, "graphon_w", "")
                                          : a.graphon_w;
  const auto u_text = a.partition_u.empty()
                          ? cfg_get<std::string>(cfg, "partition_u", "")
                          : a.partition_u;
  if (w_text.empty() || u_text.empty()) {
    throw UsageError("generate needs graphon_w and partition_u");
  }
  const auto w = as_usage([&] { return parse_graphon(w_text); });
  const auto u = as_usage([&] { return parse_partition(u_text); });

  RatioSchedule rs;
  rs.kind = as_usage([&] {
    return parse_schedule_kind(a.schedule.empty()
                                   ? cfg_get<std::string>(sched, "kind", "constant")
                                   : a.schedule);
  });
  rs.param = a.param > 0.0 ? a.param : cfg_get<double>(sched, "param", 1.0);
  rs.base_n_d = a.base_n_d > 0 ? a.base_n_d : cfg_get<std::size_t>(sched, "base_n_d", 50);
  rs.base_n_d = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(rs.base_n_d) * g.scale)));
  const std::size_t steps = a.steps > 0 ? a.steps : cfg_get<std::size_t>(cfg, "steps", 10);
  if (steps < 1) throw UsageError("steps must be >= 1");

  JoinConfig jc;
  jc.edge_multiplier_c = a.c >= 0.0 ? a.c : cfg_get<double>(join, "c", 1.0);
  jc.collision_retries = cfg_get<std::size_t>(join, "collision_retries", 100);
  if (jc.edge_multiplier_c < 0.0) throw UsageError("join.c must be >= 0");
  const std::uint64_t seed =
      g.seed_given ? g.seed : cfg_get<std::uint64_t>(cfg, "seed", g.seed);
  const bool events = a.events || cfg_get<bool>(cfg, "events", false);
  if (g.out.empty()) throw UsageError("generate needs --out <dir>");

  const fs::path dir(g.out);
  fs::create_directories(dir);
  MixtureSequence seq(u, w, jc, Rng(seed));
  std::vector<DensityPoint> density;
  Json manifest = Json::array();
  for (std::size_t i = 1; i <= steps; ++i) {
    seq.grow_to(rs.n_d(i), rs.m_s(i));
    const auto mix = seq.snapshot();
    char name[32];
    std::snprintf(name, sizeof name, "g_%04zu", i);
    std::ostringstream edges, origin;
    write_edge_list(edges, mix.graph);
    write_origin_csv(origin, mix);
    write_text(dir / (std::string(name) + ".edges"), edges.str());
    write_text(dir / (std::string(name) + ".origin.csv"), origin.str());
    density.push_back({i, mix.n_d, mix.n_s, mix.graph.node_count(),
                       mix.graph.edge_count(), edge_density(mix.graph)});
    manifest.push_back({{"step", i},
                        {"file", std::string(name) + ".edges"},
                        {"n_d", mix.n_d},
                        {"n_s", mix.n_s},
                        {"m_d", mix.m_d},
                        {"m_s", mix.m_s},
                        {"m_new", mix.m_new},
                        {"hubs", mix.hubs.size()},
                        {"density", density.back().density}});
  }
  std::ostringstream dcsv;
  write_density_csv(dcsv, density);
  write_text(dir / "density.csv", dcsv.str());
  if (events) {
    std::ostringstream ev;
    ev << "# u v t, t = growth step\n";
    for (const auto& se : seq.stamped_edges()) {
      ev << se.edge.u << ' ' << se.edge.v << ' ' << se.step << '\n';
    }
    write_text(dir / "events.txt", ev.str());
  }
  Json summary{{"graphon_w", w.describe()},
               {"partition_u", u.describe()},
               {"seed", seed},
               {"steps", manifest}};
  write_text(dir / "manifest.json", summary.dump(2) + "\n");
  if (g.format == "csv") {
    std::cout << dcsv.str();
  } else {
    std::cout << summary.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ estimate

struct EstimateArgs {
  std::string input;
  std::string mode = "auto";
  std::string truth;
  std::string plot_data;
  double percentile = -1.0;
  std::size_t min_seg = 0;
  std::size_t max_unique = 0;
  double gap_threshold = -1.0;
};

int run_estimate(const Globals& g, const EstimateArgs& a) {
  check_format(g);
  const Json cfg = load_config(g.config);
  EstimateOptions opt;
  opt.percentile_c = a.percentile >= 0.0 ? a.percentile
                                         : cfg_get<double>(cfg, "percentile", 50.0);
  opt.small_degrees.percentile = opt.percentile_c;
  opt.min_seg = a.min_seg > 0 ? a.min_seg : cfg_get<std::size_t>(cfg, "min_seg", 3);
  opt.small_degrees.max_unique =
      a.max_unique > 0 ? a.max_unique : cfg_get<std::size_t>(cfg, "max_unique", 64);
  opt.auto_gap_threshold = a.gap_threshold >= 0.0
                               ? a.gap_threshold
                               : cfg_get<double>(cfg, "gap_threshold", opt.auto_gap_threshold);
  if (a.mode != "auto" && a.mode != "finite" && a.mode != "infinite") {
    throw UsageError("--mode must be auto, finite or infinite");
  }
  std::optional<MassPartition> truth;
  if (!a.truth.empty()) truth = as_usage([&] { return parse_partition(a.truth); });

  const auto graph = read_graph_file(a.input);
  const auto spec = degree_spectrum(graph);
  PartitionEstimate est = a.mode == "finite"     ? estimate_finite(spec, opt)
                          : a.mode == "infinite" ? estimate_infinite(spec, opt)
                                                 : estimate_auto(spec, opt);
  for (const auto& w : est.warnings) std::cerr << "warning: " << w << "\n";

  Json j = to_json(est);
  j["baseline_p_hat"] = baseline_partition(spec, est.k_hat);
  if (truth) {
    const std::size_t len = est.mode == EstimateMode::finite
                                ? truth->size()
                                : std::min(est.k_hat, truth->size());
    j["mape"] = detail::partition_mape(truth->weights(), est.p_hat, len);
    j["mape_baseline"] =
        detail::partition_mape(truth->weights(), j["baseline_p_hat"].get<std::vector<double>>(), len);
  }
  if (!a.plot_data.empty()) {
    std::optional<InfiniteKResult> fit = est.fit;
    if (!fit) fit = estimate_k_infinite(spec, opt.percentile_c, opt.min_seg);
    const auto series = segment_plot_data(*fit, graph.edge_count());
    std::ostringstream os;
    if (fs::path(a.plot_data).extension() == ".json") {
      os << to_json(series).dump(2) << "\n";
    } else {
      write_plot_csv(os, series);
    }
    write_text(a.plot_data, os.str());
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "j,p_hat,baseline_p_hat\n";
    for (std::size_t i = 0; i < est.p_hat.size(); ++i) {
      os << i + 1 << ',' << est.p_hat[i] << ',' << j["baseline_p_hat"][i].get<double>()
         << '\n';
    }
    emit(g, os.str());
  } else {
    emit(g, j.dump(2) + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------- predict

struct PredictArgs {
  std::string train;
  std::string test;
  std::string events;
  std::string events_format;
  std::string train_times;
  std::string horizons;
  std::size_t k = 0;
};

int run_predict(const Globals& g, const PredictArgs& a) {
  check_format(g);
  if (!a.events.empty()) {
    if (a.train_times.empty() || a.horizons.empty()) {
      throw UsageError("--events needs --train-times and --horizons");
    }
    const auto times = parse_times(a.train_times, "--train-times");
    const auto horizons = parse_times(a.horizons, "--horizons");
    const std::size_t k = a.k > 0 ? a.k : 10;
    const auto tel = read_events_file(a.events, a.events_format);
    const auto rep = evaluation_run(tel, times, horizons, k);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    std::ostringstream rows, summary;
    write_evaluation_rows_csv(rows, rep);
    write_evaluation_summary_csv(summary, rep);
    if (!g.out.empty()) {
      fs::create_directories(g.out);
      write_text(fs::path(g.out) / "predictions.csv", rows.str());
      write_text(fs::path(g.out) / "summary.csv", summary.str());
    }
    std::cout << (g.format == "csv" ? summary.str() : to_json(rep).dump(2) + "\n");
    return 0;
  }
  if (a.train.empty() || a.test.empty()) {
    throw UsageError("predict needs --train and --test graph files, or --events");
  }
  const auto train = degree_spectrum(read_graph_file(a.train));
  const auto test = degree_spectrum(read_graph_file(a.test));
  const std::size_t k = a.k > 0 ? a.k : estimate_k_infinite(train).k_hat;
  const auto top = top_k_degrees(train, k);
  const auto actual = to_reals(top_k_degrees(test, k));
  const auto prop = predict_top_k(top, train.node_count(), test.node_count());
  const auto base = baseline_sqrt_predict(top, train.node_count(), test.node_count());
  if (g.format == "csv") {
    std::ostringstream os;
    os << "rank,actual,predicted_proposed,predicted_baseline\n";
    for (std::size_t r = 0; r < k; ++r) {
      os << r + 1 << ',' << actual[r] << ',' << prop[r] << ',' << base[r] << '\n';
    }
    emit(g, os.str());
  } else {
    Json j{{"k", k},
           {"n_train", train.node_count()},
           {"n_test", test.node_count()},
           {"actual", actual},
           {"predicted_proposed", prop},
           {"predicted_baseline", base},
           {"mape_proposed", mape(actual, prop)},
           {"mape_baseline", mape(actual, base)}};
    emit(g, j.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string suite;
  std::size_t replicates = 0;
  std::string only;
};

int run_experiment_cmd(const Globals& g, const ExperimentArgs& a) {
  check_format(g);
  const Json cfg = load_config(g.config);
  const std::string suite = a.suite.empty() ? cfg_get<std::string>(cfg, "suite", "") : a.suite;
  auto experiments = as_usage([&] { return suite_experiments(suite); });
  if (!a.only.empty()) {
    std::erase_if(experiments, [&](const ExperimentSpec& e) { return e.name != a.only; });
    if (experiments.empty()) throw UsageError("suite has no experiment '" + a.only + "'");
  }
  SuiteOptions opt;
  opt.replicates = a.replicates > 0 ? a.replicates
                                    : cfg_get<std::size_t>(cfg, "replicates", 10);
  opt.scale = g.scale != 1.0 ? g.scale : cfg_get<double>(cfg, "scale", 1.0);
  opt.seed = g.seed_given ? g.seed : cfg_get<std::uint64_t>(cfg, "seed", g.seed);
  opt.join.edge_multiplier_c = cfg_get<double>(cfg, "c", 1.0);
  if (!(opt.scale > 0.0)) throw UsageError("--scale must be > 0");

  std::vector<ExperimentResult> results;
  const auto all = suite_experiments(suite);
  for (const auto& e : experiments) {
    const auto idx = static_cast<std::size_t>(
        std::find_if(all.begin(), all.end(),
                     [&](const ExperimentSpec& x) { return x.name == e.name; }) -
        all.begin());
    results.push_back(run_experiment(suite, e, idx + 1, opt));
  }
  std::ostringstream os;
  if (g.format == "csv") {
    write_experiment_csv(os, suite, results);
  } else {
    Json j{{"suite", suite},
           {"seed", opt.seed},
           {"replicates", opt.replicates},
           {"scale", opt.scale},
           {"experiments", Json::array()}};
    for (const auto& r : results) j["experiments"].push_back(to_json(r));
    os << j.dump(2) << "\n";
  }
  emit(g, os.str());
  return 0;
}

// -------------------------------------------------------------------- ingest

struct IngestArgs {
  std::string input;
  std::string events_format;
  std::string snapshots;
  std::string normalized;
};

int run_ingest(const Globals& g, const IngestArgs& a) {
  check_format(g);
  const auto tel = read_events_file(a.input, a.events_format);
  Json rejects = Json::array();
  for (const auto& r : tel.rejects()) rejects.push_back({{"line", r.line}, {"reason", r.reason}});
  Json j{{"records", tel.record_count()},
         {"events", tel.events().size()},
         {"nodes", tel.node_count()},
         {"duplicates_dropped", tel.duplicates_dropped()},
         {"rejected", rejects},
         {"min_t", tel.min_time()},
         {"max_t", tel.max_time()},
         {"snapshots", Json::array()}};
  if (!a.snapshots.empty()) {
    if (g.out.empty()) throw UsageError("--snapshots needs --out <dir>");
    for (auto t : parse_times(a.snapshots, "--snapshots")) {
      if (t < tel.min_time()) {
        std::cerr << "warning: t=" << t << " precedes the first event; empty snapshot\n";
      }
      const auto snap = snapshot_at(tel, t);
      std::ostringstream os;
      write_edge_list(os, snap);
      const std::string file = "snapshot_" + std::to_string(t) + ".edges";
      write_text(fs::path(g.out) / file, os.str());
      j["snapshots"].push_back({{"t", t},
                                {"file", file},
                                {"nodes", snap.node_count()},
                                {"edges", snap.edge_count()}});
    }
  }
  if (!a.normalized.empty()) {
    std::ostringstream os;
    write_edge_events(os, tel,
                      fs::path(a.normalized).extension() == ".csv"
                          ? EventFormat::csv3col
                          : EventFormat::whitespace3col);
    write_text(a.normalized, os.str());
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "t,nodes,edges\n";
    for (const auto& s : j["snapshots"]) {
      os << s["t"].get<long long>() << ',' << s["nodes"].get<std::size_t>() << ','
         << s["edges"].get<std::size_t>() << '\n';
    }
    std::cout << os.str();
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate (U,W)-mixture graphs and estimate their sparse part."};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--out", g.out, "Output file or directory");
  app.add_option("--scale", g.scale, "Size multiplier for generated graphs");
  app.add_option("--format", g.format, "json or csv");

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "Sample a nested mixture sequence");
  c_gen->add_option("--graphon-w", gen.graphon_w, "Dense graphon, e.g. exp_sum");
  c_gen->add_option("--partition-u", gen.partition_u, "Mass partition literal");
  c_gen->add_option("--schedule", gen.schedule,
                    "constant|sqrt_growth|linear|quadratic|inverse_sqrt");
  c_gen->add_option("--param", gen.param, "Schedule parameter");
  c_gen->add_option("--base-n-d", gen.base_n_d, "Dense nodes added per step");
  c_gen->add_option("--steps", gen.steps, "Number of sequence members");
  c_gen->add_option("--c", gen.c, "Edge multiplier for joining");
  c_gen->add_flag("--events", gen.events, "Also write events.txt (u v step)");

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Estimate hubs and mass partition of a graph");
  c_est->add_option("--input", est.input, "Edge-list file")->required();
  c_est->add_option("--mode", est.mode, "auto|finite|infinite");
  c_est->add_option("--truth", est.truth, "True partition literal, adds MAPE");
  c_est->add_option("--plot-data", est.plot_data,
                    "Write two-segment fit series here (.json or csv)");
  c_est->add_option("--percentile", est.percentile, "Degree percentile cutoff");
  c_est->add_option("--min-seg", est.min_seg, "Minimum points per segment");
  c_est->add_option("--max-unique", est.max_unique, "Distinct degrees kept for finite mode");
  c_est->add_option("--gap-threshold", est.gap_threshold, "Auto mode log-gap threshold");

  PredictArgs pr;
  auto* c_pr = app.add_subcommand("predict", "Forecast top-k degrees of a larger graph");
  c_pr->add_option("--train", pr.train, "Training edge-list file");
  c_pr->add_option("--test", pr.test, "Test edge-list file");
  c_pr->add_option("--events", pr.events, "Temporal event file");
  c_pr->add_option("--events-format", pr.events_format, "whitespace|csv");
  c_pr->add_option("--train-times", pr.train_times, "Comma-separated training times");
  c_pr->add_option("--horizons", pr.horizons, "Comma-separated horizons");
  c_pr->add_option("--k", pr.k, "Number of top degrees");

  ExperimentArgs ex;
  auto* c_ex = app.add_subcommand("experiment", "Run a synthetic experiment suite");
  c_ex->add_option("--suite", ex.suite,
                   "table1:topk | table1:finiteU | table1:infiniteU");
  c_ex->add_option("--replicates", ex.replicates, "Replicates per experiment");
  c_ex->add_option("--experiment", ex.only, "Run only this experiment");

  IngestArgs in;
  auto* c_in = app.add_subcommand("ingest", "Clean a temporal edge list and cut snapshots");
  c_in->add_option("--input", in.input, "Event file")->required();
  c_in->add_option("--events-format", in.events_format, "whitespace|csv");
  c_in->add_option("--snapshots", in.snapshots, "Comma-separated snapshot times");
  c_in->add_option("--normalized", in.normalized, "Write the cleaned event list here");

  for (auto* sub : {c_gen, c_est, c_pr, c_ex, c_in}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (c_gen->parsed()) return run_generate(g, gen);
    if (c_est->parsed()) return run_estimate(g, est);
    if (c_pr->parsed()) return run_predict(g, pr);
    if (c_ex->parsed()) return run_experiment_cmd(g, ex);
    if (c_in->parsed()) return run_ingest(g, in);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
