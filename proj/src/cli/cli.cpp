#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "coord/backbone.hpp"
#include "coord/cli.hpp"
#include "coord/error.hpp"
#include "coord/format.hpp"
#include "coord/ingest.hpp"
#include "coord/netmetrics.hpp"
#include "coord/polarity.hpp"
#include "coord/simnet.hpp"
#include "coord/sweep.hpp"
#include "coord/synth.hpp"
#include "coord/textshift.hpp"

namespace coord::cli {
namespace fs = std::filesystem;

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
  if (dynamic_cast<const InputError*>(&e)) return kInputError;
  return kStageFailure;
}

class StageError : public std::runtime_error {
 public:
  StageError(const std::string& stage, const std::exception& cause)
      : std::runtime_error("stage " + stage + " failed: " + cause.what()), code(exit_code_for(cause)) {}
  int code;
};

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  writer(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

template <class Reader>
auto read_file(const fs::path& path, Reader&& reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return reader(in);
}

SimilarityGraph load_graph(const fs::path& path) {
  return read_file(path, [](std::istream& in) { return read_edge_list(in); });
}

/// Diagnostic manifest: parameter echo, counts and timings on stderr.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
  void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
  void set(const std::string& key, double value) { set(key, format_general(value, 9)); }

  template <class F>
  auto stage(const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        finish(name, start);
      } else {
        auto result = body();
        finish(name, start);
        return result;
      }
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e);
    }
  }

  void print(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  }

 private:
  void finish(const std::string& name, std::chrono::steady_clock::time_point start) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    set("time_ms." + name, format_fixed(ms, 1));
  }
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string threshold_tag(double t) { return format_general(t, 6); }

// Traced C0 communities as (id, member ids).
std::vector<std::pair<std::int32_t, std::vector<std::string>>> initial_communities(const SweepTrace& trace,
                                                                                    const SimilarityGraph& graph) {
  std::vector<std::pair<std::int32_t, std::vector<std::string>>> out;
  if (trace.iterations.empty()) return out;
  for (const auto& c : trace.iterations.front().communities) {
    if (!c.traced) continue;
    std::vector<std::string> ids;
    for (NodeId v : c.members) ids.push_back(graph.node(v));
    out.emplace_back(c.id, std::move(ids));
  }
  return out;
}

void write_elbows(std::ostream& out, const std::vector<CommunityProfile>& profiles) {
  out << "community_id,elbow_coordination\n";
  for (const auto& p : profiles) {
    auto e = elbow_coordination(p);
    out << p.community_id << ',' << (e ? format_general(*e, 9) : "") << '\n';
  }
}

void write_node_coordination(std::ostream& out, const SimilarityGraph& graph, const std::vector<double>& values) {
  for (NodeId v = 0; v < graph.node_count(); ++v)
    out << csv_cell(graph.node(v)) << ',' << format_general(values[v], 9) << '\n';
}

struct ShiftSettings {
  std::size_t top_k = 25;
  std::optional<double> core_threshold;
  Stopwords stopwords;
};

// Clouds and word shifts for every traced C0 community. Returns the number of
// communities with a shift export.
std::size_t write_text_outputs(const fs::path& dir, std::span<const InteractionRecord> records,
                               const SimilarityGraph& graph, const SweepTrace& trace,
                               const std::vector<CommunityProfile>& profiles, const ShiftSettings& settings,
                               std::ostream& diag) {
  const auto communities = initial_communities(trace, graph);
  std::vector<std::vector<std::string>> member_lists;
  for (const auto& [id, members] : communities) member_lists.push_back(members);
  const auto clouds = hashtag_clouds(records, member_lists, settings.top_k);
  for (std::size_t c = 0; c < communities.size(); ++c)
    write_file(dir / ("cloud_" + std::to_string(communities[c].first) + ".csv"),
               [&](std::ostream& out) { write_cloud(out, clouds[c]); });

  std::map<std::int32_t, std::optional<double>> elbows;
  for (const auto& p : profiles) elbows[p.community_id] = elbow_coordination(p);
  const auto node_coord = node_coordination(graph);

  std::size_t written = 0;
  for (const auto& [id, members] : communities) {
    const auto threshold = settings.core_threshold ? settings.core_threshold : elbows[id];
    if (!threshold) {
      diag << "shift: community " << id << " skipped (no characteristic coordination)\n";
      continue;
    }
    std::vector<std::string> core;
    for (const auto& m : members)
      if (node_coord[*graph.index_of(m)] >= *threshold) core.push_back(m);
    auto reference = build_corpus(records, members, settings.stopwords);
    auto comparison = build_corpus(records, core, settings.stopwords);
    if (!reference || !comparison) {
      diag << "shift: community " << id << " skipped (no comparable text)\n";
      continue;
    }
    const auto shift = word_shift(*reference, *comparison);
    write_file(dir / ("shift_" + std::to_string(id) + ".csv"),
               [&](std::ostream& out) { write_shift(out, shift.top(settings.top_k)); });
    ++written;
  }
  return written;
}

Stopwords load_stopwords(const std::optional<fs::path>& path) {
  if (!path) return {};
  return read_file(*path, [](std::istream& in) { return read_stopwords(in); });
}

std::optional<AnnotationTable> load_optional_annotations(const std::optional<fs::path>& path, AnnotationKind kind,
                                                         std::ostream& diag) {
  if (!path) return std::nullopt;
  auto table = load_annotations(*path, kind);
  if (table.rejected || table.duplicates)
    diag << "annotations " << path->string() << ": rejected=" << table.rejected
         << " duplicates=" << table.duplicates << '\n';
  return table;
}

int run_pipeline(PipelineConfig cfg, std::ostream& diag) {
  Manifest manifest;
  manifest.set("config.records", cfg.records.string());
  manifest.set("config.fraction", cfg.fraction);
  manifest.set("config.alpha", cfg.backbone.alpha);
  manifest.set("config.keep_rule", std::string(cfg.backbone.keep_rule == KeepRule::BothEndpoints ? "both" : "either"));
  if (cfg.sweep.delta_w)
    manifest.set("config.delta_w", *cfg.sweep.delta_w);
  else
    manifest.set("config.steps", static_cast<std::size_t>(cfg.sweep.step_count));
  manifest.set("config.resolution", cfg.sweep.resolution);
  manifest.set("config.min_size", static_cast<std::size_t>(cfg.sweep.min_size));
  manifest.set("config.seed", std::to_string(cfg.sweep.rng_seed));
  manifest.set("config.threads", static_cast<std::size_t>(omp_get_max_threads()));

  fs::create_directories(cfg.out_dir);
  const auto dir = cfg.out_dir;
  const auto marker = dir / ".partial";
  write_file(marker, [](std::ostream& out) { out << "incomplete run\n"; });

  try {
    auto parsed = manifest.stage("ingest", [&] { return read_records(cfg.records); });
    manifest.set("records", parsed.records.size());
    manifest.set("records_skipped", parsed.skipped);
    const auto& records = parsed.records;

    auto population = manifest.stage("population", [&] {
      Population pop = cfg.population
                           ? read_file(*cfg.population, [](std::istream& in) { return read_population(in); })
                           : select_superspreaders(records, cfg.fraction);
      write_file(dir / "population.txt", [&](std::ostream& out) { write_population(out, pop); });
      return pop;
    });
    manifest.set("population", population.size());

    auto network = manifest.stage("network", [&] {
      auto g = build_similarity_graph(build_user_vectors(records, population));
      write_file(dir / "network.csv", [&](std::ostream& out) { write_edge_list(out, g); });
      return g;
    });
    manifest.set("network_nodes", network.node_count());
    manifest.set("network_edges", network.edge_count());

    auto backbone = manifest.stage("backbone", [&] {
      auto g = disparity_filter(network, cfg.backbone);
      write_file(dir / "backbone.csv", [&](std::ostream& out) { write_edge_list(out, g); });
      return g;
    });
    manifest.set("backbone_nodes", backbone.node_count());
    manifest.set("backbone_edges", backbone.edge_count());

    auto trace = manifest.stage("sweep", [&] {
      auto t = run_sweep(backbone, cfg.sweep);
      write_file(dir / "trace.jsonl", [&](std::ostream& out) { write_trace(out, backbone, t); });
      write_file(dir / "node_coordination.csv",
                 [&](std::ostream& out) { write_node_coordination(out, backbone, node_coordination(backbone)); });
      return t;
    });
    manifest.set("iterations", trace.iterations.size());
    if (!trace.iterations.empty()) {
      std::size_t traced = 0;
      for (const auto& c : trace.iterations.front().communities) traced += c.traced;
      manifest.set("traced_communities", traced);
    }

    auto profiles = manifest.stage("metrics", [&] {
      auto scores = load_optional_annotations(cfg.scores, AnnotationKind::Score, diag);
      auto flags = load_optional_annotations(cfg.suspensions, AnnotationKind::Flag, diag);
      CurveOptions options{cfg.clustering, scores ? &*scores : nullptr, flags ? &*flags : nullptr};
      auto p = community_curves(trace, backbone, options);
      write_file(dir / "metrics.csv", [&](std::ostream& out) { write_metrics(out, p); });
      write_file(dir / "elbows.csv", [&](std::ostream& out) { write_elbows(out, p); });
      return p;
    });

    if (cfg.seeds) {
      manifest.stage("polarity", [&] {
        const auto valences = hashtag_valence(records, read_seeds(*cfg.seeds), cfg.polarity_rounds);
        write_file(dir / "valence.csv", [&](std::ostream& out) { write_valences(out, valences); });
        std::map<std::string, double> users;
        for (const auto& [user, p] : user_polarities(records, valences))
          if (population.contains(user)) users.emplace(user, p);
        write_file(dir / "polarity.csv", [&](std::ostream& out) { write_polarities(out, users); });
      });
    }

    manifest.stage("shift", [&] {
      ShiftSettings settings{cfg.top_k, cfg.core_threshold, load_stopwords(cfg.stopwords)};
      manifest.set("shift_exports", write_text_outputs(dir, records, backbone, trace, profiles, settings, diag));
    });
  } catch (const StageError& e) {
    manifest.print(diag);
    diag << "error: " << e.what() << '\n';
    return e.code;
  }

  fs::remove(marker);
  manifest.print(diag);
  return kOk;
}

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw ConfigError("bad threshold '" + cell + "'");
    }
  }
  if (out.empty()) throw ConfigError("no thresholds given");
  return out;
}

void run_baseline(const SimilarityGraph& network, const std::vector<double>& thresholds, const fs::path& dir,
                  std::ostream& diag) {
  fs::create_directories(dir);
  for (double t : thresholds) {
    const auto g = fixed_threshold_filter(network, t);
    const auto comp = connected_components(g);
    std::size_t components = 0;
    for (auto c : comp) components = std::max<std::size_t>(components, c + 1);
    const auto tag = threshold_tag(t);
    write_file(dir / ("baseline_" + tag + ".csv"), [&](std::ostream& out) { write_edge_list(out, g); });
    write_file(dir / ("baseline_" + tag + "_components.csv"), [&](std::ostream& out) {
      for (NodeId v = 0; v < g.node_count(); ++v) out << comp[v] << ',' << csv_cell(g.node(v)) << '\n';
    });
    diag << "threshold=" << tag << " nodes=" << g.node_count() << " edges=" << g.edge_count()
         << " components=" << components << '\n';
  }
}

PlantedGroup parse_group(const std::string& spec) {
  PlantedGroup g;
  char c1 = 0, c2 = 0;
  std::stringstream ss(spec);
  if (!(ss >> g.size >> c1 >> g.pool_size >> c2 >> g.coretweet_prob) || c1 != ':' || c2 != ':' || !ss.eof())
    throw ConfigError("group spec must be size:pool:prob, got '" + spec + "'");
  return g;
}

}  // namespace

int main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return main(static_cast<int>(argv.size()), argv.data());
}

int main(int argc, const char* const* argv) {
  CLI::App app{"Coordinated behaviour analysis: similarity network, multiscale backbone, coordination sweep"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (outputs do not depend on this)")->check(CLI::PositiveNumber);

  std::ostream& diag = std::cerr;
  std::function<int()> action;

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with planted coordinated groups");
  SynthConfig synth_cfg;
  std::vector<std::string> group_specs;
  std::string synth_records, synth_truth;
  std::uint64_t synth_seed = 0;
  synth->add_option("--records-out", synth_records, "Record file to write")->required();
  synth->add_option("--truth-out", synth_truth, "Ground-truth sidecar to write");
  synth->add_option("--seed", synth_seed, "Generator seed")->required();
  synth->add_option("--background", synth_cfg.n_background_users, "Background users")->capture_default_str();
  synth->add_option("--tweets", synth_cfg.n_tweets, "Background tweet universe")->capture_default_str();
  synth->add_option("--exponent", synth_cfg.popularity_exponent, "Zipf popularity exponent")->capture_default_str();
  synth->add_option("--retweets", synth_cfg.retweets_per_user, "Mean background retweets per user")
      ->capture_default_str();
  synth->add_option("--contamination", synth_cfg.contamination, "Background retweets landing on pool tweets")
      ->capture_default_str();
  synth->add_option("--originals", synth_cfg.originals_per_user, "Mean original posts per user")
      ->capture_default_str();
  synth->add_option("--group", group_specs, "Planted group size:pool:prob (repeatable)");
  synth->callback([&] {
    action = [&] {
      for (const auto& spec : group_specs) synth_cfg.groups.push_back(parse_group(spec));
      synth_cfg.rng_seed = synth_seed;
      const auto data = generate(synth_cfg);
      write_file(synth_records, [&](std::ostream& out) { write_records(out, data.records); });
      if (!synth_truth.empty()) write_file(synth_truth, [&](std::ostream& out) { write_truth(out, data.truth); });
      diag << "records=" << data.records.size() << " groups=" << data.truth.group_members.size() << '\n';
      return int{kOk};
    };
  });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse records and select the superspreader population");
  std::string records_path, population_out;
  double fraction = 0.01;
  ingest->add_option("--records", records_path, "Line-delimited record file")->required();
  ingest->add_option("--fraction", fraction, "Top fraction of retweeting users")->capture_default_str();
  ingest->add_option("--out", population_out, "Population file to write")->required();
  ingest->callback([&] {
    action = [&] {
      const auto parsed = read_records(records_path);
      const auto pop = select_superspreaders(parsed.records, fraction);
      write_file(population_out, [&](std::ostream& out) { write_population(out, pop); });
      diag << "records=" << parsed.records.size() << " skipped=" << parsed.skipped << " population=" << pop.size()
           << '\n';
      return int{kOk};
    };
  });

  // network
  auto* network = app.add_subcommand("network", "Build the TF-IDF cosine user-similarity network");
  std::string population_path, network_out;
  network->add_option("--records", records_path, "Line-delimited record file")->required();
  network->add_option("--population", population_path, "Population file")->required();
  network->add_option("--out", network_out, "Edge list to write")->required();
  network->callback([&] {
    action = [&] {
      const auto parsed = read_records(records_path);
      const auto pop = read_file(population_path, [](std::istream& in) { return read_population(in); });
      const auto g = build_similarity_graph(build_user_vectors(parsed.records, pop));
      write_file(network_out, [&](std::ostream& out) { write_edge_list(out, g); });
      diag << "nodes=" << g.node_count() << " edges=" << g.edge_count() << '\n';
      return int{kOk};
    };
  });

  // backbone
  auto* backbone = app.add_subcommand("backbone", "Extract the disparity-filter backbone");
  std::string graph_path, graph_out, keep_rule = "either";
  BackboneConfig bb_cfg;
  backbone->add_option("--network", graph_path, "Unfiltered edge list")->required();
  backbone->add_option("--alpha", bb_cfg.alpha, "Significance level")->capture_default_str();
  backbone->add_option("--keep-rule", keep_rule, "either|both")->check(CLI::IsMember({"either", "both"}));
  backbone->add_option("--out", graph_out, "Edge list to write")->required();
  backbone->callback([&] {
    action = [&] {
      bb_cfg.keep_rule = keep_rule == "both" ? KeepRule::BothEndpoints : KeepRule::EitherEndpoint;
      const auto g = disparity_filter(load_graph(graph_path), bb_cfg);
      write_file(graph_out, [&](std::ostream& out) { write_edge_list(out, g); });
      diag << "nodes=" << g.node_count() << " edges=" << g.edge_count()
           << " alpha=" << format_general(bb_cfg.alpha, 9) << '\n';
      return int{kOk};
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Coordination-aware community detection sweep");
  SweepConfig sweep_cfg;
  std::string trace_out, coordination_out;
  double delta_w = 0.0;
  sweep->add_option("--graph", graph_path, "Filtered edge list")->required();
  sweep->add_option("--steps", sweep_cfg.step_count, "Arithmetic threshold steps")->capture_default_str();
  auto* delta_opt = sweep->add_option("--delta-w", delta_w, "Explicit threshold step (overrides --steps)");
  sweep->add_option("--resolution", sweep_cfg.resolution, "Modularity resolution")->capture_default_str();
  sweep->add_option("--min-size", sweep_cfg.min_size, "Minimum community size at t0")->capture_default_str();
  sweep->add_option("--seed", sweep_cfg.rng_seed, "Louvain seed")->required();
  sweep->add_option("--out", trace_out, "Trace file to write")->required();
  sweep->add_option("--node-coordination-out", coordination_out, "Per-node coordination CSV");
  sweep->callback([&] {
    action = [&] {
      if (delta_opt->count()) sweep_cfg.delta_w = delta_w;
      const auto g = load_graph(graph_path);
      const auto trace = run_sweep(g, sweep_cfg);
      write_file(trace_out, [&](std::ostream& out) { write_trace(out, g, trace); });
      if (!coordination_out.empty())
        write_file(coordination_out,
                   [&](std::ostream& out) { write_node_coordination(out, g, node_coordination(g)); });
      diag << "iterations=" << trace.iterations.size() << '\n';
      return int{kOk};
    };
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Per-community measures versus coordination");
  std::string trace_path, metrics_out, elbows_out, scores_path, flags_path, clustering = "local";
  metrics->add_option("--graph", graph_path, "Filtered edge list")->required();
  metrics->add_option("--trace", trace_path, "Sweep trace")->required();
  metrics->add_option("--scores", scores_path, "Automation scores user_id,score");
  metrics->add_option("--suspensions", flags_path, "Suspension flags user_id,0|1");
  metrics->add_option("--clustering", clustering, "local|global")->check(CLI::IsMember({"local", "global"}));
  metrics->add_option("--out", metrics_out, "Metrics CSV to write")->required();
  metrics->add_option("--elbows-out", elbows_out, "Per-community elbow coordination CSV");
  metrics->callback([&] {
    action = [&] {
      const auto g = load_graph(graph_path);
      const auto trace = read_file(trace_path, [&](std::istream& in) { return read_trace(in, g); });
      auto scores = load_optional_annotations(
          scores_path.empty() ? std::nullopt : std::optional<fs::path>(scores_path), AnnotationKind::Score, diag);
      auto flags = load_optional_annotations(
          flags_path.empty() ? std::nullopt : std::optional<fs::path>(flags_path), AnnotationKind::Flag, diag);
      CurveOptions options{clustering == "global" ? ClusteringVariant::Global : ClusteringVariant::AverageLocal,
                           scores ? &*scores : nullptr, flags ? &*flags : nullptr};
      const auto profiles = community_curves(trace, g, options);
      write_file(metrics_out, [&](std::ostream& out) { write_metrics(out, profiles); });
      if (!elbows_out.empty()) write_file(elbows_out, [&](std::ostream& out) { write_elbows(out, profiles); });
      diag << "communities=" << profiles.size() << '\n';
      return int{kOk};
    };
  });

  // polarity
  auto* polarity = app.add_subcommand("polarity", "Hashtag valence and user polarity");
  std::string seeds_path, valence_out, polarity_out;
  int rounds = 1;
  polarity->add_option("--records", records_path, "Line-delimited record file")->required();
  polarity->add_option("--seeds", seeds_path, "Seed hashtags hashtag,polarity")->required();
  polarity->add_option("--rounds", rounds, "Propagation rounds")->capture_default_str();
  polarity->add_option("--valence-out", valence_out, "Valence CSV to write")->required();
  polarity->add_option("--polarity-out", polarity_out, "User polarity CSV to write")->required();
  polarity->callback([&] {
    action = [&] {
      const auto parsed = read_records(records_path);
      const auto valences = hashtag_valence(parsed.records, read_seeds(seeds_path), rounds);
      write_file(valence_out, [&](std::ostream& out) { write_valences(out, valences); });
      const auto users = user_polarities(parsed.records, valences);
      write_file(polarity_out, [&](std::ostream& out) { write_polarities(out, users); });
      diag << "hashtags=" << valences.values.size() << " users=" << users.size() << '\n';
      return int{kOk};
    };
  });

  // shift
  auto* shift = app.add_subcommand("shift", "Hashtag clouds and word shifts of coordinated cores");
  std::string out_dir, stopwords_path;
  std::size_t top_k = 25;
  double core_threshold = 0.0;
  shift->add_option("--records", records_path, "Line-delimited record file")->required();
  shift->add_option("--graph", graph_path, "Filtered edge list")->required();
  shift->add_option("--trace", trace_path, "Sweep trace")->required();
  shift->add_option("--top-k", top_k, "Entries per export")->capture_default_str();
  auto* core_opt = shift->add_option("--core-threshold", core_threshold,
                                     "Coordination defining the core (default: per-community elbow)");
  shift->add_option("--stopwords", stopwords_path, "Stopword file");
  shift->add_option("--out-dir", out_dir, "Directory for cloud_*.csv and shift_*.csv")->required();
  shift->callback([&] {
    action = [&] {
      const auto parsed = read_records(records_path);
      const auto g = load_graph(graph_path);
      const auto trace = read_file(trace_path, [&](std::istream& in) { return read_trace(in, g); });
      const auto profiles = community_curves(trace, g);
      ShiftSettings settings{top_k, core_opt->count() ? std::optional<double>(core_threshold) : std::nullopt,
                             load_stopwords(stopwords_path.empty() ? std::nullopt
                                                                   : std::optional<fs::path>(stopwords_path))};
      fs::create_directories(out_dir);
      const auto n = write_text_outputs(out_dir, parsed.records, g, trace, profiles, settings, diag);
      diag << "shift_exports=" << n << '\n';
      return int{kOk};
    };
  });

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Fixed-threshold baseline on the unfiltered network");
  std::string config_path, thresholds_text = "0.5,0.7,0.9";
  baseline->add_option("--network", graph_path, "Unfiltered edge list");
  baseline->add_option("--config", config_path, "Pipeline config (network rebuilt from its records)");
  baseline->add_option("--thresholds", thresholds_text, "Comma-separated weight thresholds")->capture_default_str();
  baseline->add_option("--out-dir", out_dir, "Directory for baseline_*.csv")->required();
  baseline->callback([&] {
    action = [&] {
      const auto thresholds = parse_thresholds(thresholds_text);
      SimilarityGraph g;
      if (!graph_path.empty()) {
        g = load_graph(graph_path);
      } else if (!config_path.empty()) {
        auto cfg = load_config(config_path);
        cfg.validate();
        const auto parsed = read_records(cfg.records);
        const auto pop = cfg.population
                             ? read_file(*cfg.population, [](std::istream& in) { return read_population(in); })
                             : select_superspreaders(parsed.records, cfg.fraction);
        g = build_similarity_graph(build_user_vectors(parsed.records, pop));
      } else {
        throw ConfigError("baseline needs --network or --config");
      }
      run_baseline(g, thresholds, out_dir, diag);
      return int{kOk};
    };
  });

  // run
  auto* run = app.add_subcommand("run", "Run the whole pipeline from a config file");
  std::uint64_t run_seed = 0;
  std::string run_out;
  run->add_option("--config", config_path, "Pipeline config file")->required();
  run->add_option("--seed", run_seed, "Louvain seed")->required();
  run->add_option("--out", run_out, "Output directory (overrides output.dir)");
  run->callback([&] {
    action = [&] {
      auto cfg = load_config(config_path);
      cfg.sweep.rng_seed = run_seed;
      if (!run_out.empty()) cfg.out_dir = run_out;
      cfg.validate();
      return run_pipeline(std::move(cfg), diag);
    };
  });

  // export-gexf
  auto* gexf = app.add_subcommand("export-gexf", "Write the filtered network of a run as GEXF");
  std::string run_dir, gexf_out;
  gexf->add_option("--run-dir", run_dir, "Output directory of a completed run")->required();
  gexf->add_option("--out", gexf_out, "GEXF file (default: <run-dir>/network.gexf)");
  gexf->callback([&] {
    action = [&] {
      const fs::path dir(run_dir);
      if (fs::exists(dir / ".partial")) throw InputError("run in " + run_dir + " did not complete");
      const auto g = load_graph(dir / "backbone.csv");
      const auto trace = read_file(dir / "trace.jsonl", [&](std::istream& in) { return read_trace(in, g); });
      std::optional<std::map<std::string, double>> polarities;
      if (fs::exists(dir / "polarity.csv"))
        polarities = read_file(dir / "polarity.csv", [](std::istream& in) { return read_polarities(in); });
      const auto coord = node_coordination(g);
      std::vector<GexfNode> nodes(g.node_count());
      for (NodeId v = 0; v < g.node_count(); ++v) {
        nodes[v].id = g.node(v);
        nodes[v].coordination = coord[v];
        if (polarities)
          if (auto it = polarities->find(g.node(v)); it != polarities->end()) nodes[v].polarity = it->second;
      }
      if (!trace.iterations.empty())
        for (const auto& c : trace.iterations.front().communities)
          for (NodeId v : c.members) nodes[v].community_id = c.id;
      const fs::path out = gexf_out.empty() ? dir / "network.gexf" : fs::path(gexf_out);
      write_file(out, [&](std::ostream& os) { write_gexf(os, nodes, g); });
      diag << "nodes=" << g.node_count() << " edges=" << g.edge_count() << '\n';
      return int{kOk};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    return action ? action() : kConfigError;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace coord::cli
