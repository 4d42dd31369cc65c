#include <charconv>
#include <fstream>

#include <CLI11.hpp>

#include "coord/cli.hpp"
#include "coord/error.hpp"

namespace coord::cli {
namespace {

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ConfigError("config key " + key + ": expected a number, got '" + text + "'");
  return v;
}

long to_long(const std::string& key, const std::string& text) {
  long v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ConfigError("config key " + key + ": expected an integer, got '" + text + "'");
  return v;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("population fraction must lie in (0, 1]");
  backbone.validate();
  sweep.validate();
  if (polarity_rounds < 1) throw ConfigError("polarity rounds must be at least 1");
  if (top_k < 1) throw ConfigError("shift top_k must be at least 1");
  if (core_threshold && !(*core_threshold >= 0.0 && *core_threshold <= 1.0))
    throw ConfigError("shift core_threshold must lie in [0, 1]");

  namespace fs = std::filesystem;
  if (records.empty()) throw ConfigError("config is missing input.records");
  if (!fs::is_regular_file(records)) throw IoError("input file not found: " + records.string());
  for (const auto* p : {&population, &scores, &suspensions, &seeds, &stopwords})
    if (*p && !fs::is_regular_file(**p)) throw IoError("input file not found: " + (*p)->string());
}

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  auto path = [&](const std::string& text) {
    std::filesystem::path p(text);
    return p.is_absolute() ? p : base_dir / p;
  };
  for (const auto& item : items) {
    // CLI11 emits bookkeeping items for section headers.
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    if (item.inputs.size() != 1) throw ConfigError("config key " + key + ": expected exactly one value");
    const std::string& v = item.inputs.front();

    if (key == "input.records") cfg.records = path(v);
    else if (key == "input.population") cfg.population = path(v);
    else if (key == "input.scores") cfg.scores = path(v);
    else if (key == "input.suspensions") cfg.suspensions = path(v);
    else if (key == "input.seeds") cfg.seeds = path(v);
    else if (key == "input.stopwords") cfg.stopwords = path(v);
    else if (key == "population.fraction") cfg.fraction = to_double(key, v);
    else if (key == "backbone.alpha") cfg.backbone.alpha = to_double(key, v);
    else if (key == "backbone.keep_rule") {
      if (v == "either") cfg.backbone.keep_rule = KeepRule::EitherEndpoint;
      else if (v == "both") cfg.backbone.keep_rule = KeepRule::BothEndpoints;
      else throw ConfigError("config key backbone.keep_rule: expected either|both");
    }
    else if (key == "sweep.steps") cfg.sweep.step_count = static_cast<int>(to_long(key, v));
    else if (key == "sweep.delta_w") cfg.sweep.delta_w = to_double(key, v);
    else if (key == "sweep.resolution") cfg.sweep.resolution = to_double(key, v);
    else if (key == "sweep.min_size") cfg.sweep.min_size = static_cast<int>(to_long(key, v));
    else if (key == "metrics.clustering") {
      if (v == "local") cfg.clustering = ClusteringVariant::AverageLocal;
      else if (v == "global") cfg.clustering = ClusteringVariant::Global;
      else throw ConfigError("config key metrics.clustering: expected local|global");
    }
    else if (key == "polarity.rounds") cfg.polarity_rounds = static_cast<int>(to_long(key, v));
    else if (key == "shift.top_k") cfg.top_k = static_cast<std::size_t>(to_long(key, v));
    else if (key == "shift.core_threshold") cfg.core_threshold = to_double(key, v);
    else if (key == "output.dir") cfg.out_dir = path(v);
    else throw ConfigError("unknown config key " + key);
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  return parse_config(in, file.parent_path());
}

}  // namespace coord::cli
