#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coord/backbone.hpp"
#include "coord/netmetrics.hpp"
#include "coord/sweep.hpp"

namespace coord::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInputError = 3, kStageFailure = 4 };

/// Settings of a full pipeline run, read from an INI-style file:
///
///   [input]      records, population, scores, suspensions, seeds, stopwords
///   [population] fraction
///   [backbone]   alpha, keep_rule (either|both)
///   [sweep]      steps, delta_w, resolution, min_size
///   [metrics]    clustering (local|global)
///   [polarity]   rounds
///   [shift]      top_k, core_threshold
///   [output]     dir
///
/// Relative paths are resolved against the config file's directory.
struct PipelineConfig {
  std::filesystem::path records;
  std::optional<std::filesystem::path> population;
  std::optional<std::filesystem::path> scores;
  std::optional<std::filesystem::path> suspensions;
  std::optional<std::filesystem::path> seeds;
  std::optional<std::filesystem::path> stopwords;
  double fraction = 0.01;
  BackboneConfig backbone;
  SweepConfig sweep;
  ClusteringVariant clustering = ClusteringVariant::AverageLocal;
  int polarity_rounds = 1;
  std::size_t top_k = 25;
  std::optional<double> core_threshold;
  std::filesystem::path out_dir = "out";

  /// Throws ConfigError for bad values, IoError for missing input files.
  void validate() const;
};

/// Throws ConfigError on unknown sections/keys or unparsable values.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);

/// GEXF 1.2 document: nodes with optional community_id, node_coordination and
/// polarity attributes; weighted undirected edges.
struct GexfNode {
  std::string id;
  std::optional<long> community_id;
  std::optional<double> coordination;
  std::optional<double> polarity;
};
void write_gexf(std::ostream& out, const std::vector<GexfNode>& nodes, const SimilarityGraph& graph);

/// Entry point shared by the `coord` binary and the tests.
int main(int argc, const char* const* argv);
int main(const std::vector<std::string>& args);

}  // namespace coord::cli
