#pragma once

#include <cstddef>
#include <vector>

#include "coord/graph.hpp"

namespace coord {

enum class KeepRule { EitherEndpoint, BothEndpoints };

struct BackboneConfig {
  double alpha = 0.05;
  KeepRule keep_rule = KeepRule::EitherEndpoint;

  /// Throws ConfigError unless alpha lies in (0, 1).
  void validate() const;
};

/// Disparity-filter p-value of an edge seen from one endpoint:
/// (1 - w/s)^(k-1). Nodes with degree < 2 cannot certify an edge, so 1.
double disparity_alpha(double weight, double strength, std::size_t degree);

/// Significance of every edge (in graph edge order) from both endpoints.
struct EdgeSignificance {
  double from_u = 1.0;
  double from_v = 1.0;
};
std::vector<EdgeSignificance> edge_significance(const SimilarityGraph& graph);

/// Multiscale backbone: keeps edges significant at level `alpha` under the
/// configured endpoint rule, then drops isolated nodes. Weights unchanged.
SimilarityGraph disparity_filter(const SimilarityGraph& graph, const BackboneConfig& config = {});

/// Fixed-threshold baseline: keeps edges with weight >= t, drops isolated nodes.
SimilarityGraph fixed_threshold_filter(const SimilarityGraph& graph, double t);

}  // namespace coord
