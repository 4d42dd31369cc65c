#include "coord/backbone.hpp"

#include <cmath>
#include <cstdint>

#include "coord/error.hpp"

namespace coord {

void BackboneConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("backbone alpha must lie in (0, 1)");
}

double disparity_alpha(double weight, double strength, std::size_t degree) {
  if (degree < 2) return 1.0;
  const double p = weight / strength;
  return std::pow(1.0 - p, static_cast<double>(degree - 1));
}

std::vector<EdgeSignificance> edge_significance(const SimilarityGraph& graph) {
  const auto edges = graph.edges();
  std::vector<EdgeSignificance> sig(edges.size());
  const auto m = static_cast<std::int64_t>(edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    const Edge& e = edges[static_cast<std::size_t>(i)];
    sig[static_cast<std::size_t>(i)] = {disparity_alpha(e.weight, graph.strength(e.u), graph.degree(e.u)),
                                        disparity_alpha(e.weight, graph.strength(e.v), graph.degree(e.v))};
  }
  return sig;
}

SimilarityGraph disparity_filter(const SimilarityGraph& graph, const BackboneConfig& config) {
  config.validate();
  if (graph.empty()) return {};
  const auto sig = edge_significance(graph);
  std::vector<char> keep(sig.size());
  const bool both = config.keep_rule == KeepRule::BothEndpoints;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const bool at_u = sig[i].from_u < config.alpha;
    const bool at_v = sig[i].from_v < config.alpha;
    keep[i] = both ? (at_u && at_v) : (at_u || at_v);
  }
  return keep_edges(graph, keep).graph;
}

SimilarityGraph fixed_threshold_filter(const SimilarityGraph& graph, double t) {
  return threshold_subgraph(graph, t).graph;
}

}  // namespace coord
