#include <cmath>

#include "coord/reference.hpp"

namespace coord::reference {

std::vector<DisparityEdge> disparity_reference(const SimilarityGraph& graph, const BackboneConfig& config) {
  const auto edges = graph.edges();
  std::vector<double> strength(graph.node_count(), 0.0);
  std::vector<std::size_t> degree(graph.node_count(), 0);
  for (const auto& e : edges) {
    strength[e.u] += e.weight;
    strength[e.v] += e.weight;
    ++degree[e.u];
    ++degree[e.v];
  }
  auto alpha = [&](NodeId x, double w) {
    if (degree[x] < 2) return 1.0;
    double a = 1.0;
    for (std::size_t i = 1; i < degree[x]; ++i) a *= 1.0 - w / strength[x];
    return a;
  };
  std::vector<DisparityEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    DisparityEdge d{e, alpha(e.u, e.weight), alpha(e.v, e.weight), false};
    const bool at_u = d.alpha_u < config.alpha, at_v = d.alpha_v < config.alpha;
    d.retained = config.keep_rule == KeepRule::BothEndpoints ? (at_u && at_v) : (at_u || at_v);
    out.push_back(d);
  }
  return out;
}

}  // namespace coord::reference
