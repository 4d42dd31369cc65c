#pragma once

// Serial, deliberately naive counterparts of the parallel kernels. They share
// no code path with the optimised versions and exist for tests and the
// benchmark only.

#include <optional>
#include <vector>

#include "coord/backbone.hpp"
#include "coord/graph.hpp"
#include "coord/simnet.hpp"

namespace coord::reference {

/// All O(n^2) pairs, dot products by dense scatter of one vector.
SimilarityGraph dense_similarity_graph(const UserVectors& vectors);

struct DisparityEdge {
  Edge edge;
  double alpha_u = 1.0;
  double alpha_v = 1.0;
  bool retained = false;
};

/// Per-edge evaluation of (1 - w/s)^(k-1) at both endpoints, with strength
/// and degree recomputed from the raw edge list.
std::vector<DisparityEdge> disparity_reference(const SimilarityGraph& graph, const BackboneConfig& config);

/// Adjacency-matrix measures.
double density_reference(const SimilarityGraph& graph);
double avg_clustering_reference(const SimilarityGraph& graph);
std::optional<double> assortativity_reference(const SimilarityGraph& graph);

}  // namespace coord::reference
