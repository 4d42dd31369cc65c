#pragma once

#include <cstdint>
#include <vector>

#include "coord/graph.hpp"

namespace coord {

/// Community assignment aligned with the node indices of one graph.
/// Ids are dense: 0 .. community_count-1.
struct Partition {
  std::vector<std::int32_t> assignment;
  std::int32_t community_count = 0;

  /// Members of each community, ascending node index.
  std::vector<std::vector<NodeId>> communities() const;
};

/// Weighted modularity with resolution gamma:
/// Q = sum_c [ L_c / m - gamma (S_c / 2m)^2 ].
double modularity(const SimilarityGraph& graph, const Partition& partition, double resolution);

/// Louvain optimisation of weighted modularity.
///
/// `seed` (optional, aligned with `graph`, negative entries = no seed) is the
/// starting assignment of the first local-move phase; nodes remain free to
/// move. Nodes are visited in index order permuted by a generator seeded with
/// `rng_seed`. A node moves only when that raises modularity by more than
/// 1e-12; equal gains go to the smaller community id. Levels repeat until a
/// local-move phase leaves nothing to aggregate; communities that end up
/// internally disconnected are then split into their connected parts. Final ids are numbered by
/// each community's smallest node.
Partition detect_communities(const SimilarityGraph& graph, double resolution,
                             const std::vector<std::int32_t>* seed, std::uint64_t rng_seed);

}  // namespace coord
