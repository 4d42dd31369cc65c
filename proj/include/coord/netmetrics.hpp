#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "coord/graph.hpp"
#include "coord/ingest.hpp"
#include "coord/sweep.hpp"

namespace coord {

/// 2m / (n (n-1)); 0 for a single node.
double density(const SimilarityGraph& graph);

/// Unweighted local clustering coefficient per node (0 when degree < 2).
std::vector<double> local_clustering(const SimilarityGraph& graph);

/// Mean of local_clustering over all nodes.
double avg_clustering(const SimilarityGraph& graph);

/// 3 * triangles / connected triples; 0 when there are no triples.
double transitivity(const SimilarityGraph& graph);

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. nullopt when there are no edges or either marginal has no variance.
std::optional<double> assortativity(const SimilarityGraph& graph);

enum class ClusteringVariant { AverageLocal, Global };

struct ProfilePoint {
  double coordination = 0.0;
  std::size_t size_abs = 0;
  double size_pct = 0.0;
  double density = 0.0;
  double clustering = 0.0;
  std::optional<double> assortativity;
  std::optional<double> mean_annotation;
  std::optional<double> flagged_fraction;
};

/// Measures of one traced community (identified by its id in C0) across the
/// sweep. Points are ordered by strictly increasing coordination.
struct CommunityProfile {
  std::int32_t community_id = 0;
  std::vector<ProfilePoint> points;
};

struct CurveOptions {
  ClusteringVariant clustering = ClusteringVariant::AverageLocal;
  const AnnotationTable* scores = nullptr;
  const AnnotationTable* flags = nullptr;
};

/// Root (C0 community id) of every traced community at every iteration,
/// following the lineage links; -1 for untraced communities.
std::vector<std::vector<std::int32_t>> lineage_roots(const SweepTrace& trace);

/// For every traced C0 community, the members of all of its descendants at
/// each iteration (empty when the lineage has died out).
std::vector<std::pair<std::int32_t, std::vector<std::vector<NodeId>>>> lineage_members(const SweepTrace& trace);

/// Per-community network measures as a function of coordination. At each
/// iteration a lineage is measured on the subgraph of G_i induced by the
/// union of its descendants; size_pct is relative to the size at t0.
std::vector<CommunityProfile> community_curves(const SweepTrace& trace, const SimilarityGraph& graph,
                                               const CurveOptions& options = {});

/// Mean score (Score tables; members without a score are skipped) or flagged
/// share of all members (Flag tables) for one member set. nullopt when no
/// member has a score, or the set is empty.
std::optional<double> annotation_value(const std::vector<NodeId>& members, const SimilarityGraph& graph,
                                       const AnnotationTable& table);

struct AnnotationCurve {
  std::int32_t community_id = 0;
  std::vector<std::pair<double, double>> points;  // (coordination, value)
};

std::vector<AnnotationCurve> annotation_curves(const SweepTrace& trace, const SimilarityGraph& graph,
                                               const AnnotationTable& table);

/// Elbow of the size curve: the point farthest from the chord between the
/// first and last points (ties: smallest coordination). nullopt with fewer
/// than three points.
std::optional<double> elbow_coordination(const CommunityProfile& profile);

/// CSV with header `community_id,coordination,size_abs,size_pct,density,
/// avg_clustering,assortativity,mean_annotation,flagged_fraction`; undefined
/// or absent values are empty cells.
void write_metrics(std::ostream& out, const std::vector<CommunityProfile>& profiles);

}  // namespace coord
