#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coord/graph.hpp"
#include "coord/louvain.hpp"

namespace coord {

/// Empirical weight distribution of the filtered network; the reference for
/// turning thresholds into coordination scores.
class WeightDistribution {
 public:
  WeightDistribution() = default;
  explicit WeightDistribution(std::vector<double> weights);
  explicit WeightDistribution(const SimilarityGraph& graph) : WeightDistribution(graph.sorted_weights()) {}

  /// Percentile rank: share of weights w with t >= w.
  double percentile_rank(double t) const;

  bool empty() const noexcept { return sorted_.empty(); }
  std::size_t size() const noexcept { return sorted_.size(); }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  const std::vector<double>& values() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// |{w in W : t >= w}| / |W|. W must be non-empty.
double coordination_score(double t, const WeightDistribution& weights);

/// Coordination score of each node's strongest incident edge (0 for
/// isolated nodes): the last sweep level at which the node survives.
std::vector<double> node_coordination(const SimilarityGraph& graph);

struct SweepConfig {
  /// Explicit threshold step; when unset the step is (max W - min W) / step_count.
  std::optional<double> delta_w;
  int step_count = 100;
  double resolution = 1.5;
  int min_size = 20;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct TracedCommunity {
  std::int32_t id = 0;
  std::vector<NodeId> members;  // base-graph indices, ascending
  std::int32_t parent = -1;     // community id at the previous iteration
  bool traced = true;
};

/// One level of the sweep. Per-node vectors are aligned with the base graph
/// and hold -1 for nodes that did not survive (or had no seed).
struct SweepIteration {
  double threshold = 0.0;
  double coordination = 0.0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::int32_t> assignment;
  std::vector<std::int32_t> seed;
  std::vector<TracedCommunity> communities;

  const TracedCommunity* find(std::int32_t id) const;
};

struct SweepTrace {
  std::vector<SweepIteration> iterations;
};

/// Coordination-aware community detection over a moving threshold.
///
/// C0 is detected on the whole filtered graph at t0 = min W. Each further
/// level raises the threshold by the step, drops edges below it and the
/// nodes left isolated, and re-runs Louvain warm-started from the previous
/// partition restricted to the survivors. Communities below `min_size` at t0
/// are not traced; later communities inherit traced status from their parent,
/// the previous community with the highest member Jaccard (ties: larger
/// overlap, then smaller id).
SweepTrace run_sweep(const SimilarityGraph& graph, const SweepConfig& config);

/// One JSON object per iteration; only traced communities are written.
void write_trace(std::ostream& out, const SimilarityGraph& graph, const SweepTrace& trace);

/// Reads a trace written by write_trace. Member ids are resolved against
/// `graph`; `seed` vectors are left empty.
SweepTrace read_trace(std::istream& in, const SimilarityGraph& graph);

}  // namespace coord
