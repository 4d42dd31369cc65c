#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coord {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 0.0;
};

/// Weighted undirected user graph G(E, V, W).
///
/// Node ids are stored sorted and distinct, so node index order is user id
/// order. Edges are canonical (u < v), sorted by (u, v), free of duplicates
/// and self-loops, with weights in (0, 1]. Immutable after construction.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  /// Validates every invariant above and throws std::invalid_argument on
  /// violation. Edges may be passed in any order; they are sorted here.
  SimilarityGraph(std::vector<std::string> nodes, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::string& node(NodeId v) const { return nodes_[v]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Neighbours of v sorted by node index.
  std::span<const Neighbor> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  double strength(NodeId v) const { return strength_[v]; }

  std::optional<NodeId> index_of(std::string_view user_id) const;

  /// Edge weights in ascending order.
  std::vector<double> sorted_weights() const;
  double min_weight() const;
  double max_weight() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> strength_;
};

/// A graph derived from a parent graph, with the parent index of each node.
struct Subgraph {
  SimilarityGraph graph;
  std::vector<NodeId> parent_index;
};

/// Keeps edges whose flag is set and drops nodes left with degree zero.
Subgraph keep_edges(const SimilarityGraph& graph, std::span<const char> keep);

/// Edges with weight >= min_weight; degree-zero nodes dropped.
Subgraph threshold_subgraph(const SimilarityGraph& graph, double min_weight);

/// Subgraph induced by `members` (parent indices, any order) restricted to
/// edges with weight >= min_weight. All members are kept, isolated or not.
SimilarityGraph induced_subgraph(const SimilarityGraph& graph, std::span<const NodeId> members,
                                 double min_weight = 0.0);

/// Connected components; returns the component index of every node.
/// Components are numbered by their smallest node index.
std::vector<std::uint32_t> connected_components(const SimilarityGraph& graph);

/// Header-less CSV `user_id_a,user_id_b,weight`, weights at 17 significant
/// digits, rows sorted by (a, b).
void write_edge_list(std::ostream& out, const SimilarityGraph& graph);
SimilarityGraph read_edge_list(std::istream& in);

}  // namespace coord
