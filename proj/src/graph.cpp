#include "coord/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "coord/error.hpp"
#include "coord/format.hpp"

namespace coord {

SimilarityGraph::SimilarityGraph(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i - 1] < nodes_[i]))
      throw std::invalid_argument("graph nodes must be distinct and sorted: " + nodes_[i]);

  const auto n = nodes_.size();
  for (const auto& e : edges_) {
    if (e.u >= e.v) throw std::invalid_argument("graph edges must satisfy u < v");
    if (e.v >= n) throw std::invalid_argument("graph edge endpoint out of range");
    if (!(e.weight > 0.0 && e.weight <= 1.0))
      throw std::invalid_argument("graph edge weight outside (0, 1]");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw std::invalid_argument("duplicate graph edge");

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n]);
  strength_.assign(n, 0.0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so each adjacency list fills in ascending
  // neighbour order: lower neighbours arrive first (as v), then higher (as u).
  for (const auto& e : edges_) {
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) strength_[v] += adjacency_[k].weight;
}

std::span<const Neighbor> SimilarityGraph::neighbors(NodeId v) const {
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::optional<NodeId> SimilarityGraph::index_of(std::string_view user_id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), user_id);
  if (it == nodes_.end() || *it != user_id) return std::nullopt;
  return static_cast<NodeId>(it - nodes_.begin());
}

std::vector<double> SimilarityGraph::sorted_weights() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  return w;
}

double SimilarityGraph::min_weight() const {
  if (edges_.empty()) throw std::logic_error("min_weight of an edgeless graph");
  return std::min_element(edges_.begin(), edges_.end(),
                          [](const Edge& a, const Edge& b) { return a.weight < b.weight; })
      ->weight;
}

double SimilarityGraph::max_weight() const {
  if (edges_.empty()) throw std::logic_error("max_weight of an edgeless graph");
  return std::max_element(edges_.begin(), edges_.end(),
                          [](const Edge& a, const Edge& b) { return a.weight < b.weight; })
      ->weight;
}

Subgraph keep_edges(const SimilarityGraph& graph, std::span<const char> keep) {
  const auto edges = graph.edges();
  std::vector<char> used(graph.node_count(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!keep[i]) continue;
    used[edges[i].u] = used[edges[i].v] = 1;
  }
  Subgraph sub;
  std::vector<NodeId> remap(graph.node_count(), 0);
  std::vector<std::string> names;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (!used[v]) continue;
    remap[v] = static_cast<NodeId>(names.size());
    names.push_back(graph.node(v));
    sub.parent_index.push_back(v);
  }
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (keep[i]) kept.push_back({remap[edges[i].u], remap[edges[i].v], edges[i].weight});
  sub.graph = SimilarityGraph(std::move(names), std::move(kept));
  return sub;
}

Subgraph threshold_subgraph(const SimilarityGraph& graph, double min_weight) {
  std::vector<char> keep(graph.edge_count());
  const auto edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) keep[i] = edges[i].weight >= min_weight;
  return keep_edges(graph, keep);
}

SimilarityGraph induced_subgraph(const SimilarityGraph& graph, std::span<const NodeId> members,
                                 double min_weight) {
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::string> names;
  names.reserve(sorted.size());
  for (NodeId v : sorted) names.push_back(graph.node(v));

  std::vector<Edge> edges;
  for (NodeId local = 0; local < sorted.size(); ++local) {
    NodeId v = sorted[local];
    for (const auto& nb : graph.neighbors(v)) {
      if (nb.node <= v || nb.weight < min_weight) continue;
      auto it = std::lower_bound(sorted.begin(), sorted.end(), nb.node);
      if (it != sorted.end() && *it == nb.node)
        edges.push_back({local, static_cast<NodeId>(it - sorted.begin()), nb.weight});
    }
  }
  return SimilarityGraph(std::move(names), std::move(edges));
}

std::vector<std::uint32_t> connected_components(const SimilarityGraph& graph) {
  constexpr auto unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(graph.node_count(), unset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId root = 0; root < graph.node_count(); ++root) {
    if (comp[root] != unset) continue;
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const auto& nb : graph.neighbors(v)) {
        if (comp[nb.node] != unset) continue;
        comp[nb.node] = next;
        stack.push_back(nb.node);
      }
    }
    ++next;
  }
  return comp;
}

void write_edge_list(std::ostream& out, const SimilarityGraph& graph) {
  for (const auto& e : graph.edges())
    out << csv_cell(graph.node(e.u)) << ',' << csv_cell(graph.node(e.v)) << ','
        << format_general(e.weight, 17) << '\n';
}

SimilarityGraph read_edge_list(std::istream& in) {
  if (!in) throw IoError("edge list stream is not readable");
  struct Row {
    std::string a, b;
    double w;
  };
  std::vector<Row> rows;
  std::set<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    double w = 0.0;
    if (cells.size() != 3) throw FormatError("edge list line " + std::to_string(lineno) + ": expected 3 cells");
    auto [end, ec] = std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), w);
    if (ec != std::errc{} || end != cells[2].data() + cells[2].size())
      throw FormatError("edge list line " + std::to_string(lineno) + ": bad weight");
    if (cells[0] == cells[1]) throw FormatError("edge list line " + std::to_string(lineno) + ": self-loop");
    if (cells[1] < cells[0]) std::swap(cells[0], cells[1]);
    names.insert(cells[0]);
    names.insert(cells[1]);
    rows.push_back({std::move(cells[0]), std::move(cells[1]), w});
  }
  if (in.bad()) throw IoError("read error while loading edge list");

  std::vector<std::string> nodes(names.begin(), names.end());
  auto index = [&](const std::string& id) {
    return static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(rows.size());
  for (const auto& r : rows) edges.push_back({index(r.a), index(r.b), r.w});
  try {
    return SimilarityGraph(std::move(nodes), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("edge list: ") + e.what());
  }
}

}  // namespace coord
