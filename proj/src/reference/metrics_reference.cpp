#include <cmath>

#include "coord/reference.hpp"

namespace coord::reference {
namespace {

std::vector<std::vector<char>> adjacency_matrix(const SimilarityGraph& g) {
  std::vector<std::vector<char>> a(g.node_count(), std::vector<char>(g.node_count(), 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

}  // namespace

double density_reference(const SimilarityGraph& graph) {
  const auto a = adjacency_matrix(graph);
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ones += a[i][j];
  return static_cast<double>(ones) / static_cast<double>(n * (n - 1));
}

double avg_clustering_reference(const SimilarityGraph& graph) {
  const auto a = adjacency_matrix(graph);
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t deg = 0, closed = 0;
    for (std::size_t j = 0; j < n; ++j) deg += a[i][j];
    if (deg < 2) continue;
    // Ordered pairs of neighbours that are themselves adjacent.
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) closed += a[i][j] && a[i][k] && a[j][k];
    sum += static_cast<double>(closed) / static_cast<double>(deg * (deg - 1));
  }
  return sum / static_cast<double>(n);
}

std::optional<double> assortativity_reference(const SimilarityGraph& graph) {
  const auto a = adjacency_matrix(graph);
  const std::size_t n = a.size();
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += a[i][j];
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j]) {
        xs.push_back(deg[i]);
        ys.push_back(deg[j]);
      }
  if (xs.empty()) return std::nullopt;
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace coord::reference
