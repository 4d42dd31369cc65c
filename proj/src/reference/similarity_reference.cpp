#include <algorithm>
#include <cmath>

#include "coord/reference.hpp"

namespace coord::reference {

SimilarityGraph dense_similarity_graph(const UserVectors& vectors) {
  const auto& users = vectors.users;
  const std::size_t n = users.size();
  std::vector<double> dense(vectors.tweet_ids.size(), 0.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    double nu = 0.0;
    for (const auto& [t, w] : users[u].components) {
      dense[t] = w;
      nu += w * w;
    }
    nu = std::sqrt(nu);
    for (NodeId v = u + 1; v < n; ++v) {
      double dot = 0.0, nv = 0.0;
      for (const auto& [t, w] : users[v].components) {
        dot += dense[t] * w;
        nv += w * w;
      }
      nv = std::sqrt(nv);
      if (nu == 0.0 || nv == 0.0) continue;
      const double sim = dot / (nu * nv);
      if (sim > 0.0) edges.push_back({u, v, std::min(1.0, sim)});
    }
    for (const auto& [t, w] : users[u].components) dense[t] = 0.0;
  }
  std::vector<std::string> names;
  for (const auto& u : users) names.push_back(u.user_id);
  return SimilarityGraph(std::move(names), std::move(edges));
}

}  // namespace coord::reference
