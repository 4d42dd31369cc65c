#include <doctest.h>

#include <cmath>
#include <functional>

#include "coord/louvain.hpp"
#include "support.hpp"

using namespace coord;
using coord::testing::Gen;

namespace {

// Q = 1/2m sum_ij [A_ij - gamma k_i k_j / 2m] delta(c_i, c_j) on the dense matrix.
double modularity_oracle(const SimilarityGraph& g, const std::vector<std::int32_t>& c, double gamma) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = e.weight;
  std::vector<double> k(n, 0.0);
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      m2 += a[i][j];
    }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += a[i][j] - gamma * k[i] * k[j] / m2;
  return q / m2;
}

// Enumerates every set partition as a restricted growth string.
void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::int32_t>&)>& visit) {
  std::vector<std::int32_t> c(n, 0);
  std::function<void(std::size_t, std::int32_t)> rec = [&](std::size_t i, std::int32_t used) {
    if (i == n) {
      visit(c);
      return;
    }
    for (std::int32_t b = 0; b <= used; ++b) {
      c[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n > 0) rec(0, 0);
}

std::pair<double, std::vector<std::int32_t>> best_partition(const SimilarityGraph& g, double gamma) {
  double best = -1e300;
  std::vector<std::int32_t> arg;
  for_each_partition(g.node_count(), [&](const std::vector<std::int32_t>& c) {
    const double q = modularity_oracle(g, c, gamma);
    if (q > best + 1e-12) {
      best = q;
      arg = c;
    }
  });
  return {best, arg};
}

SimilarityGraph two_triangles() {
  return testing::make_graph(6, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {3, 5, 1.0}, {4, 5, 1.0},
                                 {2, 3, 0.1}});
}

SimilarityGraph two_cliques() {
  std::vector<Edge> edges;
  for (NodeId base : {0u, 5u})
    for (NodeId i = 0; i < 5; ++i)
      for (NodeId j = i + 1; j < 5; ++j) edges.push_back({base + i, base + j, 1.0});
  edges.push_back({4, 5, 0.01});
  return testing::make_graph(10, edges);
}

Partition partition_of(std::vector<std::int32_t> assignment) {
  Partition p;
  p.community_count = 0;
  for (auto c : assignment) p.community_count = std::max(p.community_count, c + 1);
  p.assignment = std::move(assignment);
  return p;
}

}  // namespace

TEST_CASE("modularity matches the dense formula") {
  Gen gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_graph(gen, gen.between(2, 12), 0.4);
    if (g.empty()) continue;
    std::vector<std::int32_t> c(g.node_count());
    for (auto& x : c) x = static_cast<std::int32_t>(gen.below(4));
    const double gamma = gen.uniform(0.5, 2.0);
    // Dense ids are not required by the oracle; compact them for Partition.
    std::vector<std::int32_t> dense(c.size());
    std::vector<std::int32_t> remap(4, -1);
    std::int32_t next = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (remap[c[i]] < 0) remap[c[i]] = next++;
      dense[i] = remap[c[i]];
    }
    CHECK(modularity(g, partition_of(dense), gamma) == doctest::Approx(modularity_oracle(g, c, gamma)).epsilon(1e-12));
  }
}

TEST_CASE("two triangles joined by a bridge split into the triangles") {
  const auto g = two_triangles();
  const auto [best, arg] = best_partition(g, 1.0);
  CHECK(arg == std::vector<std::int32_t>{0, 0, 0, 1, 1, 1});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = detect_communities(g, 1.0, nullptr, seed);
    CHECK(p.assignment == arg);
    CHECK(modularity(g, p, 1.0) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("two 5-cliques joined by a weak edge split into the cliques") {
  const auto g = two_cliques();
  const auto [best, arg] = best_partition(g, 1.0);
  const std::vector<std::int32_t> cliques{0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  CHECK(arg == cliques);
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(detect_communities(g, 1.0, nullptr, seed).assignment == cliques);
}

TEST_CASE("a single clique is one community") {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 6; ++i)
    for (NodeId j = i + 1; j < 6; ++j) edges.push_back({i, j, 0.8});
  const auto p = detect_communities(testing::make_graph(6, edges), 1.0, nullptr, 1);
  CHECK(p.community_count == 1);
  CHECK(p.assignment == std::vector<std::int32_t>(6, 0));
}

TEST_CASE("an optimal seed is returned unchanged") {
  const auto g = two_triangles();
  const std::vector<std::int32_t> seed{7, 7, 7, 3, 3, 3};
  for (std::uint64_t s = 0; s < 10; ++s)
    CHECK(detect_communities(g, 1.0, &seed, s).assignment == std::vector<std::int32_t>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("a disconnected seed community is split") {
  // Seed puts two separate edges in one community.
  const auto g = testing::make_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const std::vector<std::int32_t> seed{0, 0, 0, 0};
  const auto p = detect_communities(g, 1.0, &seed, 0);
  CHECK(p.assignment == std::vector<std::int32_t>{0, 0, 1, 1});
}

TEST_CASE("empty graph gives an empty partition") {
  const auto p = detect_communities(SimilarityGraph{}, 1.0, nullptr, 0);
  CHECK(p.assignment.empty());
  CHECK(p.community_count == 0);
}

TEST_CASE("louvain properties on random graphs") {
  Gen gen(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = gen.between(2, 8);
    const auto g = testing::random_graph(gen, n, gen.uniform(0.2, 0.8));
    if (g.empty()) continue;
    const double gamma = gen.uniform(0.5, 2.0);
    const auto seed = gen.below(1000);
    const auto p = detect_communities(g, gamma, nullptr, seed);

    // Deterministic for a fixed seed.
    CHECK(detect_communities(g, gamma, nullptr, seed).assignment == p.assignment);
    // Ids dense and numbered by smallest member.
    std::int32_t next = 0;
    for (auto c : p.assignment) {
      CHECK(c <= next);
      if (c == next) ++next;
    }
    CHECK(next == p.community_count);
    // Never worse than the exhaustive optimum; never worse than all singletons.
    const auto [best, arg] = best_partition(g, gamma);
    const double q = modularity(g, p, gamma);
    CHECK(q <= best + 1e-12);
    std::vector<std::int32_t> singletons(n);
    for (std::size_t i = 0; i < n; ++i) singletons[i] = static_cast<std::int32_t>(i);
    CHECK(q >= modularity_oracle(g, singletons, gamma) - 1e-12);
    // Every community is connected.
    const auto members = p.communities();
    for (const auto& m : members) {
      const auto sub = induced_subgraph(g, m);
      const auto comp = connected_components(sub);
      for (auto x : comp) CHECK(x == 0);
    }
  }
}

TEST_CASE("louvain finds the exhaustive optimum on small planted structures") {
  Gen gen(123);
  for (int trial = 0; trial < 20; ++trial) {
    // Two dense blocks with weak links between them.
    std::vector<Edge> edges;
    const NodeId half = 4;
    for (NodeId i = 0; i < 2 * half; ++i)
      for (NodeId j = i + 1; j < 2 * half; ++j) {
        const bool same = (i < half) == (j < half);
        if (same) edges.push_back({i, j, gen.uniform(0.7, 1.0)});
        else if (gen.chance(0.2)) edges.push_back({i, j, gen.uniform(0.01, 0.1)});
      }
    const auto g = testing::make_graph(2 * half, edges);
    const auto [best, arg] = best_partition(g, 1.0);
    const auto p = detect_communities(g, 1.0, nullptr, gen.below(100));
    CHECK(p.assignment == arg);
  }
}
