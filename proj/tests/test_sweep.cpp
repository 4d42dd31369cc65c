#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "coord/error.hpp"
#include "coord/netmetrics.hpp"
#include "coord/sweep.hpp"
#include "support.hpp"

using namespace coord;
using coord::testing::Gen;

namespace {

// Structural invariants every sweep must satisfy.
void check_invariants(const SimilarityGraph& g, const SweepTrace& trace) {
  REQUIRE_FALSE(trace.iterations.empty());
  const WeightDistribution dist(g);
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    CHECK(it.coordination >= 0.0);
    CHECK(it.coordination <= 1.0);
    CHECK(it.coordination == coordination_score(it.threshold, dist));
    CHECK(it.assignment.size() == g.node_count());
    const auto sub = threshold_subgraph(g, it.threshold);
    CHECK(it.node_count == sub.graph.node_count());
    CHECK(it.edge_count == sub.graph.edge_count());
    // Assigned nodes are exactly the survivors.
    std::size_t assigned = 0;
    for (auto c : it.assignment) assigned += c >= 0;
    CHECK(assigned == it.node_count);
    if (i == 0) continue;
    const auto& prev = trace.iterations[i - 1];
    CHECK(it.threshold > prev.threshold);
    CHECK(it.coordination >= prev.coordination);
    CHECK(it.node_count <= prev.node_count);
    CHECK(it.edge_count <= prev.edge_count);
    for (NodeId v = 0; v < g.node_count(); ++v)
      CHECK(it.seed[v] == (it.assignment[v] >= 0 ? prev.assignment[v] : -1));
  }
  const auto nc = node_coordination(g);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    double strongest = 0.0;
    for (const auto& nb : g.neighbors(v)) strongest = std::max(strongest, nb.weight);
    CHECK(nc[v] == (g.degree(v) ? coordination_score(strongest, dist) : 0.0));
  }
}

// Members of all descendants of C0 community `root` at every iteration.
std::vector<std::set<NodeId>> lineage_sets(const SweepTrace& trace, std::int32_t root) {
  for (const auto& [id, per_iter] : lineage_members(trace))
    if (id == root) {
      std::vector<std::set<NodeId>> out;
      for (const auto& m : per_iter) out.emplace_back(m.begin(), m.end());
      return out;
    }
  FAIL("no lineage for root " << root);
  return {};
}

}  // namespace

TEST_CASE("coordination score counting") {
  const WeightDistribution w(std::vector<double>{1, 2, 3, 4});
  CHECK(coordination_score(2.5, w) == 0.5);
  CHECK(coordination_score(4.0, w) == 1.0);
  CHECK(coordination_score(0.5, w) == 0.0);
  CHECK(coordination_score(2.0, w) == 0.5);
  CHECK_THROWS(coordination_score(0.5, WeightDistribution{}));
}

TEST_CASE("node coordination fixtures") {
  // Path with weights 0.1 .. 0.5: odd |W| = 5, median 0.3.
  const auto g = testing::make_graph(7, {{0, 1, 0.1}, {1, 2, 0.2}, {3, 4, 0.3}, {2, 5, 0.4}, {5, 6, 0.5}});
  const auto nc = node_coordination(g);
  CHECK(nc[6] == 1.0);  // strongest edge is the graph maximum
  CHECK(std::abs(nc[3] - 0.5) <= 1.0 / 5.0);
  CHECK(nc[3] == nc[4]);
  CHECK(nc[0] == doctest::Approx(0.2));

  const auto iso = testing::make_graph(3, {{0, 1, 0.5}});
  CHECK(node_coordination(iso)[2] == 0.0);
}

TEST_CASE("a single distinct weight gives one iteration at full coordination") {
  const auto g = testing::make_graph(4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}});
  const auto trace = run_sweep(g, {});
  REQUIRE(trace.iterations.size() == 1);
  CHECK(trace.iterations[0].coordination == 1.0);
  CHECK(trace.iterations[0].threshold == 0.5);
}

TEST_CASE("empty graph gives an empty trace") { CHECK(run_sweep(SimilarityGraph{}, {}).iterations.empty()); }

TEST_CASE("sweep configuration is validated") {
  const auto g = testing::make_graph(2, {{0, 1, 0.5}});
  SweepConfig bad;
  bad.step_count = 0;
  CHECK_THROWS_AS(run_sweep(g, bad), ConfigError);
  bad = {};
  bad.delta_w = 0.0;
  CHECK_THROWS_AS(run_sweep(g, bad), ConfigError);
  bad = {};
  bad.resolution = 0.0;
  CHECK_THROWS_AS(run_sweep(g, bad), ConfigError);
}

TEST_CASE("step-count thresholds end on the maximum weight") {
  Gen gen(1);
  const auto g = testing::random_graph(gen, 30, 0.3);
  SweepConfig cfg;
  cfg.step_count = 7;
  cfg.min_size = 1;
  const auto trace = run_sweep(g, cfg);
  REQUIRE(trace.iterations.size() == 8);
  CHECK(trace.iterations.front().threshold == g.min_weight());
  CHECK(trace.iterations.back().threshold == g.max_weight());
  CHECK(trace.iterations.back().coordination == 1.0);
}

TEST_CASE("explicit step thresholds are arithmetic") {
  const auto g = testing::make_graph(5, {{0, 1, 0.1}, {1, 2, 0.35}, {2, 3, 0.6}, {3, 4, 0.95}});
  SweepConfig cfg;
  cfg.delta_w = 0.2;
  cfg.min_size = 1;
  const auto trace = run_sweep(g, cfg);
  REQUIRE(trace.iterations.size() == 5);
  for (std::size_t i = 0; i < trace.iterations.size(); ++i)
    CHECK(trace.iterations[i].threshold == 0.1 + static_cast<double>(i) * 0.2);
}

TEST_CASE("sweep invariants hold on random graphs") {
  Gen gen(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing::random_graph(gen, gen.between(2, 40), gen.uniform(0.1, 0.5), trial % 2 ? 5 : 0);
    if (g.empty()) continue;
    SweepConfig cfg;
    cfg.step_count = static_cast<int>(gen.between(1, 30));
    cfg.min_size = static_cast<int>(gen.between(1, 5));
    cfg.resolution = gen.uniform(0.5, 2.0);
    cfg.rng_seed = gen.below(1000);
    const auto trace = run_sweep(g, cfg);
    check_invariants(g, trace);
    // Same seed, same trace.
    const auto again = run_sweep(g, cfg);
    REQUIRE(again.iterations.size() == trace.iterations.size());
    for (std::size_t i = 0; i < trace.iterations.size(); ++i)
      CHECK(again.iterations[i].assignment == trace.iterations[i].assignment);
  }
}

TEST_CASE("traced status comes from the size cut at t0 and is inherited") {
  Gen gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(gen, 40, 0.2);
    SweepConfig cfg;
    cfg.step_count = 10;
    cfg.min_size = 4;
    const auto trace = run_sweep(g, cfg);
    for (const auto& c : trace.iterations[0].communities)
      CHECK(c.traced == (c.members.size() >= 4));
    for (std::size_t i = 1; i < trace.iterations.size(); ++i)
      for (const auto& c : trace.iterations[i].communities) {
        REQUIRE(c.parent >= 0);
        const auto* parent = trace.iterations[i - 1].find(c.parent);
        REQUIRE(parent);
        CHECK(c.traced == parent->traced);
      }
  }
}

TEST_CASE("a weak planted group drops out early and a strong one persists") {
  // Strong group: 20 nodes at 0.85-0.95. Weak group: 8 nodes at 0.25-0.35.
  // Background: sparse edges at 0.05-0.15.
  Gen gen(5);
  std::vector<Edge> edges;
  const NodeId strong0 = 0, weak0 = 20, bg0 = 28, n = 60;
  for (NodeId i = strong0; i < weak0; ++i)
    for (NodeId j = i + 1; j < weak0; ++j) edges.push_back({i, j, gen.uniform(0.85, 0.95)});
  for (NodeId i = weak0; i < bg0; ++i)
    for (NodeId j = i + 1; j < bg0; ++j) edges.push_back({i, j, gen.uniform(0.25, 0.35)});
  for (NodeId i = bg0; i < n; ++i) {
    edges.push_back({i - 1, i, gen.uniform(0.05, 0.15)});
    edges.push_back({static_cast<NodeId>(gen.below(bg0)), i, gen.uniform(0.05, 0.15)});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  edges.erase(std::unique(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  const auto g = testing::make_graph(n, edges);

  SweepConfig cfg;
  cfg.min_size = 5;
  cfg.resolution = 1.0;
  const auto trace = run_sweep(g, cfg);
  check_invariants(g, trace);

  // Locate the C0 communities matching the planted groups.
  auto root_of = [&](NodeId lo, NodeId hi) {
    for (const auto& c : trace.iterations[0].communities) {
      std::size_t inside = 0;
      for (auto v : c.members) inside += v >= lo && v < hi;
      if (2 * inside > hi - lo) return c.id;
    }
    FAIL("planted group not recovered");
    return -1;
  };
  const auto strong = lineage_sets(trace, root_of(strong0, weak0));
  const auto weak = lineage_sets(trace, root_of(weak0, bg0));

  // Exact drop-out point of the weak group from its own weights: the
  // lineage is gone once the threshold exceeds its strongest edge.
  double weak_max = 0.0;
  for (const auto& e : g.edges())
    if (e.u >= weak0 || e.v >= weak0)
      if ((e.u >= weak0 && e.u < bg0) || (e.v >= weak0 && e.v < bg0)) weak_max = std::max(weak_max, e.weight);
  const double weak_drop = coordination_score(weak_max, WeightDistribution(g));
  double weak_last = 0.0, strong_last = 0.0;
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    if (!weak[i].empty()) weak_last = trace.iterations[i].coordination;
    if (!strong[i].empty()) strong_last = trace.iterations[i].coordination;
    if (trace.iterations[i].threshold > weak_max) CHECK(weak[i].empty());
  }
  CHECK(weak_last <= weak_drop);
  CHECK(weak_drop >= 0.25);
  CHECK(weak_drop <= 0.4);
  CHECK(weak_last >= 0.25);
  CHECK(strong_last >= 0.9);
}

TEST_CASE("trace files round-trip the traced communities") {
  Gen gen(23);
  const auto g = testing::random_graph(gen, 50, 0.15);
  SweepConfig cfg;
  cfg.step_count = 12;
  cfg.min_size = 3;
  const auto trace = run_sweep(g, cfg);
  std::stringstream ss;
  write_trace(ss, g, trace);
  const auto back = read_trace(ss, g);
  REQUIRE(back.iterations.size() == trace.iterations.size());
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& a = trace.iterations[i];
    const auto& b = back.iterations[i];
    CHECK(a.threshold == b.threshold);
    CHECK(a.coordination == b.coordination);
    CHECK(a.node_count == b.node_count);
    CHECK(a.edge_count == b.edge_count);
    std::size_t traced = 0;
    for (const auto& c : a.communities) {
      if (!c.traced) continue;
      ++traced;
      const auto* d = b.find(c.id);
      REQUIRE(d);
      CHECK(d->members == c.members);
      CHECK(d->parent == (i == 0 ? -1 : c.parent));
    }
    CHECK(b.communities.size() == traced);
  }
  std::stringstream again;
  write_trace(again, g, back);
  std::stringstream first;
  write_trace(first, g, trace);
  CHECK(again.str() == first.str());
}

TEST_CASE("malformed trace lines are format errors") {
  const auto g = testing::make_graph(2, {{0, 1, 0.5}});
  std::istringstream bad("{\"t\": 1}\n");
  CHECK_THROWS_AS(read_trace(bad, g), FormatError);
  std::istringstream unknown(
      R"({"t": 0.5, "coordination": 1, "nodes": 2, "edges": 1, "communities": {"0": ["nobody"]}, "lineage": {}})");
  CHECK_THROWS_AS(read_trace(unknown, g), FormatError);
}
