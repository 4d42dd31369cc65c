#include "coord/louvain.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace coord {
namespace {

constexpr double kMoveTolerance = 1e-12;
constexpr double kPassTolerance = 1e-9;
constexpr int kMaxPasses = 10000;

// Weighted graph with explicit self-loops, as produced by aggregation.
struct WorkGraph {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<Neighbor> adj;      // no self-loops, both directions
  std::vector<double> self_loop;  // weight of the loop at each node
  std::vector<double> k;          // weighted degree, loops counted twice
  double m2 = 0.0;                // sum of k

  void finish() {
    k.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 2.0 * self_loop[i];
      for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) s += adj[e].weight;
      k[i] = s;
    }
    m2 = 0.0;
    for (double x : k) m2 += x;
  }
};

WorkGraph from_similarity(const SimilarityGraph& g) {
  WorkGraph w;
  w.n = g.node_count();
  w.offsets.assign(w.n + 1, 0);
  for (NodeId v = 0; v < w.n; ++v) {
    auto nb = g.neighbors(v);
    w.offsets[v + 1] = w.offsets[v] + nb.size();
    w.adj.insert(w.adj.end(), nb.begin(), nb.end());
  }
  w.self_loop.assign(w.n, 0.0);
  w.finish();
  return w;
}

WorkGraph aggregate(const WorkGraph& g, const std::vector<std::int32_t>& comm, std::size_t count) {
  struct Link {
    std::int32_t a, b;
    double w;
  };
  WorkGraph out;
  out.n = count;
  out.self_loop.assign(count, 0.0);
  std::vector<Link> links;
  for (std::size_t i = 0; i < g.n; ++i) {
    out.self_loop[comm[i]] += g.self_loop[i];
    for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
      const auto j = g.adj[e].node;
      if (j <= i) continue;
      const auto a = comm[i], b = comm[j];
      if (a == b)
        out.self_loop[a] += g.adj[e].weight;
      else
        links.push_back({std::min(a, b), std::max(a, b), g.adj[e].weight});
    }
  }
  std::stable_sort(links.begin(), links.end(),
                   [](const Link& x, const Link& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  std::vector<Link> merged;
  for (const auto& l : links) {
    if (!merged.empty() && merged.back().a == l.a && merged.back().b == l.b)
      merged.back().w += l.w;
    else
      merged.push_back(l);
  }
  std::vector<std::size_t> deg(count, 0);
  for (const auto& l : merged) {
    ++deg[l.a];
    ++deg[l.b];
  }
  out.offsets.assign(count + 1, 0);
  for (std::size_t c = 0; c < count; ++c) out.offsets[c + 1] = out.offsets[c] + deg[c];
  out.adj.resize(out.offsets[count]);
  std::vector<std::size_t> cursor(out.offsets.begin(), out.offsets.end() - 1);
  for (const auto& l : merged) {
    out.adj[cursor[l.a]++] = {static_cast<NodeId>(l.b), l.w};
    out.adj[cursor[l.b]++] = {static_cast<NodeId>(l.a), l.w};
  }
  out.finish();
  return out;
}

// Relabels to 0..count-1 in order of first appearance by node index.
std::size_t renumber(std::vector<std::int32_t>& comm) {
  std::unordered_map<std::int32_t, std::int32_t> ids;
  for (auto& c : comm) {
    auto [it, fresh] = ids.emplace(c, static_cast<std::int32_t>(ids.size()));
    c = it->second;
  }
  return ids.size();
}

void shuffle(std::vector<NodeId>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

// Local-move phase. `comm` holds the starting assignment (ids < id_space).
void local_move(const WorkGraph& g, std::vector<std::int32_t>& comm, std::size_t id_space, double gamma,
                std::mt19937_64& rng) {
  if (g.m2 <= 0.0) return;
  std::vector<double> tot(id_space, 0.0);
  for (std::size_t i = 0; i < g.n; ++i) tot[comm[i]] += g.k[i];

  std::vector<NodeId> order(g.n);
  for (NodeId i = 0; i < g.n; ++i) order[i] = i;
  shuffle(order, rng);

  std::vector<double> link(id_space, 0.0);
  std::vector<std::int32_t> candidates;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    double pass_gain = 0.0;
    std::size_t moves = 0;
    for (NodeId i : order) {
      const std::int32_t own = comm[i];
      const double ki = g.k[i];
      candidates.clear();
      candidates.push_back(own);
      for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
        const auto c = comm[g.adj[e].node];
        if (link[c] == 0.0 && c != own) candidates.push_back(c);
        link[c] += g.adj[e].weight;
      }
      tot[own] -= ki;

      const double stay = link[own] - gamma * tot[own] * ki / g.m2;
      std::int32_t best = own;
      double best_gain = stay;
      for (std::size_t q = 1; q < candidates.size(); ++q) {
        const auto c = candidates[q];
        const double gain = link[c] - gamma * tot[c] * ki / g.m2;
        if (gain > best_gain || (gain == best_gain && c < best)) {
          best = c;
          best_gain = gain;
        }
      }
      const double delta_q = 2.0 * (best_gain - stay) / g.m2;
      if (best != own && delta_q > kMoveTolerance) {
        comm[i] = best;
        pass_gain += delta_q;
        ++moves;
      } else {
        best = own;
      }
      tot[best] += ki;
      for (auto c : candidates) link[c] = 0.0;
    }
    if (moves == 0 || pass_gain <= kPassTolerance) break;
  }
}

// Gives each connected part of a community its own id. Local moves cannot
// detach a part that lost its links to the rest (a warm start inherits such
// parts); splitting it off strictly raises modularity.
void split_disconnected(const SimilarityGraph& graph, std::vector<std::int32_t>& comm) {
  const std::size_t n = comm.size();
  std::vector<std::int32_t> part(n, -1);
  std::vector<NodeId> stack;
  std::int32_t next = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (part[root] >= 0) continue;
    part[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const auto& nb : graph.neighbors(v)) {
        if (part[nb.node] >= 0 || comm[nb.node] != comm[v]) continue;
        part[nb.node] = next;
        stack.push_back(nb.node);
      }
    }
    ++next;
  }
  comm = std::move(part);
}

}  // namespace

std::vector<std::vector<NodeId>> Partition::communities() const {
  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(community_count));
  for (NodeId v = 0; v < assignment.size(); ++v)
    if (assignment[v] >= 0) out[static_cast<std::size_t>(assignment[v])].push_back(v);
  return out;
}

double modularity(const SimilarityGraph& graph, const Partition& partition, double resolution) {
  const double m = [&] {
    double s = 0.0;
    for (const auto& e : graph.edges()) s += e.weight;
    return s;
  }();
  if (m <= 0.0) return 0.0;
  std::vector<double> internal(static_cast<std::size_t>(partition.community_count), 0.0);
  std::vector<double> total(static_cast<std::size_t>(partition.community_count), 0.0);
  for (const auto& e : graph.edges())
    if (partition.assignment[e.u] == partition.assignment[e.v]) internal[partition.assignment[e.u]] += e.weight;
  for (NodeId v = 0; v < graph.node_count(); ++v) total[partition.assignment[v]] += graph.strength(v);
  double q = 0.0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    const double share = total[c] / (2.0 * m);
    q += internal[c] / m - resolution * share * share;
  }
  return q;
}

Partition detect_communities(const SimilarityGraph& graph, double resolution,
                             const std::vector<std::int32_t>* seed, std::uint64_t rng_seed) {
  Partition result;
  const std::size_t n = graph.node_count();
  if (n == 0) return result;

  std::mt19937_64 rng(rng_seed);
  WorkGraph level = from_similarity(graph);

  // Starting assignment: seed communities first, unseeded nodes as singletons.
  std::vector<std::int32_t> comm(n);
  std::size_t id_space = 0;
  {
    std::unordered_map<std::int32_t, std::int32_t> seed_ids;
    for (std::size_t v = 0; v < n; ++v) {
      if (seed && (*seed)[v] >= 0) {
        auto [it, fresh] = seed_ids.emplace((*seed)[v], static_cast<std::int32_t>(id_space));
        if (fresh) ++id_space;
        comm[v] = it->second;
      } else {
        comm[v] = static_cast<std::int32_t>(id_space++);
      }
    }
  }

  std::vector<std::int32_t> node_comm(n);
  for (std::size_t v = 0; v < n; ++v) node_comm[v] = static_cast<std::int32_t>(v);

  while (true) {
    local_move(level, comm, id_space, resolution, rng);
    const std::size_t count = renumber(comm);
    for (auto& c : node_comm) c = comm[static_cast<std::size_t>(c)];
    if (count == level.n) break;
    level = aggregate(level, comm, count);
    comm.resize(count);
    for (std::size_t c = 0; c < count; ++c) comm[c] = static_cast<std::int32_t>(c);
    id_space = count;
  }

  split_disconnected(graph, node_comm);
  result.community_count = static_cast<std::int32_t>(renumber(node_comm));
  result.assignment = std::move(node_comm);
  return result;
}

}  // namespace coord
