#include "coord/netmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "coord/format.hpp"

namespace coord {
namespace {

// Number of common neighbours of u and v, by merging sorted adjacency.
std::size_t common_neighbors(const SimilarityGraph& g, NodeId u, NodeId v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].node < b[j].node) {
      ++i;
    } else if (b[j].node < a[i].node) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Triangles through each node.
std::vector<std::size_t> triangles(const SimilarityGraph& g) {
  std::vector<std::size_t> tri(g.node_count(), 0);
  const auto n = static_cast<std::int64_t>(g.node_count());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeId>(i);
    std::size_t twice = 0;
    for (const auto& nb : g.neighbors(v)) twice += common_neighbors(g, v, nb.node);
    tri[v] = twice / 2;
  }
  return tri;
}

}  // namespace

double density(const SimilarityGraph& graph) {
  const double n = static_cast<double>(graph.node_count());
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(graph.edge_count()) / (n * (n - 1.0));
}

std::vector<double> local_clustering(const SimilarityGraph& graph) {
  const auto tri = triangles(graph);
  std::vector<double> c(graph.node_count(), 0.0);
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const double d = static_cast<double>(graph.degree(v));
    if (d >= 2) c[v] = 2.0 * static_cast<double>(tri[v]) / (d * (d - 1.0));
  }
  return c;
}

double avg_clustering(const SimilarityGraph& graph) {
  if (graph.node_count() == 0) return 0.0;
  double sum = 0.0;
  for (double c : local_clustering(graph)) sum += c;
  return sum / static_cast<double>(graph.node_count());
}

double transitivity(const SimilarityGraph& graph) {
  const auto tri = triangles(graph);
  double closed = 0.0, triples = 0.0;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const double d = static_cast<double>(graph.degree(v));
    closed += static_cast<double>(tri[v]);
    triples += d * (d - 1.0) / 2.0;
  }
  return triples > 0.0 ? closed / triples : 0.0;
}

std::optional<double> assortativity(const SimilarityGraph& graph) {
  if (graph.edge_count() == 0) return std::nullopt;
  const double orientations = 2.0 * static_cast<double>(graph.edge_count());
  double sum = 0.0;
  for (const auto& e : graph.edges())
    sum += static_cast<double>(graph.degree(e.u) + graph.degree(e.v));
  const double mean = sum / orientations;
  double cov = 0.0, var = 0.0;
  for (const auto& e : graph.edges()) {
    const double du = static_cast<double>(graph.degree(e.u)) - mean;
    const double dv = static_cast<double>(graph.degree(e.v)) - mean;
    cov += 2.0 * du * dv;
    var += du * du + dv * dv;
  }
  if (var <= 1e-12 * orientations) return std::nullopt;
  return std::clamp(cov / var, -1.0, 1.0);
}

std::vector<std::vector<std::int32_t>> lineage_roots(const SweepTrace& trace) {
  std::vector<std::vector<std::int32_t>> roots(trace.iterations.size());
  std::vector<std::int32_t> prev_by_id;
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    auto& cur = roots[i];
    cur.assign(it.communities.size(), -1);
    std::int32_t max_id = -1;
    for (std::size_t k = 0; k < it.communities.size(); ++k) {
      const auto& c = it.communities[k];
      max_id = std::max(max_id, c.id);
      if (!c.traced) continue;
      if (i == 0)
        cur[k] = c.id;
      else if (c.parent >= 0 && c.parent < static_cast<std::int32_t>(prev_by_id.size()))
        cur[k] = prev_by_id[static_cast<std::size_t>(c.parent)];
    }
    prev_by_id.assign(static_cast<std::size_t>(max_id + 1), -1);
    for (std::size_t k = 0; k < it.communities.size(); ++k)
      prev_by_id[static_cast<std::size_t>(it.communities[k].id)] = cur[k];
  }
  return roots;
}

std::vector<std::pair<std::int32_t, std::vector<std::vector<NodeId>>>> lineage_members(const SweepTrace& trace) {
  std::vector<std::pair<std::int32_t, std::vector<std::vector<NodeId>>>> out;
  if (trace.iterations.empty()) return out;
  const auto roots = lineage_roots(trace);
  std::vector<std::int32_t> slot_of_root;
  for (const auto& c : trace.iterations.front().communities) {
    if (!c.traced) continue;
    if (static_cast<std::size_t>(c.id) >= slot_of_root.size()) slot_of_root.resize(static_cast<std::size_t>(c.id) + 1, -1);
    slot_of_root[static_cast<std::size_t>(c.id)] = static_cast<std::int32_t>(out.size());
    out.emplace_back(c.id, std::vector<std::vector<NodeId>>(trace.iterations.size()));
  }
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    for (std::size_t k = 0; k < it.communities.size(); ++k) {
      const auto r = roots[i][k];
      if (r < 0) continue;
      auto& bucket = out[static_cast<std::size_t>(slot_of_root[static_cast<std::size_t>(r)])].second[i];
      bucket.insert(bucket.end(), it.communities[k].members.begin(), it.communities[k].members.end());
    }
    for (auto& [root, per_iter] : out) std::sort(per_iter[i].begin(), per_iter[i].end());
  }
  return out;
}

std::optional<double> annotation_value(const std::vector<NodeId>& members, const SimilarityGraph& graph,
                                       const AnnotationTable& table) {
  if (members.empty()) return std::nullopt;
  double sum = 0.0;
  std::size_t counted = 0;
  for (NodeId v : members) {
    auto value = table.find(graph.node(v));
    if (table.kind == AnnotationKind::Flag) {
      if (value && *value == 1.0) sum += 1.0;
      ++counted;
    } else if (value) {
      sum += *value;
      ++counted;
    }
  }
  if (counted == 0) return std::nullopt;
  return sum / static_cast<double>(counted);
}

std::vector<CommunityProfile> community_curves(const SweepTrace& trace, const SimilarityGraph& graph,
                                               const CurveOptions& options) {
  const auto lineages = lineage_members(trace);
  const std::size_t iters = trace.iterations.size();

  struct Task {
    std::size_t lineage, iteration;
  };
  std::vector<Task> tasks;
  for (std::size_t l = 0; l < lineages.size(); ++l) {
    double last = -1.0;
    for (std::size_t i = 0; i < iters; ++i) {
      const double coord = trace.iterations[i].coordination;
      if (lineages[l].second[i].empty() || coord <= last) continue;
      tasks.push_back({l, i});
      last = coord;
    }
  }

  std::vector<ProfilePoint> points(tasks.size());
  const auto task_count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < task_count; ++k) {
    const auto& task = tasks[static_cast<std::size_t>(k)];
    const auto& members = lineages[task.lineage].second[task.iteration];
    const auto& it = trace.iterations[task.iteration];
    const auto sub = induced_subgraph(graph, members, it.threshold);
    auto& p = points[static_cast<std::size_t>(k)];
    p.coordination = it.coordination;
    p.size_abs = members.size();
    p.size_pct = static_cast<double>(members.size()) /
                 static_cast<double>(lineages[task.lineage].second.front().size());
    p.density = density(sub);
    p.clustering = options.clustering == ClusteringVariant::Global ? transitivity(sub) : avg_clustering(sub);
    p.assortativity = assortativity(sub);
    if (options.scores) p.mean_annotation = annotation_value(members, graph, *options.scores);
    if (options.flags) p.flagged_fraction = annotation_value(members, graph, *options.flags);
  }

  std::vector<CommunityProfile> profiles(lineages.size());
  for (std::size_t l = 0; l < lineages.size(); ++l) profiles[l].community_id = lineages[l].first;
  for (std::size_t k = 0; k < tasks.size(); ++k) profiles[tasks[k].lineage].points.push_back(points[k]);
  return profiles;
}

std::vector<AnnotationCurve> annotation_curves(const SweepTrace& trace, const SimilarityGraph& graph,
                                               const AnnotationTable& table) {
  std::vector<AnnotationCurve> out;
  for (const auto& [root, per_iter] : lineage_members(trace)) {
    AnnotationCurve curve{root, {}};
    double last = -1.0;
    for (std::size_t i = 0; i < per_iter.size(); ++i) {
      const double coord = trace.iterations[i].coordination;
      if (per_iter[i].empty() || coord <= last) continue;
      last = coord;
      if (auto v = annotation_value(per_iter[i], graph, table)) curve.points.emplace_back(coord, *v);
    }
    out.push_back(std::move(curve));
  }
  return out;
}

std::optional<double> elbow_coordination(const CommunityProfile& profile) {
  const auto& pts = profile.points;
  if (pts.size() < 3) return std::nullopt;
  const double x0 = pts.front().coordination, y0 = pts.front().size_pct;
  const double dx = pts.back().coordination - x0, dy = pts.back().size_pct - y0;
  const double len = std::hypot(dx, dy);
  double best = -1.0;
  double at = pts.front().coordination;
  for (const auto& p : pts) {
    const double dist = len > 0.0 ? std::abs(dx * (p.size_pct - y0) - dy * (p.coordination - x0)) / len
                                   : std::hypot(p.coordination - x0, p.size_pct - y0);
    if (dist > best + 1e-12) {
      best = dist;
      at = p.coordination;
    }
  }
  return at;
}

void write_metrics(std::ostream& out, const std::vector<CommunityProfile>& profiles) {
  auto opt = [](const std::optional<double>& v) { return v ? format_general(*v, 9) : std::string(); };
  out << "community_id,coordination,size_abs,size_pct,density,avg_clustering,assortativity,mean_annotation,"
         "flagged_fraction\n";
  for (const auto& prof : profiles)
    for (const auto& p : prof.points)
      out << prof.community_id << ',' << format_general(p.coordination, 9) << ',' << p.size_abs << ','
          << format_general(p.size_pct, 9) << ',' << format_general(p.density, 9) << ','
          << format_general(p.clustering, 9) << ',' << opt(p.assortativity) << ',' << opt(p.mean_annotation)
          << ',' << opt(p.flagged_fraction) << '\n';
}

}  // namespace coord
