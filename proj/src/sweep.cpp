#include "coord/sweep.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "coord/error.hpp"
#include "coord/format.hpp"

namespace coord {

WeightDistribution::WeightDistribution(std::vector<double> weights) : sorted_(std::move(weights)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double WeightDistribution::percentile_rank(double t) const {
  if (sorted_.empty()) return 0.0;
  const auto at_or_below = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
  return static_cast<double>(at_or_below) / static_cast<double>(sorted_.size());
}

double coordination_score(double t, const WeightDistribution& weights) {
  if (weights.empty()) throw std::invalid_argument("coordination_score needs a non-empty weight set");
  return weights.percentile_rank(t);
}

std::vector<double> node_coordination(const SimilarityGraph& graph) {
  const WeightDistribution dist(graph);
  std::vector<double> out(graph.node_count(), 0.0);
  const auto n = static_cast<std::int64_t>(graph.node_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeId>(i);
    double strongest = 0.0;
    for (const auto& nb : graph.neighbors(v)) strongest = std::max(strongest, nb.weight);
    out[v] = graph.degree(v) == 0 ? 0.0 : dist.percentile_rank(strongest);
  }
  return out;
}

void SweepConfig::validate() const {
  if (delta_w && !(*delta_w > 0.0)) throw ConfigError("sweep delta_w must be positive");
  if (step_count < 1) throw ConfigError("sweep step count must be at least 1");
  if (!(resolution > 0.0)) throw ConfigError("sweep resolution must be positive");
  if (min_size < 1) throw ConfigError("sweep min_size must be at least 1");
}

const TracedCommunity* SweepIteration::find(std::int32_t id) const {
  for (const auto& c : communities)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

SweepIteration make_iteration(const Subgraph& sub, const Partition& part, std::size_t base_nodes) {
  SweepIteration it;
  it.node_count = sub.graph.node_count();
  it.edge_count = sub.graph.edge_count();
  it.assignment.assign(base_nodes, -1);
  for (std::size_t j = 0; j < sub.parent_index.size(); ++j) it.assignment[sub.parent_index[j]] = part.assignment[j];
  auto groups = part.communities();
  it.communities.resize(groups.size());
  for (std::size_t c = 0; c < groups.size(); ++c) {
    auto& tc = it.communities[c];
    tc.id = static_cast<std::int32_t>(c);
    tc.members.reserve(groups[c].size());
    for (NodeId local : groups[c]) tc.members.push_back(sub.parent_index[local]);
  }
  return it;
}

void link_to_previous(SweepIteration& cur, const SweepIteration& prev) {
  std::unordered_map<std::int32_t, std::size_t> overlap;
  for (auto& child : cur.communities) {
    overlap.clear();
    for (NodeId v : child.members) ++overlap[prev.assignment[v]];
    std::int32_t best = -1;
    double best_jaccard = -1.0;
    std::size_t best_overlap = 0;
    for (const auto& [pid, inter] : overlap) {
      const auto& parent = prev.communities[static_cast<std::size_t>(pid)];
      const double jaccard = static_cast<double>(inter) /
                             static_cast<double>(child.members.size() + parent.members.size() - inter);
      const bool better = jaccard > best_jaccard ||
                          (jaccard == best_jaccard &&
                           (inter > best_overlap || (inter == best_overlap && pid < best)));
      if (better) {
        best = pid;
        best_jaccard = jaccard;
        best_overlap = inter;
      }
    }
    child.parent = best;
    child.traced = prev.communities[static_cast<std::size_t>(best)].traced;
  }
}

}  // namespace

SweepTrace run_sweep(const SimilarityGraph& graph, const SweepConfig& config) {
  config.validate();
  SweepTrace trace;
  if (graph.empty()) return trace;

  const WeightDistribution dist(graph);
  const double t0 = dist.min();
  const double wmax = dist.max();
  const double step = config.delta_w ? *config.delta_w : (wmax - t0) / config.step_count;
  const std::size_t base_nodes = graph.node_count();

  Subgraph sub = threshold_subgraph(graph, t0);
  Partition part = detect_communities(sub.graph, config.resolution, nullptr, config.rng_seed);
  SweepIteration first = make_iteration(sub, part, base_nodes);
  first.threshold = t0;
  first.coordination = dist.percentile_rank(t0);
  for (auto& c : first.communities) c.traced = c.members.size() >= static_cast<std::size_t>(config.min_size);
  trace.iterations.push_back(std::move(first));

  if (!(wmax > t0)) return trace;

  for (std::uint64_t i = 1;; ++i) {
    // Thresholds are t0 + i * step rather than a running sum, so the last
    // arithmetic step lands on max W exactly.
    double t = t0 + static_cast<double>(i) * step;
    if (!config.delta_w && i == static_cast<std::uint64_t>(config.step_count)) t = wmax;
    if (t > wmax) break;

    const SweepIteration& prev = trace.iterations.back();
    sub = threshold_subgraph(graph, t);
    std::vector<std::int32_t> seed(sub.parent_index.size());
    for (std::size_t j = 0; j < seed.size(); ++j) seed[j] = prev.assignment[sub.parent_index[j]];

    part = detect_communities(sub.graph, config.resolution, &seed, config.rng_seed + i);
    SweepIteration cur = make_iteration(sub, part, base_nodes);
    cur.threshold = t;
    cur.coordination = dist.percentile_rank(t);
    cur.seed.assign(base_nodes, -1);
    for (std::size_t j = 0; j < seed.size(); ++j) cur.seed[sub.parent_index[j]] = seed[j];
    link_to_previous(cur, prev);
    trace.iterations.push_back(std::move(cur));
    if (!config.delta_w && i == static_cast<std::uint64_t>(config.step_count)) break;
  }
  return trace;
}

void write_trace(std::ostream& out, const SimilarityGraph& graph, const SweepTrace& trace) {
  for (const auto& it : trace.iterations) {
    out << "{\"t\": " << format_exact(it.threshold) << ", \"coordination\": " << format_exact(it.coordination)
        << ", \"nodes\": " << it.node_count << ", \"edges\": " << it.edge_count << ", \"communities\": {";
    bool first = true;
    for (const auto& c : it.communities) {
      if (!c.traced) continue;
      out << (first ? "" : ", ") << '"' << c.id << "\": [";
      for (std::size_t k = 0; k < c.members.size(); ++k)
        out << (k ? ", " : "") << json_quote(graph.node(c.members[k]));
      out << ']';
      first = false;
    }
    out << "}, \"lineage\": {";
    first = true;
    for (const auto& c : it.communities) {
      if (!c.traced || c.parent < 0) continue;
      out << (first ? "" : ", ") << '"' << c.id << "\": \"" << c.parent << '"';
      first = false;
    }
    out << "}}\n";
  }
}

SweepTrace read_trace(std::istream& in, const SimilarityGraph& graph) {
  if (!in) throw IoError("trace stream is not readable");
  SweepTrace trace;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto where = "trace line " + std::to_string(lineno);
    auto obj = nlohmann::json::parse(line, nullptr, false);
    if (!obj.is_object()) throw FormatError(where + ": not a JSON object");
    try {
      SweepIteration it;
      it.threshold = obj.at("t").get<double>();
      it.coordination = obj.at("coordination").get<double>();
      it.node_count = obj.at("nodes").get<std::size_t>();
      it.edge_count = obj.at("edges").get<std::size_t>();
      it.assignment.assign(graph.node_count(), -1);
      const auto& lineage = obj.at("lineage");
      for (const auto& [key, members] : obj.at("communities").items()) {
        TracedCommunity c;
        c.id = std::stoi(key);
        for (const auto& m : members) {
          auto idx = graph.index_of(m.get<std::string>());
          if (!idx) throw FormatError(where + ": unknown user " + m.get<std::string>());
          c.members.push_back(*idx);
          it.assignment[*idx] = c.id;
        }
        std::sort(c.members.begin(), c.members.end());
        if (auto p = lineage.find(key); p != lineage.end()) c.parent = std::stoi(p->get<std::string>());
        it.communities.push_back(std::move(c));
      }
      std::sort(it.communities.begin(), it.communities.end(),
                [](const TracedCommunity& a, const TracedCommunity& b) { return a.id < b.id; });
      trace.iterations.push_back(std::move(it));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(where + ": " + e.what());
    } catch (const std::logic_error& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return trace;
}

}  // namespace coord
