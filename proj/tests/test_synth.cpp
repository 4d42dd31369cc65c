#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "coord/backbone.hpp"
#include "coord/error.hpp"
#include "coord/netmetrics.hpp"
#include "coord/simnet.hpp"
#include "coord/synth.hpp"
#include "support.hpp"

using namespace coord;

namespace {

std::string render(const SynthData& d) {
  std::ostringstream out;
  write_records(out, d.records);
  write_truth(out, d.truth);
  return out.str();
}

SynthConfig small_config() {
  SynthConfig cfg;
  cfg.n_background_users = 300;
  cfg.n_tweets = 2000;
  cfg.retweets_per_user = 4;
  return cfg;
}

}  // namespace

TEST_CASE("a fully coordinated group shares its whole pool and outranks background pairs") {
  // Realistic background activity: with only one or two retweets, unrelated
  // users can have identical vectors.
  SynthConfig cfg;
  cfg.n_background_users = 300;
  cfg.n_tweets = 2000;
  cfg.groups = {PlantedGroup{10, 20, 1.0}};
  const auto data = generate(cfg);
  REQUIRE(data.truth.group_members.size() == 1);
  const auto& members = data.truth.group_members[0];
  REQUIRE(members.size() == 10);
  CHECK(std::is_sorted(members.begin(), members.end()));

  // Every member retweets every pool tweet.
  std::map<std::string, std::set<std::string>> pool_retweets;
  for (const auto& r : data.records)
    if (r.is_retweet() && r.retweeted_tweet_id->front() == 'p') pool_retweets[r.user_id].insert(*r.retweeted_tweet_id);
  for (const auto& m : members) CHECK(pool_retweets[m].size() == 20);

  const auto pop = select_superspreaders(data.records, 1.0);
  const auto g = build_similarity_graph(build_user_vectors(data.records, pop));
  const std::set<std::string> group(members.begin(), members.end());
  double min_group = 1.0, max_background = 0.0;
  std::size_t group_edges = 0;
  for (const auto& e : g.edges()) {
    const bool a = group.count(g.node(e.u)), b = group.count(g.node(e.v));
    if (a && b) {
      min_group = std::min(min_group, e.weight);
      ++group_edges;
    } else if (!a && !b) {
      max_background = std::max(max_background, e.weight);
    }
  }
  CHECK(group_edges == 45);
  CHECK(min_group > max_background);
}

TEST_CASE("identical seeds give identical output and different seeds differ") {
  auto cfg = small_config();
  cfg.groups = {PlantedGroup{12, 10, 0.7}, PlantedGroup{8, 6, 0.9}};
  cfg.contamination = 0.05;
  const auto a = render(generate(cfg));
  CHECK(a == render(generate(cfg)));
  cfg.rng_seed = 2;
  CHECK(a != render(generate(cfg)));
}

TEST_CASE("generated records are well formed and time ordered") {
  auto cfg = small_config();
  cfg.groups = {PlantedGroup{5, 5, 0.5}};
  const auto data = generate(cfg);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const auto& r = data.records[i];
    CHECK(ids.insert(r.tweet_id).second);
    if (i) CHECK(data.records[i - 1].timestamp <= r.timestamp);
    const auto back = parse_record_line(format_record(r));
    REQUIRE(back);
    CHECK(format_record(*back) == format_record(r));
  }
}

namespace {

// Largest share of its own t0 members that any traced community keeps at
// coordination >= 0.9, keyed by t0 community id.
std::map<std::int32_t, double> retained_at_high_coordination(const SynthConfig& cfg) {
  const auto data = generate(cfg);
  const auto pop = select_superspreaders(data.records, 1.0);
  const auto backbone = disparity_filter(build_similarity_graph(build_user_vectors(data.records, pop)));
  SweepConfig sc;
  sc.min_size = 20;
  const auto trace = run_sweep(backbone, sc);
  std::map<std::int32_t, double> out;
  for (const auto& [root, per_iter] : lineage_members(trace)) {
    const std::set<NodeId> base(per_iter[0].begin(), per_iter[0].end());
    double best = 0.0;
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
      if (trace.iterations[i].coordination < 0.9) continue;
      std::size_t kept = 0;
      for (auto v : per_iter[i]) kept += base.count(v);
      best = std::max(best, static_cast<double>(kept) / static_cast<double>(base.size()));
    }
    out[root] = best;
  }
  return out;
}

}  // namespace

TEST_CASE("pure background has no community surviving high coordination") {
  SynthConfig cfg;
  cfg.n_background_users = 600;
  cfg.n_tweets = 2000;
  const auto background = retained_at_high_coordination(cfg);
  REQUIRE_FALSE(background.empty());
  for (const auto& [root, share] : background) CHECK(share < 0.9);

  // The same background with one planted group: that group survives intact.
  cfg.groups = {PlantedGroup{20, 20, 0.9}};
  double best = 0.0;
  for (const auto& [root, share] : retained_at_high_coordination(cfg)) best = std::max(best, share);
  CHECK(best == 1.0);
}

TEST_CASE("synth configuration is validated") {
  auto cfg = small_config();
  cfg.groups = {PlantedGroup{30, 25, 1.5}};
  CHECK_THROWS_AS(generate(cfg), ConfigError);
  cfg.groups = {PlantedGroup{0, 25, 0.5}};
  CHECK_THROWS_AS(generate(cfg), ConfigError);
  cfg = small_config();
  cfg.n_background_users = 999990;
  cfg.groups = {PlantedGroup{30, 25, 0.5}};
  CHECK_THROWS_AS(generate(cfg), ConfigError);
  cfg = small_config();
  cfg.contamination = -0.1;
  CHECK_THROWS_AS(generate(cfg), ConfigError);
}

TEST_CASE("ground truth sidecar layout") {
  GroundTruth t;
  t.group_members = {{"u000001", "u000002"}};
  t.group_strengths = {0.9};
  std::ostringstream out;
  write_truth(out, t);
  CHECK(out.str() == "{\"group\": 0, \"members\": [\"u000001\", \"u000002\"]}\n");
}
