#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coord/graph.hpp"
#include "coord/ingest.hpp"

namespace coord::testing {

// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return uniform() < p; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string user_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "u%04zu", i);
  return buf;
}

inline std::vector<std::string> user_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(user_name(i));
  return out;
}

// Random simple graph with weights in (0, 1]. With `levels` > 0 weights are
// drawn from a small set so ties occur.
inline SimilarityGraph random_graph(Gen& gen, std::size_t n, double edge_prob, int levels = 0) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      if (!gen.chance(edge_prob)) continue;
      const double w = levels > 0 ? static_cast<double>(1 + gen.below(levels)) / levels : 1.0 - gen.uniform();
      edges.push_back({u, v, w});
    }
  return SimilarityGraph(user_names(n), std::move(edges));
}

inline SimilarityGraph make_graph(std::size_t n, std::vector<Edge> edges) {
  return SimilarityGraph(user_names(n), std::move(edges));
}

inline InteractionRecord retweet(std::string user, std::string tweet, std::int64_t ts = 0) {
  InteractionRecord r;
  r.tweet_id = user + "_" + tweet + "_" + std::to_string(ts);
  r.user_id = std::move(user);
  r.timestamp = ts;
  r.retweeted_user_id = "author";
  r.retweeted_tweet_id = std::move(tweet);
  return r;
}

inline InteractionRecord post(std::string user, std::string text, std::vector<std::string> hashtags = {},
                              std::int64_t ts = 0) {
  InteractionRecord r;
  r.tweet_id = user + "_p" + std::to_string(ts);
  r.user_id = std::move(user);
  r.timestamp = ts;
  r.text = std::move(text);
  r.hashtags = std::move(hashtags);
  return r;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("coord_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace coord::testing
