#include "coord/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

namespace coord {

UserVectors build_user_vectors(std::span<const InteractionRecord> records, const Population& population) {
  if (population.size() == 0) throw std::invalid_argument("population is empty");

  const auto& users = population.user_ids;
  std::unordered_map<std::string_view, std::uint32_t> user_index;
  user_index.reserve(users.size());
  for (std::uint32_t i = 0; i < users.size(); ++i) user_index.emplace(users[i], i);

  // Vocabulary: every tweet retweeted by someone in the population.
  UserVectors out;
  std::vector<std::pair<std::uint32_t, std::string_view>> events;
  for (const auto& r : records) {
    if (!r.is_retweet()) continue;
    auto it = user_index.find(r.user_id);
    if (it == user_index.end()) continue;
    events.emplace_back(it->second, *r.retweeted_tweet_id);
    out.tweet_ids.push_back(*r.retweeted_tweet_id);
  }
  std::sort(out.tweet_ids.begin(), out.tweet_ids.end());
  out.tweet_ids.erase(std::unique(out.tweet_ids.begin(), out.tweet_ids.end()), out.tweet_ids.end());

  std::unordered_map<std::string_view, TweetIndex> tweet_index;
  tweet_index.reserve(out.tweet_ids.size());
  for (TweetIndex t = 0; t < out.tweet_ids.size(); ++t) tweet_index.emplace(out.tweet_ids[t], t);

  // Events grouped by user, each group sorted by tweet: run lengths are tf.
  std::vector<std::pair<std::uint32_t, TweetIndex>> by_user;
  by_user.reserve(events.size());
  for (const auto& [u, tweet] : events) by_user.emplace_back(u, tweet_index.at(tweet));
  std::sort(by_user.begin(), by_user.end());

  std::vector<std::size_t> start(users.size() + 1, 0);
  for (const auto& [u, t] : by_user) ++start[u + 1];
  for (std::size_t u = 0; u < users.size(); ++u) start[u + 1] += start[u];

  std::vector<std::uint32_t> df(out.tweet_ids.size(), 0);
  for (std::size_t k = 0; k < by_user.size(); ++k)
    if (k == 0 || by_user[k - 1] != by_user[k]) ++df[by_user[k].second];

  const double n = static_cast<double>(users.size());
  out.users.resize(users.size());
  const auto user_count = static_cast<std::int64_t>(users.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t ui = 0; ui < user_count; ++ui) {
    const auto u = static_cast<std::size_t>(ui);
    UserVector& vec = out.users[u];
    vec.user_id = users[u];
    double sq = 0.0;
    for (std::size_t k = start[u]; k < start[u + 1];) {
      const TweetIndex t = by_user[k].second;
      std::size_t run = k;
      while (run < start[u + 1] && by_user[run].second == t) ++run;
      const double tf = static_cast<double>(run - k);
      const double w = tf * std::log(n / df[t]);
      if (w > 0.0) {
        vec.components.emplace_back(t, w);
        sq += w * w;
      }
      k = run;
    }
    vec.norm = std::sqrt(sq);
  }
  return out;
}

double cosine_similarity(const UserVector& a, const UserVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.components.begin();
  auto ib = b.components.begin();
  while (ia != a.components.end() && ib != b.components.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::min(1.0, dot / (a.norm * b.norm));
}

SimilarityGraph build_similarity_graph(const UserVectors& vectors) {
  const auto& users = vectors.users;
  const std::size_t n = users.size();

  // Inverted index tweet -> (user, weight), users ascending.
  std::vector<std::size_t> post_start(vectors.tweet_ids.size() + 1, 0);
  for (const auto& u : users)
    for (const auto& c : u.components) ++post_start[c.first + 1];
  for (std::size_t t = 0; t < vectors.tweet_ids.size(); ++t) post_start[t + 1] += post_start[t];
  std::vector<Neighbor> postings(post_start.back());
  {
    std::vector<std::size_t> cursor(post_start.begin(), post_start.end() - 1);
    for (NodeId u = 0; u < n; ++u)
      for (const auto& c : users[u].components) postings[cursor[c.first]++] = {u, c.second};
  }

  // Each row u accumulates dot products with every v > u that shares a
  // tweet. The summation order within a row is fixed by u's component order,
  // so weights do not depend on scheduling.
  std::vector<std::vector<Edge>> rows(n);
  const auto row_count = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<double> acc(n, 0.0);
    std::vector<NodeId> touched;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t ui = 0; ui < row_count; ++ui) {
      const auto u = static_cast<NodeId>(ui);
      const auto& vu = users[u];
      if (vu.norm == 0.0) continue;
      for (const auto& [t, wu] : vu.components) {
        auto first = postings.begin() + static_cast<std::ptrdiff_t>(post_start[t]);
        auto last = postings.begin() + static_cast<std::ptrdiff_t>(post_start[t + 1]);
        first = std::upper_bound(first, last, u, [](NodeId x, const Neighbor& p) { return x < p.node; });
        for (auto p = first; p != last; ++p) {
          if (acc[p->node] == 0.0) touched.push_back(p->node);
          acc[p->node] += wu * p->weight;
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& row = rows[u];
      for (NodeId v : touched) {
        const double w = std::min(1.0, acc[v] / (vu.norm * users[v].norm));
        if (w > 0.0) row.push_back({u, v, w});
        acc[v] = 0.0;
      }
      touched.clear();
    }
  }

  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& u : users) names.push_back(u.user_id);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<Edge> edges;
  edges.reserve(total);
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return SimilarityGraph(std::move(names), std::move(edges));
}

}  // namespace coord
