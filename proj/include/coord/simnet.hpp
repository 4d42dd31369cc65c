#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coord/graph.hpp"
#include "coord/ingest.hpp"

namespace coord {

using TweetIndex = std::uint32_t;

/// Sparse TF-IDF vector over retweeted tweet ids.
///
/// Components are sorted by tweet index and never hold a zero weight; `norm`
/// is their Euclidean norm.
struct UserVector {
  std::string user_id;
  std::vector<std::pair<TweetIndex, double>> components;
  double norm = 0.0;
};

/// User vectors for one population, with the shared tweet-id vocabulary that
/// the component indices refer to. `users` follows population order.
struct UserVectors {
  std::vector<std::string> tweet_ids;
  std::vector<UserVector> users;
};

/// tf(u,t) = retweet events of t by u; idf(t) = ln(N / df(t)) with N the
/// population size. Users without components are kept with norm 0.
UserVectors build_user_vectors(std::span<const InteractionRecord> records, const Population& population);

/// dot(a,b) / (|a| |b|), or 0 when either vector is empty.
double cosine_similarity(const UserVector& a, const UserVector& b);

/// Cosine similarity network over all users, evaluating only pairs that
/// share a retweeted tweet (inverted index). Parallel over rows; output is
/// independent of the thread count.
SimilarityGraph build_similarity_graph(const UserVectors& vectors);

}  // namespace coord
