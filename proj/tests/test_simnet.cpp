#include <doctest.h>

#include <cmath>
#include <map>

#include "coord/reference.hpp"
#include "coord/simnet.hpp"
#include "support.hpp"

using namespace coord;
using coord::testing::Gen;
using coord::testing::retweet;

namespace {

UserVector vec(std::vector<std::pair<TweetIndex, double>> components) {
  UserVector v;
  double sq = 0.0;
  for (const auto& [t, w] : components) sq += w * w;
  v.components = std::move(components);
  v.norm = std::sqrt(sq);
  return v;
}

const UserVector& find_user(const UserVectors& vs, const std::string& id) {
  for (const auto& u : vs.users)
    if (u.user_id == id) return u;
  FAIL("user not found: " << id);
  return vs.users.front();
}

double component(const UserVectors& vs, const UserVector& u, const std::string& tweet) {
  for (const auto& [t, w] : u.components)
    if (vs.tweet_ids[t] == tweet) return w;
  return 0.0;
}

}  // namespace

TEST_CASE("a tweet retweeted by the whole population has zero idf") {
  std::vector<InteractionRecord> records;
  for (int u = 0; u < 4; ++u) {
    records.push_back(retweet(testing::user_name(u), "everyone"));
    records.push_back(retweet(testing::user_name(u), "own" + std::to_string(u)));
  }
  const auto vs = build_user_vectors(records, explicit_population(testing::user_names(4)));
  for (const auto& u : vs.users) {
    CHECK(u.components.size() == 1);
    CHECK(component(vs, u, "everyone") == 0.0);
  }
}

TEST_CASE("tf counts repeated retweets and idf uses the population size") {
  std::vector<InteractionRecord> records;
  records.push_back(retweet("u0000", "t", 1));
  records.push_back(retweet("u0000", "t", 2));
  records.push_back(retweet("u0001", "t", 3));
  const auto vs = build_user_vectors(records, explicit_population(testing::user_names(10)));
  CHECK(component(vs, find_user(vs, "u0000"), "t") == doctest::Approx(2.0 * std::log(5.0)).epsilon(1e-12));
  CHECK(component(vs, find_user(vs, "u0000"), "t") == doctest::Approx(3.2189).epsilon(1e-4));
}

TEST_CASE("users without retweets have empty vectors") {
  std::vector<InteractionRecord> records{retweet("u0000", "t"), testing::post("u0001", "hello")};
  const auto vs = build_user_vectors(records, explicit_population({"u0000", "u0001"}));
  const auto& idle = find_user(vs, "u0001");
  CHECK(idle.components.empty());
  CHECK(idle.norm == 0.0);
}

TEST_CASE("records of users outside the population are ignored") {
  std::vector<InteractionRecord> records{retweet("u0000", "a"), retweet("zzz", "b")};
  const auto vs = build_user_vectors(records, explicit_population({"u0000", "u0001"}));
  CHECK(vs.users.size() == 2);
  CHECK(vs.tweet_ids == std::vector<std::string>{"a"});
}

TEST_CASE("cosine similarity closed forms") {
  const auto a = vec({{1, 1.0}, {2, 1.0}});
  const auto b = vec({{2, 1.0}, {3, 1.0}});
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine_similarity(a, vec({{5, 2.0}})) == 0.0);
  CHECK(cosine_similarity(a, b) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cosine_similarity(a, UserVector{}) == 0.0);
}

TEST_CASE("three users sharing one unpopular tweet form an equal-weight triangle") {
  std::vector<InteractionRecord> records;
  for (int u = 0; u < 3; ++u) {
    records.push_back(retweet(testing::user_name(u), "shared"));
    records.push_back(retweet(testing::user_name(u), "solo" + std::to_string(u)));
  }
  for (int u = 3; u < 10; ++u) records.push_back(retweet(testing::user_name(u), "other" + std::to_string(u)));
  const auto vs = build_user_vectors(records, explicit_population(testing::user_names(10)));
  const auto g = build_similarity_graph(vs);
  REQUIRE(g.edge_count() == 3);
  const double w = g.edges()[0].weight;
  CHECK(w > 0.0);
  for (const auto& e : g.edges()) CHECK(e.weight == doctest::Approx(w).epsilon(1e-12));
  const auto oracle = reference::dense_similarity_graph(vs);
  CHECK(oracle.edge_count() == 3);
}

TEST_CASE("disjoint retweet sets give no edges") {
  std::vector<InteractionRecord> records;
  for (int u = 0; u < 6; ++u) records.push_back(retweet(testing::user_name(u), "t" + std::to_string(u)));
  const auto g = build_similarity_graph(build_user_vectors(records, explicit_population(testing::user_names(6))));
  CHECK(g.node_count() == 6);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("inverted-index construction equals the dense all-pairs oracle") {
  Gen gen(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t users = gen.between(2, 200);
    const std::size_t tweets = gen.between(1, 500);
    std::vector<InteractionRecord> records;
    for (std::size_t u = 0; u < users; ++u)
      for (std::size_t k = gen.below(12); k > 0; --k)
        records.push_back(retweet(testing::user_name(u), "t" + std::to_string(gen.below(tweets))));
    const auto vs = build_user_vectors(records, explicit_population(testing::user_names(users)));
    const auto fast = build_similarity_graph(vs);
    const auto slow = reference::dense_similarity_graph(vs);
    REQUIRE(fast.edge_count() == slow.edge_count());
    for (std::size_t i = 0; i < fast.edge_count(); ++i) {
      CHECK(fast.edges()[i].u == slow.edges()[i].u);
      CHECK(fast.edges()[i].v == slow.edges()[i].v);
      CHECK(std::abs(fast.edges()[i].weight - slow.edges()[i].weight) <= 1e-9);
    }
  }
}

TEST_CASE("similarity weights lie in (0, 1] and are symmetric in construction order") {
  Gen gen(8);
  std::vector<InteractionRecord> records;
  for (std::size_t u = 0; u < 80; ++u)
    for (std::size_t k = gen.between(1, 6); k > 0; --k)
      records.push_back(retweet(testing::user_name(u), "t" + std::to_string(gen.below(40))));
  const auto pop = explicit_population(testing::user_names(80));
  const auto g = build_similarity_graph(build_user_vectors(records, pop));
  for (const auto& e : g.edges()) {
    CHECK(e.weight > 0.0);
    CHECK(e.weight <= 1.0);
  }
  std::reverse(records.begin(), records.end());
  const auto h = build_similarity_graph(build_user_vectors(records, pop));
  REQUIRE(h.edge_count() == g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) CHECK(h.edges()[i].weight == g.edges()[i].weight);
}
