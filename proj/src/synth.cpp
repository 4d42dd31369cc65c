#include "coord/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "coord/error.hpp"
#include "coord/format.hpp"

namespace coord {
namespace {

constexpr int kMaxUsers = 999999;
constexpr std::int64_t kStartTime = 1573516800;  // 2019-11-12T00:00:00Z
constexpr std::int64_t kWindow = 30 * 24 * 3600;

// Hand-rolled distributions over mt19937_64 so the byte stream does not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }
  bool bernoulli(double p) { return uniform() < p; }

  int poisson(double lambda) {
    int total = 0;
    while (lambda > 0.0) {
      const double chunk = std::min(lambda, 30.0);
      lambda -= chunk;
      const double limit = std::exp(-chunk);
      double prod = uniform();
      while (prod > limit) {
        ++total;
        prod *= uniform();
      }
    }
    return total;
  }

 private:
  std::mt19937_64 gen_;
};

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::array<const char*, 12> kTopicHashtags = {
    "ge2019",      "generalelection2019", "generalelection19", "votelabour", "realchange", "forthemany",
    "votelabour2019", "voteconservative", "backboris", "getbrexitdone", "brexit", "nhs"};

constexpr std::array<const char*, 24> kWords = {
    "vote",   "election", "party",  "people",  "country", "future", "today",  "leader",
    "debate", "policy",   "plan",   "change",  "public",  "money",  "deal",   "jobs",
    "health", "schools",  "police", "housing", "climate", "taxes",  "voters", "campaign"};

struct Tweet {
  std::string id;
  std::string author;
  std::string text;
  std::vector<std::string> hashtags;
};

Tweet background_tweet(int k) {
  Tweet t;
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%07d", k);
  t.id = buf;
  std::snprintf(buf, sizeof buf, "a%04d", k % 1000);
  t.author = buf;
  std::uint64_t h = mix(static_cast<std::uint64_t>(k));
  for (int w = 0; w < 6; ++w) {
    if (w) t.text += ' ';
    t.text += kWords[h % kWords.size()];
    h = mix(h);
  }
  if (h % 10 < 7) {
    const char* tag = kTopicHashtags[mix(h) % kTopicHashtags.size()];
    t.hashtags.emplace_back(tag);
    t.text += " #";
    t.text += tag;
  }
  return t;
}

Tweet pool_tweet(std::size_t group, int k) {
  Tweet t;
  char buf[48];
  std::snprintf(buf, sizeof buf, "p%02zu_%04d", group, k);
  t.id = buf;
  std::snprintf(buf, sizeof buf, "g%02zu", group);
  t.author = buf;
  std::uint64_t h = mix((static_cast<std::uint64_t>(group) << 32) ^ static_cast<std::uint64_t>(k) ^ 0xABCDEFull);
  for (int w = 0; w < 4; ++w) {
    std::snprintf(buf, sizeof buf, "theme%02zu%c", group, static_cast<char>('a' + h % 8));
    if (w) t.text += ' ';
    t.text += buf;
    h = mix(h);
  }
  t.text += ' ';
  t.text += kWords[h % kWords.size()];
  std::snprintf(buf, sizeof buf, "group%02zu", group);
  const std::string tag = buf;
  const std::string side = group % 2 == 0 ? "votelabour" : "voteconservative";
  t.hashtags = {tag, side};
  t.text += " #" + tag + " #" + side;
  return t;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_background_users < 0 || n_tweets < 1) throw ConfigError("synth: user and tweet counts must be positive");
  if (!(popularity_exponent >= 0.0)) throw ConfigError("synth: popularity exponent must be non-negative");
  if (!(retweets_per_user > 0.0)) throw ConfigError("synth: retweets_per_user must be positive");
  if (!(contamination >= 0.0 && contamination <= 1.0)) throw ConfigError("synth: contamination must lie in [0,1]");
  if (!(originals_per_user >= 0.0)) throw ConfigError("synth: originals_per_user must be non-negative");
  long total = n_background_users;
  for (const auto& g : groups) {
    if (g.size < 1 || g.pool_size < 1) throw ConfigError("synth: group size and pool size must be positive");
    if (!(g.coretweet_prob >= 0.0 && g.coretweet_prob <= 1.0))
      throw ConfigError("synth: coretweet_prob must lie in [0,1]");
    total += g.size;
  }
  if (total > kMaxUsers) throw ConfigError("synth: planted groups exceed the user budget of 999999 ids");
  if (total < 1) throw ConfigError("synth: no users");
}

SynthData generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);

  std::size_t total_users = static_cast<std::size_t>(config.n_background_users);
  for (const auto& g : config.groups) total_users += static_cast<std::size_t>(g.size);

  // Random id slots so group members are not contiguous in id order.
  std::vector<int> slots(total_users);
  for (std::size_t i = 0; i < total_users; ++i) slots[i] = static_cast<int>(i) + 1;
  for (std::size_t i = total_users; i > 1; --i) std::swap(slots[i - 1], slots[rng.below(i)]);
  std::vector<std::string> ids(total_users);
  for (std::size_t i = 0; i < total_users; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "u%06d", slots[i]);
    ids[i] = buf;
  }

  // Zipf popularity over background tweets.
  std::vector<double> cdf(static_cast<std::size_t>(config.n_tweets));
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += 1.0 / std::pow(static_cast<double>(k + 1), config.popularity_exponent);
    cdf[k] = acc;
  }
  auto draw_tweet = [&] {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), rng.uniform() * acc);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
  };

  std::vector<std::vector<Tweet>> pools(config.groups.size());
  std::size_t pool_total = 0;
  for (std::size_t g = 0; g < config.groups.size(); ++g) {
    for (int k = 0; k < config.groups[g].pool_size; ++k) pools[g].push_back(pool_tweet(g, k));
    pool_total += pools[g].size();
  }

  SynthData data;
  data.truth.group_members.resize(config.groups.size());
  for (const auto& g : config.groups) data.truth.group_strengths.push_back(g.coretweet_prob);

  struct Event {
    std::int64_t time;
    std::size_t user;
    InteractionRecord rec;
  };
  std::vector<Event> events;
  auto retweet = [&](std::size_t user, const Tweet& t) {
    InteractionRecord r;
    r.user_id = ids[user];
    r.timestamp = kStartTime + static_cast<std::int64_t>(rng.below(kWindow));
    r.text = "RT @" + t.author + ": " + t.text;
    r.hashtags = t.hashtags;
    r.retweeted_tweet_id = t.id;
    r.retweeted_user_id = t.author;
    events.push_back({r.timestamp, user, std::move(r)});
  };
  auto random_pool_tweet = [&]() -> const Tweet& {
    std::size_t k = rng.below(pool_total);
    for (const auto& pool : pools) {
      if (k < pool.size()) return pool[k];
      k -= pool.size();
    }
    return pools.back().back();
  };

  std::size_t user = 0;
  std::vector<int> group_of(total_users, -1);
  for (std::size_t g = 0; g < config.groups.size(); ++g)
    for (int m = 0; m < config.groups[g].size; ++m) {
      group_of[user] = static_cast<int>(g);
      data.truth.group_members[g].push_back(ids[user]);
      ++user;
    }

  for (std::size_t u = 0; u < total_users; ++u) {
    if (group_of[u] >= 0) {
      const auto g = static_cast<std::size_t>(group_of[u]);
      for (const auto& t : pools[g])
        if (rng.bernoulli(config.groups[g].coretweet_prob)) retweet(u, t);
    }
    const int background = 1 + rng.poisson(std::max(0.0, config.retweets_per_user - 1.0));
    for (int k = 0; k < background; ++k) {
      if (pool_total > 0 && config.contamination > 0.0 && rng.bernoulli(config.contamination))
        retweet(u, random_pool_tweet());
      else
        retweet(u, background_tweet(draw_tweet()));
    }
    const int originals = rng.poisson(config.originals_per_user);
    for (int k = 0; k < originals; ++k) {
      Tweet t = background_tweet(static_cast<int>(rng.below(static_cast<std::uint64_t>(config.n_tweets))));
      InteractionRecord r;
      r.user_id = ids[u];
      r.timestamp = kStartTime + static_cast<std::int64_t>(rng.below(kWindow));
      r.text = std::move(t.text);
      r.hashtags = std::move(t.hashtags);
      events.push_back({r.timestamp, u, std::move(r)});
    }
  }

  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.time < b.time; });
  data.records.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "s%09zu", i + 1);
    events[i].rec.tweet_id = buf;
    data.records.push_back(std::move(events[i].rec));
  }
  for (auto& members : data.truth.group_members) std::sort(members.begin(), members.end());
  return data;
}

void write_records(std::ostream& out, const std::vector<InteractionRecord>& records) {
  for (const auto& r : records) out << format_record(r) << '\n';
}

void write_truth(std::ostream& out, const GroundTruth& truth) {
  for (std::size_t g = 0; g < truth.group_members.size(); ++g) {
    out << "{\"group\": " << g << ", \"members\": [";
    for (std::size_t k = 0; k < truth.group_members[g].size(); ++k)
      out << (k ? ", " : "") << json_quote(truth.group_members[g][k]);
    out << "]}\n";
  }
}

}  // namespace coord
