#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coord/ingest.hpp"

namespace coord {

struct PlantedGroup {
  int size = 30;
  int pool_size = 25;
  double coretweet_prob = 0.9;
};

struct SynthConfig {
  int n_background_users = 2000;
  int n_tweets = 20000;
  double popularity_exponent = 1.0;
  std::vector<PlantedGroup> groups;
  double retweets_per_user = 12.0;
  /// Chance that a background retweet lands on a random pool tweet instead.
  double contamination = 0.0;
  /// Mean number of original (non-retweet) posts per user.
  double originals_per_user = 1.0;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct GroundTruth {
  std::vector<std::vector<std::string>> group_members;  // sorted ids
  std::vector<double> group_strengths;                  // coretweet_prob per group
};

struct SynthData {
  std::vector<InteractionRecord> records;
  GroundTruth truth;
};

/// Background users retweet Zipf-popular tweets; each planted group shares a
/// private pool of tweets that members retweet independently with the
/// group's co-retweet probability, on top of their background activity.
/// Deterministic for a fixed config.
SynthData generate(const SynthConfig& config);

void write_records(std::ostream& out, const std::vector<InteractionRecord>& records);
/// One `{"group": k, "members": [...]}` line per planted group.
void write_truth(std::ostream& out, const GroundTruth& truth);

}  // namespace coord
