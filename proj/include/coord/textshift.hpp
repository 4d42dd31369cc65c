#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coord/ingest.hpp"

namespace coord {

using Stopwords = std::set<std::string, std::less<>>;

Stopwords read_stopwords(std::istream& in);

/// Whitespace tokenizer (ASCII and Unicode spaces). Tokens are lowercased
/// (ASCII), stripped of surrounding punctuation; URLs and @mentions are
/// dropped, '#' is removed from hashtags, stopwords are skipped.
std::vector<std::string> tokenize(std::string_view text, const Stopwords& stopwords = {});

/// Token probabilities (all positive, summing to 1).
struct CorpusDistribution {
  std::map<std::string, double, std::less<>> token_probs;
  std::size_t total_tokens = 0;

  double entropy_bits() const;
};

/// Distribution of the tokens in all records by `users` (ids, any order).
/// nullopt when no token survives: there is no comparable text.
std::optional<CorpusDistribution> build_corpus(std::span<const InteractionRecord> records,
                                               std::span<const std::string> users,
                                               const Stopwords& stopwords = {});

struct ShiftEntry {
  std::string token;
  double contribution = 0.0;
};

/// Every token's signed entropy contribution, ranked by magnitude (ties by
/// token). Positive values characterise the comparison corpus.
struct ShiftResult {
  std::vector<ShiftEntry> entries;
  double total_shift = 0.0;

  std::vector<ShiftEntry> top(std::size_t k) const;
};

/// delta_w = -p2 log2 p2 - (-p1 log2 p1) per token over the union of both
/// vocabularies; total_shift = H(comparison) - H(reference).
ShiftResult word_shift(const CorpusDistribution& reference, const CorpusDistribution& comparison);

struct CloudEntry {
  std::string hashtag;
  double weight = 0.0;
};

/// TF-IDF hashtag clouds, one per community: tf = uses by members,
/// idf = ln(C / cf) over the C communities. Top `top_k` entries by weight,
/// ties by hashtag; zero-weight hashtags are left out.
std::vector<std::vector<CloudEntry>> hashtag_clouds(std::span<const InteractionRecord> records,
                                                    const std::vector<std::vector<std::string>>& communities,
                                                    std::size_t top_k);

/// Cloud of one community among `communities`.
std::vector<CloudEntry> community_hashtag_cloud(std::span<const InteractionRecord> records,
                                                const std::vector<std::vector<std::string>>& communities,
                                                std::size_t which, std::size_t top_k);

/// CSV `rank,token,contribution`, contributions at 6 decimals.
void write_shift(std::ostream& out, const std::vector<ShiftEntry>& entries);
/// CSV `rank,hashtag,weight`.
void write_cloud(std::ostream& out, const std::vector<CloudEntry>& entries);

}  // namespace coord
