#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "coord/ingest.hpp"

namespace coord {

/// Seed hashtags with known leaning: -1 Labour, 0 Neutral, +1 Conservative.
struct SeedSet {
  std::map<std::string, int> seeds;
};

/// CSV `hashtag,polarity`, polarity one of -1/0/1 or L/N/C. Hashtags are
/// lowercased and a leading '#' is dropped.
SeedSet read_seeds(std::istream& in);
SeedSet read_seeds(const std::filesystem::path& path);

struct ValenceTable {
  std::map<std::string, double> values;

  std::optional<double> find(const std::string& hashtag) const;
};

/// Valence score by co-occurrence with scored hashtags.
///
/// Round 1 scores every hashtag that co-occurs with a seed as the
/// co-occurrence-weighted mean of the seed polarities. Each further round
/// uses all hashtags scored in the previous round as soft seeds. Seeds keep
/// their polarity exactly; self co-occurrence is ignored.
ValenceTable hashtag_valence(std::span<const InteractionRecord> records, const SeedSet& seeds, int rounds = 1);

/// Hashtag-frequency weighted mean valence over the user's records; nullopt
/// when the user never used a scored hashtag.
std::optional<double> user_polarity(std::span<const InteractionRecord> records, const std::string& user_id,
                                    const ValenceTable& valences);

/// user_polarity for every user that has one, in one pass over the records.
std::map<std::string, double> user_polarities(std::span<const InteractionRecord> records,
                                              const ValenceTable& valences);

enum class Leaning { Labour, Neutral, Conservative };

/// Display buckets at -1/3 and +1/3.
Leaning leaning_of(double polarity);

void write_valences(std::ostream& out, const ValenceTable& table);
void write_polarities(std::ostream& out, const std::map<std::string, double>& polarities);
std::map<std::string, double> read_polarities(std::istream& in);

}  // namespace coord
