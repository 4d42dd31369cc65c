#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace coord {

/// One tweet or retweet event.
///
/// The retweet fields are either both set or both empty. Hashtags are stored
/// lowercase with no leading '#'.
struct InteractionRecord {
  std::string tweet_id;
  std::string user_id;
  std::int64_t timestamp = 0;
  std::string text;
  std::vector<std::string> hashtags;
  std::optional<std::string> retweeted_tweet_id;
  std::optional<std::string> retweeted_user_id;

  bool is_retweet() const noexcept { return retweeted_tweet_id.has_value(); }
};

struct ParseResult {
  std::vector<InteractionRecord> records;
  std::size_t skipped = 0;
};

/// Parses line-delimited JSON records. Blank lines are ignored; malformed
/// lines are skipped and counted. Throws FormatError when more than half of
/// the non-blank lines are malformed and IoError when the stream fails.
ParseResult parse_records(std::istream& in);
ParseResult read_records(const std::filesystem::path& path);

/// Parses a single line. Returns nullopt when the line violates the record
/// format or any record invariant.
std::optional<InteractionRecord> parse_record_line(std::string_view line);

/// Renders a record in the canonical line format (no trailing newline).
std::string format_record(const InteractionRecord& record);

struct TopRetweeters {
  double fraction = 0.01;
};
struct ExplicitList {};
using SelectionRule = std::variant<TopRetweeters, ExplicitList>;

/// The users under analysis, sorted ascending by id.
struct Population {
  std::vector<std::string> user_ids;
  SelectionRule rule = ExplicitList{};

  std::size_t size() const noexcept { return user_ids.size(); }
  bool contains(std::string_view user_id) const;
};

/// Top ceil(fraction * U) users by number of retweet events, where U is the
/// number of users with at least one retweet. Ties at the cut go to the
/// smaller user id.
Population select_superspreaders(std::span<const InteractionRecord> records, double fraction);

Population explicit_population(std::vector<std::string> user_ids);

void write_population(std::ostream& out, const Population& population);
Population read_population(std::istream& in);

enum class AnnotationKind { Score, Flag };

/// Externally computed per-user values: automation scores in [0,1] or 0/1
/// flags (e.g. suspension).
struct AnnotationTable {
  AnnotationKind kind = AnnotationKind::Score;
  std::unordered_map<std::string, double> values;
  std::size_t rejected = 0;
  std::size_t duplicates = 0;

  std::optional<double> find(const std::string& user_id) const;
};

AnnotationTable load_annotations(std::istream& in, AnnotationKind kind);
AnnotationTable load_annotations(const std::filesystem::path& path, AnnotationKind kind);

}  // namespace coord
