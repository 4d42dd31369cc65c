#include "coord/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "coord/error.hpp"
#include "coord/format.hpp"

namespace coord {
namespace {

using nlohmann::json;

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::optional<std::string> normalize_hashtag(std::string tag) {
  if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
  if (tag.empty() || tag.front() == '#' || has_space(tag)) return std::nullopt;
  std::transform(tag.begin(), tag.end(), tag.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return tag;
}

std::optional<std::string> optional_id(const json& obj, const char* key, bool& ok) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string() || it->get_ref<const std::string&>().empty()) {
    ok = false;
    return std::nullopt;
  }
  return it->get<std::string>();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<InteractionRecord> parse_record_line(std::string_view line) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!obj.is_object()) return std::nullopt;

  InteractionRecord rec;
  auto tweet = obj.find("tweet_id");
  auto user = obj.find("user_id");
  auto ts = obj.find("timestamp");
  if (tweet == obj.end() || !tweet->is_string() || user == obj.end() || !user->is_string())
    return std::nullopt;
  if (ts == obj.end() || !ts->is_number_integer()) return std::nullopt;
  rec.tweet_id = tweet->get<std::string>();
  rec.user_id = user->get<std::string>();
  rec.timestamp = ts->get<std::int64_t>();
  if (rec.tweet_id.empty() || rec.user_id.empty()) return std::nullopt;

  if (auto text = obj.find("text"); text != obj.end() && !text->is_null()) {
    if (!text->is_string()) return std::nullopt;
    rec.text = text->get<std::string>();
  }
  if (auto tags = obj.find("hashtags"); tags != obj.end() && !tags->is_null()) {
    if (!tags->is_array()) return std::nullopt;
    for (const auto& tag : *tags) {
      if (!tag.is_string()) return std::nullopt;
      auto norm = normalize_hashtag(tag.get<std::string>());
      if (!norm) return std::nullopt;
      rec.hashtags.push_back(std::move(*norm));
    }
  }

  bool ok = true;
  rec.retweeted_tweet_id = optional_id(obj, "retweeted_tweet_id", ok);
  rec.retweeted_user_id = optional_id(obj, "retweeted_user_id", ok);
  if (!ok || rec.retweeted_tweet_id.has_value() != rec.retweeted_user_id.has_value())
    return std::nullopt;
  return rec;
}

ParseResult parse_records(std::istream& in) {
  if (!in) throw IoError("record stream is not readable");
  ParseResult result;
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++lines;
    if (auto rec = parse_record_line(line))
      result.records.push_back(std::move(*rec));
    else
      ++result.skipped;
  }
  if (in.bad()) throw IoError("read error while parsing records");
  if (lines > 0 && 2 * result.skipped > lines)
    throw FormatError("more than half of the record lines are malformed (" +
                      std::to_string(result.skipped) + " of " + std::to_string(lines) + ")");
  return result;
}

ParseResult read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open records file " + path.string());
  return parse_records(in);
}

std::string format_record(const InteractionRecord& r) {
  std::string out;
  out.reserve(160 + r.text.size());
  out += "{\"tweet_id\": " + json_quote(r.tweet_id);
  out += ", \"user_id\": " + json_quote(r.user_id);
  out += ", \"timestamp\": " + std::to_string(r.timestamp);
  out += ", \"text\": " + json_quote(r.text);
  out += ", \"hashtags\": [";
  for (std::size_t i = 0; i < r.hashtags.size(); ++i) {
    if (i) out += ", ";
    out += json_quote(r.hashtags[i]);
  }
  out += "], \"retweeted_tweet_id\": ";
  out += r.retweeted_tweet_id ? json_quote(*r.retweeted_tweet_id) : "null";
  out += ", \"retweeted_user_id\": ";
  out += r.retweeted_user_id ? json_quote(*r.retweeted_user_id) : "null";
  out += "}";
  return out;
}

bool Population::contains(std::string_view user_id) const {
  return std::binary_search(user_ids.begin(), user_ids.end(), user_id);
}

Population select_superspreaders(std::span<const InteractionRecord> records, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw ConfigError("population fraction must lie in (0, 1]");

  std::unordered_map<std::string_view, std::size_t> counts;
  for (const auto& r : records)
    if (r.is_retweet()) ++counts[r.user_id];
  if (counts.empty()) throw InputError("no retweet records: superspreader population is empty");

  std::vector<std::pair<std::string_view, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  // Guard against 0.01 * 300 landing a hair above 3.
  const double exact = fraction * static_cast<double>(ranked.size());
  auto keep = static_cast<std::size_t>(std::ceil(exact - 1e-9 * exact));
  keep = std::clamp<std::size_t>(keep, 1, ranked.size());

  Population pop;
  pop.rule = TopRetweeters{fraction};
  pop.user_ids.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) pop.user_ids.emplace_back(ranked[i].first);
  std::sort(pop.user_ids.begin(), pop.user_ids.end());
  return pop;
}

Population explicit_population(std::vector<std::string> user_ids) {
  std::sort(user_ids.begin(), user_ids.end());
  user_ids.erase(std::unique(user_ids.begin(), user_ids.end()), user_ids.end());
  return Population{std::move(user_ids), ExplicitList{}};
}

void write_population(std::ostream& out, const Population& population) {
  for (const auto& id : population.user_ids) out << id << '\n';
}

Population read_population(std::istream& in) {
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    auto id = trim(line);
    if (!id.empty()) ids.emplace_back(id);
  }
  return explicit_population(std::move(ids));
}

std::optional<double> AnnotationTable::find(const std::string& user_id) const {
  auto it = values.find(user_id);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

AnnotationTable load_annotations(std::istream& in, AnnotationKind kind) {
  if (!in) throw IoError("annotation stream is not readable");
  AnnotationTable table;
  table.kind = kind;
  std::string line;
  while (std::getline(in, line)) {
    auto row = trim(line);
    if (row.empty()) continue;
    auto comma = row.rfind(',');
    if (comma == std::string_view::npos) {
      ++table.rejected;
      continue;
    }
    auto user = trim(row.substr(0, comma));
    auto cell = trim(row.substr(comma + 1));
    double value = 0.0;
    auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    bool valid = !user.empty() && ec == std::errc{} && end == cell.data() + cell.size();
    if (valid && kind == AnnotationKind::Score) valid = value >= 0.0 && value <= 1.0;
    if (valid && kind == AnnotationKind::Flag) valid = value == 0.0 || value == 1.0;
    if (!valid) {
      ++table.rejected;
      continue;
    }
    auto [it, inserted] = table.values.insert_or_assign(std::string(user), value);
    if (!inserted) ++table.duplicates;
  }
  if (in.bad()) throw IoError("read error while loading annotations");
  return table;
}

AnnotationTable load_annotations(const std::filesystem::path& path, AnnotationKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open annotation file " + path.string());
  return load_annotations(in, kind);
}

}  // namespace coord
