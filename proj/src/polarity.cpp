#include "coord/polarity.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "coord/error.hpp"
#include "coord/format.hpp"

namespace coord {
namespace {

std::string normalize_tag(std::string tag) {
  while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.pop_back();
  std::size_t lead = 0;
  while (lead < tag.size() && std::isspace(static_cast<unsigned char>(tag[lead]))) ++lead;
  tag.erase(0, lead);
  if (!tag.empty() && tag.front() == '#') tag.erase(0, 1);
  std::transform(tag.begin(), tag.end(), tag.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return tag;
}

std::optional<int> parse_leaning(std::string cell) {
  cell = normalize_tag(std::move(cell));
  if (cell == "-1" || cell == "l") return -1;
  if (cell == "0" || cell == "n") return 0;
  if (cell == "1" || cell == "+1" || cell == "c") return 1;
  return std::nullopt;
}

}  // namespace

SeedSet read_seeds(std::istream& in) {
  if (!in) throw IoError("seed stream is not readable");
  SeedSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto cells = split_csv(line);
    if (cells.size() == 1 && normalize_tag(cells[0]).empty()) continue;
    auto leaning = cells.size() == 2 ? parse_leaning(cells[1]) : std::nullopt;
    auto tag = normalize_tag(cells[0]);
    if (!leaning || tag.empty()) throw FormatError("seed line " + std::to_string(lineno) + ": expected hashtag,polarity");
    if (!set.seeds.emplace(tag, *leaning).second)
      throw FormatError("seed line " + std::to_string(lineno) + ": duplicate seed " + tag);
  }
  return set;
}

SeedSet read_seeds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open seed file " + path.string());
  return read_seeds(in);
}

std::optional<double> ValenceTable::find(const std::string& hashtag) const {
  auto it = values.find(hashtag);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

ValenceTable hashtag_valence(std::span<const InteractionRecord> records, const SeedSet& seeds, int rounds) {
  if (rounds < 1) throw ConfigError("valence rounds must be at least 1");

  // Hashtag vocabulary (sorted) and per-record distinct hashtag sets.
  std::vector<std::string> vocab;
  for (const auto& r : records) vocab.insert(vocab.end(), r.hashtags.begin(), r.hashtags.end());
  for (const auto& [tag, pol] : seeds.seeds) vocab.push_back(tag);
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  auto index = [&](const std::string& tag) {
    return static_cast<std::uint32_t>(std::lower_bound(vocab.begin(), vocab.end(), tag) - vocab.begin());
  };

  // Sparse symmetric co-occurrence counts, rows sorted by neighbour.
  std::vector<std::unordered_map<std::uint32_t, std::uint64_t>> co_map(vocab.size());
  std::vector<std::uint32_t> tags;
  for (const auto& r : records) {
    tags.clear();
    for (const auto& h : r.hashtags) tags.push_back(index(h));
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (std::size_t a = 0; a < tags.size(); ++a)
      for (std::size_t b = a + 1; b < tags.size(); ++b) {
        ++co_map[tags[a]][tags[b]];
        ++co_map[tags[b]][tags[a]];
      }
  }
  std::vector<std::vector<std::pair<std::uint32_t, double>>> co(vocab.size());
  for (std::size_t h = 0; h < vocab.size(); ++h) {
    co[h].assign(co_map[h].begin(), co_map[h].end());
    std::sort(co[h].begin(), co[h].end());
  }

  std::vector<std::optional<double>> value(vocab.size());
  std::vector<char> pinned(vocab.size(), 0);
  for (const auto& [tag, pol] : seeds.seeds) {
    value[index(tag)] = static_cast<double>(pol);
    pinned[index(tag)] = 1;
  }

  for (int round = 0; round < rounds; ++round) {
    // Round 1 propagates from seeds only; later rounds from everything scored.
    const auto sources = value;
    const bool seeds_only = round == 0;
    for (std::size_t h = 0; h < vocab.size(); ++h) {
      if (pinned[h]) continue;
      double num = 0.0, den = 0.0;
      for (const auto& [g, count] : co[h]) {
        if (!sources[g] || (seeds_only && !pinned[g])) continue;
        num += count * *sources[g];
        den += count;
      }
      if (den > 0.0) value[h] = std::clamp(num / den, -1.0, 1.0);
    }
  }

  ValenceTable table;
  for (std::size_t h = 0; h < vocab.size(); ++h)
    if (value[h]) table.values.emplace(vocab[h], *value[h]);
  return table;
}

std::optional<double> user_polarity(std::span<const InteractionRecord> records, const std::string& user_id,
                                    const ValenceTable& valences) {
  double num = 0.0, den = 0.0;
  for (const auto& r : records) {
    if (r.user_id != user_id) continue;
    for (const auto& h : r.hashtags)
      if (auto v = valences.find(h)) {
        num += *v;
        den += 1.0;
      }
  }
  if (den == 0.0) return std::nullopt;
  return std::clamp(num / den, -1.0, 1.0);
}

std::map<std::string, double> user_polarities(std::span<const InteractionRecord> records,
                                              const ValenceTable& valences) {
  std::map<std::string, std::pair<double, double>> acc;
  for (const auto& r : records)
    for (const auto& h : r.hashtags)
      if (auto v = valences.find(h)) {
        auto& [num, den] = acc[r.user_id];
        num += *v;
        den += 1.0;
      }
  std::map<std::string, double> out;
  for (const auto& [user, nd] : acc) out.emplace(user, std::clamp(nd.first / nd.second, -1.0, 1.0));
  return out;
}

Leaning leaning_of(double polarity) {
  if (polarity < -1.0 / 3.0) return Leaning::Labour;
  if (polarity > 1.0 / 3.0) return Leaning::Conservative;
  return Leaning::Neutral;
}

void write_valences(std::ostream& out, const ValenceTable& table) {
  for (const auto& [tag, v] : table.values) out << csv_cell(tag) << ',' << format_general(v, 9) << '\n';
}

void write_polarities(std::ostream& out, const std::map<std::string, double>& polarities) {
  for (const auto& [user, p] : polarities) out << csv_cell(user) << ',' << format_general(p, 9) << '\n';
}

std::map<std::string, double> read_polarities(std::istream& in) {
  std::map<std::string, double> out;
  std::string line;
  while (std::getline(in, line)) {
    auto cells = split_csv(line);
    if (cells.size() != 2) continue;
    double v = 0.0;
    auto [end, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), v);
    if (ec == std::errc{}) out[cells[0]] = v;
  }
  return out;
}

}  // namespace coord
