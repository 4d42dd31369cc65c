#include "coord/textshift.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "coord/format.hpp"

namespace coord {
namespace {

// Byte length of the whitespace character starting at s[i], or 0.
std::size_t space_length(std::string_view s, std::size_t i) {
  const auto b = [&](std::size_t k) { return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u; };
  const unsigned c0 = b(0);
  if (c0 == ' ' || (c0 >= 0x09 && c0 <= 0x0D)) return 1;
  if (c0 == 0xC2 && (b(1) == 0x85 || b(1) == 0xA0)) return 2;
  if (c0 == 0xE1 && b(1) == 0x9A && b(2) == 0x80) return 3;
  if (c0 == 0xE2 && b(1) == 0x80 && ((b(2) >= 0x80 && b(2) <= 0x8A) || b(2) == 0xA8 || b(2) == 0xA9 || b(2) == 0xAF))
    return 3;
  if (c0 == 0xE2 && b(1) == 0x81 && b(2) == 0x9F) return 3;
  if (c0 == 0xE3 && b(1) == 0x80 && b(2) == 0x80) return 3;
  return 0;
}

bool is_ascii_punct(char c) { return static_cast<unsigned char>(c) < 0x80 && std::ispunct(static_cast<unsigned char>(c)); }

std::optional<std::string> clean_token(std::string token) {
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (token.starts_with("http://") || token.starts_with("https://") || token.starts_with("www.")) return std::nullopt;
  if (token.starts_with('@')) return std::nullopt;
  if (token.starts_with('#')) token.erase(0, 1);
  std::size_t first = 0, last = token.size();
  while (first < last && is_ascii_punct(token[first])) ++first;
  while (last > first && is_ascii_punct(token[last - 1])) --last;
  if (first == last) return std::nullopt;
  return token.substr(first, last - first);
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

Stopwords read_stopwords(std::istream& in) {
  Stopwords words;
  std::string line;
  while (std::getline(in, line))
    for (auto& t : tokenize(line)) words.insert(std::move(t));
  return words;
}

std::vector<std::string> tokenize(std::string_view text, const Stopwords& stopwords) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size()) {
      auto len = space_length(text, i);
      if (len == 0) break;
      i += len;
    }
    std::size_t start = i;
    while (i < text.size() && space_length(text, i) == 0) ++i;
    if (start == i) continue;
    auto tok = clean_token(std::string(text.substr(start, i - start)));
    if (tok && !stopwords.contains(*tok)) out.push_back(std::move(*tok));
  }
  return out;
}

double CorpusDistribution::entropy_bits() const {
  double h = 0.0;
  for (const auto& [tok, p] : token_probs) h += plogp(p);
  return h;
}

std::optional<CorpusDistribution> build_corpus(std::span<const InteractionRecord> records,
                                               std::span<const std::string> users, const Stopwords& stopwords) {
  std::unordered_set<std::string_view> members(users.begin(), users.end());
  std::map<std::string, std::size_t, std::less<>> counts;
  std::size_t total = 0;
  for (const auto& r : records) {
    if (!members.contains(r.user_id)) continue;
    for (auto& tok : tokenize(r.text, stopwords)) {
      ++counts[std::move(tok)];
      ++total;
    }
  }
  if (total == 0) return std::nullopt;
  CorpusDistribution dist;
  dist.total_tokens = total;
  for (const auto& [tok, n] : counts)
    dist.token_probs.emplace(tok, static_cast<double>(n) / static_cast<double>(total));
  return dist;
}

std::vector<ShiftEntry> ShiftResult::top(std::size_t k) const {
  return {entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(std::min(k, entries.size()))};
}

ShiftResult word_shift(const CorpusDistribution& reference, const CorpusDistribution& comparison) {
  ShiftResult result;
  auto r = reference.token_probs.begin();
  auto c = comparison.token_probs.begin();
  const auto rend = reference.token_probs.end();
  const auto cend = comparison.token_probs.end();
  while (r != rend || c != cend) {
    if (c == cend || (r != rend && r->first < c->first)) {
      result.entries.push_back({r->first, -plogp(r->second)});
      ++r;
    } else if (r == rend || c->first < r->first) {
      result.entries.push_back({c->first, plogp(c->second)});
      ++c;
    } else {
      result.entries.push_back({c->first, plogp(c->second) - plogp(r->second)});
      ++r;
      ++c;
    }
  }
  std::stable_sort(result.entries.begin(), result.entries.end(), [](const ShiftEntry& a, const ShiftEntry& b) {
    const double ma = std::abs(a.contribution), mb = std::abs(b.contribution);
    return ma != mb ? ma > mb : a.token < b.token;
  });
  result.total_shift = comparison.entropy_bits() - reference.entropy_bits();
  return result;
}

std::vector<std::vector<CloudEntry>> hashtag_clouds(std::span<const InteractionRecord> records,
                                                    const std::vector<std::vector<std::string>>& communities,
                                                    std::size_t top_k) {
  std::unordered_map<std::string_view, std::size_t> community_of;
  for (std::size_t c = 0; c < communities.size(); ++c)
    for (const auto& u : communities[c]) community_of.emplace(u, c);

  std::vector<std::map<std::string, double>> tf(communities.size());
  for (const auto& r : records) {
    auto it = community_of.find(r.user_id);
    if (it == community_of.end()) continue;
    for (const auto& h : r.hashtags) tf[it->second][h] += 1.0;
  }
  std::map<std::string, std::size_t> cf;
  for (const auto& counts : tf)
    for (const auto& [h, n] : counts) ++cf[h];

  const double total = static_cast<double>(communities.size());
  std::vector<std::vector<CloudEntry>> clouds(communities.size());
  for (std::size_t c = 0; c < communities.size(); ++c) {
    auto& cloud = clouds[c];
    for (const auto& [h, n] : tf[c]) {
      const double w = n * std::log(total / static_cast<double>(cf[h]));
      if (w > 0.0) cloud.push_back({h, w});
    }
    std::stable_sort(cloud.begin(), cloud.end(), [](const CloudEntry& a, const CloudEntry& b) {
      return a.weight != b.weight ? a.weight > b.weight : a.hashtag < b.hashtag;
    });
    if (cloud.size() > top_k) cloud.resize(top_k);
  }
  return clouds;
}

std::vector<CloudEntry> community_hashtag_cloud(std::span<const InteractionRecord> records,
                                                const std::vector<std::vector<std::string>>& communities,
                                                std::size_t which, std::size_t top_k) {
  return hashtag_clouds(records, communities, top_k).at(which);
}

void write_shift(std::ostream& out, const std::vector<ShiftEntry>& entries) {
  out << "rank,token,contribution\n";
  for (std::size_t i = 0; i < entries.size(); ++i)
    out << i + 1 << ',' << csv_cell(entries[i].token) << ',' << format_fixed(entries[i].contribution, 6) << '\n';
}

void write_cloud(std::ostream& out, const std::vector<CloudEntry>& entries) {
  out << "rank,hashtag,weight\n";
  for (std::size_t i = 0; i < entries.size(); ++i)
    out << i + 1 << ',' << csv_cell(entries[i].hashtag) << ',' << format_fixed(entries[i].weight, 6) << '\n';
}

}  // namespace coord
