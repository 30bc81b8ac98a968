#include "tsc/langdetect.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "tsc/util.hpp"

namespace tsc::langdetect {

// Training text per language lives in langdetect_profiles.cpp.
const char* profile_text(size_t index);
const char* profile_lang(size_t index);
size_t profile_count();

namespace {

constexpr size_t kProfileSize = 400;
constexpr double kUnknownThreshold = 0.82;

// Lowercase, map non-word bytes to '_', collapse '_' runs. Bytes >= 0x80
// (UTF-8 continuation or lead) pass through; diacritics carry real signal.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('_');
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    char mapped;
    if ((c >= 'a' && c <= 'z') || u >= 0x80) mapped = c;
    else if (c >= 'A' && c <= 'Z') mapped = ascii_lower(c);
    else mapped = '_';
    if (mapped == '_' && out.back() == '_') continue;
    out.push_back(mapped);
  }
  if (out.back() != '_') out.push_back('_');
  return out;
}

using Trigram = std::array<char, 3>;
struct TrigramHash {
  size_t operator()(const Trigram& t) const {
    return size_t(fnv1a64(t.data(), 3));
  }
};
using CountMap = std::unordered_map<Trigram, uint32_t, TrigramHash>;

CountMap count_trigrams(std::string_view text) {
  CountMap counts;
  std::string norm = normalize(text);
  if (norm.size() < 3) return counts;
  for (size_t i = 0; i + 3 <= norm.size(); ++i) {
    Trigram t{norm[i], norm[i + 1], norm[i + 2]};
    if (t[0] == '_' && t[1] == '_') continue;
    ++counts[t];
  }
  return counts;
}

// Rank by frequency, ties broken lexicographically, keep the top N.
std::vector<Trigram> ranked_profile(const CountMap& counts, size_t n) {
  std::vector<std::pair<Trigram, uint32_t>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (items.size() > n) items.resize(n);
  std::vector<Trigram> out;
  out.reserve(items.size());
  for (auto& it : items) out.push_back(it.first);
  return out;
}

struct LanguageProfile {
  std::string lang;
  std::unordered_map<Trigram, uint32_t, TrigramHash> rank;  // trigram -> rank
};

const std::vector<LanguageProfile>& profiles() {
  static std::vector<LanguageProfile> cached = [] {
    std::vector<LanguageProfile> out;
    for (size_t i = 0; i < profile_count(); ++i) {
      LanguageProfile p;
      p.lang = profile_lang(i);
      auto ranked = ranked_profile(count_trigrams(profile_text(i)), kProfileSize);
      for (size_t r = 0; r < ranked.size(); ++r) p.rank[ranked[r]] = uint32_t(r);
      out.push_back(std::move(p));
    }
    return out;
  }();
  return cached;
}

}  // namespace

std::vector<std::string> profile_languages() {
  std::vector<std::string> out;
  for (const auto& p : profiles()) out.push_back(p.lang);
  return out;
}

Detection detect(std::string_view text) {
  auto counts = count_trigrams(text);
  if (counts.empty()) return {"und", 1.0};
  auto doc = ranked_profile(counts, kProfileSize);
  Detection best{"und", 1.0};
  for (const auto& p : profiles()) {
    // Cavnar–Trenkle out-of-place measure, normalized to [0,1].
    uint64_t total = 0;
    for (size_t r = 0; r < doc.size(); ++r) {
      auto it = p.rank.find(doc[r]);
      uint64_t penalty = kProfileSize;
      if (it != p.rank.end()) {
        penalty = uint64_t(r > it->second ? r - it->second : it->second - r);
        penalty = std::min<uint64_t>(penalty, kProfileSize);
      }
      total += penalty;
    }
    double dist = double(total) / (double(doc.size()) * double(kProfileSize));
    if (dist < best.distance) best = {p.lang, dist};
  }
  if (best.distance > kUnknownThreshold) return {"und", best.distance};
  return best;
}

bool is_english(std::string_view text) { return detect(text).lang == "en"; }

}  // namespace tsc::langdetect
