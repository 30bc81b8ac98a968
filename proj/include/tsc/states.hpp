#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace tsc {

struct StateInfo {
  const char* code;
  const char* name;
};

// 50 states plus DC, ordered by code.
inline constexpr std::array<StateInfo, 51> kStates = {{
    {"AK", "alaska"},        {"AL", "alabama"},       {"AR", "arkansas"},
    {"AZ", "arizona"},       {"CA", "california"},    {"CO", "colorado"},
    {"CT", "connecticut"},   {"DC", "district of columbia"},
    {"DE", "delaware"},      {"FL", "florida"},       {"GA", "georgia"},
    {"HI", "hawaii"},        {"IA", "iowa"},          {"ID", "idaho"},
    {"IL", "illinois"},      {"IN", "indiana"},       {"KS", "kansas"},
    {"KY", "kentucky"},      {"LA", "louisiana"},     {"MA", "massachusetts"},
    {"MD", "maryland"},      {"ME", "maine"},         {"MI", "michigan"},
    {"MN", "minnesota"},     {"MO", "missouri"},      {"MS", "mississippi"},
    {"MT", "montana"},       {"NC", "north carolina"},{"ND", "north dakota"},
    {"NE", "nebraska"},      {"NH", "new hampshire"}, {"NJ", "new jersey"},
    {"NM", "new mexico"},    {"NV", "nevada"},        {"NY", "new york"},
    {"OH", "ohio"},          {"OK", "oklahoma"},      {"OR", "oregon"},
    {"PA", "pennsylvania"},  {"RI", "rhode island"},  {"SC", "south carolina"},
    {"SD", "south dakota"},  {"TN", "tennessee"},     {"TX", "texas"},
    {"UT", "utah"},          {"VA", "virginia"},      {"VT", "vermont"},
    {"WA", "washington"},    {"WI", "wisconsin"},     {"WV", "west virginia"},
    {"WY", "wyoming"},
}};

inline bool valid_state_code(std::string_view code) {
  for (const auto& s : kStates)
    if (code == s.code) return true;
  return false;
}

inline std::optional<std::string> state_by_code_folded(std::string_view folded) {
  if (folded.size() != 2) return std::nullopt;
  char a = char(folded[0] - 'a' + 'A'), b = char(folded[1] - 'a' + 'A');
  for (const auto& s : kStates)
    if (s.code[0] == a && s.code[1] == b) return std::string(s.code);
  return std::nullopt;
}

inline std::optional<std::string> state_by_name_folded(std::string_view folded) {
  for (const auto& s : kStates)
    if (folded == s.name) return std::string(s.code);
  if (folded == "washington dc" || folded == "washington d c") return std::string("DC");
  return std::nullopt;
}

}  // namespace tsc
