#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tsc {

// One raw social-media post, reduced to the fields the pipeline uses.
struct MessageRecord {
  std::string id;
  std::string text;
  std::optional<std::string> lang;
  int64_t created_at = 0;  // unix seconds, UTC
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<std::string> place_name;
  std::optional<std::string> user_location;
  bool is_quote = false;
  bool is_retweet = false;  // metadata flag OR textual "rt" prefix
  bool has_url = false;     // derived from raw text / url entities
  std::string source_tag;
};

// Tokenized message after cleaning; carries the flags later stages need.
struct CleanMessage {
  std::string id;
  std::vector<std::string> tokens;
  std::string month_key;  // "YYYY-MM", UTC
  int64_t created_at = 0;
  bool has_url = false;
  bool is_quote = false;
  bool is_retweet = false;
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<std::string> place_name;
  std::optional<std::string> user_location;
  std::string source_tag;
  bool empty_after_clean = false;
};

// Strict "YYYY-MM-DDTHH:MM:SSZ" (or with +00:00 / trailing fraction) parser.
std::optional<int64_t> parse_utc_timestamp(const std::string& s);
std::string format_utc_timestamp(int64_t t);
std::string month_key_of(int64_t t);

}  // namespace tsc
