#include "tsc/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "tsc/langdetect.hpp"
#include "tsc/line_reader.hpp"
#include "tsc/util.hpp"

namespace tsc::ingest {

using nlohmann::json;

namespace {

bool detect_retweet(const std::string& text, bool flag) {
  if (flag) return true;
  std::string head = fold(text.substr(0, 4));
  return head.rfind("rt @", 0) == 0 || head.rfind("rt:", 0) == 0;
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(std::string("field not a string: ") + key);
  std::string v = it->get<std::string>();
  if (v.empty()) return std::nullopt;
  return v;
}

bool opt_bool(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return false;
  if (!it->is_boolean()) throw ParseError(std::string("field not a bool: ") + key);
  return it->get<bool>();
}

std::optional<double> opt_number(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw ParseError(std::string("field not a number: ") + key);
  return it->get<double>();
}

}  // namespace

bool text_has_url(std::string_view text) {
  std::string low = fold(text);
  return low.find("http://") != std::string::npos ||
         low.find("https://") != std::string::npos ||
         low.find("t.co/") != std::string::npos;
}

MessageRecord record_from_json_line(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("not a JSON object");

  MessageRecord rec;
  auto id = opt_string(j, "id");
  auto text = opt_string(j, "text");
  auto created = opt_string(j, "created_at");
  if (!id || !text || !created) throw ParseError("missing id/text/created_at");
  rec.id = *id;
  rec.text = *text;
  auto ts = parse_utc_timestamp(*created);
  if (!ts) throw ParseError("bad created_at: " + *created);
  rec.created_at = *ts;

  rec.lang = opt_string(j, "lang");
  rec.latitude = opt_number(j, "latitude");
  rec.longitude = opt_number(j, "longitude");
  if (rec.latitude.has_value() != rec.longitude.has_value())
    throw ParseError("latitude/longitude must come as a pair");
  if (rec.latitude &&
      (*rec.latitude < -90.0 || *rec.latitude > 90.0 || *rec.longitude < -180.0 ||
       *rec.longitude > 180.0)) {
    throw ParseError("coordinates out of range");
  }
  rec.place_name = opt_string(j, "place_name");
  rec.user_location = opt_string(j, "user_location");
  rec.is_quote = opt_bool(j, "is_quote");
  rec.is_retweet = detect_retweet(rec.text, opt_bool(j, "is_retweet"));

  bool urls_field = false;
  if (auto it = j.find("urls"); it != j.end() && it->is_array() && !it->empty())
    urls_field = true;
  rec.has_url = urls_field || text_has_url(rec.text);

  if (auto src = opt_string(j, "source")) rec.source_tag = *src;
  return rec;
}

std::string record_to_json_line(const MessageRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["text"] = rec.text;
  j["created_at"] = format_utc_timestamp(rec.created_at);
  if (rec.lang) j["lang"] = *rec.lang;
  if (rec.latitude) {
    j["latitude"] = *rec.latitude;
    j["longitude"] = *rec.longitude;
  }
  if (rec.place_name) j["place_name"] = *rec.place_name;
  if (rec.user_location) j["user_location"] = *rec.user_location;
  if (rec.is_quote) j["is_quote"] = true;
  if (rec.is_retweet) j["is_retweet"] = true;
  if (!rec.source_tag.empty()) j["source"] = rec.source_tag;
  return j.dump();
}

std::vector<MessageRecord> parse_records(const std::string& path, ParseStats& stats) {
  std::vector<MessageRecord> out;
  LineReader reader(path);
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    ++stats.lines;
    try {
      out.push_back(record_from_json_line(line));
      ++stats.parsed;
    } catch (const ParseError&) {
      ++stats.malformed;
    }
  }
  return out;
}

std::vector<MessageRecord> merge_dedup(const std::vector<std::vector<MessageRecord>>& datasets,
                                       size_t* duplicates) {
  size_t total = 0;
  for (const auto& d : datasets) total += d.size();
  std::vector<MessageRecord> out;
  out.reserve(total);
  std::unordered_set<std::string> seen;
  seen.reserve(total * 2);
  size_t dup = 0;
  for (const auto& d : datasets) {
    for (const auto& rec : d) {
      if (seen.insert(rec.id).second) {
        out.push_back(rec);
      } else {
        ++dup;
      }
    }
  }
  if (duplicates) *duplicates = dup;
  return out;
}

std::vector<KeywordPattern> parse_keyword_patterns(const std::vector<std::string>& lines) {
  std::vector<KeywordPattern> out;
  for (const auto& raw : lines) {
    std::string line = std::string(trim(raw));
    if (line.empty() || line[0] == '#') continue;
    KeywordPattern p;
    p.source = line;
    for (auto piece : split(line, '+')) {
      std::string atom = std::string(trim(piece));
      if (atom.empty()) throw ConfigError("empty atom in keyword pattern: " + line);
      KeywordPattern::Atom a;
      a.prefix = atom.back() == '*';
      if (a.prefix) atom.pop_back();
      a.term = fold(atom);
      if (a.term.empty()) throw ConfigError("empty term in keyword pattern: " + line);
      p.atoms.push_back(std::move(a));
    }
    if (p.atoms.empty()) throw ConfigError("pattern without atoms: " + line);
    out.push_back(std::move(p));
  }
  if (out.empty()) throw ConfigError("keyword list is empty");
  return out;
}

std::vector<KeywordPattern> load_keyword_patterns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open keyword file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return parse_keyword_patterns(lines);
}

bool pattern_matches(const KeywordPattern& pattern, std::string_view text) {
  auto words = words_of(text);
  for (const auto& atom : pattern.atoms) {
    bool hit = false;
    for (const auto& w : words) {
      if (atom.prefix ? w.rfind(atom.term, 0) == 0 : w == atom.term) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<MessageRecord> relevance_filter(std::vector<MessageRecord> records,
                                            const std::vector<KeywordPattern>& patterns) {
  std::vector<MessageRecord> out;
  out.reserve(records.size());
  for (auto& rec : records) {
    for (const auto& p : patterns) {
      if (pattern_matches(p, rec.text)) {
        out.push_back(std::move(rec));
        break;
      }
    }
  }
  return out;
}

LanguageSplit language_filter(std::vector<MessageRecord> records) {
  LanguageSplit split;
  for (auto& rec : records) {
    bool english;
    if (rec.lang && !rec.lang->empty()) {
      english = fold(*rec.lang) == "en";
    } else {
      english = langdetect::is_english(rec.text);
    }
    (english ? split.english : split.other).push_back(std::move(rec));
  }
  return split;
}

std::vector<std::string> clean_tokens(std::string_view raw_text) {
  // Cut URL spans first (scheme or t.co shortener up to the next whitespace),
  // then handle the remaining text token by token.
  std::string text(raw_text);
  std::string low = fold(text);
  std::string kept;
  kept.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    bool url = low.compare(i, 7, "http://") == 0 ||
               low.compare(i, 8, "https://") == 0 ||
               low.compare(i, 5, "t.co/") == 0;
    if (url) {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      kept.push_back(' ');
      continue;
    }
    kept.push_back(text[i]);
    ++i;
  }

  std::vector<std::string> tokens;
  size_t pos = 0;
  while (pos < kept.size()) {
    while (pos < kept.size() && std::isspace(static_cast<unsigned char>(kept[pos]))) ++pos;
    size_t start = pos;
    while (pos < kept.size() && !std::isspace(static_cast<unsigned char>(kept[pos]))) ++pos;
    if (start == pos) break;
    std::string tok = kept.substr(start, pos - start);
    if (tok.find('@') != std::string::npos) continue;  // mentions and emails
    std::string out;
    out.reserve(tok.size());
    for (char c : tok) {
      if (c == '#') continue;  // keep the tag text, drop the symbol
      out.push_back(ascii_lower(c));
    }
    if (!out.empty()) tokens.push_back(std::move(out));
  }
  return tokens;
}

CleanMessage clean_text(const MessageRecord& rec) {
  CleanMessage msg;
  msg.id = rec.id;
  msg.tokens = clean_tokens(rec.text);
  msg.month_key = month_key_of(rec.created_at);
  msg.created_at = rec.created_at;
  msg.has_url = rec.has_url;
  msg.is_quote = rec.is_quote;
  msg.is_retweet = rec.is_retweet;
  msg.latitude = rec.latitude;
  msg.longitude = rec.longitude;
  msg.place_name = rec.place_name;
  msg.user_location = rec.user_location;
  msg.source_tag = rec.source_tag;
  msg.empty_after_clean = msg.tokens.empty();
  return msg;
}

std::string corpus_row_to_json(const CorpusRow& row) {
  json j;
  j["id"] = row.msg.id;
  j["tokens"] = row.msg.tokens;
  j["month"] = row.msg.month_key;
  j["created_at"] = format_utc_timestamp(row.msg.created_at);
  if (row.msg.has_url) j["has_url"] = true;
  if (row.msg.is_quote) j["is_quote"] = true;
  if (row.msg.is_retweet) j["is_retweet"] = true;
  if (row.msg.latitude) {
    j["latitude"] = *row.msg.latitude;
    j["longitude"] = *row.msg.longitude;
  }
  if (row.msg.place_name) j["place_name"] = *row.msg.place_name;
  if (row.msg.user_location) j["user_location"] = *row.msg.user_location;
  if (!row.msg.source_tag.empty()) j["source"] = row.msg.source_tag;
  if (row.state) j["state"] = *row.state;
  if (row.msg_class) j["class"] = *row.msg_class;
  return j.dump();
}

CorpusRow corpus_row_from_json(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("bad corpus row");
  CorpusRow row;
  auto id = opt_string(j, "id");
  auto month = opt_string(j, "month");
  auto created = opt_string(j, "created_at");
  if (!id || !month || !created) throw ParseError("corpus row missing id/month/created_at");
  row.msg.id = *id;
  row.msg.month_key = *month;
  auto ts = parse_utc_timestamp(*created);
  if (!ts) throw ParseError("corpus row bad created_at");
  row.msg.created_at = *ts;
  auto it = j.find("tokens");
  if (it == j.end() || !it->is_array()) throw ParseError("corpus row missing tokens");
  for (const auto& t : *it) {
    if (!t.is_string()) throw ParseError("corpus token not a string");
    row.msg.tokens.push_back(t.get<std::string>());
  }
  row.msg.has_url = opt_bool(j, "has_url");
  row.msg.is_quote = opt_bool(j, "is_quote");
  row.msg.is_retweet = opt_bool(j, "is_retweet");
  row.msg.latitude = opt_number(j, "latitude");
  row.msg.longitude = opt_number(j, "longitude");
  row.msg.place_name = opt_string(j, "place_name");
  row.msg.user_location = opt_string(j, "user_location");
  if (auto src = opt_string(j, "source")) row.msg.source_tag = *src;
  row.msg.empty_after_clean = row.msg.tokens.empty();
  row.state = opt_string(j, "state");
  row.msg_class = opt_string(j, "class");
  return row;
}

std::vector<CorpusRow> read_corpus(const std::string& path) {
  std::vector<CorpusRow> rows;
  LineReader reader(path);
  std::string line;
  while (reader.next(line)) {
    if (trim(line).empty()) continue;
    rows.push_back(corpus_row_from_json(line));
  }
  return rows;
}

void write_corpus(const std::string& path, const std::vector<CorpusRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus: " + path);
  for (const auto& row : rows) {
    out << corpus_row_to_json(row) << '\n';
  }
  if (!out) throw Error("short write: " + path);
}

}  // namespace tsc::ingest
