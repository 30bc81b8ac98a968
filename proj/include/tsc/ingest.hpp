#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsc/record.hpp"

namespace tsc::ingest {

struct ParseStats {
  size_t lines = 0;
  size_t parsed = 0;
  size_t malformed = 0;
};

// One record per line (JSON object). Invalid lines are counted and skipped.
std::vector<MessageRecord> parse_records(const std::string& path, ParseStats& stats);
MessageRecord record_from_json_line(const std::string& line);  // throws ParseError
std::string record_to_json_line(const MessageRecord& rec);

// "http://", "https://" or "t.co/" substring, case-insensitive scheme.
bool text_has_url(std::string_view text);

// First-seen record per id wins, input order preserved.
std::vector<MessageRecord> merge_dedup(const std::vector<std::vector<MessageRecord>>& datasets,
                                       size_t* duplicates = nullptr);

// A pattern is a conjunction of atoms; an atom is a word or a prefix
// wildcard ("vaccin*"). A record is retained iff some pattern matches.
struct KeywordPattern {
  struct Atom {
    std::string term;
    bool prefix = false;
  };
  std::vector<Atom> atoms;
  std::string source;  // original pattern text, for reporting
};

std::vector<KeywordPattern> parse_keyword_patterns(const std::vector<std::string>& lines);
std::vector<KeywordPattern> load_keyword_patterns(const std::string& path);
bool pattern_matches(const KeywordPattern& pattern, std::string_view text);
std::vector<MessageRecord> relevance_filter(std::vector<MessageRecord> records,
                                            const std::vector<KeywordPattern>& patterns);

struct LanguageSplit {
  std::vector<MessageRecord> english;
  std::vector<MessageRecord> other;
};

// Routes by the lang field when present, else by the trigram detector.
LanguageSplit language_filter(std::vector<MessageRecord> records);

// Hashtag symbols stripped, URLs removed, @-tokens removed, lowercased,
// whitespace-tokenized.
CleanMessage clean_text(const MessageRecord& rec);

std::vector<std::string> clean_tokens(std::string_view raw_text);

// Clean-corpus JSONL (one CleanMessage per line, plus the state / class
// columns later stages append).
struct CorpusRow {
  CleanMessage msg;
  std::optional<std::string> state;
  std::optional<std::string> msg_class;  // "promotional" / "consumer"
};

std::string corpus_row_to_json(const CorpusRow& row);
CorpusRow corpus_row_from_json(const std::string& line);
std::vector<CorpusRow> read_corpus(const std::string& path);
void write_corpus(const std::string& path, const std::vector<CorpusRow>& rows);

}  // namespace tsc::ingest
