#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "tsc/ingest.hpp"
#include "tsc/langdetect.hpp"
#include "tsc/record.hpp"
#include "tsc/util.hpp"

using namespace tsc;

namespace {

const std::string kFixtures = std::string(TSC_SOURCE_DIR) + "/tests/fixtures";

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

MessageRecord make_record(const std::string& id, const std::string& text) {
  MessageRecord r;
  r.id = id;
  r.text = text;
  r.created_at = *parse_utc_timestamp("2019-06-15T12:00:00Z");
  return r;
}

std::string record_line(const std::string& id, const std::string& text,
                        const std::string& extra = "") {
  std::string line = "{\"id\":\"" + id + "\",\"text\":\"" + text +
                     "\",\"created_at\":\"2019-06-15T12:00:00Z\"";
  if (!extra.empty()) line += "," + extra;
  line += "}";
  return line;
}

}  // namespace

TEST_CASE("trigram detector: labeled fixture accuracy per language") {
  std::ifstream in(kFixtures + "/lang_sentences.tsv");
  REQUIRE(in.good());
  std::map<std::string, int> total, correct, english_correct;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    std::string lang = line.substr(0, tab);
    std::string text = line.substr(tab + 1);
    ++total[lang];
    auto det = langdetect::detect(text);
    if (det.lang == lang) ++correct[lang];
    if (langdetect::is_english(text) == (lang == "en")) ++english_correct[lang];
  }
  REQUIRE(total.size() == 5);
  for (const auto& [lang, n] : total) {
    CAPTURE(lang);
    REQUIRE(n >= 200);  // the fixture contract
    double lang_acc = double(correct[lang]) / n;
    double route_acc = double(english_correct[lang]) / n;
    CHECK(lang_acc >= 0.90);
    CHECK(route_acc >= 0.95);
  }
}

TEST_CASE("language_filter: field routing and detector fallback") {
  std::vector<MessageRecord> records;
  auto en = make_record("1", "does not matter, lang field wins");
  en.lang = "en";
  auto es = make_record("2", "this english text is routed out by its lang field");
  es.lang = "es";
  auto none = make_record(
      "3", "la vacuna contra el virus del papiloma humano es segura y eficaz");
  auto none_en = make_record(
      "4", "my doctor says the new treatment works well for most patients");
  records = {en, es, none, none_en};

  auto split = ingest::language_filter(records);
  CHECK(split.english.size() + split.other.size() == records.size());
  std::vector<std::string> english_ids, other_ids;
  for (const auto& r : split.english) english_ids.push_back(r.id);
  for (const auto& r : split.other) other_ids.push_back(r.id);
  CHECK(english_ids == std::vector<std::string>{"1", "4"});
  CHECK(other_ids == std::vector<std::string>{"2", "3"});
}

TEST_CASE("merge_dedup: first seen wins, exact counts, idempotent") {
  std::vector<MessageRecord> a = {make_record("x", "first"), make_record("y", "second")};
  std::vector<MessageRecord> b = {make_record("x", "shadowed"), make_record("z", "third")};
  size_t dups = 0;
  auto merged = ingest::merge_dedup({a, b}, &dups);
  CHECK(dups == 1);
  REQUIRE(merged.size() == 3);
  CHECK(merged[0].id == "x");
  CHECK(merged[0].text == "first");  // first occurrence retained
  CHECK(merged[1].id == "y");
  CHECK(merged[2].id == "z");

  size_t dups2 = 0;
  auto again = ingest::merge_dedup({merged}, &dups2);
  CHECK(dups2 == 0);
  REQUIRE(again.size() == merged.size());
  for (size_t i = 0; i < merged.size(); ++i) {
    CHECK(again[i].id == merged[i].id);
    CHECK(again[i].text == merged[i].text);
  }
}

TEST_CASE("relevance_filter: pattern semantics") {
  auto patterns = ingest::parse_keyword_patterns(
      {"# comment line", "hpv + vaccin*", "gardasil"});
  REQUIRE(patterns.size() == 2);

  auto retained = [&](const std::string& text) {
    std::vector<MessageRecord> in = {make_record("t", text)};
    return ingest::relevance_filter(in, patterns).size() == 1;
  };
  CHECK(retained("the hpv vaccination drive"));
  CHECK(retained("Gardasil works"));
  CHECK_FALSE(retained("flu season"));
  // conjunction needs both atoms
  CHECK_FALSE(retained("hpv awareness month"));
  CHECK(retained("HPV vaccine day"));
  // word-boundary: 'hpv' inside a longer word does not count
  CHECK_FALSE(retained("thpv vaccination"));
  // prefix atom matches longer words only from the start
  CHECK_FALSE(retained("hpv avaccin"));  // 'avaccin' does not start with 'vaccin'
}

TEST_CASE("relevance_filter: adding a pattern never shrinks the retained set") {
  std::vector<MessageRecord> records;
  const char* texts[] = {
      "hpv vaccine talk",       "cervical cancer screening", "gardasil dose two",
      "random chatter about tv", "papillomavirus facts",      "the weather is nice",
      "vaccination for teens",   "hpv and cancer prevention", "sports news today",
  };
  int i = 0;
  for (const char* t : texts) records.push_back(make_record(std::to_string(i++), t));

  auto p1 = ingest::parse_keyword_patterns({"hpv"});
  auto p2 = ingest::parse_keyword_patterns({"hpv", "gardasil"});
  auto p3 = ingest::parse_keyword_patterns({"hpv", "gardasil", "vaccin*"});

  auto ids = [&](const std::vector<ingest::KeywordPattern>& p) {
    std::vector<std::string> out;
    for (const auto& r : ingest::relevance_filter(records, p)) out.push_back(r.id);
    return out;
  };
  auto s1 = ids(p1), s2 = ids(p2), s3 = ids(p3);
  CHECK(s1.size() <= s2.size());
  CHECK(s2.size() <= s3.size());
  for (const auto& id : s1) CHECK(std::find(s2.begin(), s2.end(), id) != s2.end());
  for (const auto& id : s2) CHECK(std::find(s3.begin(), s3.end(), id) != s3.end());
}

TEST_CASE("keyword patterns: empty list and empty atoms are fatal") {
  CHECK_THROWS_AS(ingest::parse_keyword_patterns({}), ConfigError);
  CHECK_THROWS_AS(ingest::parse_keyword_patterns({"# only comments"}), ConfigError);
  CHECK_THROWS_AS(ingest::parse_keyword_patterns({"hpv + "}), ConfigError);
}

TEST_CASE("clean_text: hashtags, urls, mentions") {
  auto tokens = [](const std::string& text) {
    return ingest::clean_tokens(text);
  };
  CHECK(tokens("#HPV is real") == std::vector<std::string>{"hpv", "is", "real"});
  CHECK(tokens("@user1 thanks") == std::vector<std::string>{"thanks"});
  CHECK(tokens("see https://t.co/xxx now") == std::vector<std::string>{"see", "now"});
  CHECK(tokens("check http://example.com/page?a=1 out") ==
        std::vector<std::string>{"check", "out"});
  CHECK(tokens("short t.co/abc123 link") == std::vector<std::string>{"short", "link"});
  CHECK(tokens("Mixed #Case TEXT") == std::vector<std::string>{"mixed", "case", "text"});
  CHECK(tokens("@only @mentions @here").empty());

  auto rec = make_record("1", "@user1 thanks");
  auto clean = ingest::clean_text(rec);
  CHECK(clean.tokens == std::vector<std::string>{"thanks"});
  CHECK(clean.month_key == "2019-06");
  CHECK_FALSE(clean.empty_after_clean);

  auto rec2 = make_record("2", "https://t.co/onlyurl");
  auto clean2 = ingest::clean_text(rec2);
  CHECK(clean2.tokens.empty());
  CHECK(clean2.empty_after_clean);
}

TEST_CASE("record parsing: required fields, types, url detection") {
  auto r = ingest::record_from_json_line(record_line(
      "42", "hello world", "\"lang\":\"en\",\"urls\":[\"https://x.test/a\"],"
      "\"is_quote\":true,\"latitude\":29.65,\"longitude\":-82.32"));
  CHECK(r.id == "42");
  CHECK(r.text == "hello world");
  CHECK(r.lang == "en");
  CHECK(r.has_url);
  CHECK(r.is_quote);
  CHECK_FALSE(r.is_retweet);
  REQUIRE(r.latitude);
  CHECK(*r.latitude == doctest::Approx(29.65));

  // URL in text counts even without the urls field
  auto r2 = ingest::record_from_json_line(record_line("43", "go https://t.co/z now"));
  CHECK(r2.has_url);
  auto r3 = ingest::record_from_json_line(record_line("44", "no links here"));
  CHECK_FALSE(r3.has_url);

  // retweet marker in text counts
  auto r4 = ingest::record_from_json_line(record_line("45", "RT @someone: hpv news"));
  CHECK(r4.is_retweet);

  CHECK_THROWS_AS(ingest::record_from_json_line("{\"text\":\"no id\"}"), ParseError);
  CHECK_THROWS_AS(ingest::record_from_json_line("not json at all"), ParseError);
  CHECK_THROWS_AS(ingest::record_from_json_line(record_line("46", "x") + "trailing"),
                  ParseError);
  // latitude without longitude is malformed
  CHECK_THROWS_AS(
      ingest::record_from_json_line(record_line("47", "x", "\"latitude\":10.0")),
      ParseError);
  // out-of-range coordinates are malformed
  CHECK_THROWS_AS(ingest::record_from_json_line(record_line(
                      "48", "x", "\"latitude\":95.0,\"longitude\":0.0")),
                  ParseError);
}

TEST_CASE("parse_records: plain and gzip files, malformed counting") {
  const std::string plain = temp_path("tsc_ingest_plain.jsonl");
  {
    std::ofstream f(plain, std::ios::binary);
    f << record_line("1", "alpha") << "\n";
    f << "garbage line\n";
    f << record_line("2", "beta") << "\n";
    f << "\n";  // blank lines are skipped, not malformed
  }
  ingest::ParseStats st;
  auto recs = ingest::parse_records(plain, st);
  REQUIRE(recs.size() == 2);
  CHECK(st.parsed == 2);
  CHECK(st.malformed == 1);

  const std::string gz = temp_path("tsc_ingest_gz.jsonl.gz");
  {
    gzFile f = gzopen(gz.c_str(), "wb");
    REQUIRE(f != nullptr);
    std::string content = record_line("10", "gzip alpha") + "\n" +
                          record_line("11", "gzip beta") + "\n";
    REQUIRE(gzwrite(f, content.data(), unsigned(content.size())) ==
            int(content.size()));
    gzclose(f);
  }
  ingest::ParseStats st2;
  auto recs2 = ingest::parse_records(gz, st2);
  REQUIRE(recs2.size() == 2);
  CHECK(recs2[0].id == "10");
  CHECK(recs2[1].text == "gzip beta");

  std::remove(plain.c_str());
  std::remove(gz.c_str());
}

TEST_CASE("corpus rows round-trip through jsonl") {
  ingest::CorpusRow row;
  row.msg.id = "abc";
  row.msg.tokens = {"hpv", "vaccine"};
  row.msg.month_key = "2019-06";
  row.msg.created_at = *parse_utc_timestamp("2019-06-15T12:00:00Z");
  row.msg.has_url = true;
  row.msg.is_quote = false;
  row.msg.is_retweet = true;
  row.msg.latitude = 29.65;
  row.msg.longitude = -82.32;
  row.msg.user_location = "Gainesville, FL";
  row.msg.source_tag = "test";
  row.state = "FL";
  row.msg_class = "promotional";

  const std::string path = temp_path("tsc_corpus_roundtrip.jsonl");
  ingest::write_corpus(path, {row});
  auto rows = ingest::read_corpus(path);
  REQUIRE(rows.size() == 1);
  const auto& r = rows[0];
  CHECK(r.msg.id == "abc");
  CHECK(r.msg.tokens == row.msg.tokens);
  CHECK(r.msg.month_key == "2019-06");
  CHECK(r.msg.has_url);
  CHECK(r.msg.is_retweet);
  REQUIRE(r.msg.latitude);
  CHECK(*r.msg.latitude == doctest::Approx(29.65));
  REQUIRE(r.msg.user_location);
  CHECK(*r.msg.user_location == "Gainesville, FL");
  REQUIRE(r.state);
  CHECK(*r.state == "FL");
  REQUIRE(r.msg_class);
  CHECK(*r.msg_class == "promotional");
  std::remove(path.c_str());
}

TEST_CASE("timestamps: parse, format, month keys") {
  auto parsed = parse_utc_timestamp("2019-03-07T12:30:45Z");
  REQUIRE(parsed);
  int64_t t = *parsed;
  CHECK(format_utc_timestamp(t) == "2019-03-07T12:30:45Z");
  CHECK(month_key_of(t) == "2019-03");
  CHECK(parse_utc_timestamp("2019-03-07 12:30:45Z") == parsed);
  CHECK(parse_utc_timestamp("2019-03-07T12:30:45+00:00") == parsed);
  CHECK(parse_utc_timestamp("2019-03-07T12:30:45.123Z") == parsed);  // fraction truncated

  // leap day valid in 2020, invalid in 2019
  CHECK(parse_utc_timestamp("2020-02-29T00:00:00Z").has_value());
  CHECK_FALSE(parse_utc_timestamp("2019-02-29T00:00:00Z").has_value());
  CHECK_FALSE(parse_utc_timestamp("2019-13-01T00:00:00Z").has_value());
  CHECK_FALSE(parse_utc_timestamp("2019-00-10T00:00:00Z").has_value());
  CHECK_FALSE(parse_utc_timestamp("nonsense").has_value());

  // epoch round trips across month boundaries
  CHECK(month_key_of(*parse_utc_timestamp("2019-12-31T23:59:59Z")) == "2019-12");
  CHECK(month_key_of(*parse_utc_timestamp("2020-01-01T00:00:00Z")) == "2020-01");
}

TEST_CASE("words_of: maximal alphanumeric runs, folded") {
  CHECK(words_of("the HPV-vaccine works!") ==
        std::vector<std::string>{"the", "hpv", "vaccine", "works"});
  CHECK(words_of("") == std::vector<std::string>{});
  CHECK(words_of("a1b2 c3") == std::vector<std::string>{"a1b2", "c3"});
}
