#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tsc/analytics.hpp"
#include "tsc/util.hpp"

using namespace tsc;

namespace {

analytics::MessageView view(const std::string& id, const std::string& month,
                            const char* state, const std::string& cls,
                            std::vector<int32_t> topics) {
  analytics::MessageView v;
  v.id = id;
  v.month_key = month;
  if (state) v.state = state;
  v.msg_class = cls;
  v.topics = std::move(topics);
  return v;
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("join_corpus: assignment lookup, exclusions, missing assignments") {
  std::vector<ingest::CorpusRow> rows(3);
  rows[0].msg.id = "m1";
  rows[0].msg.month_key = "2019-03";
  rows[0].state = "CA";
  rows[0].msg_class = "consumer";
  rows[1].msg.id = "m2";
  rows[1].msg_class = "promotional";
  rows[2].msg.id = "m3";
  rows[2].msg_class = "consumer";

  std::vector<lda::Assignment> assignments = {
      {"m1", {{4, 0.5}, {9, 0.3}, {2, 0.2}}},
      {"m2", {{9, 0.9}}},
  };
  auto views = analytics::join_corpus(rows, assignments, {9});
  REQUIRE(views.size() == 3);
  CHECK(views[0].id == "m1");
  CHECK(views[0].month_key == "2019-03");
  REQUIRE(views[0].state.has_value());
  CHECK(*views[0].state == "CA");
  CHECK(views[0].msg_class == "consumer");
  CHECK(views[0].topics == std::vector<int32_t>{4, 2});  // 9 excluded
  CHECK(views[1].topics.empty());                        // only topic was excluded
  CHECK(views[2].topics.empty());                        // no assignment at all

  std::vector<lda::TopicMeta> meta(2);
  meta[0].topic = 3;
  meta[0].excluded = true;
  meta[1].topic = 5;
  CHECK(analytics::excluded_set(meta) == std::set<int32_t>{3});
}

TEST_CASE("topic shares reproduce the large-corpus arithmetic") {
  // 93,693 consumer messages, 12,500 carrying topic 7 -> 13.34%.
  std::vector<analytics::MessageView> messages;
  messages.reserve(93693);
  for (size_t i = 0; i < 93693; ++i) {
    messages.push_back(view("m" + std::to_string(i), "2019-01", nullptr, "consumer",
                            i < 12500 ? std::vector<int32_t>{7} : std::vector<int32_t>{}));
  }
  auto shares = analytics::topic_shares(messages, "consumer");
  REQUIRE(shares.size() == 1);
  CHECK(shares[0].topic == 7);
  CHECK(shares[0].count == 12500);
  CHECK(std::fabs(shares[0].percentage - 13.34) < 0.005);
}

TEST_CASE("topic shares: per-class filtering, ordering, multi-topic counting") {
  std::vector<analytics::MessageView> messages = {
      view("a", "2019-01", nullptr, "consumer", {1, 2}),
      view("b", "2019-01", nullptr, "consumer", {1}),
      view("c", "2019-01", nullptr, "consumer", {2}),
      view("d", "2019-01", nullptr, "consumer", {3}),
      view("e", "2019-01", nullptr, "promotional", {1, 1, 1}),
  };
  auto shares = analytics::topic_shares(messages, "consumer");
  REQUIRE(shares.size() == 3);
  // Topics 1 and 2 both have 2 of 4 consumer messages; tie broken by index.
  CHECK(shares[0].topic == 1);
  CHECK(shares[0].count == 2);
  CHECK(shares[0].percentage == doctest::Approx(50.0));
  CHECK(shares[1].topic == 2);
  CHECK(shares[2].topic == 3);
  CHECK(shares[2].percentage == doctest::Approx(25.0));

  auto promo = analytics::topic_shares(messages, "promotional");
  REQUIRE(promo.size() == 1);
  CHECK(promo[0].count == 3);  // repeated topic entries all count
  CHECK(analytics::topic_shares({}, "consumer").empty());
}

TEST_CASE("month range densifies gaps and wraps the year") {
  std::vector<analytics::MessageView> messages = {
      view("a", "2019-11", nullptr, "consumer", {}),
      view("b", "2020-02", nullptr, "consumer", {}),
      view("c", "", nullptr, "consumer", {}),  // no timestamp: ignored
  };
  auto months = analytics::month_range(messages);
  CHECK(months == std::vector<std::string>{"2019-11", "2019-12", "2020-01", "2020-02"});
  CHECK(analytics::month_range({}).empty());

  auto series = analytics::monthly_series(messages, 5, "consumer", months);
  CHECK(series.counts == std::vector<double>{0, 0, 0, 0});
  auto totals = analytics::monthly_totals(messages, "consumer", months);
  CHECK(totals.counts == std::vector<double>{1, 0, 0, 1});
}

TEST_CASE("volume correlations on constructed monthly series") {
  // Six months. Topic 1: promotional ramps 1..6, consumer ramps 2..12 (r = 1).
  // Topic 2: promotional ramps 6..1 against consumer 1..6 (r = -1).
  // Topic 3: constant promotional series -> correlation undefined -> dropped.
  std::vector<analytics::MessageView> messages;
  auto add = [&](int month, const std::string& cls, int32_t topic, int count) {
    char key[8];
    std::snprintf(key, sizeof(key), "2019-%02d", month);
    for (int i = 0; i < count; ++i)
      messages.push_back(view("x" + std::to_string(messages.size()), key, nullptr,
                              cls, {topic}));
  };
  for (int mo = 1; mo <= 6; ++mo) {
    add(mo, "promotional", 1, mo);
    add(mo, "consumer", 1, 2 * mo);
    add(mo, "promotional", 2, 7 - mo);
    add(mo, "consumer", 2, mo);
    add(mo, "promotional", 3, 1);
    add(mo, "consumer", 3, 1);
  }
  analytics::PValueOptions popt;
  auto rows = analytics::volume_correlations(messages, false, popt);
  REQUIRE(rows.size() == 2);  // topic 3 dropped: both series constant
  CHECK(rows[0].topic == 1);  // 42 consumer messages beats 21
  CHECK(rows[0].corr.coefficient == 1.0);
  CHECK(rows[0].corr.p_value == 0.0);
  CHECK(rows[0].corr.n == 6);
  CHECK(rows[0].promotional_count == 21);
  CHECK(rows[0].consumer_count == 42);
  size_t promo_total = 21 + 21 + 6, consumer_total = 42 + 21 + 6;
  CHECK(rows[0].promotional_pct ==
        doctest::Approx(100.0 * 21.0 / double(promo_total)));
  CHECK(rows[0].consumer_pct ==
        doctest::Approx(100.0 * 42.0 / double(consumer_total)));
  CHECK(rows[1].topic == 2);
  CHECK(rows[1].corr.coefficient == -1.0);

  // Normalized: topic shares of each month's class volume.
  auto norm = analytics::volume_correlations(messages, true, popt);
  REQUIRE(norm.size() >= 1);
  auto months = analytics::month_range(messages);
  auto promo = analytics::monthly_series(messages, 1, "promotional", months);
  auto ptot = analytics::monthly_totals(messages, "promotional", months);
  auto consumer = analytics::monthly_series(messages, 1, "consumer", months);
  auto ctot = analytics::monthly_totals(messages, "consumer", months);
  std::vector<double> px, cx;
  for (size_t i = 0; i < months.size(); ++i) {
    px.push_back(promo.counts[i] / ptot.counts[i]);
    cx.push_back(consumer.counts[i] / ctot.counts[i]);
  }
  auto want = stats::pearson(px, cx);
  CHECK(norm[0].topic == 1);
  CHECK(norm[0].corr.coefficient == doctest::Approx(want.coefficient).epsilon(1e-14));

  auto path = tmp_path("tsc_volume.csv");
  analytics::write_volume_csv(path, rows);
  std::ifstream in(path);
  std::string header, line1;
  std::getline(in, header);
  std::getline(in, line1);
  CHECK(header ==
        "topic,coefficient,p_value,n,promotional_count,promotional_pct,"
        "consumer_count,consumer_pct");
  CHECK(line1.substr(0, 4) == "1,1,");
  std::remove(path.c_str());
}

TEST_CASE("state distribution: consumer share per state") {
  std::vector<analytics::MessageView> messages;
  // CA: 10 consumer messages, 4 carrying topic 3 -> 0.4 exactly.
  for (int i = 0; i < 10; ++i)
    messages.push_back(view("ca" + std::to_string(i), "2019-01", "CA", "consumer",
                            i < 4 ? std::vector<int32_t>{3} : std::vector<int32_t>{}));
  // TX: consumer messages but none carrying topic 3 -> 0.0, still present.
  for (int i = 0; i < 5; ++i)
    messages.push_back(view("tx" + std::to_string(i), "2019-01", "TX", "consumer", {8}));
  // NY: every message carries it -> 1.0.
  for (int i = 0; i < 3; ++i)
    messages.push_back(view("ny" + std::to_string(i), "2019-01", "NY", "consumer", {3}));
  // Noise that must not participate: promotional in CA, stateless consumer.
  messages.push_back(view("p1", "2019-01", "CA", "promotional", {3}));
  messages.push_back(view("s1", "2019-01", nullptr, "consumer", {3}));

  auto dist = analytics::state_distribution(messages, 3);
  REQUIRE(dist.size() == 3);
  CHECK(dist.at("CA") == 0.4);
  CHECK(dist.at("TX") == 0.0);
  CHECK(dist.at("NY") == 1.0);
}

TEST_CASE("keyword matching: exact words and stem prefixes") {
  std::vector<std::pair<std::string, double>> top = {
      {"oral", 0.1}, {"cancer", 0.09}, {"hpv", 0.08}, {"vaccination", 0.07},
      {"throat", 0.06},
  };
  CHECK(analytics::keywords_match({"hpv", "oral", "cancer"}, top));
  CHECK_FALSE(analytics::keywords_match({"hpv", "anal", "cancer"}, top));
  CHECK(analytics::keywords_match({"vaccin*"}, top));
  CHECK(analytics::keywords_match({"vaccination"}, top));
  CHECK_FALSE(analytics::keywords_match({"vaccine"}, top));  // exact, not prefix
  CHECK(analytics::keywords_match({"HPV", "Oral"}, top));    // folded
  CHECK_FALSE(analytics::keywords_match({}, top));           // empty set matches nothing
  CHECK_FALSE(analytics::keywords_match({"*"}, top));        // bare star is invalid
  CHECK_FALSE(analytics::keywords_match({"thr*", "nothere"}, top));
}

TEST_CASE("keyword map: questions, groups, and exclusions") {
  std::map<int32_t, std::vector<std::pair<std::string, double>>> top_words = {
      {0, {{"hpv", 0.2}, {"vaccine", 0.1}, {"shot", 0.05}}},
      {1, {{"oral", 0.2}, {"cancer", 0.1}, {"hpv", 0.05}}},
      {2, {{"hpv", 0.2}, {"vaccine", 0.1}, {"oral", 0.08}, {"cancer", 0.07}}},
  };
  survey::QuestionGroup g1;
  g1.id = "G1";
  survey::Question q1;
  q1.id = "Q1";
  q1.keywords = {"hpv", "vaccin*"};
  survey::Question q2;
  q2.id = "Q2";
  q2.keywords = {"oral", "cancer"};
  g1.questions = {q1, q2};
  survey::QuestionGroup g2;
  g2.id = "G2";
  survey::Question q3;
  q3.id = "Q3";
  q3.keywords = {"hpv"};
  survey::Question q4;  // no keywords: never matches
  q4.id = "Q4";
  g2.questions = {q3, q4};

  auto matches = analytics::keyword_map(top_words, {g1, g2}, {2});
  // topic 0: Q1 (hpv+vaccin*), Q3 (hpv). topic 1: Q2, Q3. topic 2 excluded.
  REQUIRE(matches.size() == 4);
  auto has = [&](int32_t topic, const std::string& g, const std::string& q) {
    for (const auto& m : matches)
      if (m.topic == topic && m.group == g && m.question == q) return true;
    return false;
  };
  CHECK(has(0, "G1", "Q1"));
  CHECK(has(0, "G2", "Q3"));
  CHECK(has(1, "G1", "Q2"));
  CHECK(has(1, "G2", "Q3"));
}

TEST_CASE("strength bands at their boundaries") {
  CHECK(std::string(analytics::strength_band(0.0)) == "negligible");
  CHECK(std::string(analytics::strength_band(0.3)) == "negligible");
  CHECK(std::string(analytics::strength_band(0.31)) == "low");
  CHECK(std::string(analytics::strength_band(0.5)) == "low");
  CHECK(std::string(analytics::strength_band(0.51)) == "moderate");
  CHECK(std::string(analytics::strength_band(0.7)) == "moderate");
  CHECK(std::string(analytics::strength_band(0.71)) == "high");
  CHECK(std::string(analytics::strength_band(-0.9)) == "high");
  CHECK(std::string(analytics::strength_band(-0.2)) == "negligible");
}

TEST_CASE("correlation report: scopes, exclusions, significance, ordering") {
  // Five states; topic 0's consumer share rises with G1's estimate.
  const char* states[] = {"CA", "FL", "NY", "TX", "WA"};
  std::vector<analytics::MessageView> messages;
  for (int s = 0; s < 5; ++s) {
    for (int i = 0; i < 10; ++i) {
      bool carries0 = i < 2 * s;  // share 0.0, 0.2, 0.4, 0.6, 0.8
      bool carries1 = i < 10 - 2 * s;
      std::vector<int32_t> topics;
      if (carries0) topics.push_back(0);
      if (carries1) topics.push_back(1);
      topics.push_back(7);  // excluded everywhere below
      messages.push_back(view("m" + std::to_string(messages.size()), "2019-01",
                              states[s], "consumer", std::move(topics)));
    }
  }

  std::map<int32_t, std::vector<std::pair<std::string, double>>> top_words = {
      {0, {{"hpv", 0.2}, {"vaccine", 0.1}}},
      {1, {{"screening", 0.2}}},
      {7, {{"hpv", 0.2}, {"vaccine", 0.15}}},
  };
  survey::QuestionGroup g1;
  g1.id = "G1";
  g1.construct = "awareness";
  survey::Question q1;
  q1.id = "Q1";
  q1.interested = {"Yes"};
  q1.keywords = {"hpv", "vaccine"};
  g1.questions = {q1};
  survey::QuestionGroup g2;
  g2.id = "G2";
  g2.construct = "behavior";
  survey::Question q2;
  q2.id = "Q2";
  q2.interested = {"Yes"};
  q2.keywords = {"screening"};
  g2.questions = {q2};

  // G1 estimates increase exactly with topic 0's share; G2 moves oppositely.
  std::map<std::string, std::map<std::string, double>> estimates = {
      {"G1", {{"CA", 0.1}, {"FL", 0.2}, {"NY", 0.3}, {"TX", 0.4}, {"WA", 0.5}}},
      {"G2", {{"CA", 0.5}, {"FL", 0.4}, {"NY", 0.3}, {"TX", 0.2}, {"WA", 0.1}}},
  };

  std::vector<lda::TopicMeta> meta(3);
  meta[0].topic = 0;
  meta[1].topic = 1;
  meta[1].constructs = {"behavior"};
  meta[2].topic = 7;
  meta[2].excluded = true;

  analytics::PValueOptions popt;
  auto rows = analytics::correlation_report(messages, meta, top_words, {g1, g2},
                                            estimates, popt);
  // Expected rows: keyword scope (0,G1) and (1,G2) — "screening" matches Q2 —
  // plus construct scope (1,G1) and (1,G2). Topic 7 is excluded even though
  // its words match G1's keywords.
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.topic != 7);

  auto find_row = [&](int32_t topic, const std::string& group,
                      const std::string& scope) -> const analytics::ReportRow* {
    for (const auto& r : rows)
      if (r.topic == topic && r.group == group && r.scope == scope) return &r;
    return nullptr;
  };
  const auto* kw = find_row(0, "G1", "keyword");
  REQUIRE(kw != nullptr);
  CHECK(kw->corr.coefficient == 1.0);
  CHECK(kw->corr.p_value == 0.0);
  CHECK(kw->significant);
  CHECK(kw->strength == "high");
  CHECK(kw->corr.n == 5);
  CHECK(kw->construct.empty());

  const auto* c1 = find_row(1, "G1", "construct");
  REQUIRE(c1 != nullptr);
  CHECK(c1->construct == "behavior");
  CHECK(c1->corr.coefficient == -1.0);
  const auto* c2 = find_row(1, "G2", "construct");
  REQUIRE(c2 != nullptr);
  CHECK(c2->corr.coefficient == 1.0);
  const auto* kw2 = find_row(1, "G2", "keyword");
  REQUIRE(kw2 != nullptr);
  CHECK(kw2->corr.coefficient == 1.0);

  // Sorted by coefficient descending.
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i - 1].corr.coefficient >= rows[i].corr.coefficient);

  // Fewer than three shared states: the pair is silently dropped.
  std::map<std::string, std::map<std::string, double>> tiny = {
      {"G1", {{"CA", 0.1}, {"FL", 0.2}}},
  };
  auto dropped = analytics::correlation_report(messages, meta, top_words, {g1, g2},
                                               tiny, popt);
  for (const auto& r : dropped) CHECK(r.group != "G1");

  auto path = tmp_path("tsc_report.csv");
  analytics::write_report_csv(path, rows);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "group,topic,scope,construct,coefficient,p_value,n,significant,strength");
  size_t lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == rows.size());
  std::remove(path.c_str());
}

TEST_CASE("null calibration: independent state maps rarely look significant") {
  // Deterministic via the fixed seed. Expected significant fraction is 0.05;
  // the looser bounds below leave wide slack while still catching a p-value
  // or flagging defect.
  std::mt19937_64 rng(20260816);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int trials = 2000, n = 51;
  int significant = 0, big = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = u(rng);
      y[i] = u(rng);
    }
    auto r = stats::spearman(x, y);
    if (r.p_value < 0.05) ++significant;
    if (std::fabs(r.coefficient) >= 0.5) ++big;
  }
  CHECK(double(significant) / trials < 0.10);
  CHECK(double(significant) / trials > 0.01);
  // P(|rho| >= 0.5) at n = 51 is ~4e-4 per trial, so a handful of
  // exceedances across 2000 trials is expected, not a defect.
  CHECK(double(big) / trials < 0.01);
}
