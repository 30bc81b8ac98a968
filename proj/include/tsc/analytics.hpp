#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsc/ingest.hpp"
#include "tsc/lda.hpp"
#include "tsc/stats.hpp"
#include "tsc/survey.hpp"

namespace tsc::analytics {

// A message joined with its class, state, month and retained topics —
// the unit every research-question computation works on. Messages whose
// topics are all excluded keep an empty topic list but stay in totals.
struct MessageView {
  std::string id;
  std::string month_key;
  std::optional<std::string> state;
  std::string msg_class;
  std::vector<int32_t> topics;
};

std::vector<MessageView> join_corpus(const std::vector<ingest::CorpusRow>& rows,
                                     const std::vector<lda::Assignment>& assignments,
                                     const std::set<int32_t>& excluded_topics);

std::set<int32_t> excluded_set(const std::vector<lda::TopicMeta>& meta);

// ---------------------------------------------------------------------------
// RQ1: topic volume ranking per class

struct TopicShare {
  int32_t topic = 0;
  size_t count = 0;        // messages of the class carrying the topic
  double percentage = 0.0; // count / total messages of the class, percent
};

std::vector<TopicShare> topic_shares(const std::vector<MessageView>& messages,
                                     const std::string& msg_class);

void write_shares_csv(const std::string& path, const std::vector<TopicShare>& shares);

// ---------------------------------------------------------------------------
// RQ2: monthly volumes and promotional-vs-consumer correlation

struct MonthlySeries {
  std::vector<std::string> months;  // contiguous year-month keys
  std::vector<double> counts;
};

// Contiguous months spanning the whole corpus (all classes).
std::vector<std::string> month_range(const std::vector<MessageView>& messages);

MonthlySeries monthly_series(const std::vector<MessageView>& messages, int32_t topic,
                             const std::string& msg_class,
                             const std::vector<std::string>& months);

// Class totals per month, for optional normalization.
MonthlySeries monthly_totals(const std::vector<MessageView>& messages,
                             const std::string& msg_class,
                             const std::vector<std::string>& months);

struct PValueOptions {
  bool permutation = false;
  int permutations = 10000;
  uint64_t seed = 1;
};

struct VolumeCorrelation {
  int32_t topic = 0;
  stats::CorrelationResult corr;
  size_t promotional_count = 0;
  double promotional_pct = 0.0;
  size_t consumer_count = 0;
  double consumer_pct = 0.0;
};

// Per-topic Pearson between promotional and consumer monthly volumes.
// `normalize` divides each month by that class's total volume that month.
std::vector<VolumeCorrelation> volume_correlations(
    const std::vector<MessageView>& messages, bool normalize,
    const PValueOptions& popt);

void write_volume_csv(const std::string& path,
                      const std::vector<VolumeCorrelation>& rows);

// ---------------------------------------------------------------------------
// RQ3: state distributions, keyword mapping, survey correlations

// Consumer messages only; every state with >= 1 consumer message appears.
std::map<std::string, double> state_distribution(
    const std::vector<MessageView>& messages, int32_t topic);

// True iff every keyword appears among the words (trailing '*' = prefix).
bool keywords_match(const std::vector<std::string>& keywords,
                    const std::vector<std::pair<std::string, double>>& top_words);

struct KeywordMatch {
  int32_t topic = 0;
  std::string group;
  std::string question;
};

std::vector<KeywordMatch> keyword_map(
    const std::map<int32_t, std::vector<std::pair<std::string, double>>>& top_words,
    const std::vector<survey::QuestionGroup>& groups,
    const std::set<int32_t>& excluded_topics);

const char* strength_band(double coefficient);

struct ReportRow {
  std::string group;
  int32_t topic = 0;
  std::string scope;  // "keyword" or "construct"
  std::string construct;
  stats::CorrelationResult corr;
  bool significant = false;
  std::string strength;
};

std::vector<ReportRow> correlation_report(
    const std::vector<MessageView>& messages,
    const std::vector<lda::TopicMeta>& meta,
    const std::map<int32_t, std::vector<std::pair<std::string, double>>>& top_words,
    const std::vector<survey::QuestionGroup>& groups,
    const std::map<std::string, std::map<std::string, double>>& estimates,
    const PValueOptions& popt);

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows);

}  // namespace tsc::analytics
