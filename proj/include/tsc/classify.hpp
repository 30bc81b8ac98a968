#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tsc/ingest.hpp"

namespace tsc::classify {

inline constexpr const char* kPromotional = "promotional";
inline constexpr const char* kConsumer = "consumer";

// Decision tree over three binary features. A message without a link is a
// consumer post; with a link it is promotional unless it quotes another post
// and is not itself a repost.
std::string classify_flags(bool has_url, bool is_quote, bool is_retweet);
std::string classify_row(const ingest::CorpusRow& row);

// Applies the tree to every row, filling msg_class in place.
void classify_corpus(std::vector<ingest::CorpusRow>& rows);

// Gold annotations: CSV with header "id,label".
std::map<std::string, std::string> read_annotations(const std::string& path);
void write_annotations(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& rows);

struct ClassMetrics {
  std::string label;
  size_t true_positive = 0;
  size_t false_positive = 0;
  size_t false_negative = 0;
  double precision = 0.0;  // percent
  double recall = 0.0;     // percent
  double f_measure = 0.0;  // percent
};

struct Evaluation {
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f = 0.0;
  size_t evaluated = 0;  // ids present in both prediction and gold
};

// Percentages are computed at full precision; callers round for display.
double f_measure(double precision_pct, double recall_pct);
Evaluation evaluate(const std::vector<ingest::CorpusRow>& rows,
                    const std::map<std::string, std::string>& gold);

}  // namespace tsc::classify
