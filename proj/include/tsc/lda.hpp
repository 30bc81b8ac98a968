#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsc/ingest.hpp"

namespace tsc::lda {

// ---------------------------------------------------------------------------
// Vocabulary

struct Vocabulary {
  std::vector<std::string> tokens;                 // index -> token, sorted
  std::unordered_map<std::string, int32_t> index;  // token -> index
  std::vector<int64_t> frequency;                  // corpus frequency

  size_t size() const { return tokens.size(); }
  std::optional<int32_t> lookup(const std::string& token) const;
};

std::vector<std::string> load_stopwords(const std::string& path);
const std::vector<std::string>& default_stopwords();

// Tokens survive if they are not stopwords and occur at least `min_count`
// times across the corpus.
Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const std::vector<std::string>& stopwords,
                            int64_t min_count = 4);

struct IndexedCorpus {
  std::vector<std::string> doc_ids;        // documents that kept >= 1 token
  std::vector<std::vector<int32_t>> docs;  // token index sequences
  std::vector<std::string> dropped_ids;    // emptied by vocabulary pruning
};

IndexedCorpus index_tokens(const std::vector<std::pair<std::string, std::vector<std::string>>>& docs,
                           const Vocabulary& vocab);
IndexedCorpus index_corpus(const std::vector<ingest::CorpusRow>& rows,
                           const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Model

struct Model {
  int32_t k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  uint64_t seed = 0;
  int32_t iterations = 0;
  std::vector<std::string> vocab;    // V
  std::vector<std::string> doc_ids;  // D
  std::vector<int32_t> doc_len;      // D
  // Topic-word counts are stored word-major (row w holds counts over all
  // topics) so the sampler reads one contiguous row per token.
  std::vector<int32_t> n_wk;  // V*K
  std::vector<int32_t> n_k;   // K
  std::vector<int32_t> n_dk;  // D*K

  size_t v() const { return vocab.size(); }
  size_t d() const { return doc_ids.size(); }

  double phi(int32_t topic, int32_t word) const;
  double theta(size_t doc, int32_t topic) const;
  std::vector<double> phi_row(int32_t topic) const;   // length V
  std::vector<double> theta_row(size_t doc) const;    // length K
};

struct TrainOptions {
  int32_t k = 150;
  double alpha = -1.0;  // negative -> 50/K
  double beta = 0.01;
  int32_t iterations = 1000;
  uint64_t seed = 1;
};

// Called after initialization (sweep 0) and after each full sweep (1-based).
using SweepObserver = std::function<void(int32_t sweep, const Model&)>;

Model train(const IndexedCorpus& corpus, const Vocabulary& vocab,
            const TrainOptions& opt, const SweepObserver& observer = nullptr);

// Relabel topics: new topic perm[k] takes the counts of old topic k.
Model permute_topics(const Model& model, const std::vector<int32_t>& perm);

void save_model(const std::string& path, const Model& model);
Model load_model(const std::string& path);

// ---------------------------------------------------------------------------
// Number-of-topics selection metrics

struct KMetrics {
  int32_t k = 0;
  double arun = 0.0;               // minimize
  std::optional<double> cao;       // minimize; empty for K=1
  std::optional<double> deveaud;   // maximize; empty for K=1
};

double arun_metric(const Model& model);
double cao_metric(const Model& model);      // requires K >= 2
double deveaud_metric(const Model& model);  // requires K >= 2

std::vector<KMetrics> select_k(const IndexedCorpus& corpus, const Vocabulary& vocab,
                               const std::vector<int32_t>& k_candidates,
                               const TrainOptions& base, int threads = 1);

// ---------------------------------------------------------------------------
// Assignment and top words

struct Assignment {
  std::string id;
  // (topic, probability) with probability >= cutoff, descending.
  std::vector<std::pair<int32_t, double>> topics;
};

std::vector<Assignment> assign_topics(const Model& model, double cutoff);

std::vector<std::pair<std::string, double>> top_words(const Model& model,
                                                      int32_t topic, size_t n);

void write_assignments_csv(const std::string& path,
                           const std::vector<Assignment>& assignments);
std::vector<Assignment> read_assignments_csv(const std::string& path);

void write_topwords_csv(const std::string& path, const Model& model, size_t n);
// topic -> top words in stored order.
std::map<int32_t, std::vector<std::pair<std::string, double>>> read_topwords_csv(
    const std::string& path);

// ---------------------------------------------------------------------------
// Cutoff calibration

struct CalibrationRow {
  double cutoff = 0.0;
  std::string id;
  std::string text;
  std::string topics;     // "k:prob" joined with ';'
  std::string top_words;  // per assigned topic, '|'-separated
  std::string verdict;    // blank until a human fills it
};

std::vector<CalibrationRow> calibration_sample(
    const Model& model, const std::vector<double>& cutoffs, size_t n,
    uint64_t seed, const std::unordered_map<std::string, std::string>& texts,
    size_t words_per_topic = 10);

void write_calibration_csv(const std::string& path,
                           const std::vector<CalibrationRow>& rows);

struct CalibrationScore {
  // cutoff -> (adequate, total)
  std::map<double, std::pair<size_t, size_t>> counts;
  std::map<double, double> adequacy;
  std::optional<double> selected;  // lowest cutoff with adequacy > threshold
};

CalibrationScore calibration_score(const std::string& sheet_path, double threshold = 0.80);
std::optional<double> select_cutoff(const std::map<double, double>& adequacy,
                                    double threshold = 0.80);

// ---------------------------------------------------------------------------
// Human topic annotations (labels, quality, construct tags, question groups)

struct TopicMeta {
  int32_t topic = 0;
  std::string label;
  std::string quality;  // "high" / "low" / ""
  bool excluded = false;
  std::vector<std::string> constructs;
  std::vector<std::string> question_groups;
};

std::vector<TopicMeta> read_topic_meta(const std::string& path);
void write_topic_meta(const std::string& path, const std::vector<TopicMeta>& rows);

}  // namespace tsc::lda
