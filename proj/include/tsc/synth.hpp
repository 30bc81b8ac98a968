#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tsc/lda.hpp"
#include "tsc/survey.hpp"

namespace tsc::synth {

// ---------------------------------------------------------------------------
// Deterministic samplers. Hand-rolled (not std distributions) so the draw
// sequence is pinned to the mt19937_64 bit stream on every toolchain.

double normal(std::mt19937_64& rng);
double gamma_draw(std::mt19937_64& rng, double shape);  // scale 1
std::vector<double> dirichlet(std::mt19937_64& rng, const std::vector<double>& alpha);
int32_t poisson(std::mt19937_64& rng, double mean);
int32_t categorical(std::mt19937_64& rng, const std::vector<double>& probs);

// Abstract vocabulary symbol for word index w ("w042"-style, width by V).
std::string word_token(int32_t w, int32_t v);
int32_t parse_word_token(const std::string& token);  // -1 when not a symbol

// ---------------------------------------------------------------------------
// Corpus generation

struct CorpusSpec {
  uint64_t seed = 42;
  int32_t k = 10;
  int32_t v = 500;
  int32_t d = 5000;
  double mean_doc_len = 15.0;
  double alpha = 0.1;                  // document-topic concentration
  double promotional_fraction = 0.5;
  double cutoff = 0.15;                // defines "true" topic membership
  double state_bias_spread = 0.8;      // log-normal spread of per-state topic bias
  std::map<std::string, double> state_weights;  // empty -> uniform over 50+DC
  std::string gazetteer;               // optional; enables the coordinate tier
  double coordinate_fraction = 0.0;
  double place_name_fraction = 0.3;    // remainder goes to user_location
  std::string start_month = "2019-01";
  int32_t months = 24;
};

CorpusSpec load_corpus_spec(const std::string& path);

struct TruthDoc {
  std::string id;
  std::string msg_class;  // planted Figure-2 class
  std::string state;
  std::vector<int32_t> topics;  // theta >= cutoff, descending
};

struct GroundTruth {
  uint64_t seed = 0;
  int32_t k = 0;
  int32_t v = 0;
  double cutoff = 0.15;
  std::vector<std::vector<double>> phi_true;  // K x V, rows sum to 1
  std::vector<TruthDoc> docs;
  // topic -> state -> share of consumer docs in the state carrying the topic
  std::map<int32_t, std::map<std::string, double>> state_prevalence;
};

// Writes the records file and returns the ground truth.
GroundTruth generate_corpus(const CorpusSpec& spec, const std::string& corpus_path);

void save_truth(const std::string& path, const GroundTruth& truth);
GroundTruth load_truth(const std::string& path);

// ---------------------------------------------------------------------------
// Survey planting

struct PlantResult {
  double target_rho = 0.0;
  double achieved_rho = 0.0;  // rank correlation of the planted basis vs truth
  double sigma = 0.0;         // calibrated noise level
  int32_t topic = 0;
  std::string group;
};

// Synthesizes a respondent file whose weighted per-state estimates for
// `group_id` track the true prevalence of `topic` at the target rank
// correlation. Writes <out_csv> and <out_csv>.meta.json.
PlantResult plant_geo_correlation(const GroundTruth& truth,
                                  const std::vector<survey::QuestionGroup>& groups,
                                  const std::string& group_id, int32_t topic,
                                  double target_rho, uint64_t seed,
                                  int respondents_per_state,
                                  const std::string& out_csv);

// ---------------------------------------------------------------------------
// Recovery alignment

struct TopicAlignment {
  std::vector<int32_t> learned_to_true;  // -1 where unmatched
  std::vector<double> cosines;           // one per matched pair
  double mean_cosine = 0.0;
};

// Greedy best-pair-first matching between learned phi rows (mapped back onto
// the true vocabulary through the token symbols) and true phi rows.
TopicAlignment align_topics(const lda::Model& model, const GroundTruth& truth);

}  // namespace tsc::synth
