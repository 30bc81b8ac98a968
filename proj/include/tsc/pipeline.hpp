#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsc/lda.hpp"

namespace tsc::pipeline {

struct Config {
  uint64_t seed = 1;
  int threads = 1;

  // ingest
  std::vector<std::string> inputs;  // glob patterns
  std::string keywords;

  // geocode
  std::string gazetteer;
  double radius_km = 100.0;

  // lda
  int32_t k = 150;
  double alpha = -1.0;  // negative -> 50/K
  double beta = 0.01;
  int32_t iterations = 1000;
  double cutoff = 0.15;
  std::string stopwords;   // empty -> built-in list
  int64_t min_count = 4;
  int top_words = 20;
  std::string topic_meta;  // optional human annotations

  // survey
  std::string respondents;
  std::string groups;

  // analyze
  bool normalize_monthly = false;
  bool permutation_p = false;
  int permutations = 10000;

  // report
  std::string geometry;
  int top_choropleths = 3;
  int wordcloud_topics = 3;
};

Config load_config(const std::string& path);

struct StageInfo {
  std::string key;  // content hash over inputs, parameters, upstream keys
  std::vector<std::string> outputs;
  std::map<std::string, int64_t> counts;
};

struct Manifest {
  uint64_t seed = 0;
  std::map<std::string, StageInfo> stages;
};

Manifest load_manifest(const std::string& path);   // empty manifest if absent
void save_manifest(const std::string& path, const Manifest& manifest);

struct RunResult {
  Manifest manifest;
  std::map<std::string, bool> cached;  // stage -> skipped via cache
};

// Executes all stages into out_dir, skipping stages whose key matches the
// previous manifest and whose outputs still exist.
RunResult run(Config config, const std::string& out_dir,
              std::optional<int> threads_override = std::nullopt,
              std::optional<uint64_t> seed_override = std::nullopt);

// Expand a glob pattern to sorted paths; errors when nothing matches.
std::vector<std::string> expand_glob(const std::string& pattern);

uint64_t hash_file(const std::string& path);

}  // namespace tsc::pipeline
