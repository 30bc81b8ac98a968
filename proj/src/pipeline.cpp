#include "tsc/pipeline.hpp"

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tsc/analytics.hpp"
#include "tsc/csv.hpp"
#include "tsc/classify.hpp"
#include "tsc/geocode.hpp"
#include "tsc/ingest.hpp"
#include "tsc/report.hpp"
#include "tsc/rng.hpp"
#include "tsc/survey.hpp"
#include "tsc/util.hpp"

namespace tsc::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string require_string(const json& obj, const std::string& section, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_string() || obj[key].get<std::string>().empty()) {
    throw ConfigError("config missing key: " + section + "." + key);
  }
  return obj[key].get<std::string>();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + path + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  Config cfg;
  if (root.contains("seed")) cfg.seed = root["seed"].get<uint64_t>();
  if (root.contains("threads")) cfg.threads = root["threads"].get<int>();

  if (!root.contains("ingest") || !root["ingest"].is_object()) {
    throw ConfigError("config missing key: ingest");
  }
  const json& ing = root["ingest"];
  if (ing.contains("input") && ing["input"].is_array()) {
    for (const auto& v : ing["input"]) {
      if (!v.is_string()) throw ConfigError("ingest.input entries must be strings");
      cfg.inputs.push_back(v.get<std::string>());
    }
    if (cfg.inputs.empty()) throw ConfigError("config missing key: ingest.input");
  } else {
    cfg.inputs.push_back(require_string(ing, "ingest", "input"));
  }
  cfg.keywords = require_string(ing, "ingest", "keywords");

  if (!root.contains("geocode") || !root["geocode"].is_object()) {
    throw ConfigError("config missing key: geocode");
  }
  const json& geo = root["geocode"];
  cfg.gazetteer = require_string(geo, "geocode", "gazetteer");
  if (geo.contains("radius_km")) cfg.radius_km = geo["radius_km"].get<double>();
  if (!(cfg.radius_km > 0.0)) throw ConfigError("geocode.radius_km must be positive");

  if (root.contains("lda")) {
    const json& lda_cfg = root["lda"];
    if (lda_cfg.contains("k")) cfg.k = lda_cfg["k"].get<int32_t>();
    if (lda_cfg.contains("alpha")) cfg.alpha = lda_cfg["alpha"].get<double>();
    if (lda_cfg.contains("beta")) cfg.beta = lda_cfg["beta"].get<double>();
    if (lda_cfg.contains("iterations")) cfg.iterations = lda_cfg["iterations"].get<int32_t>();
    if (lda_cfg.contains("cutoff")) cfg.cutoff = lda_cfg["cutoff"].get<double>();
    if (lda_cfg.contains("stopwords")) cfg.stopwords = lda_cfg["stopwords"].get<std::string>();
    if (lda_cfg.contains("min_count")) cfg.min_count = lda_cfg["min_count"].get<int64_t>();
    if (lda_cfg.contains("top_words")) cfg.top_words = lda_cfg["top_words"].get<int>();
    if (lda_cfg.contains("meta")) cfg.topic_meta = lda_cfg["meta"].get<std::string>();
  }
  if (cfg.k < 1) throw ConfigError("lda.k must be at least 1");
  if (cfg.iterations < 1) throw ConfigError("lda.iterations must be at least 1");
  if (!(cfg.cutoff > 0.0 && cfg.cutoff < 1.0)) throw ConfigError("lda.cutoff must lie in (0,1)");
  if (cfg.top_words < 1) throw ConfigError("lda.top_words must be at least 1");

  if (!root.contains("survey") || !root["survey"].is_object()) {
    throw ConfigError("config missing key: survey");
  }
  cfg.respondents = require_string(root["survey"], "survey", "respondents");
  cfg.groups = require_string(root["survey"], "survey", "groups");

  if (root.contains("analyze")) {
    const json& an = root["analyze"];
    if (an.contains("normalize_monthly")) cfg.normalize_monthly = an["normalize_monthly"].get<bool>();
    if (an.contains("permutation_p")) cfg.permutation_p = an["permutation_p"].get<bool>();
    if (an.contains("permutations")) cfg.permutations = an["permutations"].get<int>();
  }
  if (cfg.permutations < 1) throw ConfigError("analyze.permutations must be at least 1");

  if (!root.contains("report") || !root["report"].is_object()) {
    throw ConfigError("config missing key: report");
  }
  const json& rep = root["report"];
  cfg.geometry = require_string(rep, "report", "geometry");
  if (rep.contains("top_choropleths")) cfg.top_choropleths = rep["top_choropleths"].get<int>();
  if (rep.contains("wordcloud_topics")) cfg.wordcloud_topics = rep["wordcloud_topics"].get<int>();
  if (cfg.top_choropleths < 0) throw ConfigError("report.top_choropleths must be non-negative");
  if (cfg.wordcloud_topics < 0) throw ConfigError("report.wordcloud_topics must be non-negative");

  return cfg;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g;
  int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> paths;
  if (rc == 0) {
    for (size_t i = 0; i < g.gl_pathc; ++i) paths.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  if (rc == GLOB_NOMATCH || paths.empty()) {
    throw ConfigError("input pattern matched no files: " + pattern);
  }
  if (rc != 0) throw Error("glob failed for pattern: " + pattern);
  std::sort(paths.begin(), paths.end());
  return paths;
}

uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file for hashing: " + path);
  uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    std::streamsize got = in.gcount();
    if (got > 0) h = fnv1a64(buf, static_cast<size_t>(got), h);
  }
  return h;
}

Manifest load_manifest(const std::string& path) {
  Manifest m;
  std::ifstream in(path, std::ios::binary);
  if (!in) return m;
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception&) {
    return m;  // unreadable manifest: treat as cold cache
  }
  if (!root.is_object()) return m;
  if (root.contains("seed")) m.seed = root["seed"].get<uint64_t>();
  if (root.contains("stages") && root["stages"].is_object()) {
    for (auto it = root["stages"].begin(); it != root["stages"].end(); ++it) {
      StageInfo info;
      const json& s = it.value();
      if (s.contains("key")) info.key = s["key"].get<std::string>();
      if (s.contains("outputs")) {
        for (const auto& o : s["outputs"]) info.outputs.push_back(o.get<std::string>());
      }
      if (s.contains("counts")) {
        for (auto c = s["counts"].begin(); c != s["counts"].end(); ++c) {
          info.counts[c.key()] = c.value().get<int64_t>();
        }
      }
      m.stages[it.key()] = info;
    }
  }
  return m;
}

void save_manifest(const std::string& path, const Manifest& manifest) {
  json stages = json::object();
  for (const auto& [name, info] : manifest.stages) {
    json s;
    s["key"] = info.key;
    s["outputs"] = info.outputs;
    json counts = json::object();
    for (const auto& [k, v] : info.counts) counts[k] = v;
    s["counts"] = counts;
    stages[name] = s;
  }
  json root;
  root["seed"] = manifest.seed;
  root["stages"] = stages;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write manifest: " + path);
  out << root.dump(2) << "\n";
}

namespace {

struct StageContext {
  const Config& cfg;
  std::string out_dir;
  Manifest previous;
  Manifest current;
  std::map<std::string, bool> cached;

  std::string path(const std::string& name) const { return out_dir + "/" + name; }

  // A stage may be skipped when its key matches the previous run and every
  // output recorded by that run is still present on disk.
  bool can_skip(const std::string& stage, const std::string& key) const {
    auto it = previous.stages.find(stage);
    if (it == previous.stages.end() || it->second.key != key) return false;
    if (it->second.outputs.empty()) return false;
    for (const auto& o : it->second.outputs) {
      if (!fs::exists(path(o))) return false;
    }
    return true;
  }

  // Either replays the cached stage record or runs `body`, which fills in
  // counts and may append outputs discovered while running.
  template <typename Body>
  void stage(const std::string& name, const std::string& key,
             const std::vector<std::string>& outputs, Body&& body) {
    StageInfo info;
    info.key = key;
    info.outputs = outputs;
    if (can_skip(name, key)) {
      info = previous.stages.at(name);
      cached[name] = true;
      std::cout << "[" << name << "] cached (key " << key << ")\n";
    } else {
      cached[name] = false;
      std::cout << "[" << name << "] running\n";
      try {
        body(info);
      } catch (const std::exception& e) {
        throw Error("stage " + name + ": " + e.what());
      }
    }
    current.stages[name] = std::move(info);
  }
};

std::string stage_key(const std::string& stage, const std::string& params,
                      const std::vector<uint64_t>& input_hashes,
                      const std::vector<std::string>& upstream_keys) {
  uint64_t h = fnv1a64(stage);
  h = fnv1a64(params.data(), params.size(), h);
  for (uint64_t ih : input_hashes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(ih));
    h = fnv1a64(buf, 16, h);
  }
  for (const auto& k : upstream_keys) h = fnv1a64(k.data(), k.size(), h);
  return hex64(h);
}

std::vector<std::string> sorted_state_codes(
    const std::unordered_map<std::string, size_t>& m) {
  std::vector<std::string> keys;
  keys.reserve(m.size());
  for (const auto& [k, v] : m) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

void write_json_file(const std::string& path, const json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << value.dump(2) << "\n";
}

}  // namespace

RunResult run(Config cfg, const std::string& out_dir,
              std::optional<int> threads_override,
              std::optional<uint64_t> seed_override) {
  if (threads_override) cfg.threads = *threads_override;
  if (seed_override) cfg.seed = *seed_override;
  if (cfg.threads < 1) cfg.threads = 1;

  fs::create_directories(out_dir);

  StageContext ctx{cfg, out_dir, load_manifest(out_dir + "/manifest.json"), Manifest{}, {}};
  ctx.current.seed = cfg.seed;

  // ---- ingest ------------------------------------------------------------
  std::vector<std::string> input_files;
  for (const auto& pattern : cfg.inputs) {
    for (auto& p : expand_glob(pattern)) input_files.push_back(std::move(p));
  }
  std::sort(input_files.begin(), input_files.end());
  input_files.erase(std::unique(input_files.begin(), input_files.end()), input_files.end());

  std::vector<uint64_t> ingest_hashes;
  for (const auto& f : input_files) ingest_hashes.push_back(hash_file(f));
  ingest_hashes.push_back(hash_file(cfg.keywords));

  const std::string key_ingest = stage_key("ingest", "v1", ingest_hashes, {});
  ctx.stage("ingest", key_ingest, {"01_clean.jsonl", "01_report.json"},
            [&](StageInfo& info) {
    std::vector<std::vector<MessageRecord>> datasets;
    json file_report = json::array();
    int64_t total_lines = 0, total_parsed = 0, total_malformed = 0;
    for (const auto& f : input_files) {
      ingest::ParseStats st;
      datasets.push_back(ingest::parse_records(f, st));
      json fr;
      fr["path"] = f;
      fr["lines"] = st.lines;
      fr["parsed"] = st.parsed;
      fr["malformed"] = st.malformed;
      file_report.push_back(fr);
      total_lines += st.lines;
      total_parsed += st.parsed;
      total_malformed += st.malformed;
    }
    size_t duplicates = 0;
    std::vector<MessageRecord> merged = ingest::merge_dedup(datasets, &duplicates);
    datasets.clear();

    auto patterns = ingest::load_keyword_patterns(cfg.keywords);
    std::vector<MessageRecord> relevant = ingest::relevance_filter(merged, patterns);
    const int64_t merged_count = static_cast<int64_t>(merged.size());
    merged.clear();

    ingest::LanguageSplit split = ingest::language_filter(relevant);
    const int64_t relevant_count = static_cast<int64_t>(relevant.size());
    relevant.clear();

    std::vector<ingest::CorpusRow> rows;
    rows.reserve(split.english.size());
    int64_t empty_after_clean = 0;
    for (const auto& rec : split.english) {
      ingest::CorpusRow row;
      row.msg = ingest::clean_text(rec);
      if (row.msg.empty_after_clean) ++empty_after_clean;
      rows.push_back(std::move(row));
    }
    ingest::write_corpus(ctx.path("01_clean.jsonl"), rows);

    json report;
    report["files"] = file_report;
    report["lines"] = total_lines;
    report["parsed"] = total_parsed;
    report["malformed"] = total_malformed;
    report["duplicates"] = static_cast<int64_t>(duplicates);
    report["after_dedup"] = merged_count;
    report["relevant"] = relevant_count;
    report["english"] = static_cast<int64_t>(split.english.size());
    report["other_language"] = static_cast<int64_t>(split.other.size());
    report["empty_after_clean"] = empty_after_clean;
    write_json_file(ctx.path("01_report.json"), report);

    info.counts["parsed"] = total_parsed;
    info.counts["malformed"] = total_malformed;
    info.counts["duplicates"] = static_cast<int64_t>(duplicates);
    info.counts["relevant"] = relevant_count;
    info.counts["english"] = static_cast<int64_t>(split.english.size());
    info.counts["corpus_rows"] = static_cast<int64_t>(rows.size());
  });

  // ---- geocode -----------------------------------------------------------
  const std::string key_geocode =
      stage_key("geocode", "radius_km=" + fmt_double(cfg.radius_km),
                {hash_file(cfg.gazetteer)}, {key_ingest});
  ctx.stage("geocode", key_geocode, {"02_geocoded.jsonl", "02_geo_stats.json"},
            [&](StageInfo& info) {
    auto rows = ingest::read_corpus(ctx.path("01_clean.jsonl"));
    geocode::Gazetteer gaz = geocode::Gazetteer::load(cfg.gazetteer);
    geocode::GeoStats stats = geocode::geocode_corpus(rows, gaz, cfg.radius_km);
    ingest::write_corpus(ctx.path("02_geocoded.jsonl"), rows);

    json per_state = json::object();
    for (const auto& code : sorted_state_codes(stats.per_state)) {
      per_state[code] = stats.per_state.at(code);
    }
    json out;
    out["total"] = stats.total;
    out["by_coordinates"] = stats.by_coordinates;
    out["by_place_name"] = stats.by_place_name;
    out["by_user_location"] = stats.by_user_location;
    out["unresolved"] = stats.unresolved;
    out["per_state"] = per_state;
    write_json_file(ctx.path("02_geo_stats.json"), out);

    info.counts["total"] = stats.total;
    info.counts["by_coordinates"] = stats.by_coordinates;
    info.counts["by_place_name"] = stats.by_place_name;
    info.counts["by_user_location"] = stats.by_user_location;
    info.counts["unresolved"] = stats.unresolved;
  });

  // ---- classify ----------------------------------------------------------
  const std::string key_classify = stage_key("classify", "v1", {}, {key_geocode});
  ctx.stage("classify", key_classify, {"03_classified.jsonl"},
            [&](StageInfo& info) {
    auto rows = ingest::read_corpus(ctx.path("02_geocoded.jsonl"));
    classify::classify_corpus(rows);
    int64_t promo = 0, consumer = 0;
    for (const auto& r : rows) {
      if (r.msg_class && *r.msg_class == classify::kPromotional) ++promo;
      else if (r.msg_class && *r.msg_class == classify::kConsumer) ++consumer;
    }
    ingest::write_corpus(ctx.path("03_classified.jsonl"), rows);
    info.counts["promotional"] = promo;
    info.counts["consumer"] = consumer;
  });

  // ---- lda (train + top words) -------------------------------------------
  const uint64_t lda_seed = derive_seed(cfg.seed, fnv1a64("lda"));
  std::vector<uint64_t> lda_inputs;
  if (!cfg.stopwords.empty()) lda_inputs.push_back(hash_file(cfg.stopwords));
  std::string lda_params = "k=" + std::to_string(cfg.k) +
                           ";alpha=" + fmt_double(cfg.alpha) +
                           ";beta=" + fmt_double(cfg.beta) +
                           ";iterations=" + std::to_string(cfg.iterations) +
                           ";min_count=" + std::to_string(cfg.min_count) +
                           ";top_words=" + std::to_string(cfg.top_words) +
                           ";seed=" + std::to_string(lda_seed) +
                           ";stopwords=" + (cfg.stopwords.empty() ? "builtin" : "file");
  const std::string key_lda = stage_key("lda", lda_params, lda_inputs, {key_classify});
  ctx.stage("lda", key_lda, {"04_model.bin", "04_topwords.csv"},
            [&](StageInfo& info) {
    auto rows = ingest::read_corpus(ctx.path("03_classified.jsonl"));
    std::vector<std::vector<std::string>> docs;
    docs.reserve(rows.size());
    for (const auto& r : rows) docs.push_back(r.msg.tokens);
    auto stopwords = cfg.stopwords.empty() ? lda::default_stopwords()
                                           : lda::load_stopwords(cfg.stopwords);
    lda::Vocabulary vocab = lda::build_vocabulary(docs, stopwords, cfg.min_count);
    docs.clear();
    lda::IndexedCorpus indexed = lda::index_corpus(rows, vocab);

    lda::TrainOptions opts;
    opts.k = cfg.k;
    opts.alpha = cfg.alpha;
    opts.beta = cfg.beta;
    opts.iterations = cfg.iterations;
    opts.seed = lda_seed;
    lda::Model model = lda::train(indexed, vocab, opts);
    lda::save_model(ctx.path("04_model.bin"), model);
    lda::write_topwords_csv(ctx.path("04_topwords.csv"), model,
                            static_cast<size_t>(cfg.top_words));

    int64_t tokens = 0;
    for (const auto& d : indexed.docs) tokens += static_cast<int64_t>(d.size());
    info.counts["vocabulary"] = static_cast<int64_t>(vocab.tokens.size());
    info.counts["documents"] = static_cast<int64_t>(indexed.docs.size());
    info.counts["dropped_documents"] = static_cast<int64_t>(indexed.dropped_ids.size());
    info.counts["tokens"] = tokens;
  });

  // ---- assign --------------------------------------------------------------
  const std::string key_assign =
      stage_key("assign", "cutoff=" + fmt_double(cfg.cutoff), {}, {key_lda});
  ctx.stage("assign", key_assign, {"05_assignments.csv"},
            [&](StageInfo& info) {
    lda::Model model = lda::load_model(ctx.path("04_model.bin"));
    auto assignments = lda::assign_topics(model, cfg.cutoff);
    lda::write_assignments_csv(ctx.path("05_assignments.csv"), assignments);
    int64_t assigned = 0;
    for (const auto& a : assignments) {
      if (!a.topics.empty()) ++assigned;
    }
    info.counts["documents"] = static_cast<int64_t>(assignments.size());
    info.counts["with_topics"] = assigned;
  });

  // ---- survey --------------------------------------------------------------
  const std::string key_survey =
      stage_key("survey", "v1", {hash_file(cfg.respondents), hash_file(cfg.groups)}, {});
  ctx.stage("survey", key_survey, {"06_survey_estimates.csv"},
            [&](StageInfo& info) {
    survey::LoadStats stats;
    auto groups = survey::load_question_groups(cfg.groups);
    auto respondents = survey::load_respondents(cfg.respondents, &stats);
    auto estimates = survey::all_estimates(respondents, groups);
    survey::write_estimates_csv(ctx.path("06_survey_estimates.csv"), estimates);
    int64_t cells = 0;
    for (const auto& [g, by_state] : estimates) cells += static_cast<int64_t>(by_state.size());
    info.counts["respondents"] = stats.loaded;
    info.counts["skipped"] = stats.skipped;
    info.counts["groups"] = static_cast<int64_t>(groups.size());
    info.counts["estimate_cells"] = cells;
  });

  // ---- analyze -------------------------------------------------------------
  const uint64_t analyze_seed = derive_seed(cfg.seed, fnv1a64("analyze"));
  std::vector<uint64_t> analyze_inputs;
  if (!cfg.topic_meta.empty()) analyze_inputs.push_back(hash_file(cfg.topic_meta));
  std::string analyze_params =
      std::string("normalize=") + (cfg.normalize_monthly ? "1" : "0") +
      ";permutation=" + (cfg.permutation_p ? "1" : "0") +
      ";permutations=" + std::to_string(cfg.permutations) +
      ";seed=" + std::to_string(analyze_seed) +
      ";meta=" + (cfg.topic_meta.empty() ? "none" : "file");
  const std::string key_analyze =
      stage_key("analyze", analyze_params, analyze_inputs,
                {key_classify, key_assign, key_survey, key_lda});
  ctx.stage("analyze", key_analyze,
            {"07_rq1_consumer.csv", "07_rq1_promotional.csv", "07_rq2.csv",
             "07_keyword_map.csv", "07_rq3_correlations.csv"},
            [&](StageInfo& info) {
    auto rows = ingest::read_corpus(ctx.path("03_classified.jsonl"));
    auto assignments = lda::read_assignments_csv(ctx.path("05_assignments.csv"));
    std::vector<lda::TopicMeta> meta;
    if (!cfg.topic_meta.empty()) meta = lda::read_topic_meta(cfg.topic_meta);
    auto excluded = analytics::excluded_set(meta);
    auto messages = analytics::join_corpus(rows, assignments, excluded);

    auto consumer_shares = analytics::topic_shares(messages, classify::kConsumer);
    auto promo_shares = analytics::topic_shares(messages, classify::kPromotional);
    analytics::write_shares_csv(ctx.path("07_rq1_consumer.csv"), consumer_shares);
    analytics::write_shares_csv(ctx.path("07_rq1_promotional.csv"), promo_shares);

    analytics::PValueOptions popt;
    popt.permutation = cfg.permutation_p;
    popt.permutations = cfg.permutations;
    popt.seed = analyze_seed;
    auto volume = analytics::volume_correlations(messages, cfg.normalize_monthly, popt);
    analytics::write_volume_csv(ctx.path("07_rq2.csv"), volume);

    auto groups = survey::load_question_groups(cfg.groups);
    auto topwords = lda::read_topwords_csv(ctx.path("04_topwords.csv"));
    auto kmap = analytics::keyword_map(topwords, groups, excluded);
    {
      std::ofstream out(ctx.path("07_keyword_map.csv"), std::ios::binary);
      if (!out) throw Error("cannot write file: " + ctx.path("07_keyword_map.csv"));
      out << "topic,group,question\n";
      for (const auto& e : kmap) {
        out << csv_row({std::to_string(e.topic), e.group, e.question});
      }
    }

    auto estimates = survey::read_estimates_csv(ctx.path("06_survey_estimates.csv"));
    auto report = analytics::correlation_report(messages, meta, topwords, groups,
                                                estimates, popt);
    analytics::write_report_csv(ctx.path("07_rq3_correlations.csv"), report);

    int64_t significant = 0;
    for (const auto& r : report) {
      if (r.significant) ++significant;
    }
    info.counts["messages"] = static_cast<int64_t>(messages.size());
    info.counts["rq2_topics"] = static_cast<int64_t>(volume.size());
    info.counts["keyword_pairs"] = static_cast<int64_t>(kmap.size());
    info.counts["rq3_rows"] = static_cast<int64_t>(report.size());
    info.counts["rq3_significant"] = significant;
  });

  // ---- report ----------------------------------------------------------------
  std::string report_params = "choropleths=" + std::to_string(cfg.top_choropleths) +
                              ";wordclouds=" + std::to_string(cfg.wordcloud_topics);
  const std::string key_report =
      stage_key("report", report_params, {hash_file(cfg.geometry)}, {key_analyze, key_lda});
  ctx.stage("report", key_report, {"08_figures.json"},
            [&](StageInfo& info) {
    auto rows = ingest::read_corpus(ctx.path("03_classified.jsonl"));
    auto assignments = lda::read_assignments_csv(ctx.path("05_assignments.csv"));
    std::vector<lda::TopicMeta> meta;
    if (!cfg.topic_meta.empty()) meta = lda::read_topic_meta(cfg.topic_meta);
    auto excluded = analytics::excluded_set(meta);
    auto messages = analytics::join_corpus(rows, assignments, excluded);
    auto consumer_shares = analytics::topic_shares(messages, classify::kConsumer);

    auto geometry = report::load_geometry(cfg.geometry);
    auto topwords = lda::read_topwords_csv(ctx.path("04_topwords.csv"));

    json figures = json::array();
    const int n_maps =
        std::min<int>(cfg.top_choropleths, static_cast<int>(consumer_shares.size()));
    for (int i = 0; i < n_maps; ++i) {
      const int32_t topic = consumer_shares[static_cast<size_t>(i)].topic;
      auto values = analytics::state_distribution(messages, topic);
      std::string name = "08_choropleth_topic" + std::to_string(topic) + ".svg";
      report::write_choropleth(ctx.path(name), values, geometry,
                               "Topic " + std::to_string(topic) +
                                   " share of consumer messages by state (%)");
      figures.push_back(name);
      info.outputs.push_back(name);
    }
    const int n_clouds =
        std::min<int>(cfg.wordcloud_topics, static_cast<int>(consumer_shares.size()));
    for (int i = 0; i < n_clouds; ++i) {
      const int32_t topic = consumer_shares[static_cast<size_t>(i)].topic;
      auto tw = topwords.find(topic);
      if (tw == topwords.end()) continue;
      auto cloud = report::render_wordcloud_data(tw->second);
      std::string name = "08_wordcloud_topic" + std::to_string(topic) + ".csv";
      report::write_wordcloud_csv(ctx.path(name), cloud);
      figures.push_back(name);
      info.outputs.push_back(name);
    }
    write_json_file(ctx.path("08_figures.json"), figures);
    info.counts["figures"] = static_cast<int64_t>(figures.size());
  });

  save_manifest(out_dir + "/manifest.json", ctx.current);
  return RunResult{std::move(ctx.current), std::move(ctx.cached)};
}

}  // namespace tsc::pipeline
