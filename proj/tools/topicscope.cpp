// topicscope: command-line front end for the message-mining pipeline.
//
// Subcommands cover each stage (ingest, geocode, classify, lda, survey,
// analyze, report), synthetic-data generation, and full pipeline runs with
// stage caching.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "tsc/analytics.hpp"
#include "tsc/classify.hpp"
#include "tsc/csv.hpp"
#include "tsc/geocode.hpp"
#include "tsc/ingest.hpp"
#include "tsc/kernels.hpp"
#include "tsc/lda.hpp"
#include "tsc/pipeline.hpp"
#include "tsc/report.hpp"
#include "tsc/rng.hpp"
#include "tsc/survey.hpp"
#include "tsc/synth.hpp"
#include "tsc/util.hpp"

namespace {

using nlohmann::json;

std::vector<double> parse_double_list(const std::string& csv_list) {
  std::vector<double> out;
  for (const auto& part : tsc::split(csv_list, ',')) {
    std::string item{tsc::trim(part)};
    if (item.empty()) continue;
    auto v = tsc::parse_double(item);
    if (!v) throw tsc::ConfigError("not a number: " + item);
    out.push_back(*v);
  }
  if (out.empty()) throw tsc::ConfigError("empty numeric list: " + csv_list);
  return out;
}

std::vector<int32_t> parse_int_list(const std::string& csv_list) {
  std::vector<int32_t> out;
  for (const auto& part : tsc::split(csv_list, ',')) {
    std::string item{tsc::trim(part)};
    if (item.empty()) continue;
    auto v = tsc::parse_int(item);
    if (!v) throw tsc::ConfigError("not an integer: " + item);
    out.push_back(static_cast<int32_t>(*v));
  }
  if (out.empty()) throw tsc::ConfigError("empty integer list: " + csv_list);
  return out;
}

std::vector<tsc::ingest::CorpusRow> read_corpus_checked(const std::string& path) {
  return tsc::ingest::read_corpus(path);
}

void write_json_file(const std::string& path, const json& value) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tsc::Error("cannot write file: " + path);
  out << value.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string keywords, out, report;
};

int run_ingest(const IngestArgs& a) {
  std::vector<std::string> files;
  for (const auto& pattern : a.inputs) {
    for (auto& p : tsc::pipeline::expand_glob(pattern)) files.push_back(std::move(p));
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());

  std::vector<std::vector<tsc::MessageRecord>> datasets;
  json file_report = json::array();
  int64_t lines = 0, parsed = 0, malformed = 0;
  for (const auto& f : files) {
    tsc::ingest::ParseStats st;
    datasets.push_back(tsc::ingest::parse_records(f, st));
    json fr;
    fr["path"] = f;
    fr["lines"] = st.lines;
    fr["parsed"] = st.parsed;
    fr["malformed"] = st.malformed;
    file_report.push_back(fr);
    lines += st.lines;
    parsed += st.parsed;
    malformed += st.malformed;
  }
  size_t duplicates = 0;
  auto merged = tsc::ingest::merge_dedup(datasets, &duplicates);
  datasets.clear();
  const int64_t after_dedup = static_cast<int64_t>(merged.size());

  auto patterns = tsc::ingest::load_keyword_patterns(a.keywords);
  auto relevant = tsc::ingest::relevance_filter(merged, patterns);
  merged.clear();
  const int64_t relevant_count = static_cast<int64_t>(relevant.size());

  auto split = tsc::ingest::language_filter(relevant);
  relevant.clear();

  std::vector<tsc::ingest::CorpusRow> rows;
  rows.reserve(split.english.size());
  int64_t empty_after_clean = 0;
  for (const auto& rec : split.english) {
    tsc::ingest::CorpusRow row;
    row.msg = tsc::ingest::clean_text(rec);
    if (row.msg.empty_after_clean) ++empty_after_clean;
    rows.push_back(std::move(row));
  }
  tsc::ingest::write_corpus(a.out, rows);

  json report;
  report["files"] = file_report;
  report["lines"] = lines;
  report["parsed"] = parsed;
  report["malformed"] = malformed;
  report["duplicates"] = static_cast<int64_t>(duplicates);
  report["after_dedup"] = after_dedup;
  report["relevant"] = relevant_count;
  report["english"] = static_cast<int64_t>(split.english.size());
  report["other_language"] = static_cast<int64_t>(split.other.size());
  report["empty_after_clean"] = empty_after_clean;
  if (!a.report.empty()) write_json_file(a.report, report);

  std::cout << "parsed " << parsed << " (malformed " << malformed << "), dedup "
            << after_dedup << ", relevant " << relevant_count << ", english "
            << split.english.size() << ", corpus rows " << rows.size() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

int run_geocode(const std::string& corpus, const std::string& gazetteer,
                const std::string& out, const std::string& stats_path,
                double radius_km) {
  auto rows = read_corpus_checked(corpus);
  auto gaz = tsc::geocode::Gazetteer::load(gazetteer);
  auto stats = tsc::geocode::geocode_corpus(rows, gaz, radius_km);
  tsc::ingest::write_corpus(out, rows);

  json per_state = json::object();
  for (const auto& [code, n] : stats.per_state) per_state[code] = n;
  json j;
  j["total"] = stats.total;
  j["by_coordinates"] = stats.by_coordinates;
  j["by_place_name"] = stats.by_place_name;
  j["by_user_location"] = stats.by_user_location;
  j["unresolved"] = stats.unresolved;
  j["per_state"] = per_state;
  if (!stats_path.empty()) write_json_file(stats_path, j);

  std::cout << "geocoded " << (stats.total - stats.unresolved) << "/" << stats.total
            << " (coordinates " << stats.by_coordinates << ", place "
            << stats.by_place_name << ", user location " << stats.by_user_location
            << ", unresolved " << stats.unresolved << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------

int run_classify(const std::string& corpus, const std::string& out) {
  auto rows = read_corpus_checked(corpus);
  tsc::classify::classify_corpus(rows);
  int64_t promo = 0, consumer = 0;
  for (const auto& r : rows) {
    if (r.msg_class && *r.msg_class == tsc::classify::kPromotional) ++promo;
    else ++consumer;
  }
  tsc::ingest::write_corpus(out, rows);
  std::cout << "promotional " << promo << ", consumer " << consumer << "\n";
  return 0;
}

int run_classify_eval(const std::string& corpus, const std::string& gold) {
  auto rows = read_corpus_checked(corpus);
  tsc::classify::classify_corpus(rows);
  auto annotations = tsc::classify::read_annotations(gold);
  auto eval = tsc::classify::evaluate(rows, annotations);
  for (const auto& c : eval.per_class) {
    std::printf("%-12s precision %.2f  recall %.2f  f-measure %.2f\n",
                c.label.c_str(), c.precision, c.recall, c.f_measure);
  }
  std::printf("%-12s precision %.2f  recall %.2f  f-measure %.2f  (n=%zu)\n",
              "macro", eval.macro_precision, eval.macro_recall, eval.macro_f,
              eval.evaluated);
  return 0;
}

// ---------------------------------------------------------------------------

struct LdaHyper {
  int32_t k = 150;
  double alpha = -1.0;
  double beta = 0.01;
  int32_t iterations = 1000;
  uint64_t seed = 1;
  std::string stopwords;
  int64_t min_count = 4;
};

struct BuiltCorpus {
  tsc::lda::Vocabulary vocab;
  tsc::lda::IndexedCorpus indexed;
};

BuiltCorpus build_indexed(const std::string& corpus_path, const LdaHyper& h) {
  auto rows = read_corpus_checked(corpus_path);
  std::vector<std::vector<std::string>> docs;
  docs.reserve(rows.size());
  for (const auto& r : rows) docs.push_back(r.msg.tokens);
  auto stopwords = h.stopwords.empty() ? tsc::lda::default_stopwords()
                                       : tsc::lda::load_stopwords(h.stopwords);
  BuiltCorpus built{tsc::lda::build_vocabulary(docs, stopwords, h.min_count), {}};
  built.indexed = tsc::lda::index_corpus(rows, built.vocab);
  return built;
}

int run_lda_train(const std::string& corpus, const std::string& out, const LdaHyper& h) {
  auto built = build_indexed(corpus, h);
  tsc::lda::TrainOptions opts;
  opts.k = h.k;
  opts.alpha = h.alpha;
  opts.beta = h.beta;
  opts.iterations = h.iterations;
  opts.seed = h.seed;
  auto model = tsc::lda::train(built.indexed, built.vocab, opts);
  tsc::lda::save_model(out, model);
  std::cout << "trained k=" << model.k << " on " << model.doc_ids.size()
            << " documents, vocabulary " << model.vocab.size() << " ("
            << built.indexed.dropped_ids.size() << " empty documents dropped)\n";
  return 0;
}

int run_lda_select_k(const std::string& corpus, const std::string& k_values,
                     const std::string& out, const LdaHyper& h, int threads) {
  auto built = build_indexed(corpus, h);
  tsc::lda::TrainOptions base;
  base.alpha = h.alpha;
  base.beta = h.beta;
  base.iterations = h.iterations;
  base.seed = h.seed;
  auto metrics = tsc::lda::select_k(built.indexed, built.vocab,
                                    parse_int_list(k_values), base, threads);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw tsc::Error("cannot write file: " + out);
  f << "k,arun,cao,deveaud\n";
  for (const auto& m : metrics) {
    char arun[64], cao[64], deveaud[64];
    std::snprintf(arun, sizeof(arun), "%.17g", m.arun);
    if (m.cao) std::snprintf(cao, sizeof(cao), "%.17g", *m.cao);
    if (m.deveaud) std::snprintf(deveaud, sizeof(deveaud), "%.17g", *m.deveaud);
    f << m.k << "," << arun << "," << (m.cao ? cao : "") << ","
      << (m.deveaud ? deveaud : "") << "\n";
    std::printf("k=%-5d arun %-12.6g cao %-12.6g deveaud %-12.6g\n", m.k, m.arun,
                m.cao.value_or(std::numeric_limits<double>::quiet_NaN()),
                m.deveaud.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  return 0;
}

int run_lda_assign(const std::string& model_path, double cutoff, const std::string& out) {
  auto model = tsc::lda::load_model(model_path);
  auto assignments = tsc::lda::assign_topics(model, cutoff);
  tsc::lda::write_assignments_csv(out, assignments);
  size_t assigned = 0;
  for (const auto& a : assignments) {
    if (!a.topics.empty()) ++assigned;
  }
  std::cout << assigned << "/" << assignments.size() << " documents at cutoff "
            << cutoff << "\n";
  return 0;
}

int run_lda_topwords(const std::string& model_path, int n, const std::string& out) {
  auto model = tsc::lda::load_model(model_path);
  tsc::lda::write_topwords_csv(out, model, static_cast<size_t>(n));
  std::cout << "wrote top " << n << " words for " << model.k << " topics\n";
  return 0;
}

int run_lda_calibrate_sample(const std::string& model_path, const std::string& corpus,
                             const std::string& cutoffs, size_t n, uint64_t seed,
                             size_t words, const std::string& out) {
  auto model = tsc::lda::load_model(model_path);
  auto rows = read_corpus_checked(corpus);
  std::unordered_map<std::string, std::string> texts;
  for (const auto& r : rows) {
    std::string text;
    for (const auto& t : r.msg.tokens) {
      if (!text.empty()) text += ' ';
      text += t;
    }
    texts[r.msg.id] = text;
  }
  auto sample =
      tsc::lda::calibration_sample(model, parse_double_list(cutoffs), n, seed, texts, words);
  tsc::lda::write_calibration_csv(out, sample);
  std::cout << "wrote " << sample.size() << " rows; fill the verdict column with "
            << "adequate/inadequate and run `lda calibrate score`\n";
  return 0;
}

int run_lda_calibrate_score(const std::string& sheet, double threshold) {
  auto score = tsc::lda::calibration_score(sheet, threshold);
  for (const auto& [cutoff, frac] : score.adequacy) {
    const auto& [ok, total] = score.counts.at(cutoff);
    std::printf("cutoff %.4g: %zu/%zu adequate (%.1f%%)\n", cutoff, ok, total,
                100.0 * frac);
  }
  if (score.selected) {
    std::printf("selected cutoff: %.4g (lowest above %.0f%%)\n", *score.selected,
                100.0 * threshold);
  } else {
    std::printf("no cutoff exceeded %.0f%% adequacy\n", 100.0 * threshold);
  }
  return 0;
}

// ---------------------------------------------------------------------------

int run_survey(const std::string& respondents_path, const std::string& groups_path,
               const std::string& out) {
  tsc::survey::LoadStats stats;
  auto groups = tsc::survey::load_question_groups(groups_path);
  auto respondents = tsc::survey::load_respondents(respondents_path, &stats);
  auto estimates = tsc::survey::all_estimates(respondents, groups);
  tsc::survey::write_estimates_csv(out, estimates);
  size_t cells = 0;
  for (const auto& [g, by_state] : estimates) cells += by_state.size();
  std::cout << "loaded " << stats.loaded << " respondents (" << stats.skipped
            << " skipped), " << estimates.size() << " groups, " << cells
            << " state estimates\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string corpus, assignments, model, topwords, meta, survey, groups, out;
  int top_words = 20;
  bool normalize = false;
  bool permutation = false;
  int permutations = 10000;
  uint64_t seed = 1;
};

std::map<int32_t, std::vector<std::pair<std::string, double>>> analyze_topwords(
    const AnalyzeArgs& a) {
  if (!a.topwords.empty()) return tsc::lda::read_topwords_csv(a.topwords);
  if (a.model.empty()) {
    throw tsc::ConfigError("rq3 needs --topwords or --model for keyword mapping");
  }
  auto model = tsc::lda::load_model(a.model);
  std::map<int32_t, std::vector<std::pair<std::string, double>>> out;
  for (int32_t k = 0; k < model.k; ++k) {
    out[k] = tsc::lda::top_words(model, k, static_cast<size_t>(a.top_words));
  }
  return out;
}

int run_analyze(const std::string& which, const AnalyzeArgs& a) {
  auto rows = read_corpus_checked(a.corpus);
  auto assignments = tsc::lda::read_assignments_csv(a.assignments);
  std::vector<tsc::lda::TopicMeta> meta;
  if (!a.meta.empty()) meta = tsc::lda::read_topic_meta(a.meta);
  auto excluded = tsc::analytics::excluded_set(meta);
  auto messages = tsc::analytics::join_corpus(rows, assignments, excluded);

  std::filesystem::create_directories(a.out);
  tsc::analytics::PValueOptions popt;
  popt.permutation = a.permutation;
  popt.permutations = a.permutations;
  popt.seed = a.seed;

  if (which == "rq1") {
    auto consumer = tsc::analytics::topic_shares(messages, tsc::classify::kConsumer);
    auto promo = tsc::analytics::topic_shares(messages, tsc::classify::kPromotional);
    tsc::analytics::write_shares_csv(a.out + "/rq1_consumer.csv", consumer);
    tsc::analytics::write_shares_csv(a.out + "/rq1_promotional.csv", promo);
    std::cout << "consumer topics " << consumer.size() << ", promotional topics "
              << promo.size() << "\n";
    return 0;
  }
  if (which == "rq2") {
    auto volume = tsc::analytics::volume_correlations(messages, a.normalize, popt);
    tsc::analytics::write_volume_csv(a.out + "/rq2.csv", volume);
    std::cout << "correlated " << volume.size() << " topics across "
              << tsc::analytics::month_range(messages).size() << " months\n";
    return 0;
  }
  // rq3
  if (a.survey.empty() || a.groups.empty()) {
    throw tsc::ConfigError("rq3 needs --survey and --groups");
  }
  auto topwords = analyze_topwords(a);
  auto groups = tsc::survey::load_question_groups(a.groups);
  auto estimates = tsc::survey::read_estimates_csv(a.survey);
  auto kmap = tsc::analytics::keyword_map(topwords, groups, excluded);
  {
    std::ofstream f(a.out + "/rq3_keyword_map.csv", std::ios::binary);
    if (!f) throw tsc::Error("cannot write file: " + a.out + "/rq3_keyword_map.csv");
    f << "topic,group,question\n";
    for (const auto& e : kmap) {
      f << tsc::csv_row({std::to_string(e.topic), e.group, e.question});
    }
  }
  auto report = tsc::analytics::correlation_report(messages, meta, topwords, groups,
                                                   estimates, popt);
  tsc::analytics::write_report_csv(a.out + "/rq3_correlations.csv", report);
  size_t significant = 0;
  for (const auto& r : report) {
    if (r.significant) ++significant;
  }
  std::cout << report.size() << " correlation rows (" << significant
            << " significant), " << kmap.size() << " keyword matches\n";
  return 0;
}

// ---------------------------------------------------------------------------

int run_report_choropleth(const std::string& values_path, const std::string& geometry,
                          const std::string& out, const std::string& title) {
  auto csv = tsc::read_csv(values_path);
  if (csv.header.size() < 2) {
    throw tsc::ParseError("values file needs two columns (state,value): " + values_path);
  }
  std::map<std::string, double> values;
  for (const auto& row : csv.rows) {
    if (row.size() < 2) continue;
    auto v = tsc::parse_double(row[1]);
    if (!v) throw tsc::ParseError("bad value for state " + row[0] + ": " + row[1]);
    values[row[0]] = *v;
  }
  auto shapes = tsc::report::load_geometry(geometry);
  tsc::report::write_choropleth(out, values, shapes,
                                title.empty() ? "State values" : title);
  std::cout << "wrote " << out << " (" << values.size() << " states)\n";
  return 0;
}

int run_report_wordcloud(const std::string& topwords_path, int32_t topic,
                         const std::string& out) {
  auto topwords = tsc::lda::read_topwords_csv(topwords_path);
  auto it = topwords.find(topic);
  if (it == topwords.end()) {
    throw tsc::ConfigError("topic " + std::to_string(topic) + " not in " + topwords_path);
  }
  auto cloud = tsc::report::render_wordcloud_data(it->second);
  tsc::report::write_wordcloud_csv(out, cloud);
  std::cout << "wrote " << out << " (" << cloud.size() << " words)\n";
  return 0;
}

// ---------------------------------------------------------------------------

int run_synth_corpus(const std::string& spec_path, const std::string& out_dir) {
  auto spec = tsc::synth::load_corpus_spec(spec_path);
  std::filesystem::create_directories(out_dir);
  auto truth = tsc::synth::generate_corpus(spec, out_dir + "/messages.jsonl");
  tsc::synth::save_truth(out_dir + "/truth.json", truth);
  // Every generated token matches the w* prefix, so one pattern keeps all
  // messages relevant when the synthetic corpus is pushed through ingest.
  {
    std::ofstream kw(out_dir + "/keywords.txt", std::ios::binary);
    if (!kw) throw tsc::Error("cannot write file: " + out_dir + "/keywords.txt");
    kw << "# synthetic corpus: every token starts with w\nw*\n";
  }
  std::cout << "generated " << truth.docs.size() << " messages, k=" << truth.k
            << ", v=" << truth.v << " -> " << out_dir << "\n";
  return 0;
}

int run_synth_survey(const std::string& truth_path, const std::string& groups_path,
                     std::string group_id, int32_t topic, double target_rho,
                     uint64_t seed, int per_state, const std::string& out) {
  auto truth = tsc::synth::load_truth(truth_path);
  auto groups = tsc::survey::load_question_groups(groups_path);
  if (groups.empty()) throw tsc::ConfigError("question group file has no groups");
  if (group_id.empty()) group_id = groups.front().id;
  auto result = tsc::synth::plant_geo_correlation(truth, groups, group_id, topic,
                                                  target_rho, seed, per_state, out);
  std::printf("planted rho %.3f (target %.3f) for topic %d in group %s, sigma %.4g\n",
              result.achieved_rho, result.target_rho, result.topic,
              result.group.c_str(), result.sigma);
  return 0;
}

// ---------------------------------------------------------------------------

int run_pipeline(const std::string& config_path, const std::string& out_dir,
                 std::optional<int> threads, std::optional<uint64_t> seed) {
  auto cfg = tsc::pipeline::load_config(config_path);
  auto result = tsc::pipeline::run(cfg, out_dir, threads, seed);
  std::cout << "pipeline complete: " << result.manifest.stages.size()
            << " stages -> " << out_dir << "/manifest.json\n";
  return 0;
}

int run_kernels_info() {
  std::cout << "active: " << tsc::kernels::active().name << "\n";
  std::cout << "available:";
  for (const auto* v : tsc::kernels::available()) std::cout << " " << v->name;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topicscope: mine consumer health topics from short messages"};
  app.require_subcommand(1);

  // --- ingest ---
  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "parse, dedup, filter and clean raw messages");
  ingest->add_option("--input", ingest_args.inputs, "input file or glob (repeatable)")
      ->required();
  ingest->add_option("--keywords", ingest_args.keywords, "keyword pattern file")->required();
  ingest->add_option("--out", ingest_args.out, "clean corpus output (jsonl)")->required();
  ingest->add_option("--report", ingest_args.report, "counts report output (json)");

  // --- geocode ---
  std::string geo_corpus, geo_gaz, geo_out, geo_stats;
  double geo_radius = 100.0;
  auto* geocode = app.add_subcommand("geocode", "resolve messages to US states");
  geocode->add_option("--corpus", geo_corpus, "corpus file")->required();
  geocode->add_option("--gazetteer", geo_gaz, "gazetteer tsv")->required();
  geocode->add_option("--out", geo_out, "output corpus with state column")->required();
  geocode->add_option("--stats", geo_stats, "per-tier resolution counts (json)");
  geocode->add_option("--radius-km", geo_radius, "max distance for coordinate matches");

  // --- classify ---
  std::string cls_corpus, cls_out, cls_gold;
  auto* classify = app.add_subcommand("classify", "label messages promotional or consumer");
  classify->add_option("--corpus", cls_corpus, "corpus file")->required();
  classify->add_option("--out", cls_out, "output corpus with class column");
  auto* classify_eval = classify->add_subcommand("eval", "score against gold annotations");
  classify_eval->add_option("--gold", cls_gold, "annotation csv (id,label)")->required();

  // --- lda ---
  auto* lda = app.add_subcommand("lda", "topic model training and use");
  lda->require_subcommand(1);
  LdaHyper hyper;
  std::string lda_corpus, lda_out, lda_model, lda_kvalues;
  int lda_threads = 1;

  auto add_hyper = [&hyper](CLI::App* cmd, bool with_k) {
    if (with_k) cmd->add_option("--k", hyper.k, "number of topics");
    cmd->add_option("--alpha", hyper.alpha, "doc-topic prior (negative = 50/K)");
    cmd->add_option("--beta", hyper.beta, "topic-word prior");
    cmd->add_option("--iterations", hyper.iterations, "Gibbs sweeps");
    cmd->add_option("--seed", hyper.seed, "RNG seed");
    cmd->add_option("--stopwords", hyper.stopwords, "stopword file (default built-in)");
    cmd->add_option("--min-count", hyper.min_count, "minimum token frequency");
  };

  auto* lda_train = lda->add_subcommand("train", "train a model");
  lda_train->add_option("--corpus", lda_corpus, "clean corpus")->required();
  lda_train->add_option("--out", lda_out, "model output")->required();
  add_hyper(lda_train, true);

  auto* lda_select = lda->add_subcommand("select-k", "evaluate candidate topic counts");
  lda_select->add_option("--corpus", lda_corpus, "clean corpus")->required();
  lda_select->add_option("--k-values", lda_kvalues, "comma-separated candidates")->required();
  lda_select->add_option("--out", lda_out, "metrics csv")->required();
  lda_select->add_option("--threads", lda_threads, "parallel candidate models");
  add_hyper(lda_select, false);

  double lda_cutoff = 0.15;
  auto* lda_assign = lda->add_subcommand("assign", "assign topics above a cutoff");
  lda_assign->add_option("--model", lda_model, "model file")->required();
  lda_assign->add_option("--out", lda_out, "assignments csv")->required();
  lda_assign->add_option("--cutoff", lda_cutoff, "probability cutoff");

  int lda_topn = 20;
  auto* lda_topwords = lda->add_subcommand("topwords", "export per-topic top words");
  lda_topwords->add_option("--model", lda_model, "model file")->required();
  lda_topwords->add_option("--out", lda_out, "topwords csv")->required();
  lda_topwords->add_option("--n", lda_topn, "words per topic");

  auto* lda_cal = lda->add_subcommand("calibrate", "cutoff calibration sheets");
  lda_cal->require_subcommand(1);
  std::string cal_cutoffs = "0.10,0.15,0.20";
  size_t cal_n = 30, cal_words = 10;
  uint64_t cal_seed = 7;
  std::string cal_sheet;
  double cal_threshold = 0.80;
  auto* cal_sample = lda_cal->add_subcommand("sample", "draw documents for review");
  cal_sample->add_option("--model", lda_model, "model file")->required();
  cal_sample->add_option("--corpus", lda_corpus, "clean corpus (for text)")->required();
  cal_sample->add_option("--out", lda_out, "review sheet csv")->required();
  cal_sample->add_option("--cutoffs", cal_cutoffs, "comma-separated cutoffs");
  cal_sample->add_option("--n", cal_n, "documents per cutoff");
  cal_sample->add_option("--seed", cal_seed, "sampling seed");
  cal_sample->add_option("--words", cal_words, "top words shown per topic");
  auto* cal_score = lda_cal->add_subcommand("score", "score a filled review sheet");
  cal_score->add_option("--sheet", cal_sheet, "filled review sheet csv")->required();
  cal_score->add_option("--threshold", cal_threshold, "adequacy threshold");

  // --- survey ---
  std::string sv_resp, sv_groups, sv_out;
  auto* survey = app.add_subcommand("survey", "weighted survey estimates");
  survey->require_subcommand(1);
  auto* sv_est = survey->add_subcommand("estimates", "per-state question group estimates");
  sv_est->add_option("--respondents", sv_resp, "respondent csv")->required();
  sv_est->add_option("--groups", sv_groups, "question group config (json)")->required();
  sv_est->add_option("--out", sv_out, "estimates csv")->required();

  // --- analyze ---
  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "research-question outputs");
  analyze->require_subcommand(1);
  std::vector<CLI::App*> rqs = {
      analyze->add_subcommand("rq1", "topic volume ranking per class"),
      analyze->add_subcommand("rq2", "promotional vs consumer monthly correlation"),
      analyze->add_subcommand("rq3", "topic prevalence vs survey estimates"),
  };
  for (auto* rq : rqs) {
    rq->add_option("--corpus", an.corpus, "classified corpus")->required();
    rq->add_option("--assignments", an.assignments, "assignments csv")->required();
    rq->add_option("--meta", an.meta, "topic annotations csv");
    rq->add_option("--out", an.out, "output directory")->required();
    rq->add_option("--seed", an.seed, "seed for permutation p-values");
    rq->add_flag("--permutation", an.permutation, "permutation p-values");
    rq->add_option("--permutations", an.permutations, "permutation count");
  }
  rqs[1]->add_flag("--normalize", an.normalize, "normalize by monthly class volume");
  rqs[2]->add_option("--model", an.model, "model file (for keyword mapping)");
  rqs[2]->add_option("--topwords", an.topwords, "topwords csv (alternative to --model)");
  rqs[2]->add_option("--top-words", an.top_words, "words per topic when using --model");
  rqs[2]->add_option("--survey", an.survey, "survey estimates csv");
  rqs[2]->add_option("--groups", an.groups, "question group config (json)");

  // --- report ---
  auto* report = app.add_subcommand("report", "figures and figure data");
  report->require_subcommand(1);
  std::string rp_values, rp_geometry, rp_out, rp_title, rp_topwords;
  int32_t rp_topic = 0;
  auto* rp_choro = report->add_subcommand("choropleth", "SVG state map from values");
  rp_choro->add_option("--values", rp_values, "csv with state,value columns")->required();
  rp_choro->add_option("--geometry", rp_geometry, "state outlines (geojson)")->required();
  rp_choro->add_option("--out", rp_out, "output svg")->required();
  rp_choro->add_option("--title", rp_title, "figure title");
  auto* rp_cloud = report->add_subcommand("wordcloud", "word cloud data for a topic");
  rp_cloud->add_option("--topwords", rp_topwords, "topwords csv")->required();
  rp_cloud->add_option("--topic", rp_topic, "topic index")->required();
  rp_cloud->add_option("--out", rp_out, "output csv")->required();

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "synthetic corpora with ground truth");
  synth->require_subcommand(1);
  std::string syn_spec, syn_out, syn_truth, syn_groups, syn_group;
  int32_t syn_topic = 0;
  double syn_rho = 0.9;
  uint64_t syn_seed = 7;
  int syn_per_state = 400;
  auto* syn_corpus = synth->add_subcommand("corpus", "generate a corpus and its truth");
  syn_corpus->add_option("--spec", syn_spec, "generator spec (json)")->required();
  syn_corpus->add_option("--out", syn_out, "output directory")->required();
  auto* syn_survey = synth->add_subcommand("survey", "plant a survey correlation");
  syn_survey->add_option("--truth", syn_truth, "ground truth json")->required();
  syn_survey->add_option("--groups", syn_groups, "question group config (json)")->required();
  syn_survey->add_option("--out", syn_out, "respondent csv")->required();
  syn_survey->add_option("--target-rho", syn_rho, "target rank correlation")->required();
  syn_survey->add_option("--group", syn_group, "group id (default: first)");
  syn_survey->add_option("--topic", syn_topic, "true topic index");
  syn_survey->add_option("--seed", syn_seed, "noise seed");
  syn_survey->add_option("--respondents-per-state", syn_per_state, "sample size per state");

  // --- pipeline ---
  auto* pipeline = app.add_subcommand("pipeline", "run all stages with caching");
  pipeline->require_subcommand(1);
  std::string pl_config, pl_out;
  int pl_threads = 0;
  uint64_t pl_seed = 0;
  auto* pl_run = pipeline->add_subcommand("run", "execute the configured pipeline");
  pl_run->add_option("--config", pl_config, "pipeline config (json)")->required();
  pl_run->add_option("--out", pl_out, "output directory")->required();
  auto* pl_threads_opt = pl_run->add_option("--threads", pl_threads, "worker threads");
  auto* pl_seed_opt = pl_run->add_option("--seed", pl_seed, "override config seed");

  // --- kernels ---
  auto* kernels = app.add_subcommand("kernels", "SIMD kernel variants");
  kernels->require_subcommand(1);
  kernels->add_subcommand("info", "print available and active variants");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (geocode->parsed()) return run_geocode(geo_corpus, geo_gaz, geo_out, geo_stats, geo_radius);
    if (classify->parsed()) {
      if (classify_eval->parsed()) return run_classify_eval(cls_corpus, cls_gold);
      if (cls_out.empty()) throw tsc::ConfigError("classify needs --out (or the eval subcommand)");
      return run_classify(cls_corpus, cls_out);
    }
    if (lda->parsed()) {
      if (lda_train->parsed()) return run_lda_train(lda_corpus, lda_out, hyper);
      if (lda_select->parsed())
        return run_lda_select_k(lda_corpus, lda_kvalues, lda_out, hyper, lda_threads);
      if (lda_assign->parsed()) return run_lda_assign(lda_model, lda_cutoff, lda_out);
      if (lda_topwords->parsed()) return run_lda_topwords(lda_model, lda_topn, lda_out);
      if (cal_sample->parsed())
        return run_lda_calibrate_sample(lda_model, lda_corpus, cal_cutoffs, cal_n,
                                        cal_seed, cal_words, lda_out);
      if (cal_score->parsed()) return run_lda_calibrate_score(cal_sheet, cal_threshold);
    }
    if (survey->parsed()) return run_survey(sv_resp, sv_groups, sv_out);
    if (analyze->parsed()) {
      for (size_t i = 0; i < rqs.size(); ++i) {
        if (rqs[i]->parsed()) return run_analyze("rq" + std::to_string(i + 1), an);
      }
    }
    if (report->parsed()) {
      if (rp_choro->parsed())
        return run_report_choropleth(rp_values, rp_geometry, rp_out, rp_title);
      if (rp_cloud->parsed()) return run_report_wordcloud(rp_topwords, rp_topic, rp_out);
    }
    if (synth->parsed()) {
      if (syn_corpus->parsed()) return run_synth_corpus(syn_spec, syn_out);
      if (syn_survey->parsed())
        return run_synth_survey(syn_truth, syn_groups, syn_group, syn_topic, syn_rho,
                                syn_seed, syn_per_state, syn_out);
    }
    if (pipeline->parsed() && pl_run->parsed()) {
      std::optional<int> threads;
      std::optional<uint64_t> seed;
      if (pl_threads_opt->count() > 0) threads = pl_threads;
      if (pl_seed_opt->count() > 0) seed = pl_seed;
      return run_pipeline(pl_config, pl_out, threads, seed);
    }
    if (kernels->parsed()) return run_kernels_info();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
