#include "tsc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "tsc/csv.hpp"
#include "tsc/geocode.hpp"
#include "tsc/ingest.hpp"
#include "tsc/kernels.hpp"
#include "tsc/record.hpp"
#include "tsc/rng.hpp"
#include "tsc/states.hpp"
#include "tsc/stats.hpp"
#include "tsc/util.hpp"

namespace tsc::synth {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string title_case(std::string_view folded) {
  std::string out(folded);
  bool start = true;
  for (char& c : out) {
    if (start && c >= 'a' && c <= 'z') c = char(c - 'a' + 'A');
    start = c == ' ';
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Samplers

double normal(std::mt19937_64& rng) {
  double u1 = 1.0 - uniform_double(rng);  // (0,1], keeps the log finite
  double u2 = uniform_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double gamma_draw(std::mt19937_64& rng, double shape) {
  if (shape <= 0.0) throw StatsError("gamma shape must be positive");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back (Marsaglia-Tsang section 6).
    double u = 1.0 - uniform_double(rng);
    return gamma_draw(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = normal(rng);
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = 1.0 - uniform_double(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> dirichlet(std::mt19937_64& rng, const std::vector<double>& alpha) {
  std::vector<double> out(alpha.size());
  double sum = 0.0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    out[i] = gamma_draw(rng, alpha[i]);
    sum += out[i];
  }
  if (sum <= 0.0) {
    // All draws underflowed (tiny concentrations); fall back to uniform.
    std::fill(out.begin(), out.end(), 1.0 / double(out.size()));
    return out;
  }
  for (double& v : out) v /= sum;
  return out;
}

int32_t poisson(std::mt19937_64& rng, double mean) {
  // Knuth's product method; fine for the small means we use.
  double limit = std::exp(-mean);
  double product = 1.0;
  int32_t count = -1;
  do {
    product *= uniform_double(rng);
    ++count;
  } while (product > limit);
  return count;
}

int32_t categorical(std::mt19937_64& rng, const std::vector<double>& probs) {
  double total = 0.0;
  for (double p : probs) total += p;
  double u = uniform_double(rng) * total;
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return int32_t(i);
  }
  return int32_t(probs.size()) - 1;
}

std::string word_token(int32_t w, int32_t v) {
  int width = 1;
  for (int32_t x = v - 1; x >= 10; x /= 10) ++width;
  char buf[24];
  std::snprintf(buf, sizeof(buf), "w%0*d", width, w);
  return buf;
}

int32_t parse_word_token(const std::string& token) {
  if (token.size() < 2 || token[0] != 'w') return -1;
  for (size_t i = 1; i < token.size(); ++i)
    if (token[i] < '0' || token[i] > '9') return -1;
  auto v = parse_int(token.substr(1));
  return v ? int32_t(*v) : -1;
}

// ---------------------------------------------------------------------------
// Spec file

CorpusSpec load_corpus_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus spec: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("corpus spec must be a JSON object: " + path);
  CorpusSpec spec;
  auto num = [&](const char* key, double fallback) {
    return j.contains(key) ? j[key].get<double>() : fallback;
  };
  spec.seed = uint64_t(num("seed", double(spec.seed)));
  spec.k = int32_t(num("k", spec.k));
  spec.v = int32_t(num("v", spec.v));
  spec.d = int32_t(num("d", spec.d));
  spec.mean_doc_len = num("mean_doc_len", spec.mean_doc_len);
  spec.alpha = num("alpha", spec.alpha);
  spec.promotional_fraction = num("promotional_fraction", spec.promotional_fraction);
  spec.cutoff = num("cutoff", spec.cutoff);
  spec.state_bias_spread = num("state_bias_spread", spec.state_bias_spread);
  spec.coordinate_fraction = num("coordinate_fraction", spec.coordinate_fraction);
  spec.place_name_fraction = num("place_name_fraction", spec.place_name_fraction);
  spec.months = int32_t(num("months", spec.months));
  if (j.contains("start_month")) spec.start_month = j["start_month"].get<std::string>();
  if (j.contains("gazetteer")) spec.gazetteer = j["gazetteer"].get<std::string>();
  if (j.contains("states")) {
    for (const auto& [state, weight] : j["states"].items()) {
      if (!valid_state_code(state)) throw ConfigError("unknown state in spec: " + state);
      spec.state_weights[state] = weight.get<double>();
    }
  }
  if (spec.k < 1 || spec.v < spec.k || spec.d < 1)
    throw ConfigError("corpus spec needs k >= 1, v >= k, d >= 1");
  if (spec.promotional_fraction < 0.0 || spec.promotional_fraction > 1.0)
    throw ConfigError("promotional_fraction must be in [0,1]");
  return spec;
}

// ---------------------------------------------------------------------------
// Corpus generation

namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  const auto& kern = kernels::active();
  double num = kern.dot(a.data(), b.data(), a.size());
  double na = std::sqrt(kern.dot(a.data(), a.data(), a.size()));
  double nb = std::sqrt(kern.dot(b.data(), b.data(), b.size()));
  return num / (na * nb);
}

// Block-structured topics: 90% of each row's mass spread over its own word
// block, 10% uniform background. Keeps pairwise cosines well under 0.2.
std::vector<std::vector<double>> make_phi_true(std::mt19937_64& rng, int32_t k,
                                               int32_t v) {
  std::vector<std::vector<double>> phi(static_cast<size_t>(k),
                                       std::vector<double>(static_cast<size_t>(v)));
  for (int32_t topic = 0; topic < k; ++topic) {
    size_t lo = size_t(topic) * size_t(v) / size_t(k);
    size_t hi = size_t(topic + 1) * size_t(v) / size_t(k);
    std::vector<double> block = dirichlet(rng, std::vector<double>(hi - lo, 1.0));
    for (size_t w = 0; w < size_t(v); ++w) phi[size_t(topic)][w] = 0.1 / double(v);
    for (size_t w = lo; w < hi; ++w) phi[size_t(topic)][w] += 0.9 * block[w - lo];
  }
  if (k >= 2) {
    for (int32_t i = 0; i < k; ++i)
      for (int32_t j = i + 1; j < k; ++j)
        if (cosine(phi[size_t(i)], phi[size_t(j)]) > 0.2)
          throw StatsError("planted topics are not well separated");
  }
  return phi;
}

struct FlagCombo {
  bool url, quote, retweet;
};

// Figure-2 tree preimages per class.
constexpr FlagCombo kPromotionalCombos[] = {
    {true, false, false}, {true, false, true}, {true, true, true}};
constexpr FlagCombo kConsumerCombos[] = {{false, false, false},
                                         {false, false, true},
                                         {false, true, false},
                                         {false, true, true},
                                         {true, true, false}};

}  // namespace

GroundTruth generate_corpus(const CorpusSpec& spec, const std::string& corpus_path) {
  std::mt19937_64 rng(spec.seed);

  GroundTruth truth;
  truth.seed = spec.seed;
  truth.k = spec.k;
  truth.v = spec.v;
  truth.cutoff = spec.cutoff;
  truth.phi_true = make_phi_true(rng, spec.k, spec.v);

  // States, their sampling weights, and per-state topic biases.
  std::vector<std::string> states;
  std::vector<double> state_probs;
  if (spec.state_weights.empty()) {
    for (const auto& s : kStates) {
      states.emplace_back(s.code);
      state_probs.push_back(1.0);
    }
  } else {
    for (const auto& [state, weight] : spec.state_weights) {
      if (weight < 0.0) throw ConfigError("negative state weight: " + state);
      states.push_back(state);
      state_probs.push_back(weight);
    }
  }
  std::vector<std::vector<double>> state_alpha(states.size());
  for (size_t s = 0; s < states.size(); ++s) {
    std::mt19937_64 srng(derive_seed(spec.seed, 0x5741 + s));
    auto& alpha = state_alpha[s];
    alpha.resize(size_t(spec.k));
    for (int32_t topic = 0; topic < spec.k; ++topic)
      alpha[size_t(topic)] =
          spec.alpha * std::exp(spec.state_bias_spread * normal(srng));
  }

  std::optional<geocode::Gazetteer> gaz;
  std::map<std::string, std::vector<const geocode::Place*>> state_places;
  if (!spec.gazetteer.empty()) {
    gaz = geocode::Gazetteer::load(spec.gazetteer);
    for (const auto& p : gaz->places()) state_places[p.state].push_back(&p);
  }

  // Month boundaries for timestamps.
  std::vector<int64_t> month_starts;
  {
    int year = int(*parse_int(spec.start_month.substr(0, 4)));
    int month = int(*parse_int(spec.start_month.substr(5, 2)));
    for (int32_t i = 0; i <= spec.months; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%04d-%02d-01T00:00:00Z", year, month);
      auto ts = parse_utc_timestamp(buf);
      if (!ts) throw ConfigError("bad start_month in corpus spec");
      month_starts.push_back(*ts);
      if (++month > 12) {
        month = 1;
        ++year;
      }
    }
  }

  std::ofstream out(corpus_path, std::ios::binary);
  if (!out) throw Error("cannot write synthetic corpus: " + corpus_path);

  int digits = 1;
  for (int32_t x = spec.d - 1; x >= 10; x /= 10) ++digits;

  std::map<std::string, std::map<int32_t, size_t>> state_topic_count;
  std::map<std::string, size_t> state_consumer_total;

  for (int32_t doc = 0; doc < spec.d; ++doc) {
    int32_t state_idx = categorical(rng, state_probs);
    const std::string& state = states[size_t(state_idx)];

    bool promotional = uniform_double(rng) < spec.promotional_fraction;
    FlagCombo combo = promotional
                          ? kPromotionalCombos[uniform_below(rng, 3)]
                          : kConsumerCombos[uniform_below(rng, 5)];

    std::vector<double> theta = dirichlet(rng, state_alpha[size_t(state_idx)]);
    int32_t len = std::max<int32_t>(1, poisson(rng, spec.mean_doc_len));

    std::string text;
    for (int32_t t = 0; t < len; ++t) {
      int32_t topic = categorical(rng, theta);
      int32_t word = categorical(rng, truth.phi_true[size_t(topic)]);
      if (!text.empty()) text.push_back(' ');
      text += word_token(word, spec.v);
    }
    if (combo.url) text += " https://t.co/" + hex64(uint64_t(doc)).substr(10);

    MessageRecord rec;
    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "syn-%0*d", digits, doc);
    rec.id = idbuf;
    rec.text = text;
    rec.lang = "en";
    rec.is_quote = combo.quote;
    rec.is_retweet = combo.retweet;
    rec.has_url = combo.url;
    rec.source_tag = "synth";

    int64_t month_idx = int64_t(uniform_below(rng, uint64_t(spec.months)));
    int64_t span = month_starts[size_t(month_idx) + 1] - month_starts[size_t(month_idx)];
    rec.created_at = month_starts[size_t(month_idx)] +
                     int64_t(uniform_below(rng, uint64_t(span)));

    std::string state_name = title_case(
        std::find_if(kStates.begin(), kStates.end(),
                     [&](const StateInfo& s) { return state == s.code; })
            ->name);
    double geo_draw = uniform_double(rng);
    auto places_it = state_places.find(state);
    if (geo_draw < spec.coordinate_fraction && places_it != state_places.end() &&
        !places_it->second.empty()) {
      const geocode::Place* p =
          places_it->second[uniform_below(rng, places_it->second.size())];
      rec.latitude = p->lat + (uniform_double(rng) - 0.5) * 0.1;
      rec.longitude = p->lon + (uniform_double(rng) - 0.5) * 0.1;
    } else if (geo_draw < spec.coordinate_fraction + spec.place_name_fraction) {
      rec.place_name = state_name;
    } else {
      rec.user_location = "Anytown, " + state_name;
    }

    out << ingest::record_to_json_line(rec) << '\n';

    TruthDoc td;
    td.id = rec.id;
    td.msg_class = promotional ? "promotional" : "consumer";
    td.state = state;
    std::vector<int32_t> order;
    for (int32_t topic = 0; topic < spec.k; ++topic)
      if (theta[size_t(topic)] >= spec.cutoff) order.push_back(topic);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      if (theta[size_t(a)] != theta[size_t(b)])
        return theta[size_t(a)] > theta[size_t(b)];
      return a < b;
    });
    td.topics = std::move(order);

    if (!promotional) {
      ++state_consumer_total[state];
      for (int32_t topic : td.topics) ++state_topic_count[state][topic];
    }
    truth.docs.push_back(std::move(td));
  }
  if (!out) throw Error("short write: " + corpus_path);

  for (int32_t topic = 0; topic < spec.k; ++topic) {
    auto& per_state = truth.state_prevalence[topic];
    for (const auto& [state, total] : state_consumer_total) {
      size_t carrying = 0;
      if (auto it = state_topic_count.find(state); it != state_topic_count.end())
        if (auto jt = it->second.find(topic); jt != it->second.end())
          carrying = jt->second;
      per_state[state] = double(carrying) / double(total);
    }
  }
  return truth;
}

// ---------------------------------------------------------------------------
// Truth persistence

void save_truth(const std::string& path, const GroundTruth& truth) {
  json j;
  j["seed"] = truth.seed;
  j["k"] = truth.k;
  j["v"] = truth.v;
  j["cutoff"] = truth.cutoff;
  j["phi_true"] = truth.phi_true;
  json docs = json::array();
  for (const auto& d : truth.docs) {
    json row;
    row["id"] = d.id;
    row["class"] = d.msg_class;
    row["state"] = d.state;
    row["topics"] = d.topics;
    docs.push_back(std::move(row));
  }
  j["docs"] = std::move(docs);
  json prev;
  for (const auto& [topic, per_state] : truth.state_prevalence)
    prev[std::to_string(topic)] = per_state;
  j["state_prevalence"] = std::move(prev);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write ground truth: " + path);
  out << j.dump() << '\n';
}

GroundTruth load_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ground truth: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError("bad ground-truth file: " + path);
  GroundTruth truth;
  truth.seed = j.at("seed").get<uint64_t>();
  truth.k = j.at("k").get<int32_t>();
  truth.v = j.at("v").get<int32_t>();
  truth.cutoff = j.at("cutoff").get<double>();
  truth.phi_true = j.at("phi_true").get<std::vector<std::vector<double>>>();
  for (const auto& row : j.at("docs")) {
    TruthDoc d;
    d.id = row.at("id").get<std::string>();
    d.msg_class = row.at("class").get<std::string>();
    d.state = row.at("state").get<std::string>();
    d.topics = row.at("topics").get<std::vector<int32_t>>();
    truth.docs.push_back(std::move(d));
  }
  for (const auto& [topic, per_state] : j.at("state_prevalence").items()) {
    truth.state_prevalence[int32_t(*parse_int(topic))] =
        per_state.get<std::map<std::string, double>>();
  }
  return truth;
}

// ---------------------------------------------------------------------------
// Survey planting

PlantResult plant_geo_correlation(const GroundTruth& truth,
                                  const std::vector<survey::QuestionGroup>& groups,
                                  const std::string& group_id, int32_t topic,
                                  double target_rho, uint64_t seed,
                                  int respondents_per_state,
                                  const std::string& out_csv) {
  if (std::fabs(target_rho) > 0.95)
    throw ConfigError("target rank correlation must be within [-0.95, 0.95]");
  auto prev_it = truth.state_prevalence.find(topic);
  if (prev_it == truth.state_prevalence.end())
    throw ConfigError("topic missing from ground truth: " + std::to_string(topic));
  const auto& prevalence = prev_it->second;
  if (prevalence.size() < 20)
    throw ConfigError("need at least 20 states with consumer messages");

  const survey::QuestionGroup* target_group = nullptr;
  for (const auto& qg : groups)
    if (qg.id == group_id) target_group = &qg;
  if (!target_group) throw ConfigError("unknown question group: " + group_id);

  std::vector<std::string> state_order;
  std::vector<double> p;
  for (const auto& [state, value] : prevalence) {
    state_order.push_back(state);
    p.push_back(value);
  }

  std::mt19937_64 rng(derive_seed(seed, 0x47454fULL));
  std::vector<double> noise(p.size());
  for (double& g : noise) g = normal(rng);

  double sign = target_rho < 0.0 ? -1.0 : 1.0;
  auto basis_at = [&](double sigma) {
    std::vector<double> e(p.size());
    for (size_t i = 0; i < p.size(); ++i) e[i] = sign * p[i] + sigma * noise[i];
    return e;
  };
  auto rho_at = [&](double sigma) {
    return stats::spearman(basis_at(sigma), p).coefficient;
  };

  // Noise level calibrated by bisection: sigma 0 gives |rho| = 1 (up to
  // ties), large sigma drives it toward 0.
  double sd = 0.0;
  {
    double mean = 0.0;
    for (double v : p) mean += v;
    mean /= double(p.size());
    for (double v : p) sd += (v - mean) * (v - mean);
    sd = std::sqrt(sd / double(p.size()));
    if (sd <= 0.0) sd = 1.0;
  }
  double sigma = 0.0;
  if (target_rho == 0.0) {
    // Independent draws, no monotone component at all.
    sigma = 0.0;
  } else {
    double lo = 0.0, hi = 50.0 * sd;
    double target_abs = std::fabs(target_rho);
    if (std::fabs(rho_at(hi)) > target_abs) hi *= 10.0;
    for (int iter = 0; iter < 80; ++iter) {
      double mid = 0.5 * (lo + hi);
      if (std::fabs(rho_at(mid)) > target_abs) lo = mid;
      else hi = mid;
    }
    sigma = 0.5 * (lo + hi);
  }

  std::vector<double> basis;
  if (target_rho == 0.0) {
    basis = noise;  // pure noise, independent of prevalence
  } else {
    basis = basis_at(sigma);
  }

  PlantResult result;
  result.target_rho = target_rho;
  result.sigma = sigma;
  result.topic = topic;
  result.group = group_id;
  result.achieved_rho = stats::spearman(basis, p).coefficient;

  // Rank-preserving map of the basis into answer probabilities [0.15, 0.85].
  double lo = basis[0], hi = basis[0];
  for (double v : basis) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> prob(basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    prob[i] = hi > lo ? 0.15 + 0.7 * (basis[i] - lo) / (hi - lo) : 0.5;

  // Column order: every question of every group, config order.
  std::vector<const survey::Question*> all_questions;
  for (const auto& qg : groups)
    for (const auto& q : qg.questions) all_questions.push_back(&q);
  size_t target_questions = target_group->questions.size();

  std::ofstream out(out_csv, std::ios::binary);
  if (!out) throw Error("cannot write synthetic survey: " + out_csv);
  std::vector<std::string> header{"id", "state", "weight"};
  for (const auto* q : all_questions) header.push_back(q->id);
  out << csv_row(header);

  char buf[40];
  for (size_t s = 0; s < state_order.size(); ++s) {
    // P(any interested answer in the target group) == prob[s].
    double per_question =
        1.0 - std::pow(1.0 - prob[s], 1.0 / double(target_questions));
    for (int r = 0; r < respondents_per_state; ++r) {
      double weight = 0.5 + 3.5 * uniform_double(rng);
      std::vector<std::string> row;
      row.reserve(3 + all_questions.size());
      row.push_back("r-" + state_order[s] + "-" + std::to_string(r));
      row.push_back(state_order[s]);
      std::snprintf(buf, sizeof(buf), "%.6f", weight);
      row.push_back(buf);
      for (const auto* q : all_questions) {
        bool in_target = false;
        for (const auto& tq : target_group->questions)
          if (tq.id == q->id) in_target = true;
        double yes_prob = in_target ? per_question : 0.3;
        bool yes = uniform_double(rng) < yes_prob;
        // Use a code from the question's interested set so the config and
        // file stay consistent.
        row.push_back(yes ? *q->interested.begin() : "No");
      }
      out << csv_row(row);
    }
  }
  if (!out) throw Error("short write: " + out_csv);

  json meta;
  meta["target_rho"] = result.target_rho;
  meta["achieved_rho"] = result.achieved_rho;
  meta["sigma"] = result.sigma;
  meta["topic"] = result.topic;
  meta["group"] = result.group;
  meta["respondents_per_state"] = respondents_per_state;
  std::ofstream mout(out_csv + ".meta.json", std::ios::binary);
  if (!mout) throw Error("cannot write survey meta: " + out_csv + ".meta.json");
  mout << meta.dump(2) << '\n';
  return result;
}

// ---------------------------------------------------------------------------
// Alignment

TopicAlignment align_topics(const lda::Model& model, const GroundTruth& truth) {
  const size_t kl = size_t(model.k);
  const size_t kt = truth.phi_true.size();
  const size_t v = size_t(truth.v);

  // Learned rows re-expressed over the true vocabulary (pruned symbols get
  // zero mass).
  std::vector<std::vector<double>> learned(kl, std::vector<double>(v, 0.0));
  std::vector<int32_t> word_index(model.v(), -1);
  for (size_t w = 0; w < model.v(); ++w) {
    int32_t idx = parse_word_token(model.vocab[w]);
    if (idx >= 0 && size_t(idx) < v) word_index[w] = idx;
  }
  for (size_t topic = 0; topic < kl; ++topic) {
    auto row = model.phi_row(int32_t(topic));
    for (size_t w = 0; w < model.v(); ++w)
      if (word_index[w] >= 0) learned[topic][size_t(word_index[w])] = row[w];
  }

  std::vector<std::vector<double>> cos(kl, std::vector<double>(kt));
  for (size_t i = 0; i < kl; ++i)
    for (size_t j = 0; j < kt; ++j) cos[i][j] = cosine(learned[i], truth.phi_true[j]);

  TopicAlignment out;
  out.learned_to_true.assign(kl, -1);
  std::vector<bool> used_learned(kl, false), used_true(kt, false);
  size_t pairs = std::min(kl, kt);
  for (size_t n = 0; n < pairs; ++n) {
    double best = -2.0;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < kl; ++i) {
      if (used_learned[i]) continue;
      for (size_t j = 0; j < kt; ++j) {
        if (used_true[j]) continue;
        if (cos[i][j] > best) {
          best = cos[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    used_learned[bi] = true;
    used_true[bj] = true;
    out.learned_to_true[bi] = int32_t(bj);
    out.cosines.push_back(best);
  }
  for (double c : out.cosines) out.mean_cosine += c;
  if (!out.cosines.empty()) out.mean_cosine /= double(out.cosines.size());
  return out;
}

}  // namespace tsc::synth
