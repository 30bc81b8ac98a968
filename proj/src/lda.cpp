#include "tsc/lda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <unordered_set>

#include "tsc/csv.hpp"
#include "tsc/kernels.hpp"
#include "tsc/numerics.hpp"
#include "tsc/parallel.hpp"
#include "tsc/rng.hpp"

namespace tsc::lda {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_prob4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

double require_double(const std::string& s, const char* what) {
  auto v = parse_double(s);
  if (!v) throw ParseError(std::string("bad number in ") + what + ": " + s);
  return *v;
}

long long require_int(const std::string& s, const char* what) {
  auto v = parse_int(s);
  if (!v) throw ParseError(std::string("bad integer in ") + what + ": " + s);
  return *v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vocabulary

std::optional<int32_t> Vocabulary::lookup(const std::string& token) const {
  auto it = index.find(token);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> list = {
      "a",       "about",   "above",  "after",   "again",  "against", "all",
      "am",      "an",      "and",    "any",     "are",    "aren't",  "as",
      "at",      "be",      "because","been",    "before", "being",   "below",
      "between", "both",    "but",    "by",      "can",    "can't",   "cannot",
      "could",   "couldn't","did",    "didn't",  "do",     "does",    "doesn't",
      "doing",   "don't",   "down",   "during",  "each",   "few",     "for",
      "from",    "further", "had",    "hadn't",  "has",    "hasn't",  "have",
      "haven't", "having",  "he",     "he'd",    "he'll",  "he's",    "her",
      "here",    "here's",  "hers",   "herself", "him",    "himself", "his",
      "how",     "how's",   "i",      "i'd",     "i'll",   "i'm",     "i've",
      "if",      "in",      "into",   "is",      "isn't",  "it",      "it's",
      "its",     "itself",  "let's",  "me",      "more",   "most",    "mustn't",
      "my",      "myself",  "no",     "nor",     "not",    "of",      "off",
      "on",      "once",    "only",   "or",      "other",  "ought",   "our",
      "ours",    "ourselves","out",   "over",    "own",    "same",    "shan't",
      "she",     "she'd",   "she'll", "she's",   "should", "shouldn't","so",
      "some",    "such",    "than",   "that",    "that's", "the",     "their",
      "theirs",  "them",    "themselves","then", "there",  "there's", "these",
      "they",    "they'd",  "they'll","they're", "they've","this",    "those",
      "through", "to",      "too",    "under",   "until",  "up",      "very",
      "was",     "wasn't",  "we",     "we'd",    "we'll",  "we're",   "we've",
      "were",    "weren't", "what",   "what's",  "when",   "when's",  "where",
      "where's", "which",   "while",  "who",     "who's",  "whom",    "why",
      "why's",   "with",    "won't",  "would",   "wouldn't","you",    "you'd",
      "you'll",  "you're",  "you've", "your",    "yours",  "yourself",
      "yourselves",
  };
  return list;
}

std::vector<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stopword file: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = std::string(trim(line));
    if (word.empty() || word[0] == '#') continue;
    out.push_back(fold(word));
  }
  return out;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs,
                            const std::vector<std::string>& stopwords,
                            int64_t min_count) {
  std::unordered_set<std::string> stop(stopwords.begin(), stopwords.end());
  std::unordered_map<std::string, int64_t> freq;
  for (const auto& doc : docs)
    for (const auto& tok : doc) ++freq[tok];

  Vocabulary vocab;
  for (const auto& [tok, count] : freq) {
    if (count < min_count) continue;
    if (stop.count(tok)) continue;
    vocab.tokens.push_back(tok);
  }
  std::sort(vocab.tokens.begin(), vocab.tokens.end());
  vocab.frequency.resize(vocab.tokens.size());
  vocab.index.reserve(vocab.tokens.size() * 2);
  for (size_t i = 0; i < vocab.tokens.size(); ++i) {
    vocab.index[vocab.tokens[i]] = int32_t(i);
    vocab.frequency[i] = freq[vocab.tokens[i]];
  }
  if (vocab.tokens.empty()) throw ConfigError("vocabulary is empty after pruning");
  return vocab;
}

IndexedCorpus index_tokens(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& docs,
    const Vocabulary& vocab) {
  IndexedCorpus out;
  for (const auto& [id, tokens] : docs) {
    std::vector<int32_t> seq;
    seq.reserve(tokens.size());
    for (const auto& tok : tokens) {
      if (auto idx = vocab.lookup(tok)) seq.push_back(*idx);
    }
    if (seq.empty()) {
      out.dropped_ids.push_back(id);
    } else {
      out.doc_ids.push_back(id);
      out.docs.push_back(std::move(seq));
    }
  }
  return out;
}

IndexedCorpus index_corpus(const std::vector<ingest::CorpusRow>& rows,
                           const Vocabulary& vocab) {
  std::vector<std::pair<std::string, std::vector<std::string>>> docs;
  docs.reserve(rows.size());
  for (const auto& row : rows) docs.emplace_back(row.msg.id, row.msg.tokens);
  return index_tokens(docs, vocab);
}

// ---------------------------------------------------------------------------
// Model

double Model::phi(int32_t topic, int32_t word) const {
  return (double(n_wk[size_t(word) * size_t(k) + size_t(topic)]) + beta) /
         (double(n_k[size_t(topic)]) + double(v()) * beta);
}

double Model::theta(size_t doc, int32_t topic) const {
  return (double(n_dk[doc * size_t(k) + size_t(topic)]) + alpha) /
         (double(doc_len[doc]) + double(k) * alpha);
}

std::vector<double> Model::phi_row(int32_t topic) const {
  std::vector<double> row(v());
  double denom = double(n_k[size_t(topic)]) + double(v()) * beta;
  for (size_t w = 0; w < v(); ++w)
    row[w] = (double(n_wk[w * size_t(k) + size_t(topic)]) + beta) / denom;
  return row;
}

std::vector<double> Model::theta_row(size_t doc) const {
  std::vector<double> row(static_cast<size_t>(k));
  double denom = double(doc_len[doc]) + double(k) * alpha;
  const int32_t* counts = &n_dk[doc * size_t(k)];
  for (size_t j = 0; j < size_t(k); ++j) row[j] = (double(counts[j]) + alpha) / denom;
  return row;
}

Model train(const IndexedCorpus& corpus, const Vocabulary& vocab,
            const TrainOptions& opt, const SweepObserver& observer) {
  if (opt.k < 1) throw ConfigError("topic count must be >= 1");
  if (opt.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (corpus.docs.empty()) throw ConfigError("indexed corpus is empty");

  const size_t K = size_t(opt.k);
  const size_t V = vocab.size();
  const size_t D = corpus.docs.size();

  size_t total_tokens = 0;
  for (const auto& doc : corpus.docs) total_tokens += doc.size();
  if (K > total_tokens)
    std::cerr << "warning: more topics (" << K << ") than tokens ("
              << total_tokens << "); training is degenerate\n";

  Model m;
  m.k = opt.k;
  m.alpha = opt.alpha < 0.0 ? 50.0 / double(opt.k) : opt.alpha;
  m.beta = opt.beta;
  m.seed = opt.seed;
  m.iterations = opt.iterations;
  m.vocab = vocab.tokens;
  m.doc_ids = corpus.doc_ids;
  m.doc_len.resize(D);
  for (size_t d = 0; d < D; ++d) m.doc_len[d] = int32_t(corpus.docs[d].size());
  m.n_wk.assign(V * K, 0);
  m.n_k.assign(K, 0);
  m.n_dk.assign(D * K, 0);

  std::vector<int32_t> z(total_tokens);
  std::vector<size_t> doc_offset(D);
  {
    size_t off = 0;
    for (size_t d = 0; d < D; ++d) {
      doc_offset[d] = off;
      off += corpus.docs[d].size();
    }
  }

  std::mt19937_64 rng(opt.seed);
  for (size_t d = 0; d < D; ++d) {
    const auto& doc = corpus.docs[d];
    for (size_t t = 0; t < doc.size(); ++t) {
      int32_t topic = int32_t(uniform_below(rng, K));
      z[doc_offset[d] + t] = topic;
      ++m.n_dk[d * K + size_t(topic)];
      ++m.n_wk[size_t(doc[t]) * K + size_t(topic)];
      ++m.n_k[size_t(topic)];
    }
  }
  if (observer) observer(0, m);

  const kernels::Variant& kern = kernels::active();
  const double vbeta = double(V) * m.beta;
  std::vector<double> weights(K);

  for (int32_t sweep = 1; sweep <= opt.iterations; ++sweep) {
    for (size_t d = 0; d < D; ++d) {
      const auto& doc = corpus.docs[d];
      int32_t* dk = &m.n_dk[d * K];
      for (size_t t = 0; t < doc.size(); ++t) {
        const int32_t w = doc[t];
        int32_t& zt = z[doc_offset[d] + t];
        int32_t* wk = &m.n_wk[size_t(w) * K];
        --dk[size_t(zt)];
        --wk[size_t(zt)];
        --m.n_k[size_t(zt)];

        kern.gibbs_weights(dk, wk, m.n_k.data(), m.alpha, m.beta, vbeta,
                           weights.data(), K);
        // The prefix scan stays scalar and sequential everywhere; only the
        // elementwise weights come from the selected kernel.
        double total = 0.0;
        for (size_t j = 0; j < K; ++j) total += weights[j];
        double u = uniform_double(rng) * total;
        int32_t picked = int32_t(K) - 1;
        double acc = 0.0;
        for (size_t j = 0; j < K; ++j) {
          acc += weights[j];
          if (u < acc) {
            picked = int32_t(j);
            break;
          }
        }

        zt = picked;
        ++dk[size_t(picked)];
        ++wk[size_t(picked)];
        ++m.n_k[size_t(picked)];
      }
    }
    if (observer) observer(sweep, m);
  }
  return m;
}

Model permute_topics(const Model& model, const std::vector<int32_t>& perm) {
  const size_t K = size_t(model.k);
  if (perm.size() != K) throw ConfigError("permutation size must equal K");
  std::vector<bool> seen(K, false);
  for (int32_t p : perm) {
    if (p < 0 || size_t(p) >= K || seen[size_t(p)])
      throw ConfigError("not a permutation of topic indices");
    seen[size_t(p)] = true;
  }
  Model out = model;
  for (size_t w = 0; w < model.v(); ++w)
    for (size_t j = 0; j < K; ++j)
      out.n_wk[w * K + size_t(perm[j])] = model.n_wk[w * K + j];
  for (size_t j = 0; j < K; ++j) out.n_k[size_t(perm[j])] = model.n_k[j];
  for (size_t d = 0; d < model.d(); ++d)
    for (size_t j = 0; j < K; ++j)
      out.n_dk[d * K + size_t(perm[j])] = model.n_dk[d * K + j];
  return out;
}

// ---------------------------------------------------------------------------
// Persistence: little-endian binary, magic "TSCM", version 1.

namespace {

constexpr char kMagic[4] = {'T', 'S', 'C', 'M'};
constexpr uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ParseError("model file truncated");
  return v;
}

void write_string(std::ofstream& out, const std::string& s) {
  write_pod(out, uint32_t(s.size()));
  out.write(s.data(), std::streamsize(s.size()));
}

std::string read_string(std::ifstream& in) {
  uint32_t n = read_pod<uint32_t>(in);
  if (n > (1u << 20)) throw ParseError("model string length implausible");
  std::string s(n, '\0');
  in.read(s.data(), std::streamsize(n));
  if (!in) throw ParseError("model file truncated");
  return s;
}

}  // namespace

void save_model(const std::string& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model: " + path);
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  write_pod(out, model.k);
  write_pod(out, model.alpha);
  write_pod(out, model.beta);
  write_pod(out, model.seed);
  write_pod(out, model.iterations);
  write_pod(out, uint64_t(model.vocab.size()));
  for (const auto& tok : model.vocab) write_string(out, tok);
  write_pod(out, uint64_t(model.doc_ids.size()));
  for (const auto& id : model.doc_ids) write_string(out, id);
  out.write(reinterpret_cast<const char*>(model.doc_len.data()),
            std::streamsize(model.doc_len.size() * sizeof(int32_t)));
  out.write(reinterpret_cast<const char*>(model.n_wk.data()),
            std::streamsize(model.n_wk.size() * sizeof(int32_t)));
  out.write(reinterpret_cast<const char*>(model.n_dk.data()),
            std::streamsize(model.n_dk.size() * sizeof(int32_t)));
  if (!out) throw Error("short write: " + path);
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("not a model file: " + path);
  uint32_t version = read_pod<uint32_t>(in);
  if (version != kVersion)
    throw ParseError("unsupported model version " + std::to_string(version));
  Model m;
  m.k = read_pod<int32_t>(in);
  m.alpha = read_pod<double>(in);
  m.beta = read_pod<double>(in);
  m.seed = read_pod<uint64_t>(in);
  m.iterations = read_pod<int32_t>(in);
  if (m.k < 1) throw ParseError("model has invalid K");
  uint64_t v = read_pod<uint64_t>(in);
  m.vocab.reserve(v);
  for (uint64_t i = 0; i < v; ++i) m.vocab.push_back(read_string(in));
  uint64_t d = read_pod<uint64_t>(in);
  m.doc_ids.reserve(d);
  for (uint64_t i = 0; i < d; ++i) m.doc_ids.push_back(read_string(in));
  m.doc_len.resize(d);
  in.read(reinterpret_cast<char*>(m.doc_len.data()),
          std::streamsize(d * sizeof(int32_t)));
  m.n_wk.resize(v * uint64_t(m.k));
  in.read(reinterpret_cast<char*>(m.n_wk.data()),
          std::streamsize(m.n_wk.size() * sizeof(int32_t)));
  m.n_dk.resize(d * uint64_t(m.k));
  in.read(reinterpret_cast<char*>(m.n_dk.data()),
          std::streamsize(m.n_dk.size() * sizeof(int32_t)));
  if (!in) throw ParseError("model file truncated: " + path);
  m.n_k.assign(size_t(m.k), 0);
  for (size_t w = 0; w < m.v(); ++w)
    for (size_t j = 0; j < size_t(m.k); ++j)
      m.n_k[j] += m.n_wk[w * size_t(m.k) + j];
  return m;
}

// ---------------------------------------------------------------------------
// Selection metrics

namespace {

std::vector<std::vector<double>> phi_rows(const Model& m) {
  std::vector<std::vector<double>> rows(size_t(m.k));
  for (int32_t j = 0; j < m.k; ++j) rows[size_t(j)] = m.phi_row(j);
  return rows;
}

}  // namespace

double arun_metric(const Model& m) {
  const size_t K = size_t(m.k);
  const size_t V = m.v();

  std::vector<double> phi(K * V);
  for (size_t j = 0; j < K; ++j) {
    auto row = m.phi_row(int32_t(j));
    std::copy(row.begin(), row.end(), phi.begin() + std::ptrdiff_t(j * V));
  }
  std::vector<double> sv = numerics::singular_values_gram(phi, K, V);

  double sv_sum = 0.0;
  for (double s : sv) sv_sum += s;
  if (sv_sum <= 0.0) throw StatsError("degenerate topic-word matrix");
  for (double& s : sv) s /= sv_sum;

  // Document-length weighted topic proportions.
  std::vector<double> prop(K, 0.0);
  for (size_t d = 0; d < m.d(); ++d) {
    double len = double(m.doc_len[d]);
    double denom = len + double(m.k) * m.alpha;
    const int32_t* counts = &m.n_dk[d * K];
    for (size_t j = 0; j < K; ++j)
      prop[j] += len * (double(counts[j]) + m.alpha) / denom;
  }
  double prop_sum = 0.0;
  for (double p : prop) prop_sum += p;
  for (double& p : prop) p /= prop_sum;

  // Both spectra compared as sorted distributions.
  std::sort(sv.begin(), sv.end(), std::greater<>());
  std::sort(prop.begin(), prop.end(), std::greater<>());

  auto kl = [](const std::vector<double>& p, const std::vector<double>& q) {
    double out = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      out += p[i] * std::log(p[i] / std::max(q[i], 1e-300));
    }
    return out;
  };
  return kl(sv, prop) + kl(prop, sv);
}

double cao_metric(const Model& m) {
  if (m.k < 2) throw StatsError("pairwise metric needs K >= 2");
  const auto& kern = kernels::active();
  auto rows = phi_rows(m);
  const size_t K = rows.size(), V = m.v();
  std::vector<double> norm(K);
  for (size_t i = 0; i < K; ++i)
    norm[i] = std::sqrt(kern.dot(rows[i].data(), rows[i].data(), V));
  double total = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i < K; ++i) {
    for (size_t j = i + 1; j < K; ++j) {
      total += kern.dot(rows[i].data(), rows[j].data(), V) / (norm[i] * norm[j]);
      ++pairs;
    }
  }
  return total / double(pairs);
}

double deveaud_metric(const Model& m) {
  if (m.k < 2) throw StatsError("pairwise metric needs K >= 2");
  auto rows = phi_rows(m);
  const size_t K = rows.size(), V = m.v();
  double total = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i < K; ++i) {
    for (size_t j = i + 1; j < K; ++j) {
      const double* p = rows[i].data();
      const double* q = rows[j].data();
      // Jensen–Shannon divergence in nats; rows are beta-smoothed, so all
      // components are strictly positive.
      double jsd = 0.0;
      for (size_t w = 0; w < V; ++w) {
        double mid = 0.5 * (p[w] + q[w]);
        jsd += 0.5 * p[w] * std::log(p[w] / mid) + 0.5 * q[w] * std::log(q[w] / mid);
      }
      total += jsd;
      ++pairs;
    }
  }
  return total / double(pairs);
}

std::vector<KMetrics> select_k(const IndexedCorpus& corpus, const Vocabulary& vocab,
                               const std::vector<int32_t>& k_candidates,
                               const TrainOptions& base, int threads) {
  if (k_candidates.empty()) throw ConfigError("no candidate topic counts given");
  std::vector<KMetrics> out(k_candidates.size());
  parallel_for(k_candidates.size(), threads, [&](size_t i) {
    TrainOptions opt = base;
    opt.k = k_candidates[i];
    // Seed derived from the candidate value, so results don't depend on the
    // candidate list order.
    opt.seed = derive_seed(base.seed, uint64_t(k_candidates[i]));
    Model m = train(corpus, vocab, opt);
    KMetrics row;
    row.k = opt.k;
    row.arun = arun_metric(m);
    if (opt.k >= 2) {
      row.cao = cao_metric(m);
      row.deveaud = deveaud_metric(m);
    }
    out[i] = std::move(row);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Assignment, top words

std::vector<Assignment> assign_topics(const Model& model, double cutoff) {
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw ConfigError("cutoff must be in (0,1)");
  std::vector<Assignment> out;
  out.reserve(model.d());
  for (size_t d = 0; d < model.d(); ++d) {
    Assignment a;
    a.id = model.doc_ids[d];
    auto theta = model.theta_row(d);
    for (int32_t j = 0; j < model.k; ++j)
      if (theta[size_t(j)] >= cutoff) a.topics.emplace_back(j, theta[size_t(j)]);
    std::sort(a.topics.begin(), a.topics.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::pair<std::string, double>> top_words(const Model& model,
                                                      int32_t topic, size_t n) {
  if (topic < 0 || topic >= model.k) throw ConfigError("topic index out of range");
  auto row = model.phi_row(topic);
  std::vector<int32_t> order(model.v());
  for (size_t i = 0; i < order.size(); ++i) order[i] = int32_t(i);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    if (row[size_t(a)] != row[size_t(b)]) return row[size_t(a)] > row[size_t(b)];
    return a < b;  // vocabulary index breaks ties
  });
  size_t take = std::min(n, order.size());
  std::vector<std::pair<std::string, double>> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i)
    out.emplace_back(model.vocab[size_t(order[i])], row[size_t(order[i])]);
  return out;
}

void write_assignments_csv(const std::string& path,
                           const std::vector<Assignment>& assignments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write assignments: " + path);
  out << "id,topic,probability\n";
  for (const auto& a : assignments)
    for (const auto& [topic, prob] : a.topics)
      out << csv_row({a.id, std::to_string(topic), format_double(prob)});
}

std::vector<Assignment> read_assignments_csv(const std::string& path) {
  CsvFile csv = read_csv(path);
  int id_col = csv.column("id"), topic_col = csv.column("topic"),
      prob_col = csv.column("probability");
  if (id_col < 0 || topic_col < 0 || prob_col < 0)
    throw ParseError("assignments csv needs id, topic, probability: " + path);
  std::vector<Assignment> out;
  for (const auto& row : csv.rows) {
    const std::string& id = row[size_t(id_col)];
    if (out.empty() || out.back().id != id) out.push_back({id, {}});
    out.back().topics.emplace_back(
        int32_t(require_int(row[size_t(topic_col)], "assignments topic")),
        require_double(row[size_t(prob_col)], "assignments probability"));
  }
  return out;
}

void write_topwords_csv(const std::string& path, const Model& model, size_t n) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write top words: " + path);
  out << "topic,word,probability\n";
  for (int32_t j = 0; j < model.k; ++j)
    for (const auto& [word, prob] : top_words(model, j, n))
      out << csv_row({std::to_string(j), word, format_double(prob)});
}

std::map<int32_t, std::vector<std::pair<std::string, double>>> read_topwords_csv(
    const std::string& path) {
  CsvFile csv = read_csv(path);
  int topic_col = csv.column("topic"), word_col = csv.column("word"),
      prob_col = csv.column("probability");
  if (topic_col < 0 || word_col < 0 || prob_col < 0)
    throw ParseError("top-words csv needs topic, word, probability: " + path);
  std::map<int32_t, std::vector<std::pair<std::string, double>>> out;
  for (const auto& row : csv.rows) {
    out[int32_t(require_int(row[size_t(topic_col)], "top-words topic"))]
        .emplace_back(row[size_t(word_col)],
                      require_double(row[size_t(prob_col)], "top-words probability"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cutoff calibration

std::vector<CalibrationRow> calibration_sample(
    const Model& model, const std::vector<double>& cutoffs, size_t n,
    uint64_t seed, const std::unordered_map<std::string, std::string>& texts,
    size_t words_per_topic) {
  std::vector<CalibrationRow> rows;
  for (size_t ci = 0; ci < cutoffs.size(); ++ci) {
    double cutoff = cutoffs[ci];
    auto assignments = assign_topics(model, cutoff);
    std::vector<size_t> assigned;
    for (size_t i = 0; i < assignments.size(); ++i)
      if (!assignments[i].topics.empty()) assigned.push_back(i);
    if (n > assigned.size())
      throw ConfigError("sample size exceeds assigned documents at cutoff " +
                        format_prob4(cutoff));

    // Partial Fisher-Yates: first n entries become the sample.
    std::mt19937_64 rng(derive_seed(seed, ci));
    for (size_t i = 0; i < n; ++i) {
      size_t j = i + size_t(uniform_below(rng, assigned.size() - i));
      std::swap(assigned[i], assigned[j]);
    }

    for (size_t i = 0; i < n; ++i) {
      const Assignment& a = assignments[assigned[i]];
      CalibrationRow row;
      row.cutoff = cutoff;
      row.id = a.id;
      if (auto it = texts.find(a.id); it != texts.end()) row.text = it->second;
      std::string topics, words;
      for (const auto& [topic, prob] : a.topics) {
        if (!topics.empty()) topics += ';';
        topics += std::to_string(topic) + ":" + format_prob4(prob);
        if (!words.empty()) words += '|';
        words += std::to_string(topic) + ":";
        auto tw = top_words(model, topic, words_per_topic);
        for (size_t wi = 0; wi < tw.size(); ++wi) {
          if (wi) words += ' ';
          words += tw[wi].first;
        }
      }
      row.topics = std::move(topics);
      row.top_words = std::move(words);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_calibration_csv(const std::string& path,
                           const std::vector<CalibrationRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write calibration sheet: " + path);
  out << "cutoff,id,text,topics,top_words,verdict\n";
  for (const auto& r : rows)
    out << csv_row({format_prob4(r.cutoff), r.id, r.text, r.topics, r.top_words,
                    r.verdict});
}

std::optional<double> select_cutoff(const std::map<double, double>& adequacy,
                                    double threshold) {
  for (const auto& [cutoff, fraction] : adequacy)
    if (fraction > threshold) return cutoff;
  return std::nullopt;
}

CalibrationScore calibration_score(const std::string& sheet_path, double threshold) {
  CsvFile csv = read_csv(sheet_path);
  int cutoff_col = csv.column("cutoff"), verdict_col = csv.column("verdict");
  if (cutoff_col < 0 || verdict_col < 0)
    throw ParseError("calibration sheet needs cutoff and verdict columns");
  CalibrationScore score;
  for (const auto& row : csv.rows) {
    std::string verdict = fold(trim(row[size_t(verdict_col)]));
    if (verdict.empty()) continue;  // not yet adjudicated
    bool adequate;
    if (verdict == "adequate" || verdict == "yes" || verdict == "y" ||
        verdict == "1" || verdict == "true") {
      adequate = true;
    } else if (verdict == "inadequate" || verdict == "no" || verdict == "n" ||
               verdict == "0" || verdict == "false") {
      adequate = false;
    } else {
      throw ParseError("unknown verdict: " + verdict);
    }
    double cutoff = require_double(row[size_t(cutoff_col)], "calibration cutoff");
    auto& [good, total] = score.counts[cutoff];
    if (adequate) ++good;
    ++total;
  }
  for (const auto& [cutoff, counts] : score.counts)
    score.adequacy[cutoff] = double(counts.first) / double(counts.second);
  score.selected = select_cutoff(score.adequacy, threshold);
  return score;
}

// ---------------------------------------------------------------------------
// TopicMeta

namespace {

std::string join_multi(const std::vector<std::string>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(';');
    out += values[i];
  }
  return out;
}

std::vector<std::string> split_multi(const std::string& field) {
  std::vector<std::string> out;
  for (const auto& piece : split(field, ';')) {
    std::string v = std::string(trim(piece));
    if (!v.empty()) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<TopicMeta> read_topic_meta(const std::string& path) {
  CsvFile csv = read_csv(path);
  int topic_col = csv.column("topic");
  if (topic_col < 0) throw ParseError("topic meta needs a topic column: " + path);
  int label_col = csv.column("label");
  int quality_col = csv.column("quality");
  int excl_col = csv.column("excluded");
  int constructs_col = csv.column("constructs");
  int qg_col = csv.column("question_groups");
  std::vector<TopicMeta> out;
  for (const auto& row : csv.rows) {
    TopicMeta meta;
    meta.topic = int32_t(require_int(row[size_t(topic_col)], "topic meta topic"));
    if (label_col >= 0) meta.label = row[size_t(label_col)];
    if (quality_col >= 0) meta.quality = fold(trim(row[size_t(quality_col)]));
    if (excl_col >= 0) {
      std::string v = fold(trim(row[size_t(excl_col)]));
      meta.excluded = v == "true" || v == "yes" || v == "1";
    }
    if (constructs_col >= 0) meta.constructs = split_multi(row[size_t(constructs_col)]);
    if (qg_col >= 0) meta.question_groups = split_multi(row[size_t(qg_col)]);
    out.push_back(std::move(meta));
  }
  return out;
}

void write_topic_meta(const std::string& path, const std::vector<TopicMeta>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write topic meta: " + path);
  out << "topic,label,quality,excluded,constructs,question_groups\n";
  for (const auto& m : rows)
    out << csv_row({std::to_string(m.topic), m.label, m.quality,
                    m.excluded ? "true" : "false", join_multi(m.constructs),
                    join_multi(m.question_groups)});
}

}  // namespace tsc::lda
