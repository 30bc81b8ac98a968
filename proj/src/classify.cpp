#include "tsc/classify.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "tsc/csv.hpp"
#include "tsc/util.hpp"

namespace tsc::classify {

std::string classify_flags(bool has_url, bool is_quote, bool is_retweet) {
  if (!has_url) return kConsumer;
  if (!is_quote) return kPromotional;
  // Linked quote: a repost of it is promotion, an original quote is a person
  // commenting on something they read.
  return is_retweet ? kPromotional : kConsumer;
}

std::string classify_row(const ingest::CorpusRow& row) {
  return classify_flags(row.msg.has_url, row.msg.is_quote, row.msg.is_retweet);
}

void classify_corpus(std::vector<ingest::CorpusRow>& rows) {
  for (auto& row : rows) row.msg_class = classify_row(row);
}

std::map<std::string, std::string> read_annotations(const std::string& path) {
  CsvFile csv = read_csv(path);
  int id_col = csv.column("id");
  int label_col = csv.column("label");
  if (id_col < 0 || label_col < 0)
    throw ParseError("annotation file needs id and label columns: " + path);
  std::map<std::string, std::string> out;
  size_t need = size_t(std::max(id_col, label_col)) + 1;
  for (const auto& row : csv.rows) {
    if (row.size() < need) throw ParseError("short annotation row in " + path);
    const std::string& label = row[size_t(label_col)];
    if (label != kPromotional && label != kConsumer)
      throw ParseError("unknown annotation label: " + label);
    out[row[size_t(id_col)]] = label;
  }
  return out;
}

void write_annotations(const std::string& path,
                       const std::vector<std::pair<std::string, std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write annotations: " + path);
  out << "id,label\n";
  for (const auto& [id, label] : rows) out << csv_row({id, label});
}

double f_measure(double precision_pct, double recall_pct) {
  if (precision_pct + recall_pct == 0.0) return 0.0;
  return 2.0 * precision_pct * recall_pct / (precision_pct + recall_pct);
}

Evaluation evaluate(const std::vector<ingest::CorpusRow>& rows,
                    const std::map<std::string, std::string>& gold) {
  Evaluation ev;
  std::set<std::string> labels{kPromotional, kConsumer};
  std::map<std::string, ClassMetrics> metrics;
  for (const auto& l : labels) metrics[l].label = l;

  for (const auto& row : rows) {
    auto it = gold.find(row.msg.id);
    if (it == gold.end()) continue;
    ++ev.evaluated;
    std::string pred = row.msg_class ? *row.msg_class : classify_row(row);
    const std::string& truth = it->second;
    if (pred == truth) {
      ++metrics[pred].true_positive;
    } else {
      ++metrics[pred].false_positive;
      ++metrics[truth].false_negative;
    }
  }
  if (ev.evaluated == 0) throw StatsError("no overlapping ids between corpus and gold");

  for (auto& [label, m] : metrics) {
    size_t denom_p = m.true_positive + m.false_positive;
    size_t denom_r = m.true_positive + m.false_negative;
    m.precision = denom_p ? 100.0 * double(m.true_positive) / double(denom_p) : 0.0;
    m.recall = denom_r ? 100.0 * double(m.true_positive) / double(denom_r) : 0.0;
    m.f_measure = f_measure(m.precision, m.recall);
    ev.macro_precision += m.precision;
    ev.macro_recall += m.recall;
    ev.macro_f += m.f_measure;
    ev.per_class.push_back(m);
  }
  ev.macro_precision /= double(ev.per_class.size());
  ev.macro_recall /= double(ev.per_class.size());
  ev.macro_f /= double(ev.per_class.size());
  return ev;
}

}  // namespace tsc::classify
