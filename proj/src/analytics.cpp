#include "tsc/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "tsc/csv.hpp"
#include "tsc/util.hpp"

namespace tsc::analytics {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_pct2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// "YYYY-MM" -> successor month key.
std::string next_month(const std::string& key) {
  int year = int(*parse_int(key.substr(0, 4)));
  int month = int(*parse_int(key.substr(5, 2)));
  if (++month > 12) {
    month = 1;
    ++year;
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

stats::CorrelationResult correlate(std::span<const double> x, std::span<const double> y,
                                   bool rank, const PValueOptions& popt) {
  if (popt.permutation) {
    return rank ? stats::permutation_spearman(x, y, popt.permutations, popt.seed)
                : stats::permutation_pearson(x, y, popt.permutations, popt.seed);
  }
  return rank ? stats::spearman(x, y) : stats::pearson(x, y);
}

}  // namespace

std::set<int32_t> excluded_set(const std::vector<lda::TopicMeta>& meta) {
  std::set<int32_t> out;
  for (const auto& m : meta)
    if (m.excluded) out.insert(m.topic);
  return out;
}

std::vector<MessageView> join_corpus(const std::vector<ingest::CorpusRow>& rows,
                                     const std::vector<lda::Assignment>& assignments,
                                     const std::set<int32_t>& excluded_topics) {
  std::unordered_map<std::string, const lda::Assignment*> by_id;
  by_id.reserve(assignments.size() * 2);
  for (const auto& a : assignments) by_id[a.id] = &a;

  std::vector<MessageView> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    MessageView v;
    v.id = row.msg.id;
    v.month_key = row.msg.month_key;
    v.state = row.state;
    if (row.msg_class) v.msg_class = *row.msg_class;
    if (auto it = by_id.find(row.msg.id); it != by_id.end()) {
      for (const auto& [topic, prob] : it->second->topics) {
        (void)prob;
        if (!excluded_topics.count(topic)) v.topics.push_back(topic);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// RQ1

std::vector<TopicShare> topic_shares(const std::vector<MessageView>& messages,
                                     const std::string& msg_class) {
  std::map<int32_t, size_t> counts;
  size_t total = 0;
  for (const auto& m : messages) {
    if (m.msg_class != msg_class) continue;
    ++total;
    for (int32_t t : m.topics) ++counts[t];
  }
  std::vector<TopicShare> out;
  out.reserve(counts.size());
  for (const auto& [topic, count] : counts) {
    TopicShare s;
    s.topic = topic;
    s.count = count;
    s.percentage = total ? 100.0 * double(count) / double(total) : 0.0;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const TopicShare& a, const TopicShare& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.topic < b.topic;
  });
  return out;
}

void write_shares_csv(const std::string& path, const std::vector<TopicShare>& shares) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write topic shares: " + path);
  out << "topic,count,percentage\n";
  for (const auto& s : shares)
    out << csv_row({std::to_string(s.topic), std::to_string(s.count),
                    format_pct2(s.percentage)});
}

// ---------------------------------------------------------------------------
// RQ2

std::vector<std::string> month_range(const std::vector<MessageView>& messages) {
  std::string lo, hi;
  for (const auto& m : messages) {
    if (m.month_key.empty()) continue;
    if (lo.empty() || m.month_key < lo) lo = m.month_key;
    if (hi.empty() || m.month_key > hi) hi = m.month_key;
  }
  std::vector<std::string> out;
  if (lo.empty()) return out;
  for (std::string key = lo;; key = next_month(key)) {
    out.push_back(key);
    if (key == hi) break;
  }
  return out;
}

MonthlySeries monthly_series(const std::vector<MessageView>& messages, int32_t topic,
                             const std::string& msg_class,
                             const std::vector<std::string>& months) {
  std::map<std::string, double> counts;
  for (const auto& m : messages) {
    if (m.msg_class != msg_class) continue;
    if (std::find(m.topics.begin(), m.topics.end(), topic) == m.topics.end()) continue;
    counts[m.month_key] += 1.0;
  }
  MonthlySeries s;
  s.months = months;
  s.counts.reserve(months.size());
  for (const auto& key : months) {
    auto it = counts.find(key);
    s.counts.push_back(it == counts.end() ? 0.0 : it->second);
  }
  return s;
}

MonthlySeries monthly_totals(const std::vector<MessageView>& messages,
                             const std::string& msg_class,
                             const std::vector<std::string>& months) {
  std::map<std::string, double> counts;
  for (const auto& m : messages)
    if (m.msg_class == msg_class) counts[m.month_key] += 1.0;
  MonthlySeries s;
  s.months = months;
  s.counts.reserve(months.size());
  for (const auto& key : months) {
    auto it = counts.find(key);
    s.counts.push_back(it == counts.end() ? 0.0 : it->second);
  }
  return s;
}

std::vector<VolumeCorrelation> volume_correlations(
    const std::vector<MessageView>& messages, bool normalize,
    const PValueOptions& popt) {
  auto months = month_range(messages);

  std::set<int32_t> topics;
  size_t promo_total = 0, consumer_total = 0;
  for (const auto& m : messages) {
    if (m.msg_class == "promotional") ++promo_total;
    if (m.msg_class == "consumer") ++consumer_total;
    for (int32_t t : m.topics) topics.insert(t);
  }

  MonthlySeries promo_norm, consumer_norm;
  if (normalize) {
    promo_norm = monthly_totals(messages, "promotional", months);
    consumer_norm = monthly_totals(messages, "consumer", months);
  }

  std::vector<VolumeCorrelation> out;
  for (int32_t topic : topics) {
    auto promo = monthly_series(messages, topic, "promotional", months);
    auto consumer = monthly_series(messages, topic, "consumer", months);
    VolumeCorrelation row;
    row.topic = topic;
    for (double c : promo.counts) row.promotional_count += size_t(c);
    for (double c : consumer.counts) row.consumer_count += size_t(c);
    row.promotional_pct =
        promo_total ? 100.0 * double(row.promotional_count) / double(promo_total) : 0.0;
    row.consumer_pct =
        consumer_total ? 100.0 * double(row.consumer_count) / double(consumer_total) : 0.0;
    if (normalize) {
      for (size_t i = 0; i < months.size(); ++i) {
        if (promo_norm.counts[i] > 0.0) promo.counts[i] /= promo_norm.counts[i];
        if (consumer_norm.counts[i] > 0.0) consumer.counts[i] /= consumer_norm.counts[i];
      }
    }
    try {
      row.corr = correlate(promo.counts, consumer.counts, /*rank=*/false, popt);
    } catch (const StatsError&) {
      continue;  // constant series: correlation undefined for this topic
    }
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end(), [](const VolumeCorrelation& a, const VolumeCorrelation& b) {
    if (a.consumer_count != b.consumer_count) return a.consumer_count > b.consumer_count;
    return a.topic < b.topic;
  });
  return out;
}

void write_volume_csv(const std::string& path,
                      const std::vector<VolumeCorrelation>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write volume correlations: " + path);
  out << "topic,coefficient,p_value,n,promotional_count,promotional_pct,"
         "consumer_count,consumer_pct\n";
  for (const auto& r : rows)
    out << csv_row({std::to_string(r.topic), format_double(r.corr.coefficient),
                    format_double(r.corr.p_value), std::to_string(r.corr.n),
                    std::to_string(r.promotional_count), format_pct2(r.promotional_pct),
                    std::to_string(r.consumer_count), format_pct2(r.consumer_pct)});
}

// ---------------------------------------------------------------------------
// RQ3

std::map<std::string, double> state_distribution(
    const std::vector<MessageView>& messages, int32_t topic) {
  std::map<std::string, size_t> total, carrying;
  for (const auto& m : messages) {
    if (m.msg_class != "consumer" || !m.state) continue;
    ++total[*m.state];
    if (std::find(m.topics.begin(), m.topics.end(), topic) != m.topics.end())
      ++carrying[*m.state];
  }
  std::map<std::string, double> out;
  for (const auto& [state, denom] : total) {
    auto it = carrying.find(state);
    out[state] = it == carrying.end() ? 0.0 : double(it->second) / double(denom);
  }
  return out;
}

bool keywords_match(const std::vector<std::string>& keywords,
                    const std::vector<std::pair<std::string, double>>& top_words) {
  for (const auto& raw : keywords) {
    std::string keyword = fold(raw);
    bool prefix = !keyword.empty() && keyword.back() == '*';
    if (prefix) keyword.pop_back();
    if (keyword.empty()) return false;
    bool hit = false;
    for (const auto& [word, prob] : top_words) {
      (void)prob;
      if (prefix ? word.rfind(keyword, 0) == 0 : word == keyword) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return !keywords.empty();
}

std::vector<KeywordMatch> keyword_map(
    const std::map<int32_t, std::vector<std::pair<std::string, double>>>& top_words,
    const std::vector<survey::QuestionGroup>& groups,
    const std::set<int32_t>& excluded_topics) {
  std::vector<KeywordMatch> out;
  for (const auto& [topic, words] : top_words) {
    if (excluded_topics.count(topic)) continue;
    for (const auto& qg : groups) {
      for (const auto& q : qg.questions) {
        if (q.keywords.empty()) continue;
        if (keywords_match(q.keywords, words)) out.push_back({topic, qg.id, q.id});
      }
    }
  }
  return out;
}

const char* strength_band(double coefficient) {
  double a = std::fabs(coefficient);
  if (a <= 0.3) return "negligible";
  if (a <= 0.5) return "low";
  if (a <= 0.7) return "moderate";
  return "high";
}

std::vector<ReportRow> correlation_report(
    const std::vector<MessageView>& messages,
    const std::vector<lda::TopicMeta>& meta,
    const std::map<int32_t, std::vector<std::pair<std::string, double>>>& top_words,
    const std::vector<survey::QuestionGroup>& groups,
    const std::map<std::string, std::map<std::string, double>>& estimates,
    const PValueOptions& popt) {
  std::set<int32_t> excluded = excluded_set(meta);

  // Scope 1: topic -> QG via keyword matches on any member question.
  std::set<std::pair<int32_t, std::string>> keyword_pairs;
  for (const auto& m : keyword_map(top_words, groups, excluded))
    keyword_pairs.insert({m.topic, m.group});

  // Scope 2: construct-tagged topics against every group.
  std::map<int32_t, std::string> construct_of;
  for (const auto& tm : meta) {
    if (tm.excluded || tm.constructs.empty()) continue;
    std::string joined;
    for (const auto& c : tm.constructs) {
      if (!joined.empty()) joined += ';';
      joined += c;
    }
    construct_of[tm.topic] = joined;
  }

  std::map<int32_t, std::map<std::string, double>> distributions;
  auto distribution_of = [&](int32_t topic) -> const std::map<std::string, double>& {
    auto it = distributions.find(topic);
    if (it == distributions.end())
      it = distributions.emplace(topic, state_distribution(messages, topic)).first;
    return it->second;
  };

  auto one_row = [&](int32_t topic, const std::string& group, const char* scope)
      -> std::optional<ReportRow> {
    auto est_it = estimates.find(group);
    if (est_it == estimates.end()) return std::nullopt;
    const auto& dist = distribution_of(topic);
    std::vector<double> x, y;
    for (const auto& [state, value] : dist) {
      auto e = est_it->second.find(state);
      if (e == est_it->second.end()) continue;
      x.push_back(value);
      y.push_back(e->second);
    }
    ReportRow row;
    row.group = group;
    row.topic = topic;
    row.scope = scope;
    if (auto c = construct_of.find(topic); c != construct_of.end())
      row.construct = c->second;
    try {
      row.corr = correlate(x, y, /*rank=*/true, popt);
    } catch (const StatsError&) {
      return std::nullopt;  // too few shared states or constant values
    }
    row.significant = row.corr.p_value < 0.05;
    row.strength = strength_band(row.corr.coefficient);
    return row;
  };

  std::vector<ReportRow> out;
  for (const auto& [topic, group] : keyword_pairs)
    if (auto row = one_row(topic, group, "keyword")) out.push_back(std::move(*row));
  for (const auto& [topic, construct] : construct_of) {
    (void)construct;
    for (const auto& qg : groups)
      if (auto row = one_row(topic, qg.id, "construct")) out.push_back(std::move(*row));
  }

  std::sort(out.begin(), out.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.corr.coefficient != b.corr.coefficient)
      return a.corr.coefficient > b.corr.coefficient;
    if (a.group != b.group) return a.group < b.group;
    if (a.topic != b.topic) return a.topic < b.topic;
    return a.scope < b.scope;
  });
  return out;
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write correlation report: " + path);
  out << "group,topic,scope,construct,coefficient,p_value,n,significant,strength\n";
  for (const auto& r : rows)
    out << csv_row({r.group, std::to_string(r.topic), r.scope, r.construct,
                    format_double(r.corr.coefficient), format_double(r.corr.p_value),
                    std::to_string(r.corr.n), r.significant ? "true" : "false",
                    r.strength});
}

}  // namespace tsc::analytics
