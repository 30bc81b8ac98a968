#include "tsc/survey.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "tsc/csv.hpp"
#include "tsc/states.hpp"
#include "tsc/util.hpp"

namespace tsc::survey {

using nlohmann::json;

std::vector<Respondent> load_respondents(const std::string& path, LoadStats* stats) {
  CsvFile csv = read_csv(path);
  int id_col = csv.column("id");
  int state_col = csv.column("state");
  int weight_col = csv.column("weight");
  if (id_col < 0 || state_col < 0 || weight_col < 0)
    throw ConfigError("respondent file needs id, state, weight columns: " + path);

  std::vector<std::pair<size_t, std::string>> question_cols;
  for (size_t i = 0; i < csv.header.size(); ++i) {
    if (int(i) == id_col || int(i) == state_col || int(i) == weight_col) continue;
    question_cols.emplace_back(i, csv.header[i]);
  }

  LoadStats local;
  std::vector<Respondent> out;
  for (const auto& row : csv.rows) {
    ++local.rows;
    Respondent r;
    r.id = row[size_t(id_col)];
    r.state = std::string(trim(row[size_t(state_col)]));
    auto weight = parse_double(row[size_t(weight_col)]);
    if (r.state.empty() || !valid_state_code(r.state) || !weight || *weight <= 0.0) {
      ++local.skipped;
      continue;
    }
    r.weight = *weight;
    for (const auto& [col, qid] : question_cols) {
      if (col < row.size() && !row[col].empty()) r.answers[qid] = row[col];
    }
    out.push_back(std::move(r));
    ++local.loaded;
  }
  if (stats) *stats = local;
  return out;
}

std::vector<QuestionGroup> load_question_groups(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open question-group config: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("groups") || !j["groups"].is_array())
    throw ConfigError("question-group config must be an object with a groups array: " + path);

  std::vector<QuestionGroup> out;
  for (const auto& g : j["groups"]) {
    QuestionGroup qg;
    if (!g.contains("id") || !g["id"].is_string())
      throw ConfigError("question group without id");
    qg.id = g["id"].get<std::string>();
    if (g.contains("construct") && g["construct"].is_string())
      qg.construct = g["construct"].get<std::string>();
    if (!g.contains("questions") || !g["questions"].is_array() || g["questions"].empty())
      throw ConfigError("question group " + qg.id + " has no questions");
    for (const auto& q : g["questions"]) {
      Question question;
      if (!q.contains("id") || !q["id"].is_string())
        throw ConfigError("question without id in group " + qg.id);
      question.id = q["id"].get<std::string>();
      if (!q.contains("interested") || !q["interested"].is_array() || q["interested"].empty())
        throw ConfigError("question " + question.id + " has an empty interested set");
      for (const auto& a : q["interested"]) {
        if (!a.is_string()) throw ConfigError("interested codes must be strings");
        question.interested.insert(a.get<std::string>());
      }
      if (q.contains("keywords")) {
        if (!q["keywords"].is_array())
          throw ConfigError("keywords must be an array for question " + question.id);
        for (const auto& k : q["keywords"]) {
          if (!k.is_string()) throw ConfigError("keywords must be strings");
          question.keywords.push_back(fold(k.get<std::string>()));
        }
      }
      qg.questions.push_back(std::move(question));
    }
    out.push_back(std::move(qg));
  }
  if (out.empty()) throw ConfigError("question-group config has no groups: " + path);
  return out;
}

bool group_indicator(const Respondent& r, const QuestionGroup& qg) {
  for (const auto& q : qg.questions) {
    auto it = r.answers.find(q.id);
    if (it != r.answers.end() && q.interested.count(it->second)) return true;
  }
  return false;
}

std::map<std::string, double> state_estimates(const std::vector<Respondent>& respondents,
                                              const QuestionGroup& qg) {
  std::map<std::string, double> hit, total;
  for (const auto& r : respondents) {
    total[r.state] += r.weight;
    if (group_indicator(r, qg)) hit[r.state] += r.weight;
  }
  std::map<std::string, double> out;
  for (const auto& [state, denom] : total) {
    auto it = hit.find(state);
    out[state] = it == hit.end() ? 0.0 : it->second / denom;
  }
  return out;
}

std::map<std::string, std::map<std::string, double>> all_estimates(
    const std::vector<Respondent>& respondents,
    const std::vector<QuestionGroup>& groups) {
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& qg : groups) out[qg.id] = state_estimates(respondents, qg);
  return out;
}

void write_estimates_csv(
    const std::string& path,
    const std::map<std::string, std::map<std::string, double>>& estimates) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write estimates: " + path);
  out << "group,state,estimate\n";
  char buf[40];
  for (const auto& [group, per_state] : estimates) {
    for (const auto& [state, value] : per_state) {
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      out << csv_row({group, state, buf});
    }
  }
}

std::map<std::string, std::map<std::string, double>> read_estimates_csv(
    const std::string& path) {
  CsvFile csv = read_csv(path);
  int group_col = csv.column("group"), state_col = csv.column("state"),
      est_col = csv.column("estimate");
  if (group_col < 0 || state_col < 0 || est_col < 0)
    throw ParseError("estimates csv needs group, state, estimate: " + path);
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& row : csv.rows) {
    auto v = parse_double(row[size_t(est_col)]);
    if (!v) throw ParseError("bad estimate value: " + row[size_t(est_col)]);
    out[row[size_t(group_col)]][row[size_t(state_col)]] = *v;
  }
  return out;
}

}  // namespace tsc::survey
