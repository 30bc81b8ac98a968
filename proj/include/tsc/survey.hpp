#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tsc/record.hpp"

namespace tsc::survey {

struct Respondent {
  std::string id;
  std::string state;
  double weight = 0.0;
  std::map<std::string, std::string> answers;  // question id -> coded answer
};

struct Question {
  std::string id;
  std::set<std::string> interested;  // answer codes counting toward the group
  std::vector<std::string> keywords; // for mapping topics onto this question
};

struct QuestionGroup {
  std::string id;
  std::string construct;
  std::vector<Question> questions;
};

struct LoadStats {
  size_t rows = 0;
  size_t loaded = 0;
  size_t skipped = 0;  // missing state or nonpositive weight
};

// CSV with header: id, state, weight, then one column per question id.
std::vector<Respondent> load_respondents(const std::string& path, LoadStats* stats = nullptr);

// JSON config: {"groups": [{"id", "construct", "questions":
// [{"id", "interested": [...], "keywords": [...]}]}]}
std::vector<QuestionGroup> load_question_groups(const std::string& path);

// True iff any member question's answer is in its interested set.
bool group_indicator(const Respondent& r, const QuestionGroup& qg);

// Per state: weighted share of respondents with the indicator set.
std::map<std::string, double> state_estimates(const std::vector<Respondent>& respondents,
                                              const QuestionGroup& qg);

// All groups at once: group id -> state -> estimate.
std::map<std::string, std::map<std::string, double>> all_estimates(
    const std::vector<Respondent>& respondents,
    const std::vector<QuestionGroup>& groups);

// CSV with header "group,state,estimate"; states sorted within each group.
void write_estimates_csv(const std::string& path,
                         const std::map<std::string, std::map<std::string, double>>& estimates);
std::map<std::string, std::map<std::string, double>> read_estimates_csv(const std::string& path);

}  // namespace tsc::survey
