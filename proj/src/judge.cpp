#include "sheetqa/judge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "sheetqa/cell.hpp"
#include "sheetqa/errors.hpp"

namespace sheetqa {

OutputMode output_mode_from_string(std::string_view s) {
  if (s == "textual") return OutputMode::Textual;
  if (s == "symbolic") return OutputMode::Symbolic;
  throw ValidationError("mode must be \"textual\" or \"symbolic\", got \"" +
                        std::string(s) + "\"");
}

const char* output_mode_name(OutputMode mode) {
  return mode == OutputMode::Textual ? "textual" : "symbolic";
}

namespace {

std::string normalize_string(const std::string& input) {
  // Trim, collapse runs of whitespace, case-fold.
  std::string s;
  s.reserve(input.size());
  bool pending_space = false;
  for (char ch : input) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!s.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      s += ' ';
      pending_space = false;
    }
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }

  // Strip leading "$", trailing "%", and thousands commas. Iterated to a
  // fixpoint so normalization is idempotent even for inputs like "$ ,$5".
  std::string prev;
  do {
    prev = s;
    while (!s.empty() && s.front() == '$') s.erase(s.begin());
    while (!s.empty() && s.back() == '%') s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    std::string no_commas;
    no_commas.reserve(s.size());
    for (char ch : s) {
      if (ch != ',') no_commas += ch;
    }
    s = std::move(no_commas);
  } while (s != prev);
  return s;
}

bool numbers_close(double pred, double gold, const Tolerances& tol) {
  return std::abs(pred - gold) <= std::max(tol.abs_tol, tol.rel_tol * std::abs(gold));
}

bool scalar_match(const AnswerValue& pred, const AnswerValue& gold, const Tolerances& tol);

// Multiset comparison; tolerance makes numeric equality intransitive, so this
// is a deterministic greedy first-fit matching.
bool list_match(const std::vector<AnswerValue>& pred, const std::vector<AnswerValue>& gold,
                const Tolerances& tol) {
  if (pred.size() != gold.size()) return false;
  std::vector<bool> used(gold.size(), false);
  for (const auto& p : pred) {
    bool matched = false;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (!used[i] && scalar_match(p, gold[i], tol)) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool scalar_match(const AnswerValue& pred, const AnswerValue& gold, const Tolerances& tol) {
  if (pred.kind() != gold.kind()) {
    // The only cross-kind bridge: a string that normalizes to a number.
    const AnswerValue* num = nullptr;
    const AnswerValue* other = nullptr;
    if (pred.is_num() && gold.is_str()) { num = &pred; other = &gold; }
    else if (gold.is_num() && pred.is_str()) { num = &gold; other = &pred; }
    else return false;
    AnswerValue renorm = normalize_answer(*other);
    if (!renorm.is_num()) return false;
    if (num == &gold) return scalar_match(renorm, gold, tol);
    return scalar_match(pred, renorm, tol);
  }
  switch (pred.kind()) {
    case AnswerValue::Kind::Num: {
      double p = pred.as_num(), g = gold.as_num();
      if (numbers_close(p, g, tol)) return true;
      if (tol.percentage_equivalence) {
        if (numbers_close(p * 100.0, g, tol)) return true;
        if (std::abs(p - g * 100.0) <= std::max(tol.abs_tol, tol.rel_tol * std::abs(g * 100.0))) {
          return true;
        }
      }
      return false;
    }
    case AnswerValue::Kind::Str:
      return pred.as_str() == gold.as_str();
    case AnswerValue::Kind::Bool:
      return pred.as_bool() == gold.as_bool();
    case AnswerValue::Kind::List:
      return list_match(pred.as_list(), gold.as_list(), tol);
  }
  return false;
}

}  // namespace

AnswerValue normalize_answer(const AnswerValue& v, bool label_mode) {
  switch (v.kind()) {
    case AnswerValue::Kind::Num:
    case AnswerValue::Kind::Bool:
      return v;
    case AnswerValue::Kind::Str: {
      std::string s = normalize_string(v.as_str());
      if (auto num = parse_number_strict(s)) return AnswerValue::num(*num);
      if (label_mode) {
        if (s == "true" || s == "yes") return AnswerValue::boolean(true);
        if (s == "false" || s == "no") return AnswerValue::boolean(false);
      }
      return AnswerValue::str(std::move(s));
    }
    case AnswerValue::Kind::List: {
      std::vector<AnswerValue> items;
      items.reserve(v.as_list().size());
      for (const auto& item : v.as_list()) items.push_back(normalize_answer(item, label_mode));
      return AnswerValue::list(std::move(items));
    }
  }
  return v;
}

bool exact_match(const AnswerValue& pred, const AnswerValue& gold, const Tolerances& tol) {
  return scalar_match(pred, gold, tol);
}

ModelOutput parse_model_output(std::string_view raw, OutputMode mode) {
  ModelOutput out;
  out.raw = std::string(raw);

  auto fail = [&](std::string why) {
    out.format_ok = false;
    out.reason = std::move(why);
    return out;
  };

  std::size_t think_open = raw.find("<think>");
  if (think_open == std::string_view::npos) return fail("missing <think> tag");
  std::size_t think_close = raw.find("</think>", think_open + 7);
  if (think_close == std::string_view::npos) return fail("missing </think> tag");
  out.think = std::string(raw.substr(think_open + 7, think_close - think_open - 7));

  std::size_t answer_open = raw.find("<answer>", think_close + 8);
  if (answer_open == std::string_view::npos) return fail("missing <answer> tag");
  std::size_t answer_close = raw.find("</answer>", answer_open + 8);
  if (answer_close == std::string_view::npos) return fail("missing </answer> tag");
  std::string body(raw.substr(answer_open + 8, answer_close - answer_open - 8));

  nlohmann::json payload = nlohmann::json::parse(body, nullptr, false);
  if (payload.is_discarded() || !payload.is_object()) {
    return fail("answer body is not a JSON object");
  }
  out.payload = payload;

  if (mode == OutputMode::Symbolic) {
    const nlohmann::json* value = nullptr;
    if (payload.contains("formula")) value = &payload["formula"];
    else if (payload.contains("answer")) value = &payload["answer"];
    if (value == nullptr) return fail("missing \"formula\" key");
    if (!value->is_string()) return fail("formula is not a string");
    std::string formula = value->get<std::string>();
    std::size_t start = formula.find_first_not_of(" \t\r\n");
    if (start == std::string::npos || formula[start] != '=') {
      return fail("formula does not start with '='");
    }
    out.formula = std::move(formula);
    out.format_ok = true;
    return out;
  }

  if (!payload.contains("answer")) return fail("missing \"answer\" key");
  try {
    out.answer = answer_from_json(payload["answer"]);
  } catch (const ValidationError& e) {
    return fail(e.what());
  }
  out.format_ok = true;
  return out;
}

AnswerValue cell_to_answer(const CellValue& v) {
  switch (v.kind()) {
    case CellValue::Kind::Empty:
      return AnswerValue::str("");
    case CellValue::Kind::Number:
      return AnswerValue::num(v.as_number());
    case CellValue::Kind::Text:
      return AnswerValue::str(v.as_text());
    case CellValue::Kind::Boolean:
      return AnswerValue::boolean(v.as_boolean());
  }
  return AnswerValue::str("");
}

double score_run(std::span<const std::pair<Prediction, AnswerValue>> records,
                 const Tolerances& tol, bool label_mode) {
  if (records.empty()) throw EmptyRun("score_run over zero records");
  int correct = 0;
  for (const auto& [pred, gold] : records) {
    AnswerValue gold_norm = normalize_answer(gold, label_mode);
    if (const auto* answer = std::get_if<AnswerValue>(&pred)) {
      if (exact_match(normalize_answer(*answer, label_mode), gold_norm, tol)) ++correct;
    } else {
      const auto& outcome = std::get<ExecutionOutcome>(pred);
      if (outcome.executable() &&
          exact_match(normalize_answer(cell_to_answer(outcome.value()), label_mode),
                      gold_norm, tol)) {
        ++correct;
      }
    }
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

}  // namespace sheetqa
