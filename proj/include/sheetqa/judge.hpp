#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <json.hpp>

#include "sheetqa/answer.hpp"
#include "sheetqa/eval.hpp"

namespace sheetqa {

/// Numeric comparison settings for exact match.
struct Tolerances {
  double rel_tol = 1e-4;
  double abs_tol = 1e-6;
  /// Accept p*100 == g or p == g*100 (ratio/percent unit bridging).
  bool percentage_equivalence = true;
};

enum class OutputMode { Textual, Symbolic };

OutputMode output_mode_from_string(std::string_view s);  // throws ValidationError
const char* output_mode_name(OutputMode mode);

/// A structured model generation: <think>t</think><answer>{json}</answer>.
/// format_ok is true only when both blocks were found, the answer body is a
/// JSON object, and the mode's answer key is present and well-typed.
struct ModelOutput {
  std::string raw;
  std::optional<std::string> think;
  std::optional<nlohmann::json> payload;
  bool format_ok = false;
  std::string reason;  // why format_ok is false

  std::optional<std::string> formula;   // symbolic mode
  std::optional<AnswerValue> answer;    // textual mode
};

/// Extracts the first think/answer pair; trailing text is ignored. Never
/// throws: failures set format_ok = false with a reason.
ModelOutput parse_model_output(std::string_view raw, OutputMode mode);

/// Canonicalizes an answer: strings are trimmed, case-folded, inner
/// whitespace collapsed, leading "$" and trailing "%" stripped, thousands
/// commas removed, and re-typed to Num when the remainder parses as a
/// decimal. With label_mode, "true"/"yes" and "false"/"no" become booleans.
/// Lists normalize elementwise. Idempotent.
AnswerValue normalize_answer(const AnswerValue& v, bool label_mode = false);

/// Exact match over normalized answers. Numbers compare within
/// max(abs_tol, rel_tol*|gold|), optionally bridging a x100 unit mismatch;
/// lists compare as multisets; the only cross-kind match is Num vs a string
/// that normalizes to a number.
bool exact_match(const AnswerValue& pred, const AnswerValue& gold, const Tolerances& tol);

/// A prediction is either a direct answer or the outcome of executing a
/// formula; non-executable outcomes never match.
using Prediction = std::variant<AnswerValue, ExecutionOutcome>;

/// Cell -> answer bridge for executed formulas (Empty becomes "").
AnswerValue cell_to_answer(const CellValue& v);

/// Mean exact match over (prediction, gold) records. Throws EmptyRun on an
/// empty list.
double score_run(std::span<const std::pair<Prediction, AnswerValue>> records,
                 const Tolerances& tol, bool label_mode = false);

}  // namespace sheetqa
