#include "sheetqa/reward.hpp"

#include "sheetqa/errors.hpp"

namespace sheetqa {

namespace {

constexpr double kCorrect = 1.0;
constexpr double kExecutableWrong = 0.2;
constexpr double kNotExecutable = 0.0;
constexpr double kFormatOk = 0.1;
constexpr double kFormatBad = -2.0;

RewardBreakdown make_breakdown(double answer, double format) {
  RewardBreakdown out;
  out.answer_reward = answer;
  out.format_reward = format;
  // The sum is pinned to the exact decimal constants; 0.2 + 0.1 in doubles
  // would drift off 0.3.
  if (format == kFormatBad) out.final = kFormatBad;
  else if (answer == kCorrect) out.final = 1.1;
  else if (answer == kExecutableWrong) out.final = 0.3;
  else out.final = 0.1;
  return out;
}

}  // namespace

double answer_reward(const ExecutionOutcome& outcome, const AnswerValue& gold,
                     const Tolerances& tol, bool label_mode) {
  if (!outcome.executable()) return kNotExecutable;
  AnswerValue pred = normalize_answer(cell_to_answer(outcome.value()), label_mode);
  return exact_match(pred, gold, tol) ? kCorrect : kExecutableWrong;
}

double format_reward(const ModelOutput& parsed) {
  return parsed.format_ok ? kFormatOk : kFormatBad;
}

RewardBreakdown final_reward(std::string_view raw_output, const Grid& grid,
                             const AnswerValue& gold, OutputMode mode,
                             const Tolerances& tol, bool label_mode) {
  ModelOutput parsed = parse_model_output(raw_output, mode);
  if (!parsed.format_ok) return make_breakdown(0.0, kFormatBad);

  AnswerValue gold_norm = normalize_answer(gold, label_mode);
  double answer = 0.0;
  if (mode == OutputMode::Symbolic) {
    ExecutionOutcome outcome = execute(*parsed.formula, grid);
    answer = answer_reward(outcome, gold_norm, tol, label_mode);
  } else {
    // No executability notion in textual mode: format-valid but wrong still
    // earns the mid reward.
    AnswerValue pred = normalize_answer(*parsed.answer, label_mode);
    answer = exact_match(pred, gold_norm, tol) ? kCorrect : kExecutableWrong;
  }
  return make_breakdown(answer, kFormatOk);
}

std::vector<RewardBreakdown> reward_batch(std::span<const std::string> raw_outputs,
                                          std::span<const TaskInstance> tasks,
                                          OutputMode mode, const Tolerances& tol,
                                          bool label_mode) {
  if (raw_outputs.size() != tasks.size()) {
    throw LengthMismatch("reward_batch: " + std::to_string(raw_outputs.size()) +
                         " outputs vs " + std::to_string(tasks.size()) + " tasks");
  }
  std::vector<RewardBreakdown> out;
  out.reserve(raw_outputs.size());
  for (std::size_t i = 0; i < raw_outputs.size(); ++i) {
    out.push_back(final_reward(raw_outputs[i], combined_grid(tasks[i]), tasks[i].gold,
                               mode, tol, label_mode));
  }
  return out;
}

}  // namespace sheetqa
