#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sheetqa/grid.hpp"
#include "sheetqa/judge.hpp"

namespace sheetqa {

/// One environment step's reward: answer term plus format term.
/// final is always one of {-2, 0.1, 0.3, 1.1}.
struct RewardBreakdown {
  double answer_reward = 0.0;  // 1, 0.2 or 0
  double format_reward = 0.0;  // +0.1 or -2
  double final = 0.0;

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

/// 1 when the executed value matches gold, 0.2 when it executed but missed,
/// 0 when the formula was not executable. gold must be normalized.
double answer_reward(const ExecutionOutcome& outcome, const AnswerValue& gold,
                     const Tolerances& tol, bool label_mode = false);

/// +0.1 for a well-formed output, -2 otherwise.
double format_reward(const ModelOutput& parsed);

/// Full environment step: parse, (symbolic) execute, judge, sum. In textual
/// mode a format-valid but wrong answer earns the 0.2 mid reward.
RewardBreakdown final_reward(std::string_view raw_output, const Grid& grid,
                             const AnswerValue& gold, OutputMode mode,
                             const Tolerances& tol, bool label_mode = false);

/// Elementwise final_reward over aligned lists; throws LengthMismatch.
std::vector<RewardBreakdown> reward_batch(std::span<const std::string> raw_outputs,
                                          std::span<const TaskInstance> tasks,
                                          OutputMode mode, const Tolerances& tol,
                                          bool label_mode = false);

}  // namespace sheetqa
