#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sheetqa/grid.hpp"
#include "sheetqa/judge.hpp"

namespace sheetqa {

/// Deterministic RNG used by every sampled computation in this module; the
/// derived draws are implemented here rather than with std distributions so a
/// seed pins the exact trajectory.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  /// Inverse-CDF draw from a categorical distribution.
  std::size_t sample(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

/// An enumerable task: a grid, a finite formula action space, and per-action
/// correctness/executability computed by actually executing each action.
struct ToyTask {
  Grid grid;
  std::string question_id;
  std::vector<std::string> action_space;
  AnswerValue gold;
  std::vector<bool> correct_mask;
  std::vector<bool> executable_mask;
  double plan_prob = 1.0;      // P[E1]
  double step_fidelity = 1.0;  // P[E2 | E1]

  int n_actions() const { return static_cast<int>(action_space.size()); }
  int n_correct() const;
  /// Shaped per-action reward: 1 correct, 0.2 executable-but-wrong, 0 else.
  std::vector<double> action_rewards() const;
};

enum class TaskTemplate { Sum, Count, Max, Lookup };

TaskTemplate task_template_from_string(std::string_view s);  // throws ValidationError
const char* task_template_name(TaskTemplate t);

struct TaskGenSpec {
  TaskTemplate template_ = TaskTemplate::Sum;
  int grid_rows = 5;
  double value_min = 1;
  double value_max = 99;
  int action_count = 8;  // includes the correct formulas
  double plan_prob = 1.0;
  double step_fidelity = 1.0;
  bool allow_nonexecutable = false;  // admit an unknown-function distractor
};

/// Builds a task whose action space holds at least two semantically distinct
/// correct formulas; wrong actions are validated wrong by execution. Throws
/// GenerationFailure when no valid instance emerges within bounded retries.
ToyTask make_task(const TaskGenSpec& spec, std::uint64_t seed);

/// Assembles a ToyTask from explicit actions, deriving the masks by
/// execution.
ToyTask build_task(Grid grid, std::string question_id,
                   std::vector<std::string> actions, AnswerValue gold,
                   double plan_prob, double step_fidelity);

/// Softmax policy over a task's action space. Probabilities are strictly
/// positive by construction.
struct CategoricalPolicy {
  std::vector<double> logits;

  static CategoricalPolicy uniform(int n) { return CategoricalPolicy{std::vector<double>(n, 0.0)}; }
  std::vector<double> probs() const;
};

/// Demonstration distribution SFT imitates; its support may exclude some
/// correct actions.
struct TeacherPolicy {
  std::vector<double> probs;

  /// Indices of correct actions the teacher assigns positive mass.
  std::vector<int> coverage(const ToyTask& task) const;
};

std::vector<double> softmax(std::span<const double> logits);

/// P(correct answer | plan) under the policy: sum of probability on correct
/// actions. Shared by the symbolic and textual expectations so the fidelity=1
/// equality is bit-exact.
double conditional_correctness(std::span<const double> probs, const ToyTask& task);

/// plan_prob * P(correct | plan); binary reward, exact summation.
double expected_reward_symbolic(const CategoricalPolicy& policy, const ToyTask& task);

/// plan_prob * step_fidelity * P(correct | plan): the matched textual policy
/// must also survive step fidelity.
double expected_reward_textual(const CategoricalPolicy& policy, const ToyTask& task);

/// Expected shaped answer reward (1 / 0.2 / 0) under explicit probabilities.
double expected_answer_reward(std::span<const double> probs, const ToyTask& task);
double expected_answer_reward(const CategoricalPolicy& policy, const ToyTask& task);

/// Analytic score-function gradient of expected_answer_reward w.r.t. logits:
/// p_i * (r_i - J).
std::vector<double> reward_gradient(const CategoricalPolicy& policy, const ToyTask& task);

double entropy(std::span<const double> p);
double cross_entropy(std::span<const double> p, std::span<const double> q);
/// Sum p log(p/q) with 0 log 0 = 0. Throws SupportMismatch on dimension
/// mismatch or q_i <= 0 where p_i > 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct SftResult {
  CategoricalPolicy policy;
  double final_kl = 0.0;           // KL(teacher || fitted)
  bool converged = false;          // final_kl < threshold
  std::vector<double> kl_trace;    // sampled along training
};

/// Draws n_samples actions from the teacher and runs gradient ascent on the
/// mean log-likelihood under the softmax parameterization.
SftResult sft_fit(const TeacherPolicy& teacher, int n_samples, double lr, int steps,
                  std::uint64_t seed, double kl_threshold = 1e-4);

enum class RlMode { ExactGradient, Sampled };

struct RlResult {
  CategoricalPolicy policy;
  std::vector<double> reward_trace;  // expected shaped reward per step
  int steps_run = 0;
};

/// Policy-gradient ascent on the expected shaped answer reward. Exact mode
/// follows the analytic gradient and stops once the expected reward is within
/// stop_slack of the best attainable action reward; sampled mode is
/// REINFORCE with a running-mean baseline.
RlResult rl_train(CategoricalPolicy policy, const ToyTask& task, int episodes,
                  double lr, std::uint64_t seed, RlMode mode = RlMode::ExactGradient,
                  double stop_slack = 1e-3);

struct DominanceConfig {
  int n_tasks = 100;
  std::vector<double> fidelities = {0.5, 0.9, 1.0};  // must include 1.0
  std::vector<TaskTemplate> templates = {TaskTemplate::Sum, TaskTemplate::Count,
                                         TaskTemplate::Max, TaskTemplate::Lookup};
  int grid_rows = 5;
  int action_count = 8;
  double value_min = 1;
  double value_max = 99;
};

/// Checks symbolic >= textual expected reward for every generated task and
/// fidelity, with exact equality at fidelity 1.
nlohmann::ordered_json run_dominance_experiment(const DominanceConfig& config,
                                                std::uint64_t seed);

struct SftRlConfig {
  int grid_rows = 4;
  int action_count = 8;
  double value_min = 1;
  double value_max = 99;
  double teacher_coverage = 0.6;  // mass on the covered correct formula
  double control_coverage = 1.0;
  int sft_samples = 500000;
  double sft_lr = 1.0;
  int sft_steps = 300000;  // residual off-support mass decays like 1/(lr*steps)
  double kl_threshold = 1e-4;
  double rl_lr = 0.5;
  int rl_max_steps = 50000;
  double rl_stop_slack = 1e-3;
  double sft_epsilon = 0.01;   // SFT may exceed the teacher by at most this
  double rl_min_reward = 0.95;
  double rl_delta = 0.1;       // RL must beat the teacher by at least this
  double control_gap_max = 0.01;
};

/// Teacher-ceiling (SFT) vs reward-maximizing (RL) comparison on a task with
/// two correct formulas, one outside the teacher's support, plus a c = 1
/// control run.
nlohmann::ordered_json run_sft_vs_rl_experiment(const SftRlConfig& config,
                                                std::uint64_t seed);

}  // namespace sheetqa
