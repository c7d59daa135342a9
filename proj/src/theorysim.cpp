#include "sheetqa/theorysim.hpp"

#include <algorithm>
#include <cmath>

#include "sheetqa/cell.hpp"
#include "sheetqa/errors.hpp"
#include "sheetqa/eval.hpp"

namespace sheetqa {

namespace {

// Tight matching for correctness masks; no percent bridging here.
const Tolerances kMaskTol{1e-9, 1e-12, false};

constexpr double kCorrectReward = 1.0;
constexpr double kWrongReward = 0.2;

}  // namespace

std::size_t Rng::sample(std::span<const double> probs) {
  double u = uniform();
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  return probs.size() - 1;
}

int ToyTask::n_correct() const {
  return static_cast<int>(std::count(correct_mask.begin(), correct_mask.end(), true));
}

std::vector<double> ToyTask::action_rewards() const {
  std::vector<double> out(action_space.size(), 0.0);
  for (std::size_t i = 0; i < action_space.size(); ++i) {
    if (correct_mask[i]) out[i] = kCorrectReward;
    else if (executable_mask[i]) out[i] = kWrongReward;
  }
  return out;
}

TaskTemplate task_template_from_string(std::string_view s) {
  if (s == "sum") return TaskTemplate::Sum;
  if (s == "count") return TaskTemplate::Count;
  if (s == "max") return TaskTemplate::Max;
  if (s == "lookup") return TaskTemplate::Lookup;
  throw ValidationError("unknown task template \"" + std::string(s) + "\"");
}

const char* task_template_name(TaskTemplate t) {
  switch (t) {
    case TaskTemplate::Sum: return "sum";
    case TaskTemplate::Count: return "count";
    case TaskTemplate::Max: return "max";
    case TaskTemplate::Lookup: return "lookup";
  }
  return "?";
}

ToyTask build_task(Grid grid, std::string question_id, std::vector<std::string> actions,
                   AnswerValue gold, double plan_prob, double step_fidelity) {
  if (actions.empty()) throw ValidationError("action space must be non-empty");
  ToyTask task;
  task.grid = std::move(grid);
  task.question_id = std::move(question_id);
  task.action_space = std::move(actions);
  task.gold = normalize_answer(gold);
  task.plan_prob = plan_prob;
  task.step_fidelity = step_fidelity;
  task.correct_mask.reserve(task.action_space.size());
  task.executable_mask.reserve(task.action_space.size());
  for (const auto& action : task.action_space) {
    ExecutionOutcome outcome = execute(action, task.grid);
    task.executable_mask.push_back(outcome.executable());
    bool correct = outcome.executable() &&
                   exact_match(normalize_answer(cell_to_answer(outcome.value())),
                               task.gold, kMaskTol);
    task.correct_mask.push_back(correct);
  }
  return task;
}

namespace {

struct Candidate {
  Grid grid;
  AnswerValue gold;
  std::vector<std::string> correct;      // intended correct, >= 2 distinct
  std::vector<std::string> distractors;  // intended wrong
};

std::string column_range(int n) { return "A1:A" + std::to_string(n); }

Grid number_column(const std::vector<double>& values) {
  std::vector<std::vector<CellValue>> rows;
  rows.reserve(values.size());
  for (double v : values) rows.push_back({CellValue::number(v)});
  return grid_from_rows(rows);
}

Candidate gen_sum(Rng& rng, const TaskGenSpec& spec) {
  int n = spec.grid_rows;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    values.push_back(rng.uniform_int(static_cast<int>(spec.value_min),
                                     static_cast<int>(spec.value_max)));
  }
  Candidate c;
  c.grid = number_column(values);
  double total = 0;
  for (double v : values) total += v;
  c.gold = AnswerValue::num(total);

  std::string plus = "=A1";
  for (int i = 2; i <= n; ++i) plus += " + A" + std::to_string(i);
  c.correct = {"=SUM(" + column_range(n) + ")", plus};

  c.distractors = {
      "=MAX(" + column_range(n) + ")",
      "=MIN(" + column_range(n) + ")",
      "=AVERAGE(" + column_range(n) + ")",
      "=COUNT(" + column_range(n) + ")",
      "=SUM(A1:A" + std::to_string(n - 1) + ")",
      "=SUM(A2:A" + std::to_string(n) + ")",
      "=A1 * A2",
      "=A1 - A2",
      "=SUM(" + column_range(n) + ") + 1",
      "=MAX(" + column_range(n) + ") - MIN(" + column_range(n) + ")",
  };
  return c;
}

Candidate gen_count(Rng& rng, const TaskGenSpec& spec) {
  int n = spec.grid_rows;
  int lo = static_cast<int>(spec.value_min);
  int hi = static_cast<int>(spec.value_max);
  int threshold = rng.uniform_int(lo + 1, std::max(lo + 1, hi - 1));
  std::vector<double> values;
  for (int i = 0; i < n; ++i) values.push_back(rng.uniform_int(lo, hi));
  // Put the threshold itself in the column so ">=" and ">" genuinely differ.
  values[static_cast<std::size_t>(rng.uniform_int(0, n - 1))] = threshold;

  Candidate c;
  c.grid = number_column(values);
  int count = 0;
  for (double v : values) {
    if (v >= threshold) ++count;
  }
  c.gold = AnswerValue::num(count);

  std::string t = std::to_string(threshold);
  std::string range = column_range(n);
  c.correct = {
      "=COUNTIF(" + range + ", \">=" + t + "\")",
      "=COUNT(" + range + ") - COUNTIF(" + range + ", \"<" + t + "\")",
  };
  c.distractors = {
      "=COUNTIF(" + range + ", \">" + t + "\")",
      "=COUNTIF(" + range + ", \"<" + t + "\")",
      "=COUNTIF(" + range + ", \"<=" + t + "\")",
      "=COUNT(" + range + ")",
      "=SUM(" + range + ")",
      "=MAX(" + range + ")",
      "=COUNTIF(" + range + ", \">=" + std::to_string(threshold + 1) + "\")",
      "=MIN(" + range + ")",
  };
  return c;
}

Candidate gen_max(Rng& rng, const TaskGenSpec& spec) {
  int n = spec.grid_rows;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    values.push_back(rng.uniform_int(static_cast<int>(spec.value_min),
                                     static_cast<int>(spec.value_max)));
  }
  Candidate c;
  c.grid = number_column(values);
  c.gold = AnswerValue::num(*std::max_element(values.begin(), values.end()));

  std::string range = column_range(n);
  c.correct = {
      "=MAX(" + range + ")",
      "=INDEX(" + range + ", MATCH(MAX(" + range + "), " + range + ", 0))",
  };
  c.distractors = {
      "=MIN(" + range + ")",
      "=AVERAGE(" + range + ")",
      "=SUM(" + range + ")",
      "=A1",
      "=A" + std::to_string(n),
      "=INDEX(" + range + ", 1)",
      "=MAX(A1:A" + std::to_string(n - 1) + ")",
      "=MAX(" + range + ") + 1",
  };
  return c;
}

Candidate gen_lookup(Rng& rng, const TaskGenSpec& spec) {
  int n = spec.grid_rows;
  std::vector<std::vector<CellValue>> rows;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    double v = rng.uniform_int(static_cast<int>(spec.value_min),
                               static_cast<int>(spec.value_max));
    values.push_back(v);
    rows.push_back({CellValue::text("item" + std::to_string(i + 1)), CellValue::number(v)});
  }
  int target = rng.uniform_int(1, n);

  Candidate c;
  c.grid = grid_from_rows(rows);
  c.gold = AnswerValue::num(values[static_cast<std::size_t>(target - 1)]);

  std::string keys = "A1:A" + std::to_string(n);
  std::string vals = "B1:B" + std::to_string(n);
  std::string key = "\"item" + std::to_string(target) + "\"";
  c.correct = {
      "=INDEX(" + vals + ", MATCH(" + key + ", " + keys + ", 0))",
      "=B" + std::to_string(target),
  };
  for (int i = 1; i <= n; ++i) {
    if (i != target) c.distractors.push_back("=B" + std::to_string(i));
  }
  c.distractors.push_back("=MAX(" + vals + ")");
  c.distractors.push_back("=MIN(" + vals + ")");
  c.distractors.push_back("=A" + std::to_string(target));
  return c;
}

}  // namespace

ToyTask make_task(const TaskGenSpec& spec, std::uint64_t seed) {
  if (spec.grid_rows < 3) throw ValidationError("task templates need at least 3 rows");
  if (spec.action_count < 3) throw ValidationError("action space needs at least 3 actions");

  Rng rng(seed);
  constexpr int kMaxRetries = 64;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Candidate cand;
    switch (spec.template_) {
      case TaskTemplate::Sum: cand = gen_sum(rng, spec); break;
      case TaskTemplate::Count: cand = gen_count(rng, spec); break;
      case TaskTemplate::Max: cand = gen_max(rng, spec); break;
      case TaskTemplate::Lookup: cand = gen_lookup(rng, spec); break;
    }

    std::vector<std::string> actions = cand.correct;
    for (const auto& d : cand.distractors) {
      if (static_cast<int>(actions.size()) >= spec.action_count) break;
      actions.push_back(d);
    }
    if (spec.allow_nonexecutable && static_cast<int>(actions.size()) < spec.action_count) {
      actions.push_back("=BADFN(A1)");
    }
    // Offsets of a correct formula are executable and off-gold by design.
    for (int k = 1; static_cast<int>(actions.size()) < spec.action_count; ++k) {
      actions.push_back(cand.correct[0] + " + " + std::to_string(k));
    }

    std::string id = std::string(task_template_name(spec.template_)) + "-" +
                     std::to_string(seed) + "-" + std::to_string(attempt);
    ToyTask task = build_task(cand.grid, id, actions, cand.gold, spec.plan_prob,
                              spec.step_fidelity);

    // The intended correct formulas must be exactly the correct ones, and
    // distractors must not collide with the gold by accident.
    bool ok = true;
    for (std::size_t i = 0; i < task.action_space.size(); ++i) {
      bool intended = i < cand.correct.size();
      if (task.correct_mask[i] != intended) ok = false;
      if (!spec.allow_nonexecutable && !task.executable_mask[i]) ok = false;
    }
    if (ok) return task;
  }
  throw GenerationFailure(std::string("no valid ") + task_template_name(spec.template_) +
                          " task after bounded retries");
}

std::vector<double> softmax(std::span<const double> logits) {
  double max_logit = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max_logit);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> CategoricalPolicy::probs() const {
  return softmax(logits);
}

std::vector<int> TeacherPolicy::coverage(const ToyTask& task) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0 && task.correct_mask[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

double conditional_correctness(std::span<const double> probs, const ToyTask& task) {
  if (probs.size() != task.correct_mask.size()) {
    throw DimensionMismatch("policy has " + std::to_string(probs.size()) +
                            " actions, task has " + std::to_string(task.correct_mask.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (task.correct_mask[i]) total += probs[i];
  }
  return total;
}

double expected_reward_symbolic(const CategoricalPolicy& policy, const ToyTask& task) {
  return task.plan_prob * conditional_correctness(policy.probs(), task);
}

double expected_reward_textual(const CategoricalPolicy& policy, const ToyTask& task) {
  return task.plan_prob * (task.step_fidelity * conditional_correctness(policy.probs(), task));
}

double expected_answer_reward(std::span<const double> probs, const ToyTask& task) {
  if (probs.size() != task.correct_mask.size()) {
    throw DimensionMismatch("policy/task dimension mismatch");
  }
  std::vector<double> rewards = task.action_rewards();
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) total += probs[i] * rewards[i];
  return total;
}

double expected_answer_reward(const CategoricalPolicy& policy, const ToyTask& task) {
  auto p = policy.probs();
  return expected_answer_reward(p, task);
}

std::vector<double> reward_gradient(const CategoricalPolicy& policy, const ToyTask& task) {
  auto p = policy.probs();
  std::vector<double> rewards = task.action_rewards();
  double j = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) j += p[i] * rewards[i];
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) grad[i] = p[i] * (rewards[i] - j);
  return grad;
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double cross_entropy(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw SupportMismatch("cross_entropy dimension mismatch");
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) throw SupportMismatch("q has zero mass where p > 0");
      h -= p[i] * std::log(q[i]);
    }
  }
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw SupportMismatch("kl_divergence dimension mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (q[i] <= 0.0) throw SupportMismatch("q has zero mass where p > 0");
      kl += p[i] * std::log(p[i] / q[i]);
    }
  }
  return kl;
}

SftResult sft_fit(const TeacherPolicy& teacher, int n_samples, double lr, int steps,
                  std::uint64_t seed, double kl_threshold) {
  if (n_samples < 1) throw ValidationError("sft_fit needs at least one sample");
  const std::size_t n = teacher.probs.size();

  Rng rng(seed);
  std::vector<double> freq(n, 0.0);
  for (int i = 0; i < n_samples; ++i) {
    freq[rng.sample(teacher.probs)] += 1.0;
  }
  for (double& f : freq) f /= n_samples;

  // Ascent on the empirical mean log-likelihood; gradient is freq - softmax.
  CategoricalPolicy policy = CategoricalPolicy::uniform(static_cast<int>(n));
  SftResult result;
  const int trace_every = std::max(1, steps / 20);
  for (int step = 0; step < steps; ++step) {
    auto p = policy.probs();
    for (std::size_t i = 0; i < n; ++i) {
      policy.logits[i] += lr * (freq[i] - p[i]);
    }
    if (step % trace_every == 0 || step == steps - 1) {
      result.kl_trace.push_back(kl_divergence(teacher.probs, policy.probs()));
    }
  }
  result.final_kl = kl_divergence(teacher.probs, policy.probs());
  result.converged = result.final_kl < kl_threshold;
  result.policy = std::move(policy);
  return result;
}

RlResult rl_train(CategoricalPolicy policy, const ToyTask& task, int episodes,
                  double lr, std::uint64_t seed, RlMode mode, double stop_slack) {
  if (episodes < 1) throw ValidationError("rl_train needs at least one episode");
  if (policy.logits.size() != task.action_space.size()) {
    throw DimensionMismatch("policy/task dimension mismatch");
  }
  const std::vector<double> rewards = task.action_rewards();
  const double best = *std::max_element(rewards.begin(), rewards.end());

  Rng rng(seed);
  RlResult result;
  double baseline = 0.0;
  int observed = 0;
  for (int step = 0; step < episodes; ++step) {
    auto p = policy.probs();
    double j = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) j += p[i] * rewards[i];
    result.reward_trace.push_back(j);
    result.steps_run = step + 1;
    if (j >= best - stop_slack) break;

    if (mode == RlMode::ExactGradient) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        policy.logits[i] += lr * p[i] * (rewards[i] - j);
      }
    } else {
      std::size_t action = rng.sample(p);
      double r = rewards[action];
      ++observed;
      baseline += (r - baseline) / observed;
      double advantage = r - baseline;
      for (std::size_t i = 0; i < p.size(); ++i) {
        double indicator = (i == action) ? 1.0 : 0.0;
        policy.logits[i] += lr * advantage * (indicator - p[i]);
      }
    }
  }
  result.policy = std::move(policy);
  return result;
}

nlohmann::ordered_json run_dominance_experiment(const DominanceConfig& config,
                                                std::uint64_t seed) {
  if (std::find(config.fidelities.begin(), config.fidelities.end(), 1.0) ==
      config.fidelities.end()) {
    throw ValidationError("fidelity grid must include 1.0");
  }
  if (config.n_tasks < 1) throw ValidationError("n_tasks must be positive");
  if (config.templates.empty()) throw ValidationError("template list is empty");

  Rng rng(seed);
  nlohmann::ordered_json per_task = nlohmann::ordered_json::array();
  int checks_total = 0;
  int dominance_ok = 0;
  int strict_ok = 0;
  int strict_expected = 0;
  double max_equality_gap = 0.0;

  for (int t = 0; t < config.n_tasks; ++t) {
    TaskGenSpec spec;
    spec.template_ = config.templates[static_cast<std::size_t>(t) % config.templates.size()];
    spec.grid_rows = config.grid_rows;
    spec.action_count = config.action_count;
    spec.value_min = config.value_min;
    spec.value_max = config.value_max;
    spec.plan_prob = rng.uniform(0.1, 1.0);

    std::uint64_t task_seed = rng.next_u64();
    CategoricalPolicy policy;

    for (double fidelity : config.fidelities) {
      spec.step_fidelity = fidelity;
      ToyTask task = make_task(spec, task_seed);
      if (policy.logits.empty()) {
        for (int i = 0; i < task.n_actions(); ++i) {
          policy.logits.push_back(rng.uniform(-2.0, 2.0));
        }
      }

      double symbolic = expected_reward_symbolic(policy, task);
      double textual = expected_reward_textual(policy, task);
      ++checks_total;
      bool holds = symbolic >= textual;
      if (holds) ++dominance_ok;
      if (fidelity < 1.0 && symbolic > 0.0) {
        ++strict_expected;
        if (symbolic > textual) ++strict_ok;
      }
      double gap = std::abs(symbolic - textual);
      if (fidelity == 1.0) max_equality_gap = std::max(max_equality_gap, gap);

      per_task.push_back({{"task", task.question_id},
                          {"template", task_template_name(spec.template_)},
                          {"fidelity", fidelity},
                          {"plan_prob", task.plan_prob},
                          {"symbolic", symbolic},
                          {"textual", textual},
                          {"dominance_holds", holds}});
    }
  }

  bool all_passed = dominance_ok == checks_total && strict_ok == strict_expected &&
                    max_equality_gap < 1e-12;
  nlohmann::ordered_json report;
  report["experiment"] = "dominance";
  report["seed"] = seed;
  report["n_tasks"] = config.n_tasks;
  report["fidelities"] = config.fidelities;
  report["checks"] = {{"total", checks_total},
                      {"dominance_holds", dominance_ok},
                      {"strict_expected", strict_expected},
                      {"strict_holds", strict_ok},
                      {"max_equality_gap_at_fidelity_1", max_equality_gap}};
  report["per_task"] = std::move(per_task);
  report["all_checks_passed"] = all_passed;
  return report;
}

namespace {

struct SftRlRun {
  nlohmann::ordered_json report;
  bool passed = false;
};

SftRlRun run_one_coverage(const SftRlConfig& config, double coverage, const ToyTask& task,
                          std::uint64_t seed) {
  const int n = task.n_actions();

  // Teacher: `coverage` mass on the first correct action, the rest spread
  // uniformly over the wrong-but-executable actions. The second correct
  // action stays outside the support.
  int covered = -1;
  std::vector<int> wrong;
  for (int i = 0; i < n; ++i) {
    if (task.correct_mask[static_cast<std::size_t>(i)]) {
      if (covered < 0) covered = i;
    } else {
      wrong.push_back(i);
    }
  }
  if (covered < 0) throw GenerationFailure("task has no correct action");
  if (wrong.empty() && coverage < 1.0) {
    throw GenerationFailure("task has no wrong action to spread teacher mass over");
  }

  TeacherPolicy teacher;
  teacher.probs.assign(static_cast<std::size_t>(n), 0.0);
  teacher.probs[static_cast<std::size_t>(covered)] = coverage;
  for (int i : wrong) {
    teacher.probs[static_cast<std::size_t>(i)] =
        (1.0 - coverage) / static_cast<double>(wrong.size());
  }

  double teacher_reward = expected_answer_reward(teacher.probs, task);
  double teacher_closed_form = coverage * 1.0 + (1.0 - coverage) * 0.2;

  SftResult sft = sft_fit(teacher, config.sft_samples, config.sft_lr, config.sft_steps,
                          seed, config.kl_threshold);
  double sft_reward = expected_answer_reward(sft.policy, task);

  RlResult rl = rl_train(CategoricalPolicy::uniform(n), task, config.rl_max_steps,
                         config.rl_lr, seed + 1, RlMode::ExactGradient,
                         config.rl_stop_slack);
  double rl_reward = expected_answer_reward(rl.policy, task);

  // Mass RL placed on correct actions the teacher never demonstrates.
  double out_of_support_mass = 0.0;
  auto rl_probs = rl.policy.probs();
  for (int i = 0; i < n; ++i) {
    if (task.correct_mask[static_cast<std::size_t>(i)] && teacher.probs[static_cast<std::size_t>(i)] == 0.0) {
      out_of_support_mass += rl_probs[static_cast<std::size_t>(i)];
    }
  }

  bool teacher_exact = std::abs(teacher_reward - teacher_closed_form) <= 1e-12;
  bool sft_bounded = sft_reward <= teacher_reward + config.sft_epsilon;
  bool kl_ok = sft.final_kl < config.kl_threshold;

  SftRlRun out;
  out.report = {{"coverage", coverage},
                {"task", task.question_id},
                {"n_actions", n},
                {"n_correct", task.n_correct()},
                {"teacher_reward", teacher_reward},
                {"teacher_reward_closed_form", teacher_closed_form},
                {"sft_reward", sft_reward},
                {"sft_final_kl", sft.final_kl},
                {"sft_converged", sft.converged},
                {"kl_trace", sft.kl_trace},
                {"rl_reward", rl_reward},
                {"rl_steps", rl.steps_run},
                {"rl_out_of_support_mass", out_of_support_mass},
                {"checks",
                 {{"teacher_reward_exact", teacher_exact},
                  {"sft_within_teacher_ceiling", sft_bounded},
                  {"kl_below_threshold", kl_ok}}}};
  out.passed = teacher_exact && sft_bounded && kl_ok;
  return out;
}

}  // namespace

nlohmann::ordered_json run_sft_vs_rl_experiment(const SftRlConfig& config,
                                                std::uint64_t seed) {
  if (config.teacher_coverage <= 0.0 || config.teacher_coverage >= 1.0) {
    throw ValidationError("teacher_coverage must lie in (0, 1)");
  }

  TaskGenSpec spec;
  spec.template_ = TaskTemplate::Sum;
  spec.grid_rows = config.grid_rows;
  spec.action_count = config.action_count;
  spec.value_min = config.value_min;
  spec.value_max = config.value_max;
  ToyTask task = make_task(spec, seed);

  SftRlRun main_run = run_one_coverage(config, config.teacher_coverage, task, seed + 17);
  SftRlRun control = run_one_coverage(config, config.control_coverage, task, seed + 31);

  double rl_reward = main_run.report["rl_reward"].get<double>();
  double teacher_reward = main_run.report["teacher_reward"].get<double>();
  bool rl_high = rl_reward >= config.rl_min_reward;
  bool rl_beats_teacher = rl_reward >= teacher_reward + config.rl_delta;

  double control_gap = control.report["rl_reward"].get<double>() -
                       control.report["sft_reward"].get<double>();
  bool control_ok = control_gap <= config.control_gap_max;

  bool all_passed = main_run.passed && control.passed && rl_high && rl_beats_teacher &&
                    control_ok;

  nlohmann::ordered_json report;
  report["experiment"] = "sft-vs-rl";
  report["seed"] = seed;
  report["main"] = std::move(main_run.report);
  report["control"] = std::move(control.report);
  report["checks"] = {{"rl_reward_at_least_min", rl_high},
                      {"rl_beats_teacher_by_delta", rl_beats_teacher},
                      {"control_gap_at_most_max", control_ok},
                      {"control_gap", control_gap}};
  report["all_checks_passed"] = all_passed;
  return report;
}

}  // namespace sheetqa
