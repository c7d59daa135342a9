#include "sheetqa/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sheetqa/config.hpp"
#include "sheetqa/errors.hpp"
#include "sheetqa/eval.hpp"
#include "sheetqa/formula.hpp"
#include "sheetqa/grid.hpp"
#include "sheetqa/judge.hpp"
#include "sheetqa/reward.hpp"
#include "sheetqa/theorysim.hpp"
#include "sheetqa/vote.hpp"

namespace sheetqa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) throw ValidationError("malformed JSON in " + what);
  return parsed;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::string text = read_file(path);
  std::vector<json> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    ++line_no;
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = line.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;
    records.push_back(parse_json(line, path + ":" + std::to_string(line_no)));
  }
  return records;
}

// --table accepts a bare 2-D array, {"tables": [...]}, or a full dataset
// record; multiple tables are stacked vertically.
Grid load_table(const std::string& path) {
  json doc = parse_json(read_file(path), path);
  if (doc.is_array() && (doc.empty() || doc[0].is_array())) {
    return grid_from_json_rows(doc);
  }
  if (doc.is_object() && doc.contains("tables")) {
    std::vector<Grid> grids;
    for (const auto& table : doc["tables"]) grids.push_back(grid_from_json_rows(table));
    if (grids.empty()) throw ValidationError("\"tables\" is empty in " + path);
    return concat_vertical(grids);
  }
  throw ValidationError(path + " is neither a table nor an object with \"tables\"");
}

std::map<std::string, TaskInstance> load_dataset(const std::string& path) {
  std::map<std::string, TaskInstance> tasks;
  for (const auto& record : read_jsonl(path)) {
    TaskInstance task = task_from_json(record);
    std::string id = task.id;
    if (!tasks.emplace(id, std::move(task)).second) {
      throw ValidationError("duplicate dataset id \"" + id + "\"");
    }
  }
  if (tasks.empty()) throw ValidationError("dataset " + path + " has no records");
  return tasks;
}

const TaskInstance& find_task(const std::map<std::string, TaskInstance>& tasks,
                              const std::string& id) {
  auto it = tasks.find(id);
  if (it == tasks.end()) throw ValidationError("response id \"" + id + "\" not in dataset");
  return it->second;
}

struct ResponseRecord {
  std::string id;
  OutputMode mode;
  std::string output;
};

std::vector<ResponseRecord> load_responses(const std::string& path,
                                           std::optional<OutputMode> mode_override) {
  std::vector<ResponseRecord> out;
  for (const auto& record : read_jsonl(path)) {
    if (!record.is_object() || !record.contains("id") || !record.contains("output")) {
      throw ValidationError("response records need \"id\" and \"output\"");
    }
    ResponseRecord r;
    r.id = record["id"].get<std::string>();
    r.output = record["output"].get<std::string>();
    if (mode_override) {
      r.mode = *mode_override;
    } else if (record.contains("mode")) {
      r.mode = output_mode_from_string(record["mode"].get<std::string>());
    } else {
      throw ValidationError("response for \"" + r.id + "\" has no mode and --mode not given");
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) throw ValidationError("responses file " + path + " has no records");
  return out;
}

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : run_config_from_file(config_path);
    if (seed) cfg.seed = *seed;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "flat key=value run config");
  cmd->add_option("--seed", opts.seed, "seed override");
}

int cmd_encode(const std::string& table_path, const std::string& out_path, std::ostream& out) {
  std::string encoded = encode_linear(load_table(table_path));
  if (out_path.empty()) out << encoded << "\n";
  else write_file(out_path, encoded + "\n");
  return 0;
}

int cmd_exec(const std::string& table_path, const std::string& formula, std::ostream& out) {
  ExecutionOutcome outcome = execute(formula, load_table(table_path));
  out << outcome.describe() << "\n";
  return 0;
}

int cmd_judge(const std::string& pred_text, const std::string& gold_text,
              const RunConfig& cfg, std::ostream& out) {
  AnswerValue pred = answer_from_json(parse_json(pred_text, "--pred"));
  AnswerValue gold = answer_from_json(parse_json(gold_text, "--gold"));
  if (gold.is_list() && gold.as_list().size() == 1) gold = gold.as_list().front();
  bool match = exact_match(normalize_answer(pred, cfg.label_mode),
                           normalize_answer(gold, cfg.label_mode), cfg.tolerances());
  out << (match ? "true" : "false") << "\n";
  return 0;
}

int cmd_evaluate(const std::string& dataset_path, const std::string& responses_path,
                 std::optional<OutputMode> mode, const RunConfig& cfg,
                 const std::string& out_path, std::ostream& out) {
  auto tasks = load_dataset(dataset_path);
  auto responses = load_responses(responses_path, mode);

  ordered_json per_id = ordered_json::object();
  int correct = 0;
  for (const auto& response : responses) {
    const TaskInstance& task = find_task(tasks, response.id);
    if (per_id.contains(response.id)) {
      throw ValidationError("duplicate response id \"" + response.id + "\"");
    }
    ModelOutput parsed = parse_model_output(response.output, response.mode);
    bool match = false;
    if (parsed.format_ok) {
      AnswerValue gold = normalize_answer(task.gold, cfg.label_mode);
      if (response.mode == OutputMode::Symbolic) {
        ExecutionOutcome outcome = execute(*parsed.formula, combined_grid(task));
        match = outcome.executable() &&
                exact_match(normalize_answer(cell_to_answer(outcome.value()), cfg.label_mode),
                            gold, cfg.tolerances());
      } else {
        match = exact_match(normalize_answer(*parsed.answer, cfg.label_mode), gold,
                            cfg.tolerances());
      }
    }
    per_id[response.id] = match;
    if (match) ++correct;
  }

  double accuracy = static_cast<double>(correct) / static_cast<double>(responses.size());
  ordered_json report = {{"n", responses.size()}, {"accuracy", accuracy}, {"per_id", per_id}};
  out << "n=" << responses.size() << " accuracy=" << accuracy << "\n";
  if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
  return 0;
}

int cmd_reward(const std::string& dataset_path, const std::string& responses_path,
               std::optional<OutputMode> mode, const RunConfig& cfg,
               const std::string& out_path, std::ostream& out) {
  auto tasks = load_dataset(dataset_path);
  auto responses = load_responses(responses_path, mode);

  std::string lines;
  double total = 0.0;
  for (const auto& response : responses) {
    const TaskInstance& task = find_task(tasks, response.id);
    RewardBreakdown breakdown =
        final_reward(response.output, combined_grid(task), task.gold, response.mode,
                     cfg.tolerances(), cfg.label_mode);
    total += breakdown.final;
    ordered_json line = {{"id", response.id},
                         {"answer_reward", breakdown.answer_reward},
                         {"format_reward", breakdown.format_reward},
                         {"final", breakdown.final}};
    lines += line.dump() + "\n";
  }
  out << "n=" << responses.size()
      << " mean_final=" << total / static_cast<double>(responses.size()) << "\n";
  if (!out_path.empty()) write_file(out_path, lines);
  else out << lines;
  return 0;
}

int cmd_vote(const std::string& dataset_path, const std::string& candidates_path,
             const RunConfig& cfg, const std::string& out_path, std::ostream& out) {
  if (cfg.n_text + cfg.n_formula < 1) {
    throw ValidationError("vote sizes must sum to at least 1");
  }
  auto tasks = load_dataset(dataset_path);

  std::string lines;
  int voted_correct = 0;
  int upper_hits = 0;
  int n = 0;
  for (const auto& record : read_jsonl(candidates_path)) {
    if (!record.is_object() || !record.contains("id")) {
      throw ValidationError("candidate records need an \"id\"");
    }
    std::string id = record["id"].get<std::string>();
    const TaskInstance& task = find_task(tasks, id);
    Grid grid = combined_grid(task);

    CandidateSet set;
    if (record.contains("textual")) {
      for (const auto& raw : record["textual"]) {
        if (static_cast<int>(set.textual.size()) >= cfg.n_text) break;
        ModelOutput parsed = parse_model_output(raw.get<std::string>(), OutputMode::Textual);
        if (parsed.format_ok) set.textual.emplace_back(*parsed.answer);
        else set.textual.emplace_back(std::nullopt);
      }
    }
    if (record.contains("symbolic")) {
      for (const auto& raw : record["symbolic"]) {
        if (static_cast<int>(set.symbolic.size()) >= cfg.n_formula) break;
        ModelOutput parsed = parse_model_output(raw.get<std::string>(), OutputMode::Symbolic);
        if (parsed.format_ok) {
          set.symbolic.push_back(execute(*parsed.formula, grid));
        } else {
          set.symbolic.push_back(
              ExecutionOutcome::not_executable(ExecutionOutcome::Failure::ParseError));
        }
      }
    }

    VoteResult vote = hybrid_vote(set, cfg.tolerances(), cfg.label_mode);
    AnswerValue gold = normalize_answer(task.gold, cfg.label_mode);
    bool correct = vote.chosen && exact_match(*vote.chosen, gold, cfg.tolerances());
    bool upper = false;
    for (const auto& candidate : pool_candidates(set, cfg.label_mode)) {
      if (candidate && exact_match(*candidate, gold, cfg.tolerances())) {
        upper = true;
        break;
      }
    }

    ++n;
    if (correct) ++voted_correct;
    if (upper) ++upper_hits;
    ordered_json line = {{"id", id},
                         {"chosen", vote.chosen ? vote.chosen->to_json() : ordered_json(nullptr)},
                         {"correct", correct},
                         {"upper_bound_hit", upper}};
    lines += line.dump() + "\n";
  }
  if (n == 0) throw ValidationError("candidates file has no records");

  out << "n=" << n << " voted_accuracy=" << static_cast<double>(voted_correct) / n
      << " upper_bound=" << static_cast<double>(upper_hits) / n << "\n";
  if (!out_path.empty()) write_file(out_path, lines);
  else out << lines;
  return 0;
}

int cmd_stats(const std::string& formula, const std::string& formulas_path,
              const std::string& out_path, std::ostream& out) {
  std::vector<std::string> formulas;
  if (!formula.empty()) formulas.push_back(formula);
  if (!formulas_path.empty()) {
    std::string text = read_file(formulas_path);
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string::npos) nl = text.size();
      std::string line = text.substr(pos, nl - pos);
      pos = nl + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) formulas.push_back(line);
    }
  }
  if (formulas.empty()) throw ValidationError("give --formula or --formulas");

  std::string lines;
  double sum_len = 0, sum_ops = 0, sum_vars = 0;
  for (const auto& f : formulas) {
    FormulaStats stats;
    try {
      stats = formula_stats(f);
    } catch (const ParseError& e) {
      throw ValidationError("cannot parse \"" + f + "\": " + e.what());
    }
    sum_len += stats.length;
    sum_ops += stats.n_operators;
    sum_vars += stats.n_variables;
    ordered_json line = {{"formula", f},
                         {"length", stats.length},
                         {"n_operators", stats.n_operators},
                         {"n_variables", stats.n_variables}};
    lines += line.dump() + "\n";
  }
  double n = static_cast<double>(formulas.size());
  out << "n=" << formulas.size() << " mean_length=" << sum_len / n
      << " mean_operators=" << sum_ops / n << " mean_variables=" << sum_vars / n << "\n";
  if (!out_path.empty()) write_file(out_path, lines);
  else out << lines;
  return 0;
}

int cmd_simulate(const std::string& which, const std::string& config_path,
                 std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  std::string config_text = config_path.empty() ? "" : read_file(config_path);
  ordered_json report;
  if (which == "dominance") {
    report = run_dominance_experiment(dominance_config_from_text(config_text), seed);
  } else {
    report = run_sft_vs_rl_experiment(sft_rl_config_from_text(config_text), seed);
  }
  out << report["experiment"].get<std::string>() << ": all_checks_passed="
      << (report["all_checks_passed"].get<bool>() ? "true" : "false") << "\n";
  if (!out_path.empty()) write_file(out_path, report.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"spreadsheet-formula table QA toolkit"};
  app.require_subcommand(1);

  std::string table_path, formula, out_path;
  std::string dataset_path, responses_path, candidates_path, formulas_path;
  std::string pred_text, gold_text;
  std::string mode_str;
  CommonOpts common;

  auto* encode = app.add_subcommand("encode", "linearize a table");
  encode->add_option("--table", table_path, "table JSON file")->required();
  encode->add_option("--out", out_path, "output path");

  auto* exec = app.add_subcommand("exec", "execute one formula against a table");
  exec->add_option("--table", table_path, "table JSON file")->required();
  exec->add_option("--formula", formula, "formula text")->required();

  auto* judge = app.add_subcommand("judge", "exact-match one prediction against gold");
  judge->add_option("--pred", pred_text, "prediction (JSON value)")->required();
  judge->add_option("--gold", gold_text, "gold (JSON value)")->required();
  add_common(judge, common);

  auto* evaluate = app.add_subcommand("evaluate", "score a responses file");
  evaluate->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  evaluate->add_option("--responses", responses_path, "responses JSONL")->required();
  evaluate->add_option("--mode", mode_str, "textual|symbolic override");
  evaluate->add_option("--out", out_path, "score report path");
  add_common(evaluate, common);

  auto* reward = app.add_subcommand("reward", "reward each response");
  reward->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  reward->add_option("--responses", responses_path, "responses JSONL")->required();
  reward->add_option("--mode", mode_str, "textual|symbolic override");
  reward->add_option("--out", out_path, "rewards JSONL path");
  add_common(reward, common);

  auto* vote = app.add_subcommand("vote", "self-consistency vote over candidates");
  vote->add_option("--dataset", dataset_path, "dataset JSONL")->required();
  vote->add_option("--candidates", candidates_path, "candidates JSONL")->required();
  vote->add_option("--out", out_path, "vote results JSONL path");
  add_common(vote, common);

  auto* stats = app.add_subcommand("stats", "formula shape statistics");
  stats->add_option("--formula", formula, "one formula");
  stats->add_option("--formulas", formulas_path, "file with one formula per line");
  stats->add_option("--out", out_path, "stats JSONL path");

  auto* simulate = app.add_subcommand("simulate", "run a theory experiment");
  simulate->require_subcommand(1);
  auto* dominance = simulate->add_subcommand("dominance", "symbolic vs textual reward");
  auto* sft_rl = simulate->add_subcommand("sft-vs-rl", "SFT ceiling vs RL");
  for (auto* sub : {dominance, sft_rl}) {
    sub->add_option("--config", common.config_path, "flat key=value sim config");
    sub->add_option("--seed", common.seed, "experiment seed");
    sub->add_option("--out", out_path, "report JSON path");
  }

  std::vector<std::string> args(argv.rbegin(), argv.rend());  // CLI11 wants reversed
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::optional<OutputMode> mode;
    if (!mode_str.empty()) mode = output_mode_from_string(mode_str);

    if (encode->parsed()) return cmd_encode(table_path, out_path, out);
    if (exec->parsed()) return cmd_exec(table_path, formula, out);
    if (judge->parsed()) return cmd_judge(pred_text, gold_text, common.resolve(), out);
    if (evaluate->parsed()) {
      return cmd_evaluate(dataset_path, responses_path, mode, common.resolve(), out_path, out);
    }
    if (reward->parsed()) {
      return cmd_reward(dataset_path, responses_path, mode, common.resolve(), out_path, out);
    }
    if (vote->parsed()) {
      return cmd_vote(dataset_path, candidates_path, common.resolve(), out_path, out);
    }
    if (stats->parsed()) return cmd_stats(formula, formulas_path, out_path, out);
    if (simulate->parsed()) {
      std::uint64_t seed = common.seed.value_or(0);
      return cmd_simulate(dominance->parsed() ? "dominance" : "sft-vs-rl",
                          common.config_path, seed, out_path, out);
    }
    err << "error: no subcommand\n";
    return 1;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sheetqa
