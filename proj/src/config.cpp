#include "sheetqa/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sheetqa/cell.hpp"
#include "sheetqa/errors.hpp"

namespace sheetqa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

class KvReader {
 public:
  explicit KvReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  double number(const std::string& key, double fallback) {
    auto it = take(key);
    if (!it) return fallback;
    auto v = parse_number_strict(*it);
    if (!v) throw ConfigError("key \"" + key + "\" is not a number: " + *it);
    return *v;
  }

  int integer(const std::string& key, int fallback) {
    double v = number(key, fallback);
    if (v < -2147483648.0 || v > 2147483647.0 || v != static_cast<long long>(v)) {
      throw ConfigError("key \"" + key + "\" must be an integer");
    }
    return static_cast<int>(v);
  }

  bool boolean(const std::string& key, bool fallback) {
    auto it = take(key);
    if (!it) return fallback;
    if (*it == "true") return true;
    if (*it == "false") return false;
    throw ConfigError("key \"" + key + "\" must be true or false: " + *it);
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string value = it->second;
    kv_.erase(it);
    return value;
  }

  void finish() const {
    if (!kv_.empty()) {
      throw ConfigError("unknown config key \"" + kv_.begin()->first + "\"");
    }
  }

 private:
  std::map<std::string, std::string> kv_;
};

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto piece = trim(text.substr(pos, comma - pos));
    if (!piece.empty()) out.emplace_back(piece);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_flat_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = trim(text.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty() || line.front() == '#') {
      if (nl == text.size()) break;
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + " is not \"key = value\"");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + " has an empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError("duplicate config key \"" + key + "\"");
    }
    if (nl == text.size()) break;
  }
  return kv;
}

RunConfig run_config_from_text(std::string_view text) {
  KvReader kv(parse_flat_config(text));
  RunConfig cfg;
  cfg.rel_tol = kv.number("rel_tol", cfg.rel_tol);
  cfg.abs_tol = kv.number("abs_tol", cfg.abs_tol);
  cfg.percentage_equivalence = kv.boolean("percentage_equivalence", cfg.percentage_equivalence);
  cfg.label_mode = kv.boolean("label_mode", cfg.label_mode);
  cfg.n_text = kv.integer("n_text", cfg.n_text);
  cfg.n_formula = kv.integer("n_formula", cfg.n_formula);
  double seed = kv.number("seed", static_cast<double>(cfg.seed));
  kv.finish();

  if (cfg.rel_tol < 0 || cfg.abs_tol < 0) throw ConfigError("tolerances must be >= 0");
  if (cfg.n_text < 0 || cfg.n_formula < 0) throw ConfigError("vote sizes must be >= 0");
  if (seed < 0 || seed != static_cast<std::uint64_t>(seed)) {
    throw ConfigError("seed must be a non-negative integer");
  }
  cfg.seed = static_cast<std::uint64_t>(seed);
  return cfg;
}

RunConfig run_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return run_config_from_text(buf.str());
}

DominanceConfig dominance_config_from_text(std::string_view text) {
  KvReader kv(parse_flat_config(text));
  DominanceConfig cfg;
  cfg.n_tasks = kv.integer("tasks", cfg.n_tasks);
  cfg.grid_rows = kv.integer("rows", cfg.grid_rows);
  cfg.action_count = kv.integer("actions", cfg.action_count);
  cfg.value_min = kv.number("value_min", cfg.value_min);
  cfg.value_max = kv.number("value_max", cfg.value_max);
  if (auto fidelities = kv.take("fidelities")) {
    cfg.fidelities.clear();
    for (const auto& piece : split_list(*fidelities)) {
      auto v = parse_number_strict(piece);
      if (!v) throw ConfigError("bad fidelity value: " + piece);
      cfg.fidelities.push_back(*v);
    }
  }
  if (auto templates = kv.take("templates")) {
    cfg.templates.clear();
    for (const auto& piece : split_list(*templates)) {
      try {
        cfg.templates.push_back(task_template_from_string(piece));
      } catch (const ValidationError& e) {
        throw ConfigError(e.what());
      }
    }
  }
  kv.finish();
  return cfg;
}

SftRlConfig sft_rl_config_from_text(std::string_view text) {
  KvReader kv(parse_flat_config(text));
  SftRlConfig cfg;
  cfg.grid_rows = kv.integer("rows", cfg.grid_rows);
  cfg.action_count = kv.integer("actions", cfg.action_count);
  cfg.value_min = kv.number("value_min", cfg.value_min);
  cfg.value_max = kv.number("value_max", cfg.value_max);
  cfg.teacher_coverage = kv.number("teacher_coverage", cfg.teacher_coverage);
  cfg.control_coverage = kv.number("control_coverage", cfg.control_coverage);
  cfg.sft_samples = kv.integer("sft_samples", cfg.sft_samples);
  cfg.sft_lr = kv.number("sft_lr", cfg.sft_lr);
  cfg.sft_steps = kv.integer("sft_steps", cfg.sft_steps);
  cfg.kl_threshold = kv.number("kl_threshold", cfg.kl_threshold);
  cfg.rl_lr = kv.number("rl_lr", cfg.rl_lr);
  cfg.rl_max_steps = kv.integer("rl_max_steps", cfg.rl_max_steps);
  cfg.rl_stop_slack = kv.number("rl_stop_slack", cfg.rl_stop_slack);
  cfg.sft_epsilon = kv.number("sft_epsilon", cfg.sft_epsilon);
  cfg.rl_min_reward = kv.number("rl_min_reward", cfg.rl_min_reward);
  cfg.rl_delta = kv.number("rl_delta", cfg.rl_delta);
  cfg.control_gap_max = kv.number("control_gap_max", cfg.control_gap_max);
  kv.finish();
  return cfg;
}

}  // namespace sheetqa
