#pragma once

#include <map>
#include <string>
#include <string_view>

#include "sheetqa/theorysim.hpp"

namespace sheetqa {

/// Run-wide knobs shared by the judging/reward/vote commands.
struct RunConfig {
  double rel_tol = 1e-4;
  double abs_tol = 1e-6;
  bool percentage_equivalence = true;
  bool label_mode = false;
  int n_text = 5;     // vote candidates drawn from the textual samples
  int n_formula = 5;  // vote candidates drawn from the symbolic samples
  std::uint64_t seed = 0;

  Tolerances tolerances() const { return Tolerances{rel_tol, abs_tol, percentage_equivalence}; }
};

/// Parses "key = value" lines ('#' comments, blank lines allowed). Duplicate
/// keys are rejected.
std::map<std::string, std::string> parse_flat_config(std::string_view text);

/// Loads a RunConfig; unknown keys and invariant violations raise ConfigError.
RunConfig run_config_from_text(std::string_view text);
RunConfig run_config_from_file(const std::string& path);

/// Loads simulate-subcommand configs from the same flat format.
DominanceConfig dominance_config_from_text(std::string_view text);
SftRlConfig sft_rl_config_from_text(std::string_view text);

}  // namespace sheetqa
