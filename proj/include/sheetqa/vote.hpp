#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sheetqa/judge.hpp"

namespace sheetqa {

/// Sampled generations for one task. nullopt marks a format-invalid textual
/// generation; non-executable symbolic outcomes are dropped at pooling time.
struct CandidateSet {
  std::vector<std::optional<AnswerValue>> textual;
  std::vector<ExecutionOutcome> symbolic;
};

struct VoteResult {
  std::optional<AnswerValue> chosen;  // normalized representative, or nullopt
  std::map<std::string, int> tally;   // representative key -> class size
  int n_valid = 0;
};

/// Majority vote over equivalence classes of exact_match (numeric tolerance
/// merges near-equal numbers; each class is represented by its first-seen
/// member). Ties break to the class that appeared first.
VoteResult majority_vote(std::span<const std::optional<AnswerValue>> candidates,
                         const Tolerances& tol, bool label_mode = false);

/// Pools textual answers (first) and executed symbolic values (second) into
/// one unweighted vote.
VoteResult hybrid_vote(const CandidateSet& set, const Tolerances& tol,
                       bool label_mode = false);

/// Fraction of tasks where any pooled valid candidate matches gold,
/// regardless of what the vote picked. Throws EmptyRun.
double upper_bound_rate(std::span<const std::pair<CandidateSet, AnswerValue>> sets,
                        const Tolerances& tol, bool label_mode = false);

/// The pooled, normalized candidate list hybrid_vote votes over.
std::vector<std::optional<AnswerValue>> pool_candidates(const CandidateSet& set,
                                                        bool label_mode = false);

}  // namespace sheetqa
