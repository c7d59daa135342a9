#include "sheetqa/vote.hpp"

#include "sheetqa/errors.hpp"

namespace sheetqa {

namespace {

// Kind-prefixed so a Bool(true) class and a Str("true") class cannot share a
// tally slot.
std::string tally_key(const AnswerValue& v) {
  switch (v.kind()) {
    case AnswerValue::Kind::Num: return "num:" + v.to_key();
    case AnswerValue::Kind::Str: return "str:" + v.to_key();
    case AnswerValue::Kind::Bool: return "bool:" + v.to_key();
    case AnswerValue::Kind::List: return "list:" + v.to_key();
  }
  return v.to_key();
}

}  // namespace

VoteResult majority_vote(std::span<const std::optional<AnswerValue>> candidates,
                         const Tolerances& tol, bool label_mode) {
  struct VoteClass {
    AnswerValue representative;
    int count = 0;
  };
  std::vector<VoteClass> classes;  // in first-seen order

  VoteResult result;
  for (const auto& candidate : candidates) {
    if (!candidate) continue;
    ++result.n_valid;
    AnswerValue norm = normalize_answer(*candidate, label_mode);
    bool found = false;
    for (auto& cls : classes) {
      if (exact_match(norm, cls.representative, tol)) {
        ++cls.count;
        found = true;
        break;
      }
    }
    if (!found) classes.push_back(VoteClass{std::move(norm), 1});
  }

  int best = 0;
  for (const auto& cls : classes) {
    result.tally[tally_key(cls.representative)] = cls.count;
    if (cls.count > best) {  // strict: earlier classes win ties
      best = cls.count;
      result.chosen = cls.representative;
    }
  }
  return result;
}

std::vector<std::optional<AnswerValue>> pool_candidates(const CandidateSet& set,
                                                        bool label_mode) {
  std::vector<std::optional<AnswerValue>> pooled;
  pooled.reserve(set.textual.size() + set.symbolic.size());
  for (const auto& t : set.textual) {
    if (t) pooled.push_back(normalize_answer(*t, label_mode));
    else pooled.push_back(std::nullopt);
  }
  for (const auto& s : set.symbolic) {
    if (s.executable()) {
      pooled.push_back(normalize_answer(cell_to_answer(s.value()), label_mode));
    } else {
      pooled.push_back(std::nullopt);
    }
  }
  return pooled;
}

VoteResult hybrid_vote(const CandidateSet& set, const Tolerances& tol, bool label_mode) {
  auto pooled = pool_candidates(set, label_mode);
  return majority_vote(pooled, tol, label_mode);
}

double upper_bound_rate(std::span<const std::pair<CandidateSet, AnswerValue>> sets,
                        const Tolerances& tol, bool label_mode) {
  if (sets.empty()) throw EmptyRun("upper_bound_rate over zero tasks");
  int hits = 0;
  for (const auto& [set, gold] : sets) {
    AnswerValue gold_norm = normalize_answer(gold, label_mode);
    for (const auto& candidate : pool_candidates(set, label_mode)) {
      if (candidate && exact_match(*candidate, gold_norm, tol)) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(sets.size());
}

}  // namespace sheetqa
