#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace sheetqa {

/// A predicted or gold answer: a number, a string, a boolean, or a flat list
/// of those (one nesting level only).
class AnswerValue {
 public:
  enum class Kind { Num, Str, Bool, List };

  AnswerValue() : kind_(Kind::Str) {}

  static AnswerValue num(double v);
  static AnswerValue str(std::string v);
  static AnswerValue boolean(bool v);
  static AnswerValue list(std::vector<AnswerValue> items);  // items must be non-List

  Kind kind() const { return kind_; }
  bool is_num() const { return kind_ == Kind::Num; }
  bool is_str() const { return kind_ == Kind::Str; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_list() const { return kind_ == Kind::List; }

  double as_num() const { return num_; }
  const std::string& as_str() const { return str_; }
  bool as_bool() const { return bool_; }
  const std::vector<AnswerValue>& as_list() const { return list_; }

  /// Canonical rendering, used as a tally key and for report output.
  std::string to_key() const;

  nlohmann::ordered_json to_json() const;

  friend bool operator==(const AnswerValue&, const AnswerValue&) = default;

 private:
  Kind kind_;
  double num_ = 0.0;
  std::string str_;
  bool bool_ = false;
  std::vector<AnswerValue> list_;
};

/// Converts a JSON scalar or flat array into an AnswerValue. Throws
/// ValidationError on null, objects, or nested arrays.
AnswerValue answer_from_json(const nlohmann::json& j);

}  // namespace sheetqa
