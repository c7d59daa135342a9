#include "sheetqa/answer.hpp"

#include "sheetqa/cell.hpp"
#include "sheetqa/errors.hpp"

namespace sheetqa {

AnswerValue AnswerValue::num(double v) {
  AnswerValue out;
  out.kind_ = Kind::Num;
  out.num_ = v;
  return out;
}

AnswerValue AnswerValue::str(std::string v) {
  AnswerValue out;
  out.kind_ = Kind::Str;
  out.str_ = std::move(v);
  return out;
}

AnswerValue AnswerValue::boolean(bool v) {
  AnswerValue out;
  out.kind_ = Kind::Bool;
  out.bool_ = v;
  return out;
}

AnswerValue AnswerValue::list(std::vector<AnswerValue> items) {
  for (const auto& item : items) {
    if (item.is_list()) {
      throw ValidationError("answer lists cannot be nested");
    }
  }
  AnswerValue out;
  out.kind_ = Kind::List;
  out.list_ = std::move(items);
  return out;
}

std::string AnswerValue::to_key() const {
  switch (kind_) {
    case Kind::Num:
      return format_number(num_);
    case Kind::Str:
      return str_;
    case Kind::Bool:
      return bool_ ? "true" : "false";
    case Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < list_.size(); ++i) {
        if (i > 0) out += "; ";
        out += list_[i].to_key();
      }
      out += "]";
      return out;
    }
  }
  return "";
}

nlohmann::ordered_json AnswerValue::to_json() const {
  switch (kind_) {
    case Kind::Num:
      return num_;
    case Kind::Str:
      return str_;
    case Kind::Bool:
      return bool_;
    case Kind::List: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& item : list_) arr.push_back(item.to_json());
      return arr;
    }
  }
  return nullptr;
}

AnswerValue answer_from_json(const nlohmann::json& j) {
  if (j.is_number()) return AnswerValue::num(j.get<double>());
  if (j.is_string()) return AnswerValue::str(j.get<std::string>());
  if (j.is_boolean()) return AnswerValue::boolean(j.get<bool>());
  if (j.is_array()) {
    std::vector<AnswerValue> items;
    items.reserve(j.size());
    for (const auto& el : j) {
      if (el.is_array() || el.is_object() || el.is_null()) {
        throw ValidationError("answer array elements must be scalars");
      }
      items.push_back(answer_from_json(el));
    }
    return AnswerValue::list(std::move(items));
  }
  throw ValidationError("answer must be a JSON scalar or flat array");
}

}  // namespace sheetqa
