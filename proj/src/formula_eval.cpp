#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <string>

#include "sheetqa/errors.hpp"
#include "sheetqa/eval.hpp"

// Evaluation semantics, shared by every function below:
//   - arithmetic coercion: Empty -> 0, Boolean -> 1/0, numeric-looking Text
//     (trimmed) -> its number, other Text -> VALUE; non-finite results -> VALUE
//   - condition coercion (IF/AND/OR/NOT): Boolean as-is, Number != 0,
//     Empty -> FALSE, Text -> VALUE
//   - comparisons: Empty compares as Number 0; same-kind otherwise, with text
//     case-insensitive and FALSE < TRUE; cross-kind "=" is FALSE, "<>" is
//     TRUE, ordering is VALUE
//   - aggregates (SUM/AVERAGE/COUNT/MAX/MIN) look at Number cells only;
//     MAX/MIN of nothing is 0, AVERAGE of nothing is DIV/0
//   - arrays: arithmetic and unary minus broadcast elementwise (shapes must
//     match), the first elementwise error wins; comparisons take scalars only
//   - arity errors surface at evaluation time as VALUE

namespace sheetqa {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Div0: return "#DIV/0!";
    case ErrorKind::Value: return "#VALUE!";
    case ErrorKind::Na: return "#N/A";
    case ErrorKind::Name: return "#NAME?";
    case ErrorKind::Ref: return "#REF!";
  }
  return "#?";
}

EvalValue EvalValue::scalar(CellValue v) {
  EvalValue out;
  out.kind_ = Kind::Scalar;
  out.scalar_ = std::move(v);
  return out;
}

EvalValue EvalValue::array(ArrayValue v) {
  EvalValue out;
  out.kind_ = Kind::Array;
  out.array_ = std::move(v);
  return out;
}

EvalValue EvalValue::error(ErrorKind kind) {
  EvalValue out;
  out.kind_ = Kind::Error;
  out.error_ = kind;
  return out;
}

ExecutionOutcome ExecutionOutcome::value(CellValue v) {
  ExecutionOutcome out;
  out.executable_ = true;
  out.value_ = std::move(v);
  return out;
}

ExecutionOutcome ExecutionOutcome::not_executable(Failure reason) {
  ExecutionOutcome out;
  out.executable_ = false;
  out.failure_ = reason;
  return out;
}

ExecutionOutcome ExecutionOutcome::runtime_error(ErrorKind kind) {
  ExecutionOutcome out;
  out.executable_ = false;
  out.failure_ = Failure::RuntimeError;
  out.runtime_kind_ = kind;
  return out;
}

std::string ExecutionOutcome::describe() const {
  if (executable_) return value_.to_display();
  switch (failure_) {
    case Failure::ParseError: return "not executable: parse error";
    case Failure::UnknownFunction: return "not executable: unknown function";
    case Failure::RuntimeError:
      return std::string("not executable: ") + error_kind_name(runtime_kind_);
    case Failure::ArrayResult: return "not executable: array result";
  }
  return "not executable";
}

namespace {

std::string fold_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> to_number(const CellValue& v) {
  switch (v.kind()) {
    case CellValue::Kind::Empty: return 0.0;
    case CellValue::Kind::Number: return v.as_number();
    case CellValue::Kind::Boolean: return v.as_boolean() ? 1.0 : 0.0;
    case CellValue::Kind::Text: return parse_number_strict(trim(v.as_text()));
  }
  return std::nullopt;
}

std::optional<bool> to_condition(const CellValue& v) {
  switch (v.kind()) {
    case CellValue::Kind::Empty: return false;
    case CellValue::Kind::Number: return v.as_number() != 0.0;
    case CellValue::Kind::Boolean: return v.as_boolean();
    case CellValue::Kind::Text: return std::nullopt;
  }
  return std::nullopt;
}

EvalValue finite_number(double v) {
  if (!std::isfinite(v)) return EvalValue::error(ErrorKind::Value);
  return EvalValue::scalar(CellValue::number(v));
}

// Scalar comparison per the module convention. Returns a Boolean scalar or an
// error.
EvalValue compare_scalars(const CellValue& lhs_in, const CellValue& rhs_in, BinaryOp op) {
  const CellValue lhs = lhs_in.is_empty() ? CellValue::number(0) : lhs_in;
  const CellValue rhs = rhs_in.is_empty() ? CellValue::number(0) : rhs_in;

  if (lhs.kind() != rhs.kind()) {
    if (op == BinaryOp::Eq) return EvalValue::scalar(CellValue::boolean(false));
    if (op == BinaryOp::Ne) return EvalValue::scalar(CellValue::boolean(true));
    return EvalValue::error(ErrorKind::Value);
  }

  int cmp = 0;  // -1, 0, +1
  switch (lhs.kind()) {
    case CellValue::Kind::Number: {
      double a = lhs.as_number(), b = rhs.as_number();
      cmp = a < b ? -1 : (a > b ? 1 : 0);
      break;
    }
    case CellValue::Kind::Text: {
      std::string a = fold_case(lhs.as_text()), b = fold_case(rhs.as_text());
      cmp = a < b ? -1 : (a > b ? 1 : 0);
      break;
    }
    case CellValue::Kind::Boolean: {
      int a = lhs.as_boolean() ? 1 : 0, b = rhs.as_boolean() ? 1 : 0;
      cmp = a < b ? -1 : (a > b ? 1 : 0);
      break;
    }
    case CellValue::Kind::Empty:
      break;  // unreachable, Empty was normalized above
  }

  bool result = false;
  switch (op) {
    case BinaryOp::Eq: result = cmp == 0; break;
    case BinaryOp::Ne: result = cmp != 0; break;
    case BinaryOp::Gt: result = cmp > 0; break;
    case BinaryOp::Lt: result = cmp < 0; break;
    case BinaryOp::Ge: result = cmp >= 0; break;
    case BinaryOp::Le: result = cmp <= 0; break;
    default: return EvalValue::error(ErrorKind::Value);
  }
  return EvalValue::scalar(CellValue::boolean(result));
}

EvalValue arith_scalars(const CellValue& lhs, const CellValue& rhs, BinaryOp op) {
  auto a = to_number(lhs);
  auto b = to_number(rhs);
  if (!a || !b) return EvalValue::error(ErrorKind::Value);
  switch (op) {
    case BinaryOp::Add: return finite_number(*a + *b);
    case BinaryOp::Sub: return finite_number(*a - *b);
    case BinaryOp::Mul: return finite_number(*a * *b);
    case BinaryOp::Div:
      if (*b == 0.0) return EvalValue::error(ErrorKind::Div0);
      return finite_number(*a / *b);
    default: return EvalValue::error(ErrorKind::Value);
  }
}

// Elementwise application over scalars/arrays with scalar broadcast. `f` maps
// two scalar cells to a scalar-or-error EvalValue.
EvalValue broadcast(const EvalValue& lhs, const EvalValue& rhs,
                    const std::function<EvalValue(const CellValue&, const CellValue&)>& f) {
  if (lhs.is_scalar() && rhs.is_scalar()) return f(lhs.as_scalar(), rhs.as_scalar());

  int rows = 0, cols = 0;
  if (lhs.is_array()) { rows = lhs.as_array().rows; cols = lhs.as_array().cols; }
  if (rhs.is_array()) {
    if (lhs.is_array() && (rhs.as_array().rows != rows || rhs.as_array().cols != cols)) {
      return EvalValue::error(ErrorKind::Value);
    }
    rows = rhs.as_array().rows;
    cols = rhs.as_array().cols;
  }

  ArrayValue out;
  out.rows = rows;
  out.cols = cols;
  out.cells.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const CellValue& a = lhs.is_array() ? lhs.as_array().at(r, c) : lhs.as_scalar();
      const CellValue& b = rhs.is_array() ? rhs.as_array().at(r, c) : rhs.as_scalar();
      EvalValue cell = f(a, b);
      if (cell.is_error()) return cell;
      out.cells.push_back(cell.as_scalar());
    }
  }
  return EvalValue::array(std::move(out));
}

std::vector<CellValue> flatten(std::span<const EvalValue> args) {
  std::vector<CellValue> out;
  for (const auto& arg : args) {
    if (arg.is_scalar()) {
      out.push_back(arg.as_scalar());
    } else {
      const auto& arr = arg.as_array();
      out.insert(out.end(), arr.cells.begin(), arr.cells.end());
    }
  }
  return out;
}

ArrayValue as_array(const EvalValue& v) {
  if (v.is_array()) return v.as_array();
  return ArrayValue{1, 1, {v.as_scalar()}};
}

std::optional<long long> to_index(const CellValue& v) {
  auto n = to_number(v);
  if (!n) return std::nullopt;
  return static_cast<long long>(*n);  // truncates toward zero
}

using FnImpl = EvalValue (*)(std::span<const EvalValue>);

EvalValue fn_sum(std::span<const EvalValue> args) {
  if (args.empty()) return EvalValue::error(ErrorKind::Value);
  double sum = 0.0;
  for (const auto& cell : flatten(args)) {
    if (cell.is_number()) sum += cell.as_number();
  }
  return finite_number(sum);
}

EvalValue fn_average(std::span<const EvalValue> args) {
  if (args.empty()) return EvalValue::error(ErrorKind::Value);
  double sum = 0.0;
  int count = 0;
  for (const auto& cell : flatten(args)) {
    if (cell.is_number()) { sum += cell.as_number(); ++count; }
  }
  if (count == 0) return EvalValue::error(ErrorKind::Div0);
  return finite_number(sum / count);
}

EvalValue fn_count(std::span<const EvalValue> args) {
  if (args.empty()) return EvalValue::error(ErrorKind::Value);
  int count = 0;
  for (const auto& cell : flatten(args)) {
    if (cell.is_number()) ++count;
  }
  return EvalValue::scalar(CellValue::number(count));
}

EvalValue fn_minmax(std::span<const EvalValue> args, bool want_max) {
  if (args.empty()) return EvalValue::error(ErrorKind::Value);
  bool found = false;
  double best = 0.0;
  for (const auto& cell : flatten(args)) {
    if (!cell.is_number()) continue;
    double v = cell.as_number();
    if (!found || (want_max ? v > best : v < best)) best = v;
    found = true;
  }
  return EvalValue::scalar(CellValue::number(found ? best : 0.0));
}

EvalValue fn_max(std::span<const EvalValue> args) { return fn_minmax(args, true); }
EvalValue fn_min(std::span<const EvalValue> args) { return fn_minmax(args, false); }

EvalValue fn_andor(std::span<const EvalValue> args, bool is_and) {
  if (args.empty()) return EvalValue::error(ErrorKind::Value);
  bool any_considered = false;
  bool acc = is_and;
  for (const auto& cell : flatten(args)) {
    if (cell.is_empty()) continue;
    auto b = to_condition(cell);
    if (!b) return EvalValue::error(ErrorKind::Value);
    any_considered = true;
    acc = is_and ? (acc && *b) : (acc || *b);
  }
  if (!any_considered) return EvalValue::error(ErrorKind::Value);
  return EvalValue::scalar(CellValue::boolean(acc));
}

EvalValue fn_and(std::span<const EvalValue> args) { return fn_andor(args, true); }
EvalValue fn_or(std::span<const EvalValue> args) { return fn_andor(args, false); }

EvalValue fn_not(std::span<const EvalValue> args) {
  if (args.size() != 1 || !args[0].is_scalar()) return EvalValue::error(ErrorKind::Value);
  auto b = to_condition(args[0].as_scalar());
  if (!b) return EvalValue::error(ErrorKind::Value);
  return EvalValue::scalar(CellValue::boolean(!*b));
}

EvalValue fn_true(std::span<const EvalValue> args) {
  if (!args.empty()) return EvalValue::error(ErrorKind::Value);
  return EvalValue::scalar(CellValue::boolean(true));
}

EvalValue fn_false(std::span<const EvalValue> args) {
  if (!args.empty()) return EvalValue::error(ErrorKind::Value);
  return EvalValue::scalar(CellValue::boolean(false));
}

EvalValue fn_index(std::span<const EvalValue> args) {
  if (args.size() < 2 || args.size() > 3) return EvalValue::error(ErrorKind::Value);
  ArrayValue arr = as_array(args[0]);
  if (!args[1].is_scalar() || (args.size() == 3 && !args[2].is_scalar())) {
    return EvalValue::error(ErrorKind::Value);
  }
  if (args.size() == 2) {
    auto k = to_index(args[1].as_scalar());
    if (!k) return EvalValue::error(ErrorKind::Value);
    if (*k < 1 || *k > arr.size()) return EvalValue::error(ErrorKind::Ref);
    return EvalValue::scalar(arr.cells[static_cast<std::size_t>(*k - 1)]);
  }
  auto r = to_index(args[1].as_scalar());
  auto c = to_index(args[2].as_scalar());
  if (!r || !c) return EvalValue::error(ErrorKind::Value);
  if (*r < 1 || *r > arr.rows || *c < 1 || *c > arr.cols) {
    return EvalValue::error(ErrorKind::Ref);
  }
  return EvalValue::scalar(arr.at(static_cast<int>(*r - 1), static_cast<int>(*c - 1)));
}

// Exact match: same-kind equality, text case-insensitive, Empty cells skipped.
bool match_equal(const CellValue& cell, const CellValue& value) {
  if (cell.is_empty() || cell.kind() != value.kind()) return false;
  switch (cell.kind()) {
    case CellValue::Kind::Number: return cell.as_number() == value.as_number();
    case CellValue::Kind::Text: return fold_case(cell.as_text()) == fold_case(value.as_text());
    case CellValue::Kind::Boolean: return cell.as_boolean() == value.as_boolean();
    default: return false;
  }
}

EvalValue fn_match(std::span<const EvalValue> args) {
  if (args.size() < 2 || args.size() > 3) return EvalValue::error(ErrorKind::Value);
  if (!args[0].is_scalar()) return EvalValue::error(ErrorKind::Value);
  const CellValue& value = args[0].as_scalar();
  ArrayValue arr = as_array(args[1]);

  long long match_type = 1;
  if (args.size() == 3) {
    if (!args[2].is_scalar()) return EvalValue::error(ErrorKind::Value);
    auto t = to_index(args[2].as_scalar());
    if (!t) return EvalValue::error(ErrorKind::Value);
    match_type = *t;
  }

  if (match_type == 0) {
    for (int i = 0; i < arr.size(); ++i) {
      if (match_equal(arr.cells[static_cast<std::size_t>(i)], value)) {
        return EvalValue::scalar(CellValue::number(i + 1));
      }
    }
    return EvalValue::error(ErrorKind::Na);
  }
  if (match_type == 1) {
    // Largest Number <= value over ascending data.
    if (!value.is_number()) return EvalValue::error(ErrorKind::Value);
    int best = -1;
    for (int i = 0; i < arr.size(); ++i) {
      const CellValue& cell = arr.cells[static_cast<std::size_t>(i)];
      if (cell.is_number() && cell.as_number() <= value.as_number()) best = i;
    }
    if (best < 0) return EvalValue::error(ErrorKind::Na);
    return EvalValue::scalar(CellValue::number(best + 1));
  }
  return EvalValue::error(ErrorKind::Value);  // match_type -1 unsupported
}

EvalValue fn_countif(std::span<const EvalValue> args) {
  if (args.size() != 2) return EvalValue::error(ErrorKind::Value);
  ArrayValue range = as_array(args[0]);

  auto count_for = [&](const CellValue& raw) -> double {
    Criteria crit = parse_criteria(raw);
    int count = 0;
    for (const auto& cell : range.cells) {
      if (criteria_matches(cell, crit)) ++count;
    }
    return count;
  };

  if (args[1].is_scalar()) {
    return EvalValue::scalar(CellValue::number(count_for(args[1].as_scalar())));
  }
  const ArrayValue& crits = args[1].as_array();
  ArrayValue out;
  out.rows = crits.rows;
  out.cols = crits.cols;
  out.cells.reserve(crits.cells.size());
  for (const auto& raw : crits.cells) {
    out.cells.push_back(CellValue::number(count_for(raw)));
  }
  return EvalValue::array(std::move(out));
}

EvalValue fn_sumproduct(std::span<const EvalValue> args) {
  if (args.empty()) return EvalValue::error(ErrorKind::Value);
  int rows = 1, cols = 1;
  bool have_array = false;
  for (const auto& arg : args) {
    if (!arg.is_array()) continue;
    if (have_array && (arg.as_array().rows != rows || arg.as_array().cols != cols)) {
      return EvalValue::error(ErrorKind::Value);
    }
    rows = arg.as_array().rows;
    cols = arg.as_array().cols;
    have_array = true;
  }

  double sum = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double product = 1.0;
      for (const auto& arg : args) {
        const CellValue& cell = arg.is_array() ? arg.as_array().at(r, c) : arg.as_scalar();
        auto n = to_number(cell);
        if (!n) return EvalValue::error(ErrorKind::Value);
        product *= *n;
      }
      sum += product;
    }
  }
  return finite_number(sum);
}

const std::map<std::string, FnImpl>& registry() {
  static const std::map<std::string, FnImpl> fns = {
      {"SUM", fn_sum},       {"AVERAGE", fn_average}, {"COUNT", fn_count},
      {"MAX", fn_max},       {"MIN", fn_min},         {"AND", fn_and},
      {"OR", fn_or},         {"NOT", fn_not},         {"TRUE", fn_true},
      {"FALSE", fn_false},   {"INDEX", fn_index},     {"MATCH", fn_match},
      {"COUNTIF", fn_countif}, {"SUMPRODUCT", fn_sumproduct},
  };
  return fns;
}

EvalValue eval_node(const FormulaAst& node, const Grid& grid);

EvalValue eval_if(const FormulaAst& node, const Grid& grid) {
  if (node.children.size() < 2 || node.children.size() > 3) {
    return EvalValue::error(ErrorKind::Value);
  }
  EvalValue cond = eval_node(node.children[0], grid);
  if (cond.is_error()) return cond;
  if (!cond.is_scalar()) return EvalValue::error(ErrorKind::Value);
  auto b = to_condition(cond.as_scalar());
  if (!b) return EvalValue::error(ErrorKind::Value);
  if (*b) return eval_node(node.children[1], grid);
  if (node.children.size() == 3) return eval_node(node.children[2], grid);
  return EvalValue::scalar(CellValue::boolean(false));
}

EvalValue eval_node(const FormulaAst& node, const Grid& grid) {
  switch (node.kind) {
    case FormulaAst::Kind::NumberLit:
      return EvalValue::scalar(CellValue::number(node.number));
    case FormulaAst::Kind::TextLit:
      return EvalValue::scalar(CellValue::text(node.text));
    case FormulaAst::Kind::BoolLit:
      return EvalValue::scalar(CellValue::boolean(node.boolean));
    case FormulaAst::Kind::CellRef:
      if (!grid.in_bounds(node.ref)) return EvalValue::error(ErrorKind::Ref);
      return EvalValue::scalar(grid.at(node.ref));
    case FormulaAst::Kind::RangeRef: {
      if (!grid.in_bounds(node.ref) || !grid.in_bounds(node.ref_end)) {
        return EvalValue::error(ErrorKind::Ref);
      }
      ArrayValue arr;
      arr.rows = node.ref_end.row - node.ref.row + 1;
      arr.cols = node.ref_end.col - node.ref.col + 1;
      arr.cells.reserve(static_cast<std::size_t>(arr.rows) * arr.cols);
      for (int r = node.ref.row; r <= node.ref_end.row; ++r) {
        for (int c = node.ref.col; c <= node.ref_end.col; ++c) {
          arr.cells.push_back(grid.at(CellAddress{c, r}));
        }
      }
      return EvalValue::array(std::move(arr));
    }
    case FormulaAst::Kind::Unary: {
      EvalValue child = eval_node(node.children[0], grid);
      if (child.is_error()) return child;
      return broadcast(child, EvalValue::scalar(CellValue::number(0)),
                       [](const CellValue& a, const CellValue&) {
                         auto n = to_number(a);
                         if (!n) return EvalValue::error(ErrorKind::Value);
                         return finite_number(-*n);
                       });
    }
    case FormulaAst::Kind::Binary: {
      EvalValue lhs = eval_node(node.children[0], grid);
      if (lhs.is_error()) return lhs;
      EvalValue rhs = eval_node(node.children[1], grid);
      if (rhs.is_error()) return rhs;
      switch (node.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
          return broadcast(lhs, rhs, [&](const CellValue& a, const CellValue& b) {
            return arith_scalars(a, b, node.op);
          });
        default:
          if (!lhs.is_scalar() || !rhs.is_scalar()) return EvalValue::error(ErrorKind::Value);
          return compare_scalars(lhs.as_scalar(), rhs.as_scalar(), node.op);
      }
    }
    case FormulaAst::Kind::Call: {
      if (node.call_name == "IF") return eval_if(node, grid);
      auto it = registry().find(node.call_name);
      if (it == registry().end()) return EvalValue::error(ErrorKind::Name);
      std::vector<EvalValue> args;
      args.reserve(node.children.size());
      for (const auto& child : node.children) {
        EvalValue v = eval_node(child, grid);
        if (v.is_error()) return v;
        args.push_back(std::move(v));
      }
      return it->second(args);
    }
  }
  return EvalValue::error(ErrorKind::Value);
}

}  // namespace

Criteria parse_criteria(const CellValue& raw) {
  Criteria crit;
  if (raw.is_number() || raw.is_boolean()) {
    crit.op = CompareOp::Eq;
    crit.operand = raw;
    return crit;
  }
  const std::string text = raw.is_text() ? raw.as_text() : std::string();

  std::string_view rest = text;
  crit.op = CompareOp::Eq;
  bool prefixed = true;
  if (rest.starts_with(">=")) { crit.op = CompareOp::Ge; rest.remove_prefix(2); }
  else if (rest.starts_with("<=")) { crit.op = CompareOp::Le; rest.remove_prefix(2); }
  else if (rest.starts_with("<>")) { crit.op = CompareOp::Ne; rest.remove_prefix(2); }
  else if (rest.starts_with(">")) { crit.op = CompareOp::Gt; rest.remove_prefix(1); }
  else if (rest.starts_with("<")) { crit.op = CompareOp::Lt; rest.remove_prefix(1); }
  else if (rest.starts_with("=")) { crit.op = CompareOp::Eq; rest.remove_prefix(1); }
  else { prefixed = false; }

  // Only operator-prefixed criteria re-type a numeric-looking operand; a bare
  // value keeps its own kind so COUNTIF(R, R) respects cell types.
  if (prefixed) {
    if (auto num = parse_number_strict(trim(rest))) {
      crit.operand = CellValue::number(*num);
      return crit;
    }
  }
  crit.operand = CellValue::text(fold_case(rest));
  return crit;
}

bool criteria_matches(const CellValue& cell, const Criteria& criteria) {
  if (cell.is_empty()) return false;
  if (cell.kind() != criteria.operand.kind()) {
    return criteria.op == CompareOp::Ne;
  }

  int cmp = 0;
  switch (cell.kind()) {
    case CellValue::Kind::Number: {
      double a = cell.as_number(), b = criteria.operand.as_number();
      cmp = a < b ? -1 : (a > b ? 1 : 0);
      break;
    }
    case CellValue::Kind::Text: {
      std::string a = fold_case(cell.as_text());
      const std::string& b = criteria.operand.as_text();  // already folded
      cmp = a < b ? -1 : (a > b ? 1 : 0);
      break;
    }
    case CellValue::Kind::Boolean: {
      int a = cell.as_boolean() ? 1 : 0, b = criteria.operand.as_boolean() ? 1 : 0;
      cmp = a < b ? -1 : (a > b ? 1 : 0);
      break;
    }
    case CellValue::Kind::Empty:
      return false;
  }

  switch (criteria.op) {
    case CompareOp::Eq: return cmp == 0;
    case CompareOp::Ne: return cmp != 0;
    case CompareOp::Gt: return cmp > 0;
    case CompareOp::Lt: return cmp < 0;
    case CompareOp::Ge: return cmp >= 0;
    case CompareOp::Le: return cmp <= 0;
  }
  return false;
}

EvalValue evaluate(const FormulaAst& ast, const Grid& grid) {
  return eval_node(ast, grid);
}

ExecutionOutcome execute(std::string_view text, const Grid& grid) {
  FormulaAst ast;
  try {
    ast = parse_formula(text);
  } catch (const ParseError&) {
    return ExecutionOutcome::not_executable(ExecutionOutcome::Failure::ParseError);
  }
  EvalValue result = evaluate(ast, grid);
  if (result.is_error()) {
    if (result.error_kind() == ErrorKind::Name) {
      return ExecutionOutcome::not_executable(ExecutionOutcome::Failure::UnknownFunction);
    }
    return ExecutionOutcome::runtime_error(result.error_kind());
  }
  if (result.is_array()) {
    return ExecutionOutcome::not_executable(ExecutionOutcome::Failure::ArrayResult);
  }
  return ExecutionOutcome::value(result.as_scalar());
}

const std::vector<std::string>& supported_functions() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    out.push_back("IF");
    std::sort(out.begin(), out.end());
    return out;
  }();
  return names;
}

}  // namespace sheetqa
