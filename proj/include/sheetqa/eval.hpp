#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sheetqa/cell.hpp"
#include "sheetqa/formula.hpp"
#include "sheetqa/grid.hpp"

namespace sheetqa {

enum class ErrorKind { Div0, Value, Na, Name, Ref };

const char* error_kind_name(ErrorKind kind);

/// Rectangular, non-empty matrix of cell values (row-major).
struct ArrayValue {
  int rows = 0;
  int cols = 0;
  std::vector<CellValue> cells;

  const CellValue& at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }
  int size() const { return rows * cols; }

  friend bool operator==(const ArrayValue&, const ArrayValue&) = default;
};

/// Result of evaluating an AST node: a scalar, an array, or a spreadsheet
/// error. Evaluation is total; errors are values, never exceptions.
class EvalValue {
 public:
  enum class Kind { Scalar, Array, Error };

  EvalValue() : kind_(Kind::Scalar) {}

  static EvalValue scalar(CellValue v);
  static EvalValue array(ArrayValue v);
  static EvalValue error(ErrorKind kind);

  Kind kind() const { return kind_; }
  bool is_scalar() const { return kind_ == Kind::Scalar; }
  bool is_array() const { return kind_ == Kind::Array; }
  bool is_error() const { return kind_ == Kind::Error; }

  const CellValue& as_scalar() const { return scalar_; }
  const ArrayValue& as_array() const { return array_; }
  ErrorKind error_kind() const { return error_; }

  friend bool operator==(const EvalValue&, const EvalValue&) = default;

 private:
  Kind kind_;
  CellValue scalar_;
  ArrayValue array_;
  ErrorKind error_ = ErrorKind::Value;
};

/// What running a raw formula string against a grid produced. A formula whose
/// top-level result is an error or an array is not executable: it yields no
/// answer.
class ExecutionOutcome {
 public:
  enum class Failure { ParseError, UnknownFunction, RuntimeError, ArrayResult };

  static ExecutionOutcome value(CellValue v);
  static ExecutionOutcome not_executable(Failure reason);
  static ExecutionOutcome runtime_error(ErrorKind kind);

  bool executable() const { return executable_; }
  const CellValue& value() const { return value_; }
  Failure failure() const { return failure_; }
  ErrorKind runtime_kind() const { return runtime_kind_; }
  std::string describe() const;

  friend bool operator==(const ExecutionOutcome&, const ExecutionOutcome&) = default;

 private:
  bool executable_ = false;
  CellValue value_;
  Failure failure_ = Failure::ParseError;
  ErrorKind runtime_kind_ = ErrorKind::Value;
};

/// A COUNTIF-style condition: comparator plus operand.
enum class CompareOp { Eq, Ne, Gt, Lt, Ge, Le };

struct Criteria {
  CompareOp op = CompareOp::Eq;
  CellValue operand;  // Number, Text (case-folded), or Boolean

  friend bool operator==(const Criteria&, const Criteria&) = default;
};

/// Turns a raw cell into a criteria. Text starting with >=, <=, <>, >, < or =
/// splits into comparator + operand (numeric when the remainder parses as a
/// number, else case-folded text); everything else means equality with the
/// value itself.
Criteria parse_criteria(const CellValue& raw);

/// True when `cell` satisfies the criteria. Comparisons are same-kind only
/// ("<>" also matches any non-empty cell of a different kind); text compares
/// case-insensitively; Empty cells never match.
bool criteria_matches(const CellValue& cell, const Criteria& criteria);

/// Deterministic, total evaluation of an AST over a grid. See the function
/// registry in formula_eval.cpp for per-function semantics.
EvalValue evaluate(const FormulaAst& ast, const Grid& grid);

/// parse + evaluate, folding every failure into the outcome.
ExecutionOutcome execute(std::string_view text, const Grid& grid);

/// The functions evaluate understands, uppercase.
const std::vector<std::string>& supported_functions();

}  // namespace sheetqa
