#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sheetqa/cell.hpp"

namespace sheetqa {

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Gt, Lt, Ge, Le };

const char* binary_op_name(BinaryOp op);

/// One node of a parsed formula. Ranges are stored normalized: `start` is the
/// top-left corner, `end` the bottom-right. Call names are uppercase.
struct FormulaAst {
  enum class Kind { NumberLit, TextLit, BoolLit, CellRef, RangeRef, Unary, Binary, Call };

  Kind kind = Kind::NumberLit;
  double number = 0.0;
  std::string text;          // TextLit
  bool boolean = false;      // BoolLit
  CellAddress ref;           // CellRef / RangeRef start
  CellAddress ref_end;       // RangeRef end
  BinaryOp op = BinaryOp::Add;
  std::string call_name;     // Call, uppercase
  std::vector<FormulaAst> children;  // Unary: 1, Binary: 2, Call: any

  static FormulaAst number_lit(double v);
  static FormulaAst text_lit(std::string v);
  static FormulaAst bool_lit(bool v);
  static FormulaAst cell_ref(CellAddress a);
  static FormulaAst range_ref(CellAddress a, CellAddress b);  // normalizes corners
  static FormulaAst unary_neg(FormulaAst child);
  static FormulaAst binary(BinaryOp op, FormulaAst lhs, FormulaAst rhs);
  static FormulaAst call(std::string name, std::vector<FormulaAst> args);

  friend bool operator==(const FormulaAst&, const FormulaAst&) = default;
};

/// Parses "=<expr>" (leading whitespace before "=" allowed). Precedence, low
/// to high: comparison, additive, multiplicative, unary minus, primary; all
/// binaries left-associative. Throws ParseError with the offending offset.
FormulaAst parse_formula(std::string_view text);

/// Shape measurements of one formula.
struct FormulaStats {
  int length = 0;       // characters after the "="
  int n_operators = 0;  // Binary + Unary + Call nodes, except TRUE()/FALSE()
  int n_variables = 0;  // CellRef + RangeRef nodes (a range counts once)

  friend bool operator==(const FormulaStats&, const FormulaStats&) = default;
};

/// Parses and measures; ParseError propagates.
FormulaStats formula_stats(std::string_view text);

}  // namespace sheetqa
