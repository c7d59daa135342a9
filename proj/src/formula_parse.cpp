#include <algorithm>
#include <cctype>

#include "sheetqa/errors.hpp"
#include "sheetqa/formula.hpp"

namespace sheetqa {

const char* binary_op_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "<>";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Le: return "<=";
  }
  return "?";
}

FormulaAst FormulaAst::number_lit(double v) {
  FormulaAst n;
  n.kind = Kind::NumberLit;
  n.number = v;
  return n;
}

FormulaAst FormulaAst::text_lit(std::string v) {
  FormulaAst n;
  n.kind = Kind::TextLit;
  n.text = std::move(v);
  return n;
}

FormulaAst FormulaAst::bool_lit(bool v) {
  FormulaAst n;
  n.kind = Kind::BoolLit;
  n.boolean = v;
  return n;
}

FormulaAst FormulaAst::cell_ref(CellAddress a) {
  FormulaAst n;
  n.kind = Kind::CellRef;
  n.ref = a;
  return n;
}

FormulaAst FormulaAst::range_ref(CellAddress a, CellAddress b) {
  FormulaAst n;
  n.kind = Kind::RangeRef;
  n.ref = CellAddress{std::min(a.col, b.col), std::min(a.row, b.row)};
  n.ref_end = CellAddress{std::max(a.col, b.col), std::max(a.row, b.row)};
  return n;
}

FormulaAst FormulaAst::unary_neg(FormulaAst child) {
  FormulaAst n;
  n.kind = Kind::Unary;
  n.children.push_back(std::move(child));
  return n;
}

FormulaAst FormulaAst::binary(BinaryOp op, FormulaAst lhs, FormulaAst rhs) {
  FormulaAst n;
  n.kind = Kind::Binary;
  n.op = op;
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return n;
}

FormulaAst FormulaAst::call(std::string name, std::vector<FormulaAst> args) {
  FormulaAst n;
  n.kind = Kind::Call;
  n.call_name = std::move(name);
  std::transform(n.call_name.begin(), n.call_name.end(), n.call_name.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  n.children = std::move(args);
  return n;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaAst parse() {
    skip_ws();
    if (!eat('=')) fail("formula must start with '='");
    FormulaAst ast = comparison();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return ast;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek2() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FormulaAst comparison() {
    FormulaAst lhs = additive();
    for (;;) {
      skip_ws();
      BinaryOp op;
      if (peek() == '<' && peek2() == '>') { op = BinaryOp::Ne; pos_ += 2; }
      else if (peek() == '<' && peek2() == '=') { op = BinaryOp::Le; pos_ += 2; }
      else if (peek() == '>' && peek2() == '=') { op = BinaryOp::Ge; pos_ += 2; }
      else if (peek() == '<') { op = BinaryOp::Lt; ++pos_; }
      else if (peek() == '>') { op = BinaryOp::Gt; ++pos_; }
      else if (peek() == '=') { op = BinaryOp::Eq; ++pos_; }
      else break;
      lhs = FormulaAst::binary(op, std::move(lhs), additive());
    }
    return lhs;
  }

  FormulaAst additive() {
    FormulaAst lhs = multiplicative();
    for (;;) {
      skip_ws();
      if (eat('+')) lhs = FormulaAst::binary(BinaryOp::Add, std::move(lhs), multiplicative());
      else if (eat('-')) lhs = FormulaAst::binary(BinaryOp::Sub, std::move(lhs), multiplicative());
      else break;
    }
    return lhs;
  }

  FormulaAst multiplicative() {
    FormulaAst lhs = unary();
    for (;;) {
      skip_ws();
      if (eat('*')) lhs = FormulaAst::binary(BinaryOp::Mul, std::move(lhs), unary());
      else if (eat('/')) lhs = FormulaAst::binary(BinaryOp::Div, std::move(lhs), unary());
      else break;
    }
    return lhs;
  }

  FormulaAst unary() {
    skip_ws();
    if (eat('-')) return FormulaAst::unary_neg(unary());
    return primary();
  }

  FormulaAst primary() {
    skip_ws();
    char c = peek();
    if (c == '\0') fail("unexpected end of formula");
    if (c == '(') {
      ++pos_;
      FormulaAst inner = comparison();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '"') return string_literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '$' || c == '_') return word();
    fail("unexpected character");
  }

  FormulaAst string_literal() {
    ++pos_;  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= text_.size()) fail("unterminated string literal");
      char c = text_[pos_++];
      if (c == '"') {
        if (peek() == '"') {  // doubled quote escape
          value += '"';
          ++pos_;
          continue;
        }
        return FormulaAst::text_lit(std::move(value));
      }
      value += c;
    }
  }

  FormulaAst number_literal() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t mark = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // "1e" was not an exponent after all
      }
    }
    auto token = text_.substr(start, pos_ - start);
    auto value = parse_number_strict(token);
    if (!value) fail("malformed number");
    return FormulaAst::number_lit(*value);
  }

  // Identifier-ish token: TRUE/FALSE literal, function call, cell ref, or
  // range. '$' markers inside refs are accepted and ignored.
  FormulaAst word() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '$' || c == '_') ++pos_;
      else break;
    }
    std::string token(text_.substr(start, pos_ - start));
    std::string upper = token;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return std::toupper(ch); });

    skip_ws();
    if (peek() == '(') {
      ++pos_;
      std::vector<FormulaAst> args;
      skip_ws();
      if (eat(')')) return FormulaAst::call(std::move(upper), std::move(args));
      for (;;) {
        args.push_back(comparison());
        skip_ws();
        if (eat(',')) continue;
        if (eat(')')) break;
        fail("expected ',' or ')' in argument list");
      }
      return FormulaAst::call(std::move(upper), std::move(args));
    }

    if (upper == "TRUE") return FormulaAst::bool_lit(true);
    if (upper == "FALSE") return FormulaAst::bool_lit(false);

    auto first = try_parse_address(token);
    if (!first) fail("expected a cell reference, literal, or function call");

    if (peek() == ':') {
      ++pos_;
      skip_ws();
      std::size_t ref_start = pos_;
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '$') ++pos_;
        else break;
      }
      auto second = try_parse_address(text_.substr(ref_start, pos_ - ref_start));
      if (!second) fail("expected a cell reference after ':'");
      return FormulaAst::range_ref(*first, *second);
    }
    return FormulaAst::cell_ref(*first);
  }
};

void count_nodes(const FormulaAst& node, FormulaStats& stats) {
  switch (node.kind) {
    case FormulaAst::Kind::Unary:
    case FormulaAst::Kind::Binary:
      ++stats.n_operators;
      break;
    case FormulaAst::Kind::Call:
      if (node.call_name != "TRUE" && node.call_name != "FALSE") ++stats.n_operators;
      break;
    case FormulaAst::Kind::CellRef:
    case FormulaAst::Kind::RangeRef:
      ++stats.n_variables;
      break;
    default:
      break;
  }
  for (const auto& child : node.children) count_nodes(child, stats);
}

}  // namespace

FormulaAst parse_formula(std::string_view text) {
  return Parser(text).parse();
}

FormulaStats formula_stats(std::string_view text) {
  FormulaAst ast = parse_formula(text);
  FormulaStats stats;
  auto eq = text.find('=');
  stats.length = static_cast<int>(text.size() - eq - 1);
  count_nodes(ast, stats);
  return stats;
}

}  // namespace sheetqa
