#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sheetqa {

/// 1-based cell coordinates. Column 1 prints as "A", 27 as "AA" (bijective
/// base-26); row prints as-is.
struct CellAddress {
  int col = 1;
  int row = 1;

  friend bool operator==(const CellAddress&, const CellAddress&) = default;
};

/// Orders addresses row-major (row first, then column), the traversal order
/// used by the linearized encoding.
struct RowMajorOrder {
  bool operator()(const CellAddress& a, const CellAddress& b) const {
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  }
};

/// Parses A1-style notation. "$" markers are accepted and ignored; letters are
/// case-insensitive. Throws MalformedAddress on empty letters, row 0, or
/// trailing garbage.
CellAddress parse_address(std::string_view text);

/// Canonical uppercase A1 form; inverse of parse_address.
std::string format_address(const CellAddress& addr);

/// Parses an address if the whole string is one, without throwing.
std::optional<CellAddress> try_parse_address(std::string_view text);

/// The content of one cell. Number is always finite; Empty is distinct from
/// Text("").
class CellValue {
 public:
  enum class Kind { Empty, Number, Text, Boolean };

  CellValue() = default;  // Empty

  static CellValue empty() { return CellValue(); }
  static CellValue number(double v);  // throws NonFiniteNumber on NaN/inf
  static CellValue text(std::string v);
  static CellValue boolean(bool v);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }
  bool is_number() const { return kind_ == Kind::Number; }
  bool is_text() const { return kind_ == Kind::Text; }
  bool is_boolean() const { return kind_ == Kind::Boolean; }

  double as_number() const { return number_; }
  const std::string& as_text() const { return text_; }
  bool as_boolean() const { return boolean_; }

  /// Display form: shortest round-trip decimal for numbers, TRUE/FALSE for
  /// booleans, the text itself, "" for Empty.
  std::string to_display() const;

  friend bool operator==(const CellValue&, const CellValue&) = default;

 private:
  Kind kind_ = Kind::Empty;
  double number_ = 0.0;
  std::string text_;
  bool boolean_ = false;
};

/// Shortest decimal string that round-trips to exactly this double.
std::string format_number(double v);

/// Strict full-string decimal parse ("5", "-2.5", "1e3"); no leading or
/// trailing junk.
std::optional<double> parse_number_strict(std::string_view text);

}  // namespace sheetqa
