#include "sheetqa/cell.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "sheetqa/errors.hpp"

namespace sheetqa {

namespace {

constexpr int kMaxColumn = 1 << 20;     // far beyond any spreadsheet
constexpr long long kMaxRow = 100000000;

}  // namespace

CellAddress parse_address(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const char* why) -> CellAddress {
    throw MalformedAddress(std::string(why) + ": \"" + std::string(text) + "\"");
  };

  if (pos < text.size() && text[pos] == '$') ++pos;

  long long col = 0;
  std::size_t letters = 0;
  while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
    col = col * 26 + (c - 'A' + 1);
    if (col > kMaxColumn) fail("column out of range");
    ++letters;
    ++pos;
  }
  if (letters == 0) fail("missing column letters");

  if (pos < text.size() && text[pos] == '$') ++pos;

  long long row = 0;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    row = row * 10 + (text[pos] - '0');
    if (row > kMaxRow) fail("row out of range");
    ++digits;
    ++pos;
  }
  if (digits == 0) fail("missing row digits");
  if (row == 0) fail("row must be positive");
  if (pos != text.size()) fail("trailing characters");

  return CellAddress{static_cast<int>(col), static_cast<int>(row)};
}

std::optional<CellAddress> try_parse_address(std::string_view text) {
  try {
    return parse_address(text);
  } catch (const MalformedAddress&) {
    return std::nullopt;
  }
}

std::string format_address(const CellAddress& addr) {
  std::string letters;
  int c = addr.col;
  while (c > 0) {
    int rem = (c - 1) % 26;
    letters.insert(letters.begin(), static_cast<char>('A' + rem));
    c = (c - 1) / 26;
  }
  return letters + std::to_string(addr.row);
}

CellValue CellValue::number(double v) {
  if (!std::isfinite(v)) {
    throw NonFiniteNumber("cell numbers must be finite");
  }
  CellValue out;
  out.kind_ = Kind::Number;
  out.number_ = v;
  return out;
}

CellValue CellValue::text(std::string v) {
  CellValue out;
  out.kind_ = Kind::Text;
  out.text_ = std::move(v);
  return out;
}

CellValue CellValue::boolean(bool v) {
  CellValue out;
  out.kind_ = Kind::Boolean;
  out.boolean_ = v;
  return out;
}

std::string CellValue::to_display() const {
  switch (kind_) {
    case Kind::Empty:
      return "";
    case Kind::Number:
      return format_number(number_);
    case Kind::Text:
      return text_;
    case Kind::Boolean:
      return boolean_ ? "TRUE" : "FALSE";
  }
  return "";
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_number_strict(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace sheetqa
