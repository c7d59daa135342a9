#include "sheetqa/grid.hpp"

#include <algorithm>
#include <cmath>

#include "sheetqa/errors.hpp"

namespace sheetqa {

namespace {

// Classifies a raw (already unescaped-free) encoded token the way the decoder
// does: Number if it parses as a strict decimal, Boolean for TRUE/FALSE,
// otherwise Text. Empty token means Text("").
CellValue classify_token(const std::string& token) {
  if (token == "TRUE") return CellValue::boolean(true);
  if (token == "FALSE") return CellValue::boolean(false);
  if (auto num = parse_number_strict(token)) return CellValue::number(*num);
  return CellValue::text(token);
}

std::string escape_text_cell(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool has_escape = false;
  for (char c : text) {
    if (c == '\\' || c == ',' || c == '|') {
      out += '\\';
      has_escape = true;
    }
    out += c;
  }
  // A text cell whose escaped form reads back as a Number or Boolean must be
  // marked as text; escaping its first character does that.
  if (!has_escape && !classify_token(out).is_text()) {
    out.insert(out.begin(), '\\');
  }
  return out;
}

}  // namespace

Grid::Grid(int n_rows, int n_cols, CellMap cells)
    : n_rows_(n_rows), n_cols_(n_cols) {
  if (n_rows < 0 || n_cols < 0) {
    throw ValidationError("grid dimensions must be non-negative");
  }
  for (auto& [addr, value] : cells) {
    if (!in_bounds(addr)) {
      throw ValidationError("cell " + format_address(addr) + " outside " +
                            std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                            " grid");
    }
    if (!value.is_empty()) {
      cells_.emplace(addr, std::move(value));
    }
  }
}

const CellValue& Grid::at(const CellAddress& addr) const {
  static const CellValue kEmpty;
  auto it = cells_.find(addr);
  return it == cells_.end() ? kEmpty : it->second;
}

Grid grid_from_rows(const std::vector<std::vector<CellValue>>& rows,
                    std::optional<int> n_cols) {
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.size());
  if (n_cols) {
    if (width > static_cast<std::size_t>(*n_cols)) {
      throw ValidationError("row wider than requested column count");
    }
    width = static_cast<std::size_t>(*n_cols);
  }

  Grid::CellMap cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (!rows[r][c].is_empty()) {
        cells.emplace(CellAddress{static_cast<int>(c + 1), static_cast<int>(r + 1)},
                      rows[r][c]);
      }
    }
  }
  return Grid(static_cast<int>(rows.size()), static_cast<int>(width), std::move(cells));
}

Grid grid_from_json_rows(const nlohmann::json& rows, std::optional<int> n_cols) {
  if (!rows.is_array()) throw ValidationError("table must be an array of rows");
  std::vector<std::vector<CellValue>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) throw ValidationError("table rows must be arrays");
    std::vector<CellValue> cells;
    cells.reserve(row.size());
    for (const auto& cell : row) {
      if (cell.is_null()) {
        cells.push_back(CellValue::empty());
      } else if (cell.is_number()) {
        double v = cell.get<double>();
        if (!std::isfinite(v)) throw NonFiniteNumber("non-finite number in table");
        cells.push_back(CellValue::number(v));
      } else if (cell.is_string()) {
        cells.push_back(CellValue::text(cell.get<std::string>()));
      } else if (cell.is_boolean()) {
        cells.push_back(CellValue::boolean(cell.get<bool>()));
      } else {
        throw ValidationError("table cells must be JSON scalars or null");
      }
    }
    out.push_back(std::move(cells));
  }
  return grid_from_rows(out, n_cols);
}

Grid concat_vertical(const std::vector<Grid>& grids) {
  if (grids.empty()) throw ValidationError("concat_vertical needs at least one grid");

  int total_rows = 0;
  int max_cols = 0;
  for (const auto& g : grids) {
    total_rows += g.n_rows();
    max_cols = std::max(max_cols, g.n_cols());
  }

  Grid::CellMap cells;
  int row_offset = 0;
  for (const auto& g : grids) {
    for (const auto& [addr, value] : g.cells()) {
      cells.emplace(CellAddress{addr.col, addr.row + row_offset}, value);
    }
    row_offset += g.n_rows();
  }
  return Grid(total_rows, max_cols, std::move(cells));
}

std::string encode_linear(const Grid& grid) {
  std::string out;
  bool first = true;
  for (const auto& [addr, value] : grid.cells()) {
    if (!first) out += '|';
    first = false;
    out += format_address(addr);
    out += ',';
    if (value.is_text()) {
      out += escape_text_cell(value.as_text());
    } else {
      out += value.to_display();
    }
  }
  return out;
}

Grid decode_linear(std::string_view text) {
  Grid::CellMap cells;
  int max_row = 0;
  int max_col = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    // Address part: up to the first comma (addresses never contain escapes).
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      throw MalformedEncoding("cell entry without ',' separator");
    }
    CellAddress addr;
    try {
      addr = parse_address(text.substr(pos, comma - pos));
    } catch (const MalformedAddress& e) {
      throw MalformedEncoding(e.what());
    }

    // Value part: up to the next unescaped '|'.
    std::string raw;
    bool saw_escape = false;
    std::size_t i = comma + 1;
    for (; i < text.size() && text[i] != '|'; ++i) {
      if (text[i] == '\\') {
        ++i;
        if (i >= text.size()) throw MalformedEncoding("dangling escape");
        if (text[i] != '\\' && text[i] != ',' && text[i] != '|' &&
            i != comma + 2) {
          // Only "\\", "\,", "\|" and a leading type-marking escape are legal.
          throw MalformedEncoding("invalid escape sequence");
        }
        saw_escape = true;
      }
      raw += text[i];
    }

    CellValue value = saw_escape ? CellValue::text(raw) : classify_token(raw);
    if (!cells.emplace(addr, std::move(value)).second) {
      throw MalformedEncoding("duplicate cell " + format_address(addr));
    }
    max_row = std::max(max_row, addr.row);
    max_col = std::max(max_col, addr.col);

    if (i < text.size()) ++i;  // skip '|'
    else break;
    if (i == text.size()) throw MalformedEncoding("trailing '|'");
    pos = i;
    continue;
  }

  return Grid(max_row, max_col, std::move(cells));
}

TaskInstance task_from_json(const nlohmann::json& record) {
  if (!record.is_object()) throw ValidationError("dataset record must be an object");
  TaskInstance task;
  if (!record.contains("id") || !record["id"].is_string()) {
    throw ValidationError("dataset record needs a string \"id\"");
  }
  task.id = record["id"].get<std::string>();
  if (!record.contains("tables") || !record["tables"].is_array() ||
      record["tables"].empty()) {
    throw ValidationError("dataset record needs a non-empty \"tables\" array");
  }
  for (const auto& table : record["tables"]) {
    task.grids.push_back(grid_from_json_rows(table));
  }
  if (!record.contains("question") || !record["question"].is_string()) {
    throw ValidationError("dataset record needs a string \"question\"");
  }
  task.question = record["question"].get<std::string>();
  if (!record.contains("answer")) {
    throw ValidationError("dataset record needs an \"answer\"");
  }
  task.gold = answer_from_json(record["answer"]);
  if (task.gold.is_list()) {
    if (task.gold.as_list().empty()) throw ValidationError("gold answer is empty");
    if (task.gold.as_list().size() == 1) task.gold = task.gold.as_list().front();
  }
  if (record.contains("pre_text")) task.pre_text = record["pre_text"].get<std::string>();
  if (record.contains("post_text")) task.post_text = record["post_text"].get<std::string>();
  return task;
}

Grid combined_grid(const TaskInstance& task) {
  if (task.grids.size() == 1) return task.grids.front();
  return concat_vertical(task.grids);
}

}  // namespace sheetqa
