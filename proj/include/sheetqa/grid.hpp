#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sheetqa/answer.hpp"
#include "sheetqa/cell.hpp"

namespace sheetqa {

/// An immutable 2-D table of cells. Cells not stored are Empty; every stored
/// cell lies within the declared bounds, and Empty cells are never stored.
class Grid {
 public:
  using CellMap = std::map<CellAddress, CellValue, RowMajorOrder>;

  Grid() = default;  // 0x0
  Grid(int n_rows, int n_cols, CellMap cells);  // throws ValidationError on out-of-bounds cells

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }

  bool in_bounds(const CellAddress& addr) const {
    return addr.row >= 1 && addr.row <= n_rows_ && addr.col >= 1 && addr.col <= n_cols_;
  }

  /// Empty for any address without a stored value (bounds are not checked
  /// here; callers that care about bounds use in_bounds first).
  const CellValue& at(const CellAddress& addr) const;

  /// Non-empty cells in row-major order.
  const CellMap& cells() const { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  CellMap cells_;
};

/// One dataset record: a question over one or more tables with a gold answer.
struct TaskInstance {
  std::string id;
  std::vector<Grid> grids;  // >= 1
  std::string question;
  AnswerValue gold;  // single-element JSON arrays are unwrapped at parse time
  std::optional<std::string> pre_text;
  std::optional<std::string> post_text;
};

/// Builds a grid from row-major raw cells. Ragged rows are padded with Empty
/// on the right. If n_cols is given, no row may be wider than it; otherwise
/// the widest row wins.
Grid grid_from_rows(const std::vector<std::vector<CellValue>>& rows,
                    std::optional<int> n_cols = std::nullopt);

/// Same, from a JSON array of arrays. null -> Empty, numbers -> Number (throws
/// NonFiniteNumber on NaN/inf), strings -> Text (never coerced, not even
/// "TRUE"/"FALSE"), booleans -> Boolean.
Grid grid_from_json_rows(const nlohmann::json& rows,
                         std::optional<int> n_cols = std::nullopt);

/// Stacks grids top to bottom with no separator row; narrower grids are
/// left-aligned and padded with Empty.
Grid concat_vertical(const std::vector<Grid>& grids);

/// Linearizes a grid as "<ADDR>,<VALUE>|<ADDR>,<VALUE>|..." over non-empty
/// cells in row-major order. Text escapes "\", "," and "|" with a backslash;
/// text that would otherwise read back as a Number or Boolean gets its first
/// character escaped too, so decode_linear can recover the cell type.
std::string encode_linear(const Grid& grid);

/// Inverse of encode_linear; bounds are inferred from the cells present.
/// Throws MalformedEncoding on bad addresses or dangling escapes.
Grid decode_linear(std::string_view text);

/// Parses one dataset record ({"id", "tables", "question", "answer", ...}).
TaskInstance task_from_json(const nlohmann::json& record);

/// All tables of a task stacked into the single grid formulas run against.
Grid combined_grid(const TaskInstance& task);

}  // namespace sheetqa
