#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracle_eval.hpp"
#include "sheetqa/eval.hpp"
#include "sheetqa/theorysim.hpp"

using namespace sheetqa;
using sheetqa::testing::oracle_evaluate;
using sheetqa::testing::random_ast;
using sheetqa::testing::random_grid;
using sheetqa::testing::results_agree;

namespace {

Grid column_grid(const std::vector<CellValue>& cells) {
  std::vector<std::vector<CellValue>> rows;
  for (const auto& c : cells) rows.push_back({c});
  return grid_from_rows(rows);
}

Grid numbers_1_to(int n) {
  std::vector<CellValue> cells;
  for (int i = 1; i <= n; ++i) cells.push_back(CellValue::number(i));
  return column_grid(cells);
}

EvalValue eval_text(const std::string& formula, const Grid& grid) {
  return evaluate(parse_formula(formula), grid);
}

}  // namespace

TEST_CASE("COUNTIF case study: 13 qualifying seats out of 27") {
  // Column D over rows 2..28 holds seat counts; exactly 13 are >= 75, as in
  // the published execution result. Mixed high/low values, seeded shuffle.
  std::vector<double> seats = {57, 72, 81, 77, 20,  90, 75, 103, 66,  48, 112, 75, 81, 59,
                               74, 95, 88, 76, 150, 30, 44, 71,  100, 68, 69,  12, 50};
  REQUIRE(seats.size() == 27);
  Rng rng(5);
  for (std::size_t i = seats.size() - 1; i > 0; --i) {
    std::swap(seats[i], seats[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i)))]);
  }

  // Brute-force membership oracle.
  int qualifying = 0;
  for (double s : seats) {
    if (s >= 75) ++qualifying;
  }
  REQUIRE(qualifying == 13);

  std::vector<std::vector<CellValue>> rows;
  rows.push_back({CellValue::text("year"), CellValue::text("x"), CellValue::text("y"),
                  CellValue::text("seats")});
  for (double s : seats) {
    rows.push_back({CellValue::empty(), CellValue::empty(), CellValue::empty(),
                    CellValue::number(s)});
  }
  Grid grid = grid_from_rows(rows);

  CHECK(eval_text("=COUNTIF(D2:D28, \">=75\")", grid) ==
        EvalValue::scalar(CellValue::number(13)));
}

TEST_CASE("SUMPRODUCT/COUNTIF distinct-count case study: 5 distinct albums") {
  std::vector<CellValue> albums = {
      CellValue::text("Warning Shots 2"),
      CellValue::text("nan"),
      CellValue::text("The Greatest Story Never Told"),
      CellValue::text("The Greatest Story Never Told"),
      CellValue::text("nan"),
      CellValue::text("Chapter 2: Bread and Circuses"),
      CellValue::text("Warning Shots 2"),
      CellValue::text("Chapter 3: The Troubled Times"),
      CellValue::text("nan"),
      CellValue::text("Chapter 2: Bread and Circuses"),
      CellValue::text("The Greatest Story Never Told"),
      CellValue::text("nan"),
  };
  REQUIRE(albums.size() == 12);

  // Set-cardinality oracle under the engine's equality (case-folded text).
  std::set<std::string> distinct;
  for (const auto& a : albums) {
    std::string folded = a.as_text();
    for (char& c : folded) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    distinct.insert(folded);
  }
  REQUIRE(distinct.size() == 5);

  std::vector<std::vector<CellValue>> rows;
  rows.push_back({CellValue::empty(), CellValue::empty(), CellValue::empty(),
                  CellValue::empty(), CellValue::empty(), CellValue::text("Album")});
  for (const auto& a : albums) {
    rows.push_back({CellValue::empty(), CellValue::empty(), CellValue::empty(),
                    CellValue::empty(), CellValue::empty(), a});
  }
  Grid grid = grid_from_rows(rows);

  EvalValue result = eval_text("=SUMPRODUCT(1/COUNTIF(F2:F13,F2:F13))", grid);
  REQUIRE(result.is_scalar());
  CHECK(result.as_scalar().as_number() == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("COUNTIF-sum case study: 15 winning US drivers") {
  std::vector<std::string> drivers = {
      "Rick Mears",       "Al Unser, Jr.",    "Michael Andretti", "Danny Sullivan",
      "Rick Mears",       "Emerson Fittipaldi", "Michael Andretti", "Al Unser, Jr.",
      "Danny Sullivan",   "Rick Mears",       "Arie Luyendyk",    "Michael Andretti",
      "Al Unser, Jr.",    "Rick Mears",       "Michael Andretti", "Al Unser, Jr.",
      "Danny Sullivan"};
  REQUIRE(drivers.size() == 17);  // rows 2..18
  int us_wins = 0;
  for (const auto& d : drivers) {
    if (d == "Rick Mears" || d == "Al Unser, Jr." || d == "Michael Andretti" ||
        d == "Danny Sullivan") {
      ++us_wins;
    }
  }
  REQUIRE(us_wins == 15);

  std::vector<std::vector<CellValue>> rows;
  rows.push_back({CellValue::empty(), CellValue::empty(), CellValue::empty(),
                  CellValue::empty(), CellValue::empty(), CellValue::empty(),
                  CellValue::text("Winning Driver")});
  for (const auto& d : drivers) {
    rows.push_back({CellValue::empty(), CellValue::empty(), CellValue::empty(),
                    CellValue::empty(), CellValue::empty(), CellValue::empty(),
                    CellValue::text(d)});
  }
  Grid grid = grid_from_rows(rows);

  EvalValue result = eval_text(
      "=COUNTIF(G2:G18, \"Rick Mears\") + COUNTIF(G2:G18, \"Al Unser, Jr.\") + "
      "COUNTIF(G2:G18, \"Michael Andretti\") + COUNTIF(G2:G18, \"Danny Sullivan\")",
      grid);
  CHECK(result == EvalValue::scalar(CellValue::number(15)));
}

TEST_CASE("basic evaluation") {
  Grid grid = numbers_1_to(10);
  CHECK(eval_text("=MAX(A1:A10)", grid) == EvalValue::scalar(CellValue::number(10)));
  CHECK(eval_text("=MIN(A1:A10)", grid) == EvalValue::scalar(CellValue::number(1)));
  CHECK(eval_text("=SUM(A1:A10)", grid) == EvalValue::scalar(CellValue::number(55)));
  CHECK(eval_text("=AVERAGE(A1:A10)", grid) == EvalValue::scalar(CellValue::number(5.5)));
  CHECK(eval_text("=COUNT(A1:A10)", grid) == EvalValue::scalar(CellValue::number(10)));
  CHECK(eval_text("=A1 / A2", column_grid({CellValue::number(1), CellValue::number(0)})) ==
        EvalValue::error(ErrorKind::Div0));
  CHECK(eval_text("=INDEX(A1:A10, 3)", grid) == EvalValue::scalar(CellValue::number(3)));
  CHECK(eval_text("=MATCH(7, A1:A10, 0)", grid) == EvalValue::scalar(CellValue::number(7)));
  CHECK(eval_text("=MATCH(7.5, A1:A10, 1)", grid) == EvalValue::scalar(CellValue::number(7)));
  CHECK(eval_text("=MATCH(99, A1:A10, 0)", grid) == EvalValue::error(ErrorKind::Na));
  CHECK(eval_text("=IF(A1 > 10, \"Yes\", \"No\")", grid) ==
        EvalValue::scalar(CellValue::text("No")));
}

TEST_CASE("coercions and comparisons") {
  Grid grid = column_grid({CellValue::text("5"), CellValue::empty(), CellValue::boolean(true),
                           CellValue::text("abc")});
  CHECK(eval_text("=A1 + 1", grid) == EvalValue::scalar(CellValue::number(6)));
  CHECK(eval_text("=A2 + 1", grid) == EvalValue::scalar(CellValue::number(1)));
  CHECK(eval_text("=A3 + 1", grid) == EvalValue::scalar(CellValue::number(2)));
  CHECK(eval_text("=A4 + 1", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=-A3", grid) == EvalValue::scalar(CellValue::number(-1)));

  // Cross-kind comparison: "=" false, "<>" true, ordering VALUE.
  CHECK(eval_text("=A4 = 5", grid) == EvalValue::scalar(CellValue::boolean(false)));
  CHECK(eval_text("=A4 <> 5", grid) == EvalValue::scalar(CellValue::boolean(true)));
  CHECK(eval_text("=A4 > 5", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=\"ABC\" = \"abc\"", grid) == EvalValue::scalar(CellValue::boolean(true)));
  CHECK(eval_text("=\"a\" < \"B\"", grid) == EvalValue::scalar(CellValue::boolean(true)));
  CHECK(eval_text("=A2 = 0", grid) == EvalValue::scalar(CellValue::boolean(true)));
}

TEST_CASE("IF is lazy, AND/OR are eager") {
  Grid grid = numbers_1_to(3);
  CHECK(eval_text("=IF(TRUE, 1, 1/0)", grid) == EvalValue::scalar(CellValue::number(1)));
  CHECK(eval_text("=IF(FALSE, 1/0, 2)", grid) == EvalValue::scalar(CellValue::number(2)));
  CHECK(eval_text("=IF(0, 1, 2)", grid) == EvalValue::scalar(CellValue::number(2)));
  CHECK(eval_text("=IF(\"x\", 1, 2)", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=IF(FALSE, 1)", grid) == EvalValue::scalar(CellValue::boolean(false)));
  // Eager arguments: the error in the second argument surfaces even though
  // the first already decides the result.
  CHECK(eval_text("=AND(FALSE, 1/0)", grid) == EvalValue::error(ErrorKind::Div0));
  CHECK(eval_text("=OR(TRUE, \"x\")", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=AND(A1 > 0, A2 > 1)", grid) ==
        EvalValue::scalar(CellValue::boolean(true)));
  CHECK(eval_text("=NOT(A1 > 2)", grid) == EvalValue::scalar(CellValue::boolean(true)));
}

TEST_CASE("errors") {
  Grid grid = numbers_1_to(3);
  CHECK(eval_text("=FOO(A1)", grid) == EvalValue::error(ErrorKind::Name));
  CHECK(eval_text("=A9", grid) == EvalValue::error(ErrorKind::Ref));
  CHECK(eval_text("=SUM(A1:A9)", grid) == EvalValue::error(ErrorKind::Ref));
  CHECK(eval_text("=INDEX(A1:A3, 4)", grid) == EvalValue::error(ErrorKind::Ref));
  CHECK(eval_text("=INDEX(A1:A3, 0)", grid) == EvalValue::error(ErrorKind::Ref));
  CHECK(eval_text("=SUM()", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=NOT(1, 2)", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=MATCH(1, A1:A3, 5)", grid) == EvalValue::error(ErrorKind::Value));
  // Unknown function wins over argument errors.
  CHECK(eval_text("=FOO(1/0)", grid) == EvalValue::error(ErrorKind::Name));
}

TEST_CASE("arrays and broadcasting") {
  Grid grid = numbers_1_to(3);
  EvalValue arr = eval_text("=A1:A3 + 1", grid);
  REQUIRE(arr.is_array());
  CHECK(arr.as_array().rows == 3);
  CHECK(arr.as_array().cols == 1);
  CHECK(arr.as_array().cells[0] == CellValue::number(2));
  CHECK(arr.as_array().cells[2] == CellValue::number(4));

  CHECK(eval_text("=SUM(A1:A3 * A1:A3)", grid) ==
        EvalValue::scalar(CellValue::number(14)));
  CHECK(eval_text("=SUMPRODUCT(A1:A3, A1:A3)", grid) ==
        EvalValue::scalar(CellValue::number(14)));
  CHECK(eval_text("=SUMPRODUCT(A1:A3, A1:A2)", grid) == EvalValue::error(ErrorKind::Value));
  CHECK(eval_text("=SUMPRODUCT(2, 3)", grid) == EvalValue::scalar(CellValue::number(6)));
  // Comparisons take scalars only.
  CHECK(eval_text("=A1:A3 > 1", grid) == EvalValue::error(ErrorKind::Value));
}

TEST_CASE("execute outcomes") {
  Grid grid = numbers_1_to(3);
  CHECK(execute("=SUM(A1:A3)", grid) == ExecutionOutcome::value(CellValue::number(6)));
  CHECK(execute("not a formula", grid) ==
        ExecutionOutcome::not_executable(ExecutionOutcome::Failure::ParseError));
  CHECK(execute("=FOO(A1)", grid) ==
        ExecutionOutcome::not_executable(ExecutionOutcome::Failure::UnknownFunction));
  CHECK(execute("=A1/0", grid) == ExecutionOutcome::runtime_error(ErrorKind::Div0));
  CHECK(execute("=A1:A3", grid) ==
        ExecutionOutcome::not_executable(ExecutionOutcome::Failure::ArrayResult));

  // FOO is genuinely outside the supported registry.
  const auto& fns = supported_functions();
  CHECK(std::find(fns.begin(), fns.end(), "FOO") == fns.end());
  CHECK(std::find(fns.begin(), fns.end(), "COUNTIF") != fns.end());
}

TEST_CASE("parse_criteria") {
  CHECK(parse_criteria(CellValue::text(">=75")) ==
        Criteria{CompareOp::Ge, CellValue::number(75)});
  CHECK(parse_criteria(CellValue::text("Rick Mears")) ==
        Criteria{CompareOp::Eq, CellValue::text("rick mears")});
  CHECK(parse_criteria(CellValue::number(7)) ==
        Criteria{CompareOp::Eq, CellValue::number(7)});
  CHECK(parse_criteria(CellValue::text("<>x")) ==
        Criteria{CompareOp::Ne, CellValue::text("x")});
  CHECK(parse_criteria(CellValue::text("=75")) ==
        Criteria{CompareOp::Eq, CellValue::number(75)});
  // A bare value keeps its own kind.
  CHECK(parse_criteria(CellValue::text("75")) ==
        Criteria{CompareOp::Eq, CellValue::text("75")});
  CHECK(parse_criteria(CellValue::boolean(true)) ==
        Criteria{CompareOp::Eq, CellValue::boolean(true)});
}

TEST_CASE("criteria_matches kinds and Empty") {
  Criteria ge75{CompareOp::Ge, CellValue::number(75)};
  CHECK(criteria_matches(CellValue::number(80), ge75));
  CHECK(!criteria_matches(CellValue::number(74), ge75));
  CHECK(!criteria_matches(CellValue::text("80"), ge75));  // kind mismatch
  CHECK(!criteria_matches(CellValue::empty(), ge75));

  Criteria ne{CompareOp::Ne, CellValue::number(5)};
  CHECK(criteria_matches(CellValue::text("x"), ne));  // cross-kind <> matches
  CHECK(!criteria_matches(CellValue::empty(), ne));   // Empty never matches
  CHECK(criteria_matches(CellValue::number(6), ne));
}

TEST_CASE("COUNTIF agrees with direct iteration") {
  Rng rng(31);
  const std::vector<CellValue> criteria_pool = {
      CellValue::text(">=0"), CellValue::text("<50"), CellValue::text("<>abc"),
      CellValue::text("abc"), CellValue::number(75),  CellValue::text(">12.5"),
      CellValue::boolean(true)};
  for (int trial = 0; trial < 300; ++trial) {
    Grid grid = random_grid(rng, 6, 3);
    if (grid.n_rows() == 0) continue;
    int rows = rng.uniform_int(1, grid.n_rows());
    CellValue raw = criteria_pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(criteria_pool.size()) - 1))];

    std::string formula = "=COUNTIF(A1:A" + std::to_string(rows) + ", " +
                          (raw.is_number() ? raw.to_display()
                           : raw.is_boolean()
                               ? std::string(raw.as_boolean() ? "TRUE" : "FALSE")
                               : "\"" + raw.as_text() + "\"") +
                          ")";
    EvalValue got = eval_text(formula, grid);

    Criteria crit = parse_criteria(raw);
    int expected = 0;
    for (int r = 1; r <= rows; ++r) {
      if (criteria_matches(grid.at({1, r}), crit)) ++expected;
    }
    REQUIRE(got == EvalValue::scalar(CellValue::number(expected)));
  }
}

TEST_CASE("SUMPRODUCT distinct-count identity on random ranges") {
  Rng rng(47);
  // Values drawn from small pools so duplicates are common; no comparator
  // prefixes, no empties (a criteria cell must stand for itself).
  const std::vector<CellValue> pool = {
      CellValue::number(1),      CellValue::number(2),     CellValue::number(75),
      CellValue::text("alpha"),  CellValue::text("Beta"),  CellValue::text("beta"),
      CellValue::boolean(true),  CellValue::number(-3.5),
  };
  for (int trial = 0; trial < 200; ++trial) {
    int n = rng.uniform_int(1, 12);
    std::vector<CellValue> cells;
    for (int i = 0; i < n; ++i) {
      cells.push_back(pool[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<int>(pool.size()) - 1))]);
    }
    Grid grid = column_grid(cells);

    std::set<std::string> distinct;
    for (const auto& c : cells) {
      std::string key;
      if (c.is_number()) key = "n:" + c.to_display();
      else if (c.is_boolean()) key = "b:" + c.to_display();
      else {
        key = "t:";
        for (char ch : c.as_text()) {
          key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        }
      }
      distinct.insert(key);
    }

    std::string range = "A1:A" + std::to_string(n);
    EvalValue got = eval_text("=SUMPRODUCT(1/COUNTIF(" + range + "," + range + "))", grid);
    REQUIRE(got.is_scalar());
    REQUIRE(got.as_scalar().as_number() ==
            doctest::Approx(static_cast<double>(distinct.size())).epsilon(1e-9));
  }
}

TEST_CASE("evaluation is deterministic and pure") {
  Rng rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    Grid grid = random_grid(rng, 5, 4);
    Grid snapshot = grid;
    FormulaAst ast = random_ast(rng, grid, 4);
    EvalValue first = evaluate(ast, grid);
    EvalValue second = evaluate(ast, grid);
    REQUIRE(first == second);
    REQUIRE(grid == snapshot);
  }
}

TEST_CASE("engine agrees with the oracle interpreter") {
  Rng rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    Grid grid = random_grid(rng, 5, 4);
    FormulaAst ast = random_ast(rng, grid, 4);
    EvalValue engine = evaluate(ast, grid);
    EvalValue oracle = oracle_evaluate(ast, grid);
    if (!results_agree(engine, oracle)) {
      CAPTURE(sheetqa::testing::render_formula(ast));
      CAPTURE(encode_linear(grid));
      REQUIRE(results_agree(engine, oracle));
    }
  }
}
