#include <doctest.h>

#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sheetqa/cli.hpp"

using namespace sheetqa;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& argv) {
  std::ostringstream out, err;
  CliRun result;
  result.code = run_command(argv, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() / ("sheetqa_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) const {
    fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
  static int counter_;
};

int TempDir::counter_ = 0;

std::string read_all(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kDataset = R"({"id": "a", "tables": [[[1],[2],[3]]], "question": "sum?", "answer": 6}
{"id": "b", "tables": [[[1],[2],[3]]], "question": "sum?", "answer": 6}
{"id": "c", "tables": [[[1],[2],[3]]], "question": "sum?", "answer": 6}
)";

}  // namespace

TEST_CASE("exec prints the executed value") {
  TempDir tmp;
  std::string table = tmp.write("t.json", "[[1],[2],[3]]");
  CliRun r = run({"exec", "--table", table, "--formula", "=SUM(A1:A3)"});
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");

  CliRun bad = run({"exec", "--table", table, "--formula", "oops"});
  CHECK(bad.code == 0);
  CHECK(bad.out == "not executable: parse error\n");
}

TEST_CASE("encode emits the linearized table") {
  TempDir tmp;
  std::string table = tmp.write("t.json", R"([["Year"],["Profit"]])");
  CliRun r = run({"encode", "--table", table});
  CHECK(r.code == 0);
  CHECK(r.out == "A1,Year|A2,Profit\n");

  // Multi-table inputs are stacked vertically.
  std::string multi = tmp.write("m.json", R"({"tables": [[["a"]], [["b"]]]})");
  CliRun stacked = run({"encode", "--table", multi});
  CHECK(stacked.out == "A1,a|A2,b\n");
}

TEST_CASE("judge compares one prediction") {
  CHECK(run({"judge", "--pred", "\"1,234\"", "--gold", "1234"}).out == "true\n");
  CHECK(run({"judge", "--pred", "5", "--gold", "4"}).out == "false\n");
}

TEST_CASE("reward over the three canonical fixtures") {
  TempDir tmp;
  std::string dataset = tmp.write("d.jsonl", kDataset);
  std::string responses = tmp.write(
      "r.jsonl",
      R"({"id": "a", "output": "<think>t</think><answer>{\"formula\": \"=SUM(A1:A3)\"}</answer>"}
{"id": "b", "output": "<think>t</think><answer>{\"formula\": \"=MAX(A1:A3)\"}</answer>"}
{"id": "c", "output": "no tags"}
)");
  std::string out_path = tmp.path("rewards.jsonl");
  CliRun r = run({"reward", "--dataset", dataset, "--responses", responses, "--mode",
                  "symbolic", "--out", out_path});
  REQUIRE(r.code == 0);

  std::istringstream lines(read_all(out_path));
  std::string line;
  std::vector<double> finals;
  while (std::getline(lines, line)) {
    finals.push_back(nlohmann::json::parse(line)["final"].get<double>());
  }
  CHECK(finals == std::vector<double>{1.1, 0.3, -2.0});
}

TEST_CASE("evaluate writes a score report") {
  TempDir tmp;
  std::string dataset = tmp.write("d.jsonl", kDataset);
  std::string responses = tmp.write(
      "r.jsonl",
      R"({"id": "a", "mode": "symbolic", "output": "<think>t</think><answer>{\"formula\": \"=SUM(A1:A3)\"}</answer>"}
{"id": "b", "mode": "textual", "output": "<think>t</think><answer>{\"answer\": 7}</answer>"}
)");
  std::string out_path = tmp.path("report.json");
  CliRun r = run({"evaluate", "--dataset", dataset, "--responses", responses, "--out", out_path});
  REQUIRE(r.code == 0);

  auto report = nlohmann::json::parse(read_all(out_path));
  CHECK(report["n"] == 2);
  CHECK(report["accuracy"] == 0.5);
  CHECK(report["per_id"]["a"] == true);
  CHECK(report["per_id"]["b"] == false);
}

TEST_CASE("vote selects the pooled majority") {
  TempDir tmp;
  std::string dataset = tmp.write("d.jsonl", kDataset);
  std::string candidates = tmp.write(
      "c.jsonl",
      R"({"id": "a", "textual": ["<think>t</think><answer>{\"answer\": 6}</answer>", "<think>t</think><answer>{\"answer\": 5}</answer>"], "symbolic": ["<think>t</think><answer>{\"formula\": \"=SUM(A1:A3)\"}</answer>"]}
)");
  std::string out_path = tmp.path("votes.jsonl");
  CliRun r = run({"vote", "--dataset", dataset, "--candidates", candidates, "--out", out_path});
  REQUIRE(r.code == 0);

  auto line = nlohmann::json::parse(read_all(out_path));
  CHECK(line["chosen"] == 6.0);
  CHECK(line["correct"] == true);
  CHECK(line["upper_bound_hit"] == true);
}

TEST_CASE("stats emits per-formula measurements") {
  TempDir tmp;
  std::string formulas = tmp.write("f.txt", "=A1 + A2\n=TRUE\n");
  std::string out_path = tmp.path("stats.jsonl");
  CliRun r = run({"stats", "--formulas", formulas, "--out", out_path});
  REQUIRE(r.code == 0);

  std::istringstream lines(read_all(out_path));
  std::string line;
  std::getline(lines, line);
  auto first = nlohmann::json::parse(line);
  CHECK(first["length"] == 7);
  CHECK(first["n_operators"] == 1);
  CHECK(first["n_variables"] == 2);
}

TEST_CASE("simulate is byte-identical across runs") {
  TempDir tmp;
  std::string config = tmp.write("c.cfg", "tasks = 5\n");
  std::string out_a = tmp.path("a.json");
  std::string out_b = tmp.path("b.json");
  CliRun a = run({"simulate", "dominance", "--config", config, "--seed", "7", "--out", out_a});
  CliRun b = run({"simulate", "dominance", "--config", config, "--seed", "7", "--out", out_b});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(read_all(out_a) == read_all(out_b));
  CHECK(nlohmann::json::parse(read_all(out_a))["all_checks_passed"] == true);
}

TEST_CASE("exit codes and no partial writes") {
  TempDir tmp;
  std::string dataset = tmp.write("d.jsonl", kDataset);

  // Unknown response id: validation error, exit 1, --out not created.
  std::string responses = tmp.write("r.jsonl", R"({"id": "zz", "output": "x"}
)");
  std::string out_path = tmp.path("never.jsonl");
  CliRun bad_id = run({"reward", "--dataset", dataset, "--responses", responses, "--mode",
                       "symbolic", "--out", out_path});
  CHECK(bad_id.code == 1);
  CHECK(!fs::exists(out_path));
  CHECK(bad_id.err.find("zz") != std::string::npos);

  // Missing file: I/O error, exit 2.
  CliRun missing = run({"reward", "--dataset", tmp.path("absent.jsonl"), "--responses",
                        responses, "--mode", "symbolic"});
  CHECK(missing.code == 2);

  // Bad mode string: validation error.
  CliRun bad_mode = run({"evaluate", "--dataset", dataset, "--responses", responses,
                         "--mode", "sideways"});
  CHECK(bad_mode.code == 1);

  // Usage error: unknown subcommand.
  CHECK(run({"frobnicate"}).code == 1);

  // Bad config key.
  std::string cfg = tmp.write("bad.cfg", "bogus = 1\n");
  CliRun bad_cfg = run({"judge", "--pred", "1", "--gold", "1", "--config", cfg});
  CHECK(bad_cfg.code == 1);
}

TEST_CASE("vote sizes cap the candidate pools") {
  TempDir tmp;
  std::string dataset = tmp.write("d.jsonl", kDataset);
  // Three textual candidates answering 5, but n_text=1 keeps only the first;
  // two symbolic answering 6 then win the vote.
  std::string candidates = tmp.write(
      "c.jsonl",
      R"({"id": "a", "textual": ["<think>t</think><answer>{\"answer\": 5}</answer>", "<think>t</think><answer>{\"answer\": 5}</answer>", "<think>t</think><answer>{\"answer\": 5}</answer>"], "symbolic": ["<think>t</think><answer>{\"formula\": \"=SUM(A1:A3)\"}</answer>", "<think>t</think><answer>{\"formula\": \"=A1+A2+A3\"}</answer>"]}
)");
  std::string cfg = tmp.write("c.cfg", "n_text = 1\nn_formula = 5\n");
  std::string out_path = tmp.path("votes.jsonl");
  CliRun r = run({"vote", "--dataset", dataset, "--candidates", candidates, "--config", cfg,
                  "--out", out_path});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(read_all(out_path))["chosen"] == 6.0);
}
