#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "support.hpp"
#include "troplin/instance_io.hpp"

using namespace troplin;
using test::Rng;

namespace {

struct CliRun {
  int exit_code = -1;
  std::string output;
};

CliRun run_command(const std::string& command) {
  CliRun result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

CliRun run_cli(const std::string& args) {
  return run_command(std::string(TROPLIN_CLI_PATH) + " " + args);
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = "/tmp/troplin_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl.data()) != nullptr);
    path_ = tmpl;
  }
  std::string file(const std::string& name, const std::string& contents) const {
    const std::string full = path_ + "/" + name;
    std::ofstream out(full);
    out << contents;
    return full;
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("solve: golden output and exit codes on the canonical examples") {
  TempDir dir;
  const auto ex1 = dir.file("ex1.txt", "2 3\n1 2 3\n3 2 1\n");
  const auto ex2 = dir.file("ex2.txt", "2 2\n1 2\n3 2\n");
  const auto one = dir.file("one.txt", "1 1\n0\n");

  const auto feasible = run_cli("solve " + ex1);
  CHECK(feasible.exit_code == 0);
  CHECK(feasible.output == "FEASIBLE\n1 0 1\n");

  const auto infeasible = run_cli("solve " + ex2);
  CHECK(infeasible.exit_code == 1);
  CHECK(infeasible.output == "INFEASIBLE\n");

  const auto single = run_cli("solve " + one);
  CHECK(single.exit_code == 1);
  CHECK(single.output == "INFEASIBLE\n");

  for (const std::string algo :
       {"--algorithm exact", "--algorithm lifting --lifting original",
        "--algorithm lifting --lifting optimized", "--algorithm lifting --lifting agg",
        "--algorithm lifting --lifting combined-max",
        "--algorithm lifting --lifting combined-min"}) {
    const auto a = run_cli("solve " + ex1 + " --verify " + algo);
    CHECK(a.exit_code == 0);
    CHECK(a.output == "FEASIBLE\n1 0 1\n");
    const auto b = run_cli("solve " + ex2 + " " + algo);
    CHECK(b.exit_code == 1);
    CHECK(b.output == "INFEASIBLE\n");
  }
}

TEST_CASE("solve: parse errors exit 2") {
  TempDir dir;
  CHECK(run_cli("solve " + dir.path() + "/missing.txt").exit_code == 2);
  CHECK(run_cli("solve " + dir.file("short.txt", "2 2\n1 2\n3\n")).exit_code == 2);
  CHECK(run_cli("solve " + dir.file("trail.txt", "1 2\n1 2\n3\n")).exit_code == 2);
  CHECK(run_cli("solve " + dir.file("huge.txt", "1 2\n1 2199023255553\n")).exit_code == 2);
  CHECK(run_cli("solve " + dir.file("alpha.txt", "1 2\n1 x\n")).exit_code == 2);
}

TEST_CASE("solve: stats line is machine readable") {
  TempDir dir;
  const auto ex1 = dir.file("ex1.txt", "2 3\n1 2 3\n3 2 1\n");
  const auto run = run_cli("solve " + ex1 + " --algorithm lifting --lifting agg --stats");
  CHECK(run.exit_code == 0);
  const std::regex line(
      "FEASIBLE\n1 0 1\nstats solver=lifting:agg verdict=feasible lifts=[0-9]+ "
      "touched=[0-9]+ guard_trips=[0-9]+ nodes=[0-9]+ memo_hits=[0-9]+ "
      "assignment_calls=[0-9]+ micros=[0-9]+\n");
  CHECK(std::regex_match(run.output, line));
}

TEST_CASE("gen: deterministic, parseable, honors --max 0") {
  TempDir dir;
  const std::string base = "gen --rows 5 --cols 3 --max 100 --seed 7 --count 3 --out ";
  const auto first = run_cli(base + dir.path() + "/a_");
  const auto second = run_cli(base + dir.path() + "/b_");
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  for (int i = 0; i < 3; ++i) {
    const std::string suffix = "000" + std::to_string(i) + ".txt";
    const auto a = slurp(dir.path() + "/a_" + suffix);
    CHECK(!a.empty());
    CHECK(a == slurp(dir.path() + "/b_" + suffix));
  }
  const auto other_seed = run_cli("gen --rows 5 --cols 3 --max 100 --seed 8 --out " +
                                  dir.path() + "/c_");
  CHECK(other_seed.exit_code == 0);
  CHECK(slurp(dir.path() + "/c_0000.txt") != slurp(dir.path() + "/a_0000.txt"));

  const auto zeros = run_cli("gen --rows 2 --cols 3 --max 0 --out " + dir.path() + "/z_");
  CHECK(zeros.exit_code == 0);
  CHECK(slurp(dir.path() + "/z_0000.txt") == "2 3\n0 0 0\n0 0 0\n");
  CHECK(run_cli("solve " + dir.path() + "/z_0000.txt").exit_code == 0);
}

TEST_CASE("race: CSV shape and cross-checked verdicts") {
  TempDir dir;
  const auto ex1 = dir.file("ex1.txt", "2 3\n1 2 3\n3 2 1\n");
  const auto ex2 = dir.file("ex2.txt", "2 2\n1 2\n3 2\n");
  const auto run = run_cli("race " + ex1 + " " + ex2);
  CHECK(run.exit_code == 0);

  std::istringstream lines(run.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "instance,solver,verdict,lifts,guard_trips,micros");
  int rows = 0;
  int lifting_rows_with_lifts = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.find("lifting:") != std::string::npos && line.find(",feasible,") != std::string::npos) {
      std::istringstream cells(line);
      std::string cell;
      std::getline(cells, cell, ',');  // instance
      std::getline(cells, cell, ',');  // solver
      std::getline(cells, cell, ',');  // verdict
      std::getline(cells, cell, ',');  // lifts
      if (std::stoll(cell) >= 1) ++lifting_rows_with_lifts;
    }
  }
  CHECK(rows == 12);  // 2 instances x (exact + 5 strategies)
  CHECK(lifting_rows_with_lifts == 5);  // ex1 needs at least one lift under every strategy
}

TEST_CASE("TROPLIN_GUARD environment override") {
  TempDir dir;
  const auto wide = dir.file("wide.txt", "1 2\n0 5\n");
  const auto normal = run_cli("solve " + wide + " --algorithm lifting");
  CHECK(normal.exit_code == 0);
  CHECK(normal.output == "FEASIBLE\n5 0\n");

  const auto guarded = run_command(std::string("TROPLIN_GUARD=3 ") + TROPLIN_CLI_PATH +
                                   " solve " + wide + " --algorithm lifting");
  CHECK(guarded.exit_code == 1);
  CHECK(guarded.output == "INFEASIBLE\n");

  const auto flag_wins = run_command(std::string("TROPLIN_GUARD=3 ") + TROPLIN_CLI_PATH +
                                     " solve " + wide + " --algorithm lifting --guard 5");
  CHECK(flag_wins.exit_code == 0);

  const auto bad_env = run_command(std::string("TROPLIN_GUARD=frog ") + TROPLIN_CLI_PATH +
                                   " solve " + wide + " --algorithm lifting");
  CHECK(bad_env.exit_code == 2);
}

TEST_CASE("instance files round trip through emit and parse") {
  Rng rng(113);
  for (int rep = 0; rep < 100; ++rep) {
    const auto A = test::random_matrix(rng, 1 + rng.index(6), 1 + rng.index(6), 50, -50);
    std::istringstream in(io::emit_instance(A));
    CHECK(io::parse_instance(in) == A);
  }
}
