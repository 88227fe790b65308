#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nia/cli.h"

using namespace nia;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("nia_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

const char* kReciprocal =
    "(set-logic QF_NIA)(declare-fun x () Int)(declare-fun y () Int)(declare-fun z () Int)"
    "(assert (or (not (>= x 1)) (= (* x y) 1)))"
    "(assert (or (not (= (* x y) 1)) (> (+ x (* 2 y z)) 0)))"
    "(assert (> (* z z) 1))(check-sat)";

}  // namespace

TEST_CASE("single file with model and stats") {
  TempDir d;
  std::string f = d.write("ex1.smt2", kReciprocal);
  RunConfig cfg;
  cfg.print_model = true;
  cfg.print_stats = true;
  std::ostringstream out, err;
  CHECK(solve_file(cfg, f, out, err) == 0);
  std::string s = out.str();
  CHECK(s.rfind("sat\n(\n", 0) == 0);
  CHECK(s.find("(define-fun z () Int") != std::string::npos);
  CHECK(s.find("; conflicts=") != std::string::npos);
  CHECK(s.find("; answer=sat") != std::string::npos);
  CHECK(err.str().empty());
}

TEST_CASE("a missing check-sat is implied") {
  TempDir d;
  std::string f = d.write("a.smt2", "(declare-fun x () Int)(assert (< (* x x) 0))");
  std::ostringstream out, err;
  CHECK(solve_file({}, f, out, err) == 0);
  CHECK(out.str() == "unsat\n");
}

TEST_CASE("errors exit with status 2") {
  TempDir d;
  std::ostringstream out, err;
  CHECK(solve_file({}, d.write("u.smt2", "(declare-fun x () Int)(assert (> (div x 2) 0))"), out, err) == 2);
  CHECK(err.str().find("div") != std::string::npos);
  CHECK(solve_file({}, d.write("p.smt2", "(assert (> y 0))"), out, err) == 2);
  CHECK(solve_file({}, (d.path / "missing.smt2").string(), out, err) == 1);
}

TEST_CASE("benchmark directory to CSV") {
  TempDir d;
  d.write("b.smt2", kReciprocal);
  d.write("a.smt2", "(assert false)(check-sat)");
  d.write("c.smt2", "(assert (> (div 1 1) 0))");
  d.write("notes.txt", "ignored");
  RunConfig cfg;
  cfg.jobs = 2;
  auto rows = bench_dir(cfg, d.path.string());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "a.smt2");
  CHECK(rows[0].answer == "unsat");
  CHECK(rows[1].answer == "sat");
  CHECK(rows[2].answer == "error");
  std::string csv = to_csv(rows);
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "name,answer,wall_ms,conflicts,decisions,theory_assignments,ls_calls,ls_moves_accepted");
  CHECK(first.rfind("a.smt2,unsat,", 0) == 0);
  CHECK(std::count(first.begin(), first.end(), ',') == 7);
}
