#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nia/solver.h"

namespace nia {

struct RunConfig {
  SolverConfig solver;
  bool print_model = false;
  bool print_stats = false;
  unsigned jobs = 1;
};

/// Solves one SMT-LIB file. Returns 0 when every check-sat produced an
/// answer, 2 on parse or unsupported-feature errors, 1 on other failures.
int solve_file(const RunConfig& config, const std::string& path, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string name;
  std::string answer;  // sat, unsat, unknown or error
  Stats stats;
};

/// Solves every .smt2 file below `dir` (sorted by path) on `config.jobs`
/// worker threads.
std::vector<BenchRow> bench_dir(const RunConfig& config, const std::string& dir);

/// Header plus one row per entry: name,answer,wall_ms,conflicts,decisions,
/// theory_assignments,ls_calls,ls_moves_accepted.
std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace nia
