// Command-line front end: `nia FILE` solves one SMT-LIB file, `nia DIR`
// benchmarks every .smt2 file below DIR and writes CSV.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nia/cli.h"

int main(int argc, char** argv) {
  CLI::App app{"QF_NIA solver with local-search guided decisions"};
  nia::RunConfig cfg;
  std::string input;
  std::string csv_path;
  bool no_ls = false;
  std::uint64_t max_conflicts = 0;
  std::uint64_t timeout_ms = 0;

  app.add_option("input", input, "SMT-LIB file, '-' for stdin, or a directory")->required();
  app.add_flag("--no-ls", no_ls, "disable local search");
  app.add_option("--ls-threshold-base", cfg.solver.ls_threshold_base, "conflicts before the first LS call");
  app.add_option("--ls-budget", cfg.solver.ls_budget_per_var, "LS move evaluations per non-fixed variable");
  app.add_option("--acc", cfg.solver.acc, "hill-climbing acceleration");
  app.add_option("--seed", cfg.solver.seed, "seed for activity tie-breaking (0 = none)");
  app.add_option("--max-conflicts", max_conflicts, "answer unknown after this many conflicts");
  app.add_option("--timeout-ms", timeout_ms, "answer unknown after this many milliseconds");
  app.add_flag("--print-model", cfg.print_model, "print the model after sat");
  app.add_flag("--print-stats", cfg.print_stats, "print statistics as SMT-LIB comments");
  app.add_option("--csv", csv_path, "write benchmark CSV here (directory input)");
  app.add_option("--jobs", cfg.jobs, "parallel workers for directory input");
  CLI11_PARSE(app, argc, argv);

  cfg.solver.ls_enabled = !no_ls;
  if (app.count("--max-conflicts") != 0) cfg.solver.max_conflicts = max_conflicts;
  if (app.count("--timeout-ms") != 0) cfg.solver.timeout_ms = timeout_ms;

  if (input != "-" && std::filesystem::is_directory(input)) {
    std::string csv = nia::to_csv(nia::bench_dir(cfg, input));
    if (csv_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream(csv_path) << csv;
    }
    return 0;
  }
  return nia::solve_file(cfg, input, std::cout, std::cerr);
}
