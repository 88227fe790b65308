#include "nia/cli.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "nia/smtlib.h"

namespace nia {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '"') c = '_';
  }
  return s;
}

}  // namespace

int solve_file(const RunConfig& config, const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    Script script = parse(path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(path));
    bool has_check = std::any_of(script.commands.begin(), script.commands.end(),
                                 [](const Command& c) { return c.kind == Command::Kind::CheckSat; });
    if (!has_check) script.commands.push_back(Command{Command::Kind::CheckSat});
    auto results = execute(script, config.solver, out);
    if (!results.empty()) {
      const CheckResult& last = results.back();
      bool printed = std::any_of(script.commands.begin(), script.commands.end(),
                                 [](const Command& c) { return c.kind == Command::Kind::GetModel; });
      if (config.print_model && !printed && last.stats.answer == Answer::Sat) out << format_model(script, last.model);
      if (config.print_stats) out << format_stats(last.stats);
    }
    return 0;
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << path << ": unsupported: " << e.what() << "\n";
    return 2;
  } catch (const SortError& e) {
    err << path << ": sort error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << path << ": error: " << e.what() << "\n";
    return 1;
  }
}

std::vector<BenchRow> bench_dir(const RunConfig& config, const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".smt2") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      BenchRow& row = rows[i];
      row.name = sanitize(std::filesystem::relative(files[i], dir).generic_string());
      try {
        Script script = parse(read_file(files[i].string()));
        std::ostringstream sink;
        auto results = execute(script, config.solver, sink);
        if (results.empty()) {
          script.commands.push_back(Command{Command::Kind::CheckSat});
          results = execute(script, config.solver, sink);
        }
        row.stats = results.back().stats;
        row.answer = answer_name(row.stats.answer);
      } catch (const std::exception&) {
        row.answer = "error";
      }
    }
  };
  unsigned jobs = std::max(1U, config.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "name,answer,wall_ms,conflicts,decisions,theory_assignments,ls_calls,ls_moves_accepted\n";
  for (const BenchRow& r : rows) {
    const Stats& s = r.stats;
    os << r.name << "," << r.answer << "," << static_cast<std::uint64_t>(s.wall_ms) << "," << s.conflicts << ","
       << s.decisions << "," << s.theory_assignments << "," << s.ls_calls << "," << s.ls_moves_accepted << "\n";
  }
  return os.str();
}

}  // namespace nia
