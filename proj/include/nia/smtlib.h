#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nia/solver.h"
#include "nia/term_store.h"

namespace nia {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Command {
  enum class Kind : std::uint8_t { Declare, Assert, CheckSat, GetModel, Exit } kind;
  std::size_t index = 0;  // into declarations / assertions
};

struct Script {
  std::unique_ptr<TermStore> store = std::make_unique<TermStore>();
  std::optional<std::string> logic;
  std::vector<VarId> declarations;
  std::vector<ExprId> assertions;
  std::vector<Command> commands;
};

/// Parses the QF_NIA subset of SMT-LIB v2. Integer-valued ite terms are
/// replaced by fresh auxiliary variables constrained by extra assertions.
Script parse(std::string_view text);

/// Prints a script that parses back to the same structure.
std::string print(const Script& s);

struct CheckResult {
  Stats stats;
  std::vector<Integer> model;  // empty unless sat
};

/// Runs the commands; every check-sat writes sat, unsat or unknown on its own
/// line and get-model writes the last model. Returns one entry per check-sat.
std::vector<CheckResult> execute(Script& s, const SolverConfig& config, std::ostream& out);

/// define-fun lines for the non-auxiliary declared variables.
std::string format_model(const Script& s, const std::vector<Integer>& model);

}  // namespace nia
