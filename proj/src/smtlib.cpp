#include "nia/smtlib.h"

#include <cctype>
#include <map>
#include <ostream>
#include <sstream>
#include <variant>

namespace nia {

ParseError::ParseError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

namespace {

struct SExpr {
  enum class Kind : std::uint8_t { Symbol, Numeral, Decimal, String, Keyword, List } kind;
  std::string text;
  std::vector<SExpr> kids;
  std::size_t line = 0;
  std::size_t column = 0;

  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  std::optional<SExpr> next() {
    skip_space();
    if (pos_ >= s_.size()) return std::nullopt;
    return read();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  char advance() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e{SExpr::Kind::Symbol, {}, {}, line_, col_};
    char c = s_[pos_];
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      for (;;) {
        skip_space();
        if (pos_ >= s_.size()) throw ParseError("unterminated list", e.line, e.column);
        if (s_[pos_] == ')') {
          advance();
          return e;
        }
        e.kids.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      advance();
      e.kind = SExpr::Kind::String;
      for (;;) {
        if (pos_ >= s_.size()) throw ParseError("unterminated string", e.line, e.column);
        char d = advance();
        if (d == '"') {
          if (pos_ < s_.size() && s_[pos_] == '"') {
            e.text += advance();
            continue;
          }
          return e;
        }
        e.text += d;
      }
    }
    if (c == '|') {
      advance();
      for (;;) {
        if (pos_ >= s_.size()) throw ParseError("unterminated quoted symbol", e.line, e.column);
        char d = advance();
        if (d == '|') return e;
        e.text += d;
      }
    }
    while (pos_ < s_.size()) {
      char d = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"' || d == '|') break;
      e.text += advance();
    }
    if (e.text[0] == ':') {
      e.kind = SExpr::Kind::Keyword;
    } else if (std::isdigit(static_cast<unsigned char>(e.text[0]))) {
      bool dot = false;
      for (char d : e.text) {
        if (d == '.' && !dot) {
          dot = true;
        } else if (!std::isdigit(static_cast<unsigned char>(d))) {
          throw ParseError("malformed numeral '" + e.text + "'", e.line, e.column);
        }
      }
      e.kind = dot ? SExpr::Kind::Decimal : SExpr::Kind::Numeral;
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

using Value = std::variant<ExprId, Polynomial>;  // Bool or Int

class Parser {
 public:
  explicit Parser(Script& s) : s_(s), store_(*s.store) {}

  void command(const SExpr& e) {
    if (e.kind != SExpr::Kind::List || e.kids.empty() || e.kids[0].kind != SExpr::Kind::Symbol) {
      fail(e, "expected a command");
    }
    const std::string& op = e.kids[0].text;
    if (op == "set-logic") {
      expect_arity(e, 2);
      const std::string& logic = e.kids[1].text;
      if (logic != "QF_NIA" && logic != "QF_LIA") throw UnsupportedError("logic " + logic + " is not supported");
      s_.logic = logic;
    } else if (op == "set-info" || op == "set-option") {
      // no effect
    } else if (op == "declare-fun") {
      expect_arity(e, 4);
      if (e.kids[2].kind != SExpr::Kind::List) fail(e.kids[2], "expected a parameter list");
      if (!e.kids[2].kids.empty()) throw UnsupportedError("declare-fun with arguments (" + e.kids[1].text + ")");
      declare(e.kids[1], e.kids[3]);
    } else if (op == "declare-const") {
      expect_arity(e, 3);
      declare(e.kids[1], e.kids[2]);
    } else if (op == "define-fun") {
      expect_arity(e, 5);
      if (e.kids[2].kind != SExpr::Kind::List) fail(e.kids[2], "expected a parameter list");
      if (!e.kids[2].kids.empty()) throw UnsupportedError("define-fun with arguments (" + e.kids[1].text + ")");
      Sort sort = parse_sort(e.kids[3]);
      Value v = term(e.kids[4]);
      check_sort(e.kids[4], v, sort);
      const std::string& name = e.kids[1].text;
      if (macros_.count(name) != 0 || store_.find_variable(name)) fail(e.kids[1], "redefinition of " + name);
      macros_.emplace(name, std::move(v));
    } else if (op == "assert") {
      expect_arity(e, 2);
      Value v = term(e.kids[1]);
      check_sort(e.kids[1], v, Sort::Boolean);
      add_assertion(std::get<ExprId>(v));
    } else if (op == "check-sat") {
      s_.commands.push_back(Command{Command::Kind::CheckSat});
    } else if (op == "get-model") {
      s_.commands.push_back(Command{Command::Kind::GetModel});
    } else if (op == "exit") {
      s_.commands.push_back(Command{Command::Kind::Exit});
    } else {
      throw UnsupportedError("command " + op);
    }
  }

 private:
  [[noreturn]] static void fail(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.column); }

  static void expect_arity(const SExpr& e, std::size_t n) {
    if (e.kids.size() != n) fail(e, e.kids[0].text + " expects " + std::to_string(n - 1) + " arguments");
  }

  Sort parse_sort(const SExpr& e) {
    if (e.is_symbol("Int")) return Sort::Integer;
    if (e.is_symbol("Bool")) return Sort::Boolean;
    throw UnsupportedError("sort " + (e.kind == SExpr::Kind::List ? std::string("(...)") : e.text));
  }

  void declare(const SExpr& name, const SExpr& sort) {
    if (name.kind != SExpr::Kind::Symbol) fail(name, "expected a symbol");
    if (macros_.count(name.text) != 0) fail(name, "redefinition of " + name.text);
    VarId v;
    try {
      v = store_.new_variable(name.text, parse_sort(sort));
    } catch (const SortError&) {
      fail(name, "redeclaration of " + name.text);
    }
    s_.commands.push_back(Command{Command::Kind::Declare, s_.declarations.size()});
    s_.declarations.push_back(v);
  }

  void add_assertion(ExprId e) {
    s_.commands.push_back(Command{Command::Kind::Assert, s_.assertions.size()});
    s_.assertions.push_back(e);
  }

  static void check_sort(const SExpr& at, const Value& v, Sort want) {
    bool is_bool = std::holds_alternative<ExprId>(v);
    if (is_bool != (want == Sort::Boolean)) {
      throw SortError(std::to_string(at.line) + ":" + std::to_string(at.column) + ": expected " +
                      (want == Sort::Boolean ? "Bool" : "Int") + " term");
    }
  }

  ExprId boolean(const SExpr& e) {
    Value v = term(e);
    check_sort(e, v, Sort::Boolean);
    return std::get<ExprId>(v);
  }

  Polynomial integer(const SExpr& e) {
    Value v = term(e);
    check_sort(e, v, Sort::Integer);
    return std::get<Polynomial>(std::move(v));
  }

  Value symbol(const SExpr& e) {
    const std::string& name = e.text;
    if (name == "true") return store_.mk_true();
    if (name == "false") return store_.mk_false();
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    if (auto m = macros_.find(name); m != macros_.end()) return m->second;
    if (auto v = store_.find_variable(name)) {
      if (store_.variable(*v).sort == Sort::Boolean) return store_.mk_lit(store_.bool_literal(*v));
      return Polynomial::variable(*v);
    }
    fail(e, "unknown identifier " + name);
  }

  Value term(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Kind::Numeral: return Polynomial(Integer(e.text));
      case SExpr::Kind::Decimal: throw UnsupportedError("decimal literal " + e.text);
      case SExpr::Kind::Symbol: return symbol(e);
      case SExpr::Kind::String:
      case SExpr::Kind::Keyword: fail(e, "unexpected token " + e.text);
      case SExpr::Kind::List: break;
    }
    if (e.kids.empty()) fail(e, "empty application");
    const SExpr& head = e.kids[0];
    if (head.kind != SExpr::Kind::Symbol) {
      if (head.kind == SExpr::Kind::List && !head.kids.empty() && head.kids[0].is_symbol("_")) {
        throw UnsupportedError("indexed identifier");
      }
      fail(head, "expected an operator");
    }
    const std::string& op = head.text;
    std::span<const SExpr> args(e.kids.begin() + 1, e.kids.end());
    auto need = [&](std::size_t n) {
      if (args.size() < n) fail(e, op + " expects at least " + std::to_string(n) + " arguments");
    };

    if (op == "let") return let(e);
    if (op == "!") {
      need(1);
      return term(args[0]);
    }
    if (op == "+" || op == "*" || op == "-") {
      need(1);
      Polynomial acc = integer(args[0]);
      if (op == "-" && args.size() == 1) return -acc;
      for (std::size_t i = 1; i < args.size(); ++i) {
        Polynomial p = integer(args[i]);
        if (op == "+") acc = acc + p;
        else if (op == "-") acc = acc - p;
        else acc = acc * p;
      }
      return acc;
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      need(2);
      std::vector<Polynomial> ps;
      for (const auto& a : args) ps.push_back(integer(a));
      std::vector<ExprId> parts;
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        const Polynomial& a = ps[i];
        const Polynomial& b = ps[i + 1];
        Literal l = op == "<"    ? store_.atom_literal(a, Relation::LT, b)
                    : op == "<=" ? store_.atom_literal(a, Relation::LEQ, b)
                    : op == ">"  ? store_.atom_literal(b, Relation::LT, a)
                                 : store_.atom_literal(b, Relation::LEQ, a);
        parts.push_back(store_.mk_lit(l));
      }
      return store_.mk_and(std::move(parts));
    }
    if (op == "=" || op == "distinct") {
      need(2);
      std::vector<Value> vs;
      for (const auto& a : args) vs.push_back(term(a));
      bool is_bool = std::holds_alternative<ExprId>(vs[0]);
      for (std::size_t i = 1; i < vs.size(); ++i) {
        check_sort(args[i], vs[i], is_bool ? Sort::Boolean : Sort::Integer);
      }
      std::vector<ExprId> parts;
      auto pair = [&](std::size_t i, std::size_t j) {
        if (is_bool) {
          ExprId a = std::get<ExprId>(vs[i]);
          ExprId b = std::get<ExprId>(vs[j]);
          parts.push_back(op == "=" ? store_.mk_iff(a, b) : store_.mk_xor(a, b));
        } else {
          const auto& a = std::get<Polynomial>(vs[i]);
          const auto& b = std::get<Polynomial>(vs[j]);
          parts.push_back(store_.mk_lit(store_.atom_literal(a, op == "=" ? Relation::EQ : Relation::NEQ, b)));
        }
      };
      if (op == "=") {
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) pair(i, i + 1);
      } else {
        for (std::size_t i = 0; i < vs.size(); ++i) {
          for (std::size_t j = i + 1; j < vs.size(); ++j) pair(i, j);
        }
      }
      return store_.mk_and(std::move(parts));
    }
    if (op == "not") {
      if (args.size() != 1) fail(e, "not expects 1 argument");
      return store_.mk_not(boolean(args[0]));
    }
    if (op == "and" || op == "or") {
      std::vector<ExprId> kids;
      for (const auto& a : args) kids.push_back(boolean(a));
      return op == "and" ? store_.mk_and(std::move(kids)) : store_.mk_or(std::move(kids));
    }
    if (op == "=>") {
      need(2);
      // Right associative.
      ExprId acc = boolean(args.back());
      for (std::size_t i = args.size() - 1; i-- > 0;) acc = store_.mk_implies(boolean(args[i]), acc);
      return acc;
    }
    if (op == "xor") {
      need(2);
      ExprId acc = boolean(args[0]);
      for (std::size_t i = 1; i < args.size(); ++i) acc = store_.mk_xor(acc, boolean(args[i]));
      return acc;
    }
    if (op == "ite") {
      if (args.size() != 3) fail(e, "ite expects 3 arguments");
      ExprId c = boolean(args[0]);
      Value t = term(args[1]);
      Value f = term(args[2]);
      if (std::holds_alternative<ExprId>(t)) {
        check_sort(args[2], f, Sort::Boolean);
        return store_.mk_ite(c, std::get<ExprId>(t), std::get<ExprId>(f));
      }
      check_sort(args[2], f, Sort::Integer);
      return int_ite(c, std::get<Polynomial>(t), std::get<Polynomial>(f));
    }
    if (store_.find_variable(op) || macros_.count(op) != 0) fail(head, op + " is not a function");
    throw UnsupportedError("operator " + op + " is not supported");
  }

  Value let(const SExpr& e) {
    if (e.kids.size() != 3 || e.kids[1].kind != SExpr::Kind::List) fail(e, "malformed let");
    std::map<std::string, Value> scope;
    for (const SExpr& b : e.kids[1].kids) {
      if (b.kind != SExpr::Kind::List || b.kids.size() != 2 || b.kids[0].kind != SExpr::Kind::Symbol) {
        fail(b, "malformed let binding");
      }
      scope.insert_or_assign(b.kids[0].text, term(b.kids[1]));
    }
    scopes_.push_back(std::move(scope));
    Value v = term(e.kids[2]);
    scopes_.pop_back();
    return v;
  }

  Value int_ite(ExprId c, const Polynomial& t, const Polynomial& f) {
    if (c == store_.mk_true()) return t;
    if (c == store_.mk_false()) return f;
    VarId v = store_.fresh_variable("ite!", Sort::Integer, true);
    s_.commands.push_back(Command{Command::Kind::Declare, s_.declarations.size()});
    s_.declarations.push_back(v);
    Polynomial pv = Polynomial::variable(v);
    ExprId then_eq = store_.mk_lit(store_.atom_literal(pv, Relation::EQ, t));
    ExprId else_eq = store_.mk_lit(store_.atom_literal(pv, Relation::EQ, f));
    add_assertion(store_.mk_or({store_.mk_not(c), then_eq}));
    add_assertion(store_.mk_or({c, else_eq}));
    return pv;
  }

  Script& s_;
  TermStore& store_;
  std::map<std::string, Value> macros_;
  std::vector<std::map<std::string, Value>> scopes_;
};

std::string numeral(const Integer& v) { return v < 0 ? "(- " + to_string(abs_value(v)) + ")" : to_string(v); }

}  // namespace

Script parse(std::string_view text) {
  Script s;
  Parser p(s);
  Reader r(text);
  while (auto e = r.next()) p.command(*e);
  return s;
}

std::string print(const Script& s) {
  const TermStore& st = *s.store;
  std::ostringstream os;
  if (s.logic) os << "(set-logic " << *s.logic << ")\n";
  for (const Command& c : s.commands) {
    switch (c.kind) {
      case Command::Kind::Declare: {
        const Variable& v = st.variable(s.declarations[c.index]);
        os << "(declare-fun " << v.name << " () " << (v.sort == Sort::Integer ? "Int" : "Bool") << ")\n";
        break;
      }
      case Command::Kind::Assert: os << "(assert " << st.expr_to_smtlib(s.assertions[c.index]) << ")\n"; break;
      case Command::Kind::CheckSat: os << "(check-sat)\n"; break;
      case Command::Kind::GetModel: os << "(get-model)\n"; break;
      case Command::Kind::Exit: os << "(exit)\n"; break;
    }
  }
  return os.str();
}

std::string format_model(const Script& s, const std::vector<Integer>& model) {
  const TermStore& st = *s.store;
  std::ostringstream os;
  os << "(\n";
  for (VarId v : s.declarations) {
    const Variable& var = st.variable(v);
    if (var.auxiliary) continue;
    os << "  (define-fun " << var.name << " () ";
    if (var.sort == Sort::Boolean) {
      os << "Bool " << (model[v] != 0 ? "true" : "false");
    } else {
      os << "Int " << numeral(model[v]);
    }
    os << ")\n";
  }
  os << ")\n";
  return os.str();
}

std::vector<CheckResult> execute(Script& s, const SolverConfig& config, std::ostream& out) {
  std::vector<CheckResult> results;
  std::size_t asserted = 0;
  for (const Command& c : s.commands) {
    if (c.kind == Command::Kind::Assert) asserted = c.index + 1;
    if (c.kind == Command::Kind::Exit) break;
    if (c.kind == Command::Kind::GetModel) {
      if (results.empty() || results.back().stats.answer != Answer::Sat) {
        out << "(error \"no model available\")\n";
      } else {
        out << format_model(s, results.back().model);
      }
      continue;
    }
    if (c.kind != Command::Kind::CheckSat) continue;
    std::span<const ExprId> active(s.assertions.data(), asserted);
    Formula f = clausify(*s.store, active);
    Solver solver(*s.store, f, config);
    Answer a = solver.check_sat();
    out << answer_name(a) << "\n";
    CheckResult r{solver.stats(), {}};
    if (a == Answer::Sat) r.model = solver.model();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace nia
