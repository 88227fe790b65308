#include "support.h"

#include <sstream>

namespace nia_test {

long long RefPoly::eval(const std::vector<long>& ints) const {
  long long sum = 0;
  for (const Mono& m : monos) {
    long long t = m.coeff;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      for (unsigned k = 0; k < m.exps[i]; ++k) t *= ints[i];
    }
    sum += t;
  }
  return sum;
}

std::string RefPoly::smtlib() const {
  auto num = [](long v) { return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v); };
  if (monos.empty()) return "0";
  std::vector<std::string> parts;
  for (const Mono& m : monos) {
    std::vector<std::string> factors{num(m.coeff)};
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      for (unsigned k = 0; k < m.exps[i]; ++k) factors.push_back("x" + std::to_string(i));
    }
    if (factors.size() == 1) {
      parts.push_back(factors[0]);
    } else {
      std::string s = "(*";
      for (auto& f : factors) s += " " + f;
      parts.push_back(s + ")");
    }
  }
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (auto& p : parts) s += " " + p;
  return s + ")";
}

bool RefFormula::eval_node(int n, const std::vector<long>& v) const {
  const RefNode& node = nodes[n];
  switch (node.kind) {
    case RefNode::Atom: {
      long long a = node.lhs.eval(v), b = node.rhs.eval(v);
      if (node.rel == "=") return a == b;
      if (node.rel == "distinct") return a != b;
      if (node.rel == "<=") return a <= b;
      if (node.rel == "<") return a < b;
      if (node.rel == ">=") return a >= b;
      return a > b;
    }
    case RefNode::BoolVar: return v[n_int + node.var] != 0;
    case RefNode::Not: return !eval_node(node.kids[0], v);
    case RefNode::And:
      for (int k : node.kids) {
        if (!eval_node(k, v)) return false;
      }
      return true;
    case RefNode::Or:
      for (int k : node.kids) {
        if (eval_node(k, v)) return true;
      }
      return false;
    case RefNode::Ite: return eval_node(node.kids[0], v) ? eval_node(node.kids[1], v) : eval_node(node.kids[2], v);
  }
  return false;
}

bool RefFormula::eval(const std::vector<long>& values) const {
  for (int a : asserts) {
    if (!eval_node(a, values)) return false;
  }
  return true;
}

namespace {

std::string node_smtlib(const RefFormula& f, int n) {
  const RefNode& node = f.nodes[n];
  switch (node.kind) {
    case RefNode::Atom: return "(" + node.rel + " " + node.lhs.smtlib() + " " + node.rhs.smtlib() + ")";
    case RefNode::BoolVar: return "b" + std::to_string(node.var);
    default: break;
  }
  static const char* names[] = {"", "", "not", "and", "or", "ite"};
  std::string s = std::string("(") + names[node.kind];
  for (int k : node.kids) s += " " + node_smtlib(f, k);
  return s + ")";
}

}  // namespace

std::string RefFormula::smtlib(bool with_check_sat) const {
  std::ostringstream os;
  os << "(set-logic QF_NIA)\n";
  for (int i = 0; i < n_int; ++i) os << "(declare-fun x" << i << " () Int)\n";
  for (int i = 0; i < n_bool; ++i) os << "(declare-fun b" << i << " () Bool)\n";
  for (int a : asserts) os << "(assert " << node_smtlib(*this, a) << ")\n";
  if (with_check_sat) os << "(check-sat)\n";
  return os.str();
}

namespace {

struct Gen {
  std::mt19937_64& rng;
  const GenParams& p;
  RefFormula& f;

  int uniform(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  bool coin(double prob = 0.5) { return std::bernoulli_distribution(prob)(rng); }

  int add(RefNode n) {
    f.nodes.push_back(std::move(n));
    return static_cast<int>(f.nodes.size() - 1);
  }

  RefPoly poly(bool allow_const_only) {
    RefPoly r;
    int n = uniform(allow_const_only ? 0 : 1, 3);
    for (int i = 0; i < n; ++i) {
      RefPoly::Mono m{0, std::vector<unsigned>(f.n_int, 0)};
      while (m.coeff == 0) m.coeff = uniform(-p.max_coeff, p.max_coeff);
      int deg = uniform(i == 0 ? 1 : 0, p.max_degree);
      for (int d = 0; d < deg; ++d) ++m.exps[uniform(0, f.n_int - 1)];
      r.monos.push_back(std::move(m));
    }
    return r;
  }

  int atom() {
    static const char* rels[] = {"=", "distinct", "<=", "<", ">=", ">"};
    RefNode n{RefNode::Atom, poly(false), {}, rels[uniform(0, 5)], 0, {}};
    n.rhs.monos.push_back({uniform(-p.max_coeff * 2, p.max_coeff * 2), std::vector<unsigned>(f.n_int, 0)});
    if (coin(0.3)) n.rhs = poly(true);
    return add(std::move(n));
  }

  int literal() {
    int base = (f.n_bool > 0 && coin(0.3)) ? add(RefNode{RefNode::BoolVar, {}, {}, "", uniform(0, f.n_bool - 1), {}})
                                           : atom();
    return coin(0.3) ? add(RefNode{RefNode::Not, {}, {}, "", 0, {base}}) : base;
  }

  int structure(int depth) {
    if (depth == 0 || coin(0.4)) return literal();
    switch (uniform(0, 3)) {
      case 0: return add(RefNode{RefNode::Not, {}, {}, "", 0, {structure(depth - 1)}});
      case 1: return add(RefNode{RefNode::And, {}, {}, "", 0, {structure(depth - 1), structure(depth - 1)}});
      case 2: return add(RefNode{RefNode::Or, {}, {}, "", 0, {structure(depth - 1), structure(depth - 1)}});
      default: {
        int c = structure(depth - 1), t = structure(depth - 1), e = structure(depth - 1);
        return add(RefNode{RefNode::Ite, {}, {}, "", 0, {c, t, e}});
      }
    }
  }

  int clause() {
    int width = uniform(1, 3);
    std::vector<int> kids;
    for (int i = 0; i < width; ++i) kids.push_back(p.cnf_only ? literal() : structure(2));
    if (kids.size() == 1) return kids[0];
    return add(RefNode{RefNode::Or, {}, {}, "", 0, kids});
  }

  int bound(int var, bool upper) {
    RefPoly x;
    x.monos.push_back({1, std::vector<unsigned>(f.n_int, 0)});
    x.monos[0].exps[var] = 1;
    RefPoly c;
    c.monos.push_back({upper ? p.hi : p.lo, std::vector<unsigned>(f.n_int, 0)});
    return add(RefNode{RefNode::Atom, x, c, upper ? "<=" : ">=", 0, {}});
  }
};

}  // namespace

RefFormula random_formula(std::mt19937_64& rng, const GenParams& p) {
  RefFormula f;
  Gen g{rng, p, f};
  f.n_int = g.uniform(p.min_ints, p.max_ints);
  f.n_bool = g.uniform(p.min_bools, p.max_bools);
  f.lo = p.lo;
  f.hi = p.hi;
  if (p.boxed) {
    for (int i = 0; i < f.n_int; ++i) {
      f.asserts.push_back(g.bound(i, false));
      f.asserts.push_back(g.bound(i, true));
    }
  }
  int n = g.uniform(1, p.max_clauses);
  for (int i = 0; i < n; ++i) f.asserts.push_back(g.clause());
  return f;
}

void enumerate(int n_int, int n_bool, long lo, long hi, const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<long> v(n_int + n_bool);
  for (int i = 0; i < n_int; ++i) v[i] = lo;
  for (;;) {
    if (!f(v)) return;
    int i = n_int + n_bool - 1;
    for (; i >= 0; --i) {
      long top = i < n_int ? hi : 1;
      long bottom = i < n_int ? lo : 0;
      if (v[i] < top) {
        ++v[i];
        break;
      }
      v[i] = bottom;
    }
    if (i < 0) return;
  }
}

std::size_t count_models(const RefFormula& f, std::size_t limit) {
  std::size_t n = 0;
  enumerate(f.n_int, f.n_bool, f.lo, f.hi, [&](const std::vector<long>& v) {
    if (f.eval(v)) ++n;
    return n < limit;
  });
  return n;
}

}  // namespace nia_test
