// minismt: a small SMT-LIB v2 solver for quantifier-free linear rational
// arithmetic.  Reads a script on stdin (or from a file argument), answers
// (check-sat) with sat/unsat/unknown and serves (get-model) after a sat
// verdict.  Decision procedure: negation normal form, DNF enumeration,
// exact Fourier-Motzkin feasibility per cube with strictness tracking.
//
// The solver is deliberately independent of the sympar core library so the
// two implementations can be used as oracles for each other.  Nonlinear
// atoms (variable products, division by a variable, sin/cos) parse fine but
// are never decided: a cube containing one is unsat only if its linear part
// already is, and never sat.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ScriptError {
  std::string msg;
};

[[noreturn]] void fail(const std::string& msg) { throw ScriptError{msg}; }

// ---------------------------------------------------------------------------
// S-expressions.

struct Sexp {
  bool atom = false;
  std::string text;          // atoms only
  std::vector<Sexp> items;   // lists only
};

class Reader {
 public:
  explicit Reader(std::string src) : src_(std::move(src)) {}

  // Reads the next toplevel s-expression; false at end of input.
  bool next(Sexp& out) {
    skip();
    if (pos_ >= src_.size()) return false;
    out = parse();
    return true;
  }

 private:
  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Sexp parse() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp list;
      for (;;) {
        skip();
        if (pos_ >= src_.size()) fail("unbalanced '('");
        if (src_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(parse());
      }
    }
    if (c == ')') fail("unbalanced ')'");
    if (c == '"') {
      std::size_t j = pos_ + 1;
      while (j < src_.size() && src_[j] != '"') ++j;
      if (j >= src_.size()) fail("unterminated string literal");
      Sexp s;
      s.atom = true;
      s.text = src_.substr(pos_, j + 1 - pos_);
      pos_ = j + 1;
      return s;
    }
    if (c == '|') {
      std::size_t j = pos_ + 1;
      while (j < src_.size() && src_[j] != '|') ++j;
      if (j >= src_.size()) fail("unterminated quoted symbol");
      Sexp s;
      s.atom = true;
      s.text = src_.substr(pos_ + 1, j - pos_ - 1);
      pos_ = j + 1;
      return s;
    }
    std::size_t j = pos_;
    while (j < src_.size() && !std::isspace(static_cast<unsigned char>(src_[j])) &&
           src_[j] != '(' && src_[j] != ')' && src_[j] != ';')
      ++j;
    Sexp s;
    s.atom = true;
    s.text = src_.substr(pos_, j - pos_);
    pos_ = j;
    return s;
  }

  std::string src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Linear expressions over declared variables.

struct Lin {
  std::map<std::string, Rat> coef;  // zero coefficients are never stored
  Rat c;

  void add_coef(const std::string& v, const Rat& k) {
    if (k == 0) return;
    auto it = coef.find(v);
    if (it == coef.end()) {
      coef.emplace(v, k);
    } else {
      it->second += k;
      if (it->second == 0) coef.erase(it);
    }
  }
  void add(const Lin& o) {
    for (const auto& [v, k] : o.coef) add_coef(v, k);
    c += o.c;
  }
  void sub(const Lin& o) {
    for (const auto& [v, k] : o.coef) add_coef(v, Rat(-k));
    c -= o.c;
  }
  void scale(const Rat& k) {
    if (k == 0) {
      coef.clear();
      c = 0;
      return;
    }
    for (auto& [v, kk] : coef) kk *= k;
    c *= k;
  }
  bool is_const() const { return coef.empty(); }
};

Lin lin_const(const Rat& r) {
  Lin l;
  l.c = r;
  return l;
}

// SMT-LIB numerals and decimals; accepts a leading '-' for robustness.
std::optional<Rat> parse_numeral(const std::string& t) {
  std::size_t i = 0;
  bool neg = false;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) {
    neg = t[i] == '-';
    ++i;
  }
  if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i])))
    return std::nullopt;
  Int whole = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
    whole = whole * 10 + (t[i] - '0');
    ++i;
  }
  Rat value(whole);
  if (i < t.size() && t[i] == '.') {
    ++i;
    Int num = 0, den = 1;
    if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i])))
      return std::nullopt;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      num = num * 10 + (t[i] - '0');
      den *= 10;
      ++i;
    }
    value += Rat(num, den);
  } else if (i < t.size() && t[i] == '/') {
    // Not SMT-LIB syntax, but harmless to accept.
    ++i;
    Int den = 0;
    if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i])))
      return std::nullopt;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      den = den * 10 + (t[i] - '0');
      ++i;
    }
    if (den == 0) return std::nullopt;
    value = Rat(whole, den);
  }
  if (i != t.size()) return std::nullopt;
  return neg ? Rat(-value) : value;
}

// ---------------------------------------------------------------------------
// Formulas in terms of linear atoms.  A nonlinear atom keeps no payload;
// its truth value is simply never known.

struct Node {
  enum class Kind { True, False, Lt, Le, Eq, Nonlin, Not, And, Or };
  Kind kind = Kind::True;
  Lin e;  // Lt: e < 0, Le: e <= 0, Eq: e = 0
  std::vector<Node> kids;
};

Node mk(Node::Kind k) {
  Node n;
  n.kind = k;
  return n;
}

Node mk_atom(Node::Kind k, Lin e) {
  // Constant fold so trivially decided atoms never reach the search.
  if (e.is_const()) {
    bool holds = k == Node::Kind::Lt   ? e.c < 0
                 : k == Node::Kind::Le ? e.c <= 0
                                       : e.c == 0;
    return mk(holds ? Node::Kind::True : Node::Kind::False);
  }
  Node n;
  n.kind = k;
  n.e = std::move(e);
  return n;
}

class Context {
 public:
  void declare(const std::string& name) {
    if (!vars_.insert(name).second) fail("duplicate declaration of " + name);
    order_.push_back(name);
  }
  bool declared(const std::string& name) const { return vars_.count(name) > 0; }
  const std::vector<std::string>& order() const { return order_; }

 private:
  std::set<std::string> vars_;
  std::vector<std::string> order_;
};

// Term -> linear expression; nullopt marks a nonlinear subterm.
std::optional<Lin> to_lin(const Sexp& s, const Context& ctx) {
  if (s.atom) {
    if (auto r = parse_numeral(s.text)) return lin_const(*r);
    if (ctx.declared(s.text)) {
      Lin l;
      l.add_coef(s.text, Rat(1));
      return l;
    }
    fail("unknown symbol '" + s.text + "'");
  }
  if (s.items.empty() || !s.items[0].atom) fail("malformed term");
  const std::string& op = s.items[0].text;
  const std::size_t n = s.items.size() - 1;
  if (op == "+" || op == "-" || op == "*" || op == "/") {
    if (n == 0) fail("operator '" + op + "' needs arguments");
    if (op == "-" && n == 1) {
      auto a = to_lin(s.items[1], ctx);
      if (!a) return std::nullopt;
      a->scale(Rat(-1));
      return a;
    }
    auto acc = to_lin(s.items[1], ctx);
    for (std::size_t i = 2; i <= n; ++i) {
      auto b = to_lin(s.items[i], ctx);
      if (!acc || !b) {
        acc = std::nullopt;
        continue;  // keep walking so unknown symbols still error out
      }
      if (op == "+") {
        acc->add(*b);
      } else if (op == "-") {
        acc->sub(*b);
      } else if (op == "*") {
        if (b->is_const()) {
          acc->scale(b->c);
        } else if (acc->is_const()) {
          Rat k = acc->c;
          acc = *b;
          acc->scale(k);
        } else {
          acc = std::nullopt;
        }
      } else {  // "/"
        if (!b->is_const() || b->c == 0) {
          acc = std::nullopt;  // variable or zero divisor: not linear
        } else {
          acc->scale(Rat(1) / b->c);
        }
      }
    }
    return acc;
  }
  if (op == "cos" || op == "sin") {
    if (n != 1) fail("'" + op + "' takes one argument");
    to_lin(s.items[1], ctx);  // validate symbols inside
    return std::nullopt;
  }
  fail("unsupported term operator '" + op + "'");
}

Node parse_relation(const std::string& op, const Sexp& s, const Context& ctx) {
  if (s.items.size() < 3) fail("relation '" + op + "' needs two arguments");
  // SMT-LIB chains: (< a b c) means a<b and b<c.
  Node conj = mk(Node::Kind::And);
  for (std::size_t i = 1; i + 1 < s.items.size(); ++i) {
    auto a = to_lin(s.items[i], ctx);
    auto b = to_lin(s.items[i + 1], ctx);
    if (!a || !b) {
      conj.kids.push_back(mk(Node::Kind::Nonlin));
      continue;
    }
    Lin d = *a;
    d.sub(*b);  // a - b
    if (op == "<") {
      conj.kids.push_back(mk_atom(Node::Kind::Lt, std::move(d)));
    } else if (op == "<=") {
      conj.kids.push_back(mk_atom(Node::Kind::Le, std::move(d)));
    } else if (op == ">") {
      d.scale(Rat(-1));
      conj.kids.push_back(mk_atom(Node::Kind::Lt, std::move(d)));
    } else if (op == ">=") {
      d.scale(Rat(-1));
      conj.kids.push_back(mk_atom(Node::Kind::Le, std::move(d)));
    } else {  // "="
      conj.kids.push_back(mk_atom(Node::Kind::Eq, std::move(d)));
    }
  }
  if (conj.kids.size() == 1) return std::move(conj.kids[0]);
  return conj;
}

Node parse_formula(const Sexp& s, const Context& ctx) {
  if (s.atom) {
    if (s.text == "true") return mk(Node::Kind::True);
    if (s.text == "false") return mk(Node::Kind::False);
    fail("expected a formula, got '" + s.text + "'");
  }
  if (s.items.empty() || !s.items[0].atom) fail("malformed formula");
  const std::string& op = s.items[0].text;
  if (op == "not") {
    if (s.items.size() != 2) fail("'not' takes one argument");
    Node n = mk(Node::Kind::Not);
    n.kids.push_back(parse_formula(s.items[1], ctx));
    return n;
  }
  if (op == "and" || op == "or") {
    Node n = mk(op == "and" ? Node::Kind::And : Node::Kind::Or);
    for (std::size_t i = 1; i < s.items.size(); ++i)
      n.kids.push_back(parse_formula(s.items[i], ctx));
    if (n.kids.empty()) return mk(op == "and" ? Node::Kind::True : Node::Kind::False);
    if (n.kids.size() == 1) return std::move(n.kids[0]);
    return n;
  }
  if (op == "=>") {
    if (s.items.size() < 3) fail("'=>' needs two arguments");
    // Right associative: (=> a b c) = (or (not a) (not b) c).
    Node n = mk(Node::Kind::Or);
    for (std::size_t i = 1; i + 1 < s.items.size(); ++i) {
      Node neg = mk(Node::Kind::Not);
      neg.kids.push_back(parse_formula(s.items[i], ctx));
      n.kids.push_back(std::move(neg));
    }
    n.kids.push_back(parse_formula(s.items.back(), ctx));
    return n;
  }
  if (op == "<" || op == "<=" || op == ">" || op == ">=" || op == "=")
    return parse_relation(op, s, ctx);
  fail("unsupported formula operator '" + op + "'");
}

// Negation normal form.  Negated nonlinear atoms stay nonlinear.
Node nnf(const Node& n, bool neg) {
  switch (n.kind) {
    case Node::Kind::True:
      return mk(neg ? Node::Kind::False : Node::Kind::True);
    case Node::Kind::False:
      return mk(neg ? Node::Kind::True : Node::Kind::False);
    case Node::Kind::Nonlin:
      return mk(Node::Kind::Nonlin);
    case Node::Kind::Lt: {
      if (!neg) return n;
      Lin e = n.e;
      e.scale(Rat(-1));
      return mk_atom(Node::Kind::Le, std::move(e));  // not(e<0) is -e<=0
    }
    case Node::Kind::Le: {
      if (!neg) return n;
      Lin e = n.e;
      e.scale(Rat(-1));
      return mk_atom(Node::Kind::Lt, std::move(e));  // not(e<=0) is -e<0
    }
    case Node::Kind::Eq: {
      if (!neg) return n;
      Node d = mk(Node::Kind::Or);
      Lin pos = n.e, negl = n.e;
      negl.scale(Rat(-1));
      d.kids.push_back(mk_atom(Node::Kind::Lt, std::move(pos)));
      d.kids.push_back(mk_atom(Node::Kind::Lt, std::move(negl)));
      return d;
    }
    case Node::Kind::Not:
      return nnf(n.kids[0], !neg);
    case Node::Kind::And:
    case Node::Kind::Or: {
      bool now_and = (n.kind == Node::Kind::And) != neg;
      Node out = mk(now_and ? Node::Kind::And : Node::Kind::Or);
      for (const auto& k : n.kids) out.kids.push_back(nnf(k, neg));
      return out;
    }
  }
  fail("corrupt formula node");
}

// ---------------------------------------------------------------------------
// Feasibility for one cube: Gaussian substitution of equalities, then
// Fourier-Motzkin on the inequalities with parallel-row subsumption and a
// min-product elimination order.

struct Constraint {
  enum class Op { Le, Lt, Eq };
  Lin e;
  Op op = Op::Le;  // e <= 0, e < 0, or e = 0
};

struct Bound {
  Lin e;
  bool strict = false;  // e < 0 if strict, else e <= 0
};

constexpr std::size_t kRowCap = 100000;

// Canonical key for the coefficient direction of a row: coefficients scaled
// so the lexicographically first one is +-1.  Rows sharing a key are
// parallel, and only the tightest survives.
std::string direction_key(const Lin& e, Rat& scale_out) {
  const Rat& lead = e.coef.begin()->second;
  scale_out = Rat(1) / (lead < 0 ? Rat(-lead) : lead);
  std::string key;
  for (const auto& [v, k] : e.coef) {
    Rat s = k * scale_out;
    key += v;
    key += ':';
    key += boost::multiprecision::numerator(s).str();
    key += '/';
    key += boost::multiprecision::denominator(s).str();
    key += ';';
  }
  return key;
}

// Working set of inequality rows with subsumption built in.  Returns false
// from insert when a constant row is violated.
class RowSet {
 public:
  bool insert(Bound b) {
    if (b.e.is_const())
      return b.strict ? b.e.c < 0 : b.e.c <= 0;
    Rat scale;
    std::string key = direction_key(b.e, scale);
    Lin scaled = b.e;
    scaled.scale(scale);
    auto it = rows_.find(key);
    if (it == rows_.end()) {
      rows_.emplace(std::move(key), Bound{std::move(scaled), b.strict});
      return true;
    }
    // Same direction: larger constant is the tighter constraint.
    if (scaled.c > it->second.e.c) {
      it->second = Bound{std::move(scaled), b.strict};
    } else if (scaled.c == it->second.e.c) {
      it->second.strict = it->second.strict || b.strict;
    }
    return true;
  }
  std::vector<Bound> take() {
    std::vector<Bound> out;
    out.reserve(rows_.size());
    for (auto& [k, b] : rows_) out.push_back(std::move(b));
    rows_.clear();
    return out;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::map<std::string, Bound> rows_;
};

// Decides the conjunction; fills model on success.  Returns false when
// infeasible.  Throws ScriptError{"capacity"} when FM explodes anyway.
bool feasible(const std::vector<Constraint>& cube,
              const std::vector<std::string>& all_vars,
              std::map<std::string, Rat>& model) {
  struct Step {
    std::string var;
    bool subst = false;
    Lin expr;                        // subst: var = expr over later vars
    std::vector<Bound> lower, upper;  // FM: bounds on var over later vars
  };
  std::vector<Step> trail;

  std::vector<Lin> eqs;
  RowSet set;
  for (const auto& r : cube) {
    if (r.op == Constraint::Op::Eq) {
      if (r.e.is_const()) {
        if (r.e.c != 0) return false;
      } else {
        eqs.push_back(r.e);
      }
    } else if (!set.insert({r.e, r.op == Constraint::Op::Lt})) {
      return false;
    }
  }
  std::vector<Bound> ineqs = set.take();

  // Equalities eliminate a variable each, no row growth.
  while (!eqs.empty()) {
    Lin eq = std::move(eqs.front());
    eqs.erase(eqs.begin());
    if (eq.is_const()) {
      if (eq.c != 0) return false;
      continue;
    }
    const std::string x = eq.coef.begin()->first;
    Rat k = eq.coef.begin()->second;
    Lin expr = eq;  // x = -(eq - k*x)/k
    expr.coef.erase(x);
    expr.scale(Rat(-1) / k);
    auto substitute = [&](Lin& l) {
      auto it = l.coef.find(x);
      if (it == l.coef.end()) return;
      Rat q = it->second;
      l.coef.erase(it);
      Lin add = expr;
      add.scale(q);
      l.add(add);
    };
    for (auto& e : eqs) substitute(e);
    RowSet next;
    for (auto& b : ineqs) {
      substitute(b.e);
      if (!next.insert(std::move(b))) return false;
    }
    ineqs = next.take();
    trail.push_back({x, true, std::move(expr), {}, {}});
  }

  // FM elimination, smallest lower*upper product first.
  for (;;) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& b : ineqs)
      for (const auto& [v, k] : b.e.coef) {
        auto& c = counts[v];
        (k > 0 ? c.second : c.first) += 1;  // k>0 gives an upper bound
      }
    if (counts.empty()) break;
    std::string x;
    std::size_t best = 0;
    for (const auto& [v, c] : counts) {
      std::size_t prod = c.first * c.second;
      if (x.empty() || prod < best) {
        x = v;
        best = prod;
      }
    }
    Step step;
    step.var = x;
    RowSet next;
    for (auto& b : ineqs) {
      auto it = b.e.coef.find(x);
      if (it == b.e.coef.end()) {
        if (!next.insert(std::move(b))) return false;
        continue;
      }
      Rat a = it->second;
      Lin bound = b.e;
      bound.coef.erase(x);
      bound.scale(Rat(-1) / a);  // a*x + rest {<,<=} 0  ->  bound on x
      if (a > 0) {
        step.upper.push_back({std::move(bound), b.strict});
      } else {
        step.lower.push_back({std::move(bound), b.strict});
      }
    }
    if (step.lower.size() * step.upper.size() + next.size() > kRowCap)
      fail("capacity");
    // lo {<,<=} x {<,<=} hi pairs collapse to lo - hi {<,<=} 0.
    for (const auto& lo : step.lower) {
      for (const auto& hi : step.upper) {
        Bound c;
        c.e = lo.e;
        c.e.sub(hi.e);
        c.strict = lo.strict || hi.strict;
        if (!next.insert(std::move(c))) return false;
      }
    }
    if (next.size() > kRowCap) fail("capacity");
    ineqs = next.take();
    trail.push_back(std::move(step));
  }

  // Back-substitute, last step first.  A Lin mentions vars eliminated later
  // (already assigned) or vars eliminated never; the latter are free and
  // pinned to 0 on first use.
  model.clear();
  auto eval = [&](const Lin& l) {
    Rat v = l.c;
    for (const auto& [var, k] : l.coef)
      v += k * model.emplace(var, Rat(0)).first->second;
    return v;
  };
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    if (it->subst) {
      model[it->var] = eval(it->expr);
      continue;
    }
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rat lo, hi;
    for (const auto& b : it->lower) {
      Rat v = eval(b.e);
      if (!has_lo || v > lo) {
        lo = v;
        lo_strict = b.strict;
      } else if (v == lo) {
        lo_strict = lo_strict || b.strict;
      }
      has_lo = true;
    }
    for (const auto& b : it->upper) {
      Rat v = eval(b.e);
      if (!has_hi || v < hi) {
        hi = v;
        hi_strict = b.strict;
      } else if (v == hi) {
        hi_strict = hi_strict || b.strict;
      }
      has_hi = true;
    }
    Rat chosen;
    if (has_lo && has_hi) {
      chosen = lo == hi ? lo : Rat((lo + hi) / 2);
    } else if (has_lo) {
      chosen = lo_strict ? Rat(lo + 1) : lo;
    } else if (has_hi) {
      chosen = hi_strict ? Rat(hi - 1) : hi;
    } else {
      chosen = 0;
    }
    model[it->var] = chosen;
  }
  for (const auto& v : all_vars)
    if (!model.count(v)) model[v] = 0;
  return true;
}

// ---------------------------------------------------------------------------
// DNF enumeration with early exit.

enum class Verdict { Sat, Unsat, Unknown };

constexpr std::size_t kCubeCap = 1u << 20;

struct Search {
  const std::vector<std::string>& vars;
  std::size_t cubes = 0;
  bool saw_unknown = false;
  std::map<std::string, Rat> model = {};

  // Walks the NNF tree depth first, true branch order, accumulating one
  // cube at a time in cons.  Returns true once a satisfying cube is found.
  bool advance(std::vector<Constraint>& cons, std::size_t nonlin,
               std::vector<const Node*> pending) {
    while (!pending.empty()) {
      const Node* n = pending.back();
      pending.pop_back();
      switch (n->kind) {
        case Node::Kind::True:
          continue;
        case Node::Kind::False:
          ++cubes;
          return false;
        case Node::Kind::Nonlin:
          ++nonlin;
          continue;
        case Node::Kind::Lt:
        case Node::Kind::Le:
        case Node::Kind::Eq: {
          Constraint::Op op = n->kind == Node::Kind::Lt   ? Constraint::Op::Lt
                              : n->kind == Node::Kind::Le ? Constraint::Op::Le
                                                          : Constraint::Op::Eq;
          cons.push_back({n->e, op});
          bool r = advance(cons, nonlin, pending);
          cons.pop_back();
          return r;
        }
        case Node::Kind::And: {
          for (auto it = n->kids.rbegin(); it != n->kids.rend(); ++it)
            pending.push_back(&*it);
          continue;
        }
        case Node::Kind::Or: {
          for (const auto& k : n->kids) {
            std::vector<const Node*> branch = pending;
            branch.push_back(&k);
            if (advance(cons, nonlin, branch)) return true;
          }
          return false;
        }
        case Node::Kind::Not:
          fail("internal: Not after nnf");
      }
    }
    // Complete cube.
    if (++cubes > kCubeCap) fail("capacity");
    std::map<std::string, Rat> m;
    bool ok;
    try {
      ok = feasible(cons, vars, m);
    } catch (const ScriptError&) {
      saw_unknown = true;
      return false;
    }
    if (!ok) return false;
    if (nonlin > 0) {
      saw_unknown = true;  // linear part feasible, nonlinear part undecided
      return false;
    }
    model = std::move(m);
    return true;
  }
};

Verdict solve(const std::vector<Node>& assertions,
              const std::vector<std::string>& vars,
              std::map<std::string, Rat>& model) {
  Node root = mk(Node::Kind::And);
  for (const auto& a : assertions) root.kids.push_back(nnf(a, false));
  Search s{vars};
  std::vector<Constraint> cons;
  std::vector<const Node*> pending;
  pending.push_back(&root);
  bool sat;
  try {
    sat = s.advance(cons, 0, pending);
  } catch (const ScriptError&) {
    return Verdict::Unknown;
  }
  if (sat) {
    model = std::move(s.model);
    return Verdict::Sat;
  }
  return s.saw_unknown ? Verdict::Unknown : Verdict::Unsat;
}

// ---------------------------------------------------------------------------
// Model printing, in the syntax solvers conventionally use for Real values.

void print_value(std::ostream& os, const Rat& r) {
  if (r < 0) {
    os << "(- ";
    print_value(os, Rat(-r));
    os << ")";
    return;
  }
  Int n = boost::multiprecision::numerator(r);
  Int d = boost::multiprecision::denominator(r);
  if (d == 1) {
    os << n.str() << ".0";
  } else {
    os << "(/ " << n.str() << ".0 " << d.str() << ".0)";
  }
}

// ---------------------------------------------------------------------------
// Command loop.

int run(const std::string& input) {
  Reader rd(input);
  Context ctx;
  std::vector<Node> assertions;
  bool checked = false;
  Verdict last = Verdict::Unknown;
  std::map<std::string, Rat> model;
  Sexp cmd;
  while (true) {
    try {
      if (!rd.next(cmd)) break;
    } catch (const ScriptError& e) {
      std::cout << "(error \"" << e.msg << "\")" << std::endl;
      return 1;
    }
    if (cmd.atom || cmd.items.empty() || !cmd.items[0].atom) {
      std::cout << "(error \"malformed command\")" << std::endl;
      return 1;
    }
    const std::string& op = cmd.items[0].text;
    try {
      if (op == "set-option" || op == "set-logic" || op == "set-info") {
        // Every logic is answered with the same procedure; nonlinear atoms
        // just end in unknown.
      } else if (op == "declare-const" || op == "declare-fun") {
        std::size_t sort_at = op == "declare-const" ? 2 : 3;
        if (cmd.items.size() != sort_at + 1 || !cmd.items[1].atom)
          fail("malformed " + op);
        if (op == "declare-fun" &&
            (cmd.items[2].atom || !cmd.items[2].items.empty()))
          fail("only zero-ary functions are supported");
        if (!cmd.items[sort_at].atom || cmd.items[sort_at].text != "Real")
          fail("unsupported sort");  // Int would need an integrality check
        ctx.declare(cmd.items[1].text);
      } else if (op == "assert") {
        if (cmd.items.size() != 2) fail("'assert' takes one argument");
        assertions.push_back(parse_formula(cmd.items[1], ctx));
      } else if (op == "check-sat") {
        last = solve(assertions, ctx.order(), model);
        checked = true;
        std::cout << (last == Verdict::Sat     ? "sat"
                      : last == Verdict::Unsat ? "unsat"
                                               : "unknown")
                  << std::endl;
      } else if (op == "get-model") {
        if (!checked || last != Verdict::Sat) {
          std::cout << "(error \"model is not available\")" << std::endl;
        } else {
          std::cout << "(model\n";
          for (const auto& v : ctx.order()) {
            std::cout << "  (define-fun " << v << " () Real ";
            auto it = model.find(v);
            print_value(std::cout, it == model.end() ? Rat(0) : it->second);
            std::cout << ")\n";
          }
          std::cout << ")" << std::endl;
        }
      } else if (op == "exit") {
        break;
      } else if (op == "reset") {
        ctx = Context{};
        assertions.clear();
        checked = false;
        model.clear();
      } else {
        fail("unsupported command '" + op + "'");
      }
    } catch (const ScriptError& e) {
      std::cout << "(error \"" << e.msg << "\")" << std::endl;
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::string path;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--help" || a == "-h") {
      std::cout << "usage: minismt [file.smt2]\n"
                   "Reads an SMT-LIB v2 script (stdin when no file is given)\n"
                   "and decides quantifier-free linear rational arithmetic.\n"
                   "Options: --seed N (accepted for interface compatibility;\n"
                   "the solver is deterministic).\n";
      return 0;
    }
    if (a == "--seed") {
      ++i;  // deterministic solver; value intentionally unused
      continue;
    }
    if (!path.empty()) {
      std::cerr << "minismt: more than one input file\n";
      return 2;
    }
    path = a;
  }
  std::string input;
  if (path.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    input = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) {
      std::cerr << "minismt: cannot open " << path << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    input = ss.str();
  }
  return run(input);
}
