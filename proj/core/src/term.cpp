#include "sympar/term.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "sympar/error.hpp"

namespace sympar {

namespace {

TermPtr make(TermOp op, Rational value, std::string var, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->value = std::move(value);
  t->var = std::move(var);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

}  // namespace

TermPtr t_const(Rational v) {
  return make(TermOp::Constant, std::move(v), {}, nullptr, nullptr);
}

TermPtr t_var(std::string name) {
  return make(TermOp::Variable, 0, std::move(name), nullptr, nullptr);
}

TermPtr t_add(TermPtr a, TermPtr b) {
  if (a->is_const() && b->is_const()) return t_const(a->value + b->value);
  if (a->is_const(0)) return b;
  if (b->is_const(0)) return a;
  return make(TermOp::Add, 0, {}, std::move(a), std::move(b));
}

TermPtr t_sub(TermPtr a, TermPtr b) {
  if (a->is_const() && b->is_const()) return t_const(a->value - b->value);
  if (b->is_const(0)) return a;
  if (a->is_const(0)) return t_neg(std::move(b));
  return make(TermOp::Sub, 0, {}, std::move(a), std::move(b));
}

TermPtr t_mul(TermPtr a, TermPtr b) {
  if (a->is_const() && b->is_const()) return t_const(a->value * b->value);
  if (a->is_const(0) || b->is_const(0)) return t_const(0);
  if (a->is_const(1)) return b;
  if (b->is_const(1)) return a;
  return make(TermOp::Mul, 0, {}, std::move(a), std::move(b));
}

TermPtr t_div(TermPtr a, TermPtr b) {
  if (b->is_const()) {
    if (b->value == 0) throw EvalError("division by zero");
    if (a->is_const()) return t_const(a->value / b->value);
    if (b->value == 1) return a;
  }
  return make(TermOp::Div, 0, {}, std::move(a), std::move(b));
}

TermPtr t_neg(TermPtr a) {
  if (a->is_const()) return t_const(-a->value);
  if (a->op == TermOp::Neg) return a->a;
  return make(TermOp::Neg, 0, {}, std::move(a), nullptr);
}

TermPtr t_cos(TermPtr a) {
  if (a->is_const(0)) return t_const(1);
  return make(TermOp::Cos, 0, {}, std::move(a), nullptr);
}

TermPtr t_sin(TermPtr a) {
  if (a->is_const(0)) return t_const(0);
  return make(TermOp::Sin, 0, {}, std::move(a), nullptr);
}

std::string sample_var_name(int k) { return "y" + std::to_string(k); }

bool is_sample_var_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'y') return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return false;
  return true;
}

TermPtr subst_term(const TermPtr& t,
                   const std::map<std::string, TermPtr>& map) {
  switch (t->op) {
    case TermOp::Constant:
      return t;
    case TermOp::Variable: {
      auto it = map.find(t->var);
      return it == map.end() ? t : it->second;
    }
    case TermOp::Add:
      return t_add(subst_term(t->a, map), subst_term(t->b, map));
    case TermOp::Sub:
      return t_sub(subst_term(t->a, map), subst_term(t->b, map));
    case TermOp::Mul:
      return t_mul(subst_term(t->a, map), subst_term(t->b, map));
    case TermOp::Div:
      return t_div(subst_term(t->a, map), subst_term(t->b, map));
    case TermOp::Neg:
      return t_neg(subst_term(t->a, map));
    case TermOp::Cos:
      return t_cos(subst_term(t->a, map));
    case TermOp::Sin:
      return t_sin(subst_term(t->a, map));
  }
  throw InvariantViolation("unreachable term op");
}

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->op) {
    case TermOp::Constant:
      return;
    case TermOp::Variable:
      out.insert(t->var);
      return;
    default:
      if (t->a) term_vars(t->a, out);
      if (t->b) term_vars(t->b, out);
  }
}

bool term_has_trig(const TermPtr& t) {
  if (t->op == TermOp::Cos || t->op == TermOp::Sin) return true;
  if (t->a && term_has_trig(t->a)) return true;
  if (t->b && term_has_trig(t->b)) return true;
  return false;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  switch (a->op) {
    case TermOp::Constant:
      if (a->value == b->value) return 0;
      return a->value < b->value ? -1 : 1;
    case TermOp::Variable:
      return a->var.compare(b->var) < 0 ? -1
             : a->var == b->var         ? 0
                                        : 1;
    default: {
      int c = term_cmp(a->a, b->a);
      if (c != 0) return c;
      if (!a->b && !b->b) return 0;
      return term_cmp(a->b, b->b);
    }
  }
}

std::size_t term_hash(const TermPtr& t) {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::size_t h = static_cast<std::size_t>(t->op) * 0x9e3779b1;
  switch (t->op) {
    case TermOp::Constant:
      h = mix(h, std::hash<std::string>{}(rational_to_string(t->value)));
      break;
    case TermOp::Variable:
      h = mix(h, std::hash<std::string>{}(t->var));
      break;
    default:
      h = mix(h, term_hash(t->a));
      if (t->b) h = mix(h, term_hash(t->b));
  }
  return h;
}

namespace {

// Precedence levels for printing: Add/Sub 1, Mul/Div 2, unary 3.
int precedence(TermOp op) {
  switch (op) {
    case TermOp::Add:
    case TermOp::Sub:
      return 1;
    case TermOp::Mul:
    case TermOp::Div:
      return 2;
    default:
      return 3;
  }
}

void print(const TermPtr& t, int parent_prec, std::ostringstream& os) {
  int prec = precedence(t->op);
  bool wrap = prec < parent_prec;
  switch (t->op) {
    case TermOp::Constant: {
      if (t->value < 0) {
        os << "(" << rational_to_string(t->value) << ")";
      } else {
        os << rational_to_string(t->value);
      }
      return;
    }
    case TermOp::Variable:
      os << t->var;
      return;
    case TermOp::Neg:
      os << "-";
      print(t->a, 3, os);
      return;
    case TermOp::Cos:
      os << "cos(";
      print(t->a, 0, os);
      os << ")";
      return;
    case TermOp::Sin:
      os << "sin(";
      print(t->a, 0, os);
      os << ")";
      return;
    default: {
      if (wrap) os << "(";
      const char* sym = t->op == TermOp::Add   ? " + "
                        : t->op == TermOp::Sub ? " - "
                        : t->op == TermOp::Mul ? " * "
                                               : " / ";
      print(t->a, prec, os);
      os << sym;
      // Right operand of - and / needs the next precedence level up.
      print(t->b, t->op == TermOp::Add || t->op == TermOp::Mul ? prec
                                                               : prec + 1,
            os);
      if (wrap) os << ")";
    }
  }
}

}  // namespace

std::string term_to_string(const TermPtr& t) {
  std::ostringstream os;
  print(t, 0, os);
  return os.str();
}

std::optional<Rational> term_eval_exact(const TermPtr& t, const Valuation& v) {
  switch (t->op) {
    case TermOp::Constant:
      return t->value;
    case TermOp::Variable: {
      auto it = v.find(t->var);
      if (it == v.end())
        throw EvalError("unbound variable '" + t->var + "' in evaluation");
      return it->second;
    }
    case TermOp::Cos:
    case TermOp::Sin:
      return std::nullopt;
    case TermOp::Neg: {
      auto a = term_eval_exact(t->a, v);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    default: {
      auto a = term_eval_exact(t->a, v);
      auto b = term_eval_exact(t->b, v);
      if (!a || !b) return std::nullopt;
      switch (t->op) {
        case TermOp::Add:
          return Rational(*a + *b);
        case TermOp::Sub:
          return Rational(*a - *b);
        case TermOp::Mul:
          return Rational(*a * *b);
        case TermOp::Div:
          if (*b == 0) throw EvalError("division by zero");
          return Rational(*a / *b);
        default:
          throw InvariantViolation("unreachable term op");
      }
    }
  }
}

double term_eval_double(const TermPtr& t,
                        const std::unordered_map<std::string, double>& v) {
  switch (t->op) {
    case TermOp::Constant:
      return to_double(t->value);
    case TermOp::Variable: {
      auto it = v.find(t->var);
      if (it == v.end())
        throw EvalError("unbound variable '" + t->var + "' in evaluation");
      return it->second;
    }
    case TermOp::Cos:
      return std::cos(term_eval_double(t->a, v));
    case TermOp::Sin:
      return std::sin(term_eval_double(t->a, v));
    case TermOp::Neg:
      return -term_eval_double(t->a, v);
    case TermOp::Add:
      return term_eval_double(t->a, v) + term_eval_double(t->b, v);
    case TermOp::Sub:
      return term_eval_double(t->a, v) - term_eval_double(t->b, v);
    case TermOp::Mul:
      return term_eval_double(t->a, v) * term_eval_double(t->b, v);
    case TermOp::Div: {
      double d = term_eval_double(t->b, v);
      if (std::fabs(d) < 1e-300) return std::numeric_limits<double>::quiet_NaN();
      return term_eval_double(t->a, v) / d;
    }
  }
  throw InvariantViolation("unreachable term op");
}

}  // namespace sympar
