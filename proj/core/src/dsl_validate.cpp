#include <set>
#include <string>
#include <vector>

#include "sympar/dsl.hpp"
#include "sympar/error.hpp"

namespace sympar {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "env",    "state",   "param",     "actions", "end",  "body",
      "next",   "reward",  "done",      "success", "if",   "else",
      "while",  "skip",    "in",        "discrete", "and", "or",
      "not",    "true",    "false",     "cos",     "sin",  "uniform",
      "bernoulli"};
  return kw;
}

void check_name(const std::string& name, const std::string& what) {
  if (name.empty()) throw ValidationError(what + " name is empty");
  if (keywords().count(name))
    throw ValidationError("reserved word '" + name + "' used as " + what +
                          " name");
  if (name[0] == '_')
    throw ValidationError(what + " name '" + name +
                          "' must not start with an underscore");
  if (is_sample_var_name(name))
    throw ValidationError("name '" + name +
                          "' is reserved for sampling variables");
}

void check_reads(const std::set<std::string>& read,
                 const std::set<std::string>& defined, int line) {
  for (const auto& v : read) {
    if (!defined.count(v))
      throw ValidationError("unbound variable " + v + " at line " +
                            std::to_string(line));
  }
}

// Definite assignment: `defined` holds every variable guaranteed to have a
// value at this point.  A while body may run zero times, so its assignments
// never escape the loop; an if contributes the intersection of its arms.
void check_stmts(const std::vector<StmtPtr>& body,
                 std::set<std::string>& defined) {
  for (const auto& s : body) {
    switch (s->kind) {
      case Stmt::Kind::Skip:
        break;
      case Stmt::Kind::Assign: {
        std::set<std::string> read;
        term_vars(s->expr, read);
        check_reads(read, defined, s->line);
        check_name(s->var, "variable");
        defined.insert(s->var);
        break;
      }
      case Stmt::Kind::Sample: {
        check_name(s->var, "variable");
        if (s->dist == DistKind::Uniform && !(s->dist_a < s->dist_b))
          throw ValidationError(
              "uniform bounds must satisfy a < b at line " +
              std::to_string(s->line));
        if (s->dist == DistKind::Bernoulli &&
            (s->dist_a < 0 || s->dist_a > 1))
          throw ValidationError(
              "bernoulli probability must lie in [0, 1] at line " +
              std::to_string(s->line));
        defined.insert(s->var);
        break;
      }
      case Stmt::Kind::If: {
        std::set<std::string> read;
        formula_vars(s->guard, read);
        check_reads(read, defined, s->line);
        std::set<std::string> then_d = defined, else_d = defined;
        check_stmts(s->body, then_d);
        check_stmts(s->else_body, else_d);
        for (const auto& v : then_d)
          if (else_d.count(v)) defined.insert(v);
        break;
      }
      case Stmt::Kind::While: {
        std::set<std::string> read;
        formula_vars(s->guard, read);
        check_reads(read, defined, s->line);
        std::set<std::string> inner = defined;
        check_stmts(s->body, inner);
        break;
      }
    }
  }
}

}  // namespace

void validate_program(const Program& p) {
  check_name(p.name, "program");
  if (p.states.empty())
    throw ValidationError("program declares no state variables");

  std::set<std::string> declared;
  auto declare = [&declared](const std::string& name, const std::string& what) {
    check_name(name, what);
    if (!declared.insert(name).second)
      throw ValidationError("duplicate declaration of '" + name + "'");
  };

  for (const auto& sv : p.states) {
    declare(sv.name, "state variable");
    if (sv.discrete) {
      if (sv.lo > sv.hi)
        throw ValidationError("state variable '" + sv.name +
                              "' has empty bounds");
      if (sv.lo != Rational(rational_floor(sv.lo)) ||
          sv.hi != Rational(rational_floor(sv.hi)))
        throw ValidationError("discrete state variable '" + sv.name +
                              "' needs integer bounds");
    } else if (!(sv.lo < sv.hi)) {
      throw ValidationError("state variable '" + sv.name +
                            "' has degenerate bounds");
    }
  }
  for (const auto& [name, value] : p.params) {
    (void)value;
    declare(name, "parameter");
  }
  for (const auto& c : p.action_components) declare(c, "action component");

  if (p.actions.empty()) throw ValidationError("program declares no actions");
  std::set<std::string> action_names;
  for (const auto& a : p.actions) {
    if (a.name.empty() || keywords().count(a.name))
      throw ValidationError("bad action name '" + a.name + "'");
    if (!action_names.insert(a.name).second)
      throw ValidationError("duplicate action name '" + a.name + "'");
    if (a.values.size() != p.action_components.size())
      throw ValidationError(
          "action '" + a.name + "' has " + std::to_string(a.values.size()) +
          " components, expected " +
          std::to_string(p.action_components.size()));
  }

  std::set<std::string> defined = declared;
  check_stmts(p.body, defined);

  if (p.next_vars.size() != p.states.size())
    throw ValidationError("'next' lists " +
                          std::to_string(p.next_vars.size()) +
                          " variables, expected one per state variable (" +
                          std::to_string(p.states.size()) + ")");
  auto check_output = [&defined](const std::string& v, const char* what) {
    if (v.empty()) throw ValidationError(std::string(what) + " variable missing");
    if (!defined.count(v))
      throw ValidationError(std::string(what) + " variable '" + v +
                            "' is never assigned");
  };
  for (const auto& v : p.next_vars) check_output(v, "next-state");
  check_output(p.reward_var, "reward");
  check_output(p.done_var, "done");
}

}  // namespace sympar
