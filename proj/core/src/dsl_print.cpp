#include <sstream>
#include <string>

#include "sympar/dsl.hpp"

namespace sympar {

namespace {

// Guards print in a raw shape ("t < 0", not the prettified linear form)
// so that parse(print(p)) rebuilds structurally identical ASTs: the
// re-parse subtracts a literal 0, which the term builders fold away.
void guard_text(const FormulaPtr& f, std::ostream& os) {
  switch (f->kind) {
    case Formula::Kind::True:
      os << "true";
      return;
    case Formula::Kind::False:
      os << "false";
      return;
    case Formula::Kind::Atom:
      os << term_to_string(f->term)
         << (f->cmp == Cmp::Lt ? " < 0" : f->cmp == Cmp::Le ? " <= 0" : " == 0");
      return;
    case Formula::Kind::Not:
      os << "not (";
      guard_text(f->kids[0], os);
      os << ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const char* sep = f->kind == Formula::Kind::And ? " and " : " or ";
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << sep;
        bool leaf = f->kids[i]->kind == Formula::Kind::Atom ||
                    f->kids[i]->kind == Formula::Kind::True ||
                    f->kids[i]->kind == Formula::Kind::False;
        if (!leaf) os << "(";
        guard_text(f->kids[i], os);
        if (!leaf) os << ")";
      }
      return;
    }
  }
}

void print_stmt(const Stmt& s, int indent, std::ostream& os) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Skip:
      os << pad << "skip\n";
      return;
    case Stmt::Kind::Assign:
      os << pad << s.var << " = " << term_to_string(s.expr) << "\n";
      return;
    case Stmt::Kind::Sample:
      os << pad << s.var << " ~ ";
      if (s.dist == DistKind::Uniform) {
        os << "uniform(" << rational_to_string(s.dist_a) << ", "
           << rational_to_string(s.dist_b) << ")";
      } else {
        os << "bernoulli(" << rational_to_string(s.dist_a) << ")";
      }
      os << "\n";
      return;
    case Stmt::Kind::If:
      os << pad << "if ";
      guard_text(s.guard, os);
      os << "\n";
      for (const auto& c : s.body) print_stmt(*c, indent + 1, os);
      if (!s.else_body.empty()) {
        os << pad << "else\n";
        for (const auto& c : s.else_body) print_stmt(*c, indent + 1, os);
      }
      os << pad << "end\n";
      return;
    case Stmt::Kind::While:
      os << pad << "while ";
      guard_text(s.guard, os);
      os << "\n";
      for (const auto& c : s.body) print_stmt(*c, indent + 1, os);
      os << pad << "end\n";
      return;
  }
}

}  // namespace

std::string stmt_to_string(const Stmt& s, int indent) {
  std::ostringstream os;
  print_stmt(s, indent, os);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  os << "env " << p.name << "\n";
  for (const auto& sv : p.states) {
    os << "state " << sv.name << " in [" << rational_to_string(sv.lo) << ", "
       << rational_to_string(sv.hi) << "]";
    if (sv.discrete) os << " discrete";
    os << "\n";
  }
  for (const auto& [name, value] : p.params)
    os << "param " << name << " = " << rational_to_string(value) << "\n";
  os << "actions";
  for (const auto& c : p.action_components) os << " " << c;
  os << "\n";
  for (const auto& a : p.actions) {
    os << "  " << a.name;
    for (const auto& v : a.values) os << " " << rational_to_string(v);
    os << "\n";
  }
  os << "end\n";
  os << "body\n";
  for (const auto& s : p.body) print_stmt(*s, 1, os);
  os << "end\n";
  os << "next";
  for (const auto& v : p.next_vars) os << " " << v;
  os << "\n";
  os << "reward " << p.reward_var << "\n";
  os << "done " << p.done_var << "\n";
  if (p.success_threshold)
    os << "success " << rational_to_string(*p.success_threshold) << "\n";
  return os.str();
}

}  // namespace sympar
