#pragma once

#include <string>

#include "sympar/formula.hpp"

namespace sympar {

// Parses the textual formula syntax produced by formula_to_string:
//
//   formula := or_expr
//   or_expr := and_expr ('or' and_expr)*
//   and_expr:= unary ('and' unary)*
//   unary   := 'not' unary | '(' formula ')' | 'true' | 'false' | atom
//   atom    := sum ('<' | '<=' | '==' | '>' | '>=' | '!=') sum
//   sum     := usual arithmetic over numbers, variables, cos(...), sin(...)
//
// Numbers are decimal or integer literals; exact rationals are written as
// divisions ("1/3").  Throws ParseError with a character position on bad
// input.  The result is not normalized.
FormulaPtr parse_formula(const std::string& text);

// Convenience for terms alone (used by tests).
TermPtr parse_term_text(const std::string& text);

}  // namespace sympar
