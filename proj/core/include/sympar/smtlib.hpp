#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympar/formula.hpp"

namespace sympar {

enum class SatStatus { Sat, Unsat, Unknown };

// Renders a complete SMT-LIB v2 script: model production on, QF_LRA or
// QF_NRA depending on the atoms, one declare-const per variable, the
// asserted formula, check-sat, get-model, exit.
std::string formula_to_smtlib(const FormulaPtr& f,
                              const std::vector<std::string>& vars);

std::string term_to_smtlib(const TermPtr& t);

struct SmtOutcome {
  SatStatus status = SatStatus::Unknown;
  std::optional<Valuation> model;  // rational-valued model entries, when sat
  std::string unknown_reason;
  std::string raw;  // full solver stdout, for diagnostics
};

// Runs `cmd` through /bin/sh with the script on stdin and parses the reply.
// The deadline is enforced here: on expiry the process is killed and the
// outcome is Unknown("timeout").  A reply containing an (error ...) line
// before the status token, a crash, or an unreadable status throws
// SolverError with captured stderr.  Model values that are not rational
// literals are dropped (the model comes back empty).
SmtOutcome run_smt_process(const std::string& cmd, const std::string& script,
                           int timeout_ms);

}  // namespace sympar
