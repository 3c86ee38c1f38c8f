#include "sympar/smtlib.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstring>
#include <sstream>

#include "sympar/error.hpp"
#include "sympar/linear.hpp"

namespace sympar {

namespace {

void emit_rational(const Rational& r, std::ostringstream& os) {
  if (r < 0) {
    os << "(- ";
    emit_rational(Rational(-r), os);
    os << ")";
    return;
  }
  Integer n = numerator(r), d = denominator(r);
  if (d == 1) {
    os << n.str() << ".0";
  } else {
    os << "(/ " << n.str() << ".0 " << d.str() << ".0)";
  }
}

void emit_term(const TermPtr& t, std::ostringstream& os) {
  switch (t->op) {
    case TermOp::Constant:
      emit_rational(t->value, os);
      return;
    case TermOp::Variable:
      os << t->var;
      return;
    case TermOp::Neg:
      os << "(- ";
      emit_term(t->a, os);
      os << ")";
      return;
    case TermOp::Cos:
    case TermOp::Sin:
      os << (t->op == TermOp::Cos ? "(cos " : "(sin ");
      emit_term(t->a, os);
      os << ")";
      return;
    default: {
      const char* op = t->op == TermOp::Add   ? "+"
                       : t->op == TermOp::Sub ? "-"
                       : t->op == TermOp::Mul ? "*"
                                              : "/";
      os << "(" << op << " ";
      emit_term(t->a, os);
      os << " ";
      emit_term(t->b, os);
      os << ")";
    }
  }
}

void emit_formula(const FormulaPtr& f, std::ostringstream& os) {
  switch (f->kind) {
    case Formula::Kind::True:
      os << "true";
      return;
    case Formula::Kind::False:
      os << "false";
      return;
    case Formula::Kind::Atom: {
      const char* op = f->cmp == Cmp::Lt ? "<" : f->cmp == Cmp::Le ? "<=" : "=";
      os << "(" << op << " ";
      emit_term(f->term, os);
      os << " 0.0)";
      return;
    }
    case Formula::Kind::Not:
      os << "(not ";
      emit_formula(f->kids[0], os);
      os << ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      os << (f->kind == Formula::Kind::And ? "(and" : "(or");
      for (const auto& k : f->kids) {
        os << " ";
        emit_formula(k, os);
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string term_to_smtlib(const TermPtr& t) {
  std::ostringstream os;
  emit_term(t, os);
  return os.str();
}

std::string formula_to_smtlib(const FormulaPtr& f,
                              const std::vector<std::string>& vars) {
  // Linearity decides the logic.  Trig atoms only make sense to backends
  // that extend QF_NRA with transcendental functions; they are emitted
  // opaquely either way.
  bool nonlinear = !formula_is_linear(f);
  std::ostringstream os;
  os << "(set-option :produce-models true)\n";
  os << "(set-logic " << (nonlinear ? "QF_NRA" : "QF_LRA") << ")\n";
  for (const auto& v : vars) os << "(declare-const " << v << " Real)\n";
  os << "(assert ";
  emit_formula(f, os);
  os << ")\n(check-sat)\n(get-model)\n(exit)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Process driver

namespace {

struct Pipe {
  int rd = -1, wr = -1;
  void open() {
    int fds[2];
    if (pipe(fds) != 0) throw SolverError("pipe() failed");
    rd = fds[0];
    wr = fds[1];
  }
  void close_rd() {
    if (rd >= 0) ::close(rd);
    rd = -1;
  }
  void close_wr() {
    if (wr >= 0) ::close(wr);
    wr = -1;
  }
  ~Pipe() {
    close_rd();
    close_wr();
  }
};

void ignore_sigpipe_once() {
  static const bool done = [] {
    struct sigaction sa;
    std::memset(&sa, 0, sizeof sa);
    sa.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &sa, nullptr);
    return true;
  }();
  (void)done;
}

struct RawRun {
  std::string out, err;
  bool timed_out = false;
  int exit_status = 0;
};

RawRun run_process(const std::string& cmd, const std::string& input,
                   int timeout_ms) {
  ignore_sigpipe_once();
  Pipe in, out, err;
  in.open();
  out.open();
  err.open();
  pid_t pid = fork();
  if (pid < 0) throw SolverError("fork() failed");
  if (pid == 0) {
    dup2(in.rd, STDIN_FILENO);
    dup2(out.wr, STDOUT_FILENO);
    dup2(err.wr, STDERR_FILENO);
    in.close_rd();
    in.close_wr();
    out.close_rd();
    out.close_wr();
    err.close_rd();
    err.close_wr();
    execlp("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  in.close_rd();
  out.close_wr();
  err.close_wr();

  RawRun run;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(timeout_ms);
  std::size_t written = 0;
  fcntl(in.wr, F_SETFL, O_NONBLOCK);
  fcntl(out.rd, F_SETFL, O_NONBLOCK);
  fcntl(err.rd, F_SETFL, O_NONBLOCK);
  bool writing = true;
  while (true) {
    struct pollfd fds[3];
    int n = 0;
    int out_i = -1, err_i = -1, in_i = -1;
    if (out.rd >= 0) {
      fds[n] = {out.rd, POLLIN, 0};
      out_i = n++;
    }
    if (err.rd >= 0) {
      fds[n] = {err.rd, POLLIN, 0};
      err_i = n++;
    }
    if (writing && in.wr >= 0) {
      fds[n] = {in.wr, POLLOUT, 0};
      in_i = n++;
    }
    if (n == 0) break;
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      run.timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count());
    int rc = poll(fds, n, std::max(1, std::min(wait_ms, 200)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    char buf[4096];
    if (out_i >= 0 && (fds[out_i].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(out.rd, buf, sizeof buf);
      if (r > 0)
        run.out.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || (r < 0 && errno != EAGAIN))
        out.close_rd();
    }
    if (err_i >= 0 && (fds[err_i].revents & (POLLIN | POLLHUP))) {
      ssize_t r = read(err.rd, buf, sizeof buf);
      if (r > 0)
        run.err.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || (r < 0 && errno != EAGAIN))
        err.close_rd();
    }
    if (in_i >= 0 && (fds[in_i].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[in_i].revents & (POLLERR | POLLHUP)) {
        writing = false;
        in.close_wr();
      } else {
        ssize_t w = write(in.wr, input.data() + written,
                          std::min<std::size_t>(4096, input.size() - written));
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN) {
          writing = false;
          in.close_wr();
        }
        if (written == input.size()) {
          writing = false;
          in.close_wr();
        }
      }
    }
  }
  if (run.timed_out) {
    kill(pid, SIGKILL);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  run.exit_status = status;
  return run;
}

// Minimal s-expression reader for model replies.
struct Sexp {
  bool atom = false;
  std::string text;
  std::vector<Sexp> kids;
};

struct SexpReader {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  bool read(Sexp& out) {
    skip_ws();
    if (i >= s.size()) return false;
    if (s[i] == '(') {
      ++i;
      out = Sexp{};
      for (;;) {
        skip_ws();
        if (i >= s.size()) return false;
        if (s[i] == ')') {
          ++i;
          return true;
        }
        Sexp kid;
        if (!read(kid)) return false;
        out.kids.push_back(std::move(kid));
      }
    }
    if (s[i] == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"') ++j;
      out = Sexp{true, s.substr(i, j + 1 - i), {}};
      i = j + 1;
      return true;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
           s[j] != '(' && s[j] != ')')
      ++j;
    out = Sexp{true, s.substr(i, j - i), {}};
    i = j;
    return true;
  }
};

// Evaluates a model value expression: numerals, decimals, (- x), (/ a b).
std::optional<Rational> model_value(const Sexp& e) {
  if (e.atom) {
    try {
      return parse_rational(e.text);
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }
  if (e.kids.empty()) return std::nullopt;
  if (e.kids[0].atom && e.kids[0].text == "-" && e.kids.size() == 2) {
    auto v = model_value(e.kids[1]);
    if (!v) return std::nullopt;
    return Rational(-*v);
  }
  if (e.kids[0].atom && e.kids[0].text == "/" && e.kids.size() == 3) {
    auto a = model_value(e.kids[1]);
    auto b = model_value(e.kids[2]);
    if (!a || !b || *b == 0) return std::nullopt;
    return Rational(*a / *b);
  }
  return std::nullopt;
}

std::optional<Valuation> parse_model(const std::string& tail) {
  SexpReader rd{tail};
  Sexp top;
  if (!rd.read(top) || top.atom) return std::nullopt;
  Valuation model;
  // Accept both (model (define-fun ...) ...) and ((define-fun ...) ...).
  std::size_t first = 0;
  if (!top.kids.empty() && top.kids[0].atom && top.kids[0].text == "model")
    first = 1;
  for (std::size_t ei = first; ei < top.kids.size(); ++ei) {
    const Sexp& e = top.kids[ei];
    if (e.atom || e.kids.size() < 5) continue;
    if (!e.kids[0].atom || e.kids[0].text != "define-fun") continue;
    if (!e.kids[1].atom) continue;
    auto v = model_value(e.kids[4]);
    if (v) model[e.kids[1].text] = *v;
  }
  return model;
}

}  // namespace

SmtOutcome run_smt_process(const std::string& cmd, const std::string& script,
                           int timeout_ms) {
  RawRun run = run_process(cmd, script, timeout_ms);
  SmtOutcome out;
  out.raw = run.out;
  if (run.timed_out) {
    out.status = SatStatus::Unknown;
    out.unknown_reason = "timeout";
    return out;
  }
  // Scan line by line for the verdict; (error ...) before it is fatal.
  std::istringstream is(run.out);
  std::string line;
  std::size_t consumed = 0;
  bool found = false;
  while (std::getline(is, line)) {
    consumed += line.size() + 1;
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "sat") {
      out.status = SatStatus::Sat;
      found = true;
      break;
    }
    if (trimmed == "unsat") {
      out.status = SatStatus::Unsat;
      found = true;
      break;
    }
    if (trimmed == "unknown") {
      out.status = SatStatus::Unknown;
      out.unknown_reason = "solver reported unknown";
      found = true;
      break;
    }
    if (trimmed.rfind("(error", 0) == 0)
      throw SolverError("solver error: " + line +
                        (run.err.empty() ? "" : "\nstderr: " + run.err));
  }
  if (!found) {
    throw SolverError("no verdict from solver (exit status " +
                      std::to_string(run.exit_status) + ")" +
                      (run.err.empty() ? "" : "\nstderr: " + run.err));
  }
  if (out.status == SatStatus::Sat) {
    std::string tail = run.out.substr(std::min(consumed, run.out.size()));
    auto model = parse_model(tail);
    if (model) out.model = std::move(model);
  }
  return out;
}

}  // namespace sympar
