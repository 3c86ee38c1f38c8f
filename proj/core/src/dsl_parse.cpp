#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sympar/dsl.hpp"
#include "sympar/error.hpp"
#include "sympar/formula_text.hpp"

namespace sympar {

namespace {

struct Line {
  int no = 0;        // 1-based source line
  std::string text;  // comment-stripped, right-trimmed
};

std::vector<Line> split_lines(const std::string& src) {
  std::vector<Line> out;
  int no = 0;
  std::size_t i = 0;
  for (;;) {
    std::size_t j = src.find('\n', i);
    bool last = j == std::string::npos;
    if (last) j = src.size();
    ++no;
    std::string text = src.substr(i, j - i);
    auto hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
      text.pop_back();
    if (text.find_first_not_of(" \t") != std::string::npos)
      out.push_back({no, std::move(text)});
    if (last) break;
    i = j + 1;
  }
  return out;
}

struct Tok {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string s;
  int col = 0;  // 1-based
};

// Tokenizer for the structured (non-expression) part of a line.  Expression
// text is sliced out of the raw line by column and handed to the formula
// parser, so this set of punctuation only needs to cover structure plus
// whatever may precede a slice point.
std::vector<Tok> lex_line(const Line& ln) {
  std::vector<Tok> out;
  const std::string& s = ln.text;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool dot = false;
      while (j < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[j])) ||
              (!dot && s[j] == '.'))) {
        if (s[j] == '.') dot = true;
        ++j;
      }
      out.push_back({Tok::Number, s.substr(i, j - i), col});
      i = j;
    } else if (std::string("[](),=~-+*/<>!").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'",
                       ln.no, col);
    }
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

class ProgParser {
 public:
  explicit ProgParser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  Program parse() {
    Program p;
    parse_env(p);
    while (!at_end()) {
      std::string head = first_ident();
      if (head == "state") {
        parse_state(p);
      } else if (head == "param") {
        parse_param(p);
      } else {
        break;
      }
    }
    parse_actions(p);
    parse_body(p);
    parse_tail(p);
    if (!at_end())
      throw ParseError("unexpected line after program end", cur().no, 1);
    return p;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= lines_.size(); }
  const Line& cur() const {
    if (at_end()) {
      int last = lines_.empty() ? 1 : lines_.back().no;
      throw ParseError("unexpected end of input", last, 1);
    }
    return lines_[pos_];
  }
  std::string first_ident() const {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    return t[0].kind == Tok::Ident ? t[0].s : std::string();
  }

  [[noreturn]] void fail(const Line& ln, const Tok& t, const std::string& m) {
    throw ParseError(m, ln.no, t.col);
  }

  const Tok& expect(const Line& ln, const std::vector<Tok>& t, std::size_t i,
                    Tok::Kind k, const char* what) {
    if (i >= t.size() || t[i].kind != k)
      fail(ln, i < t.size() ? t[i] : t.back(),
           std::string("expected ") + what);
    return t[i];
  }

  void expect_punct(const Line& ln, const std::vector<Tok>& t, std::size_t i,
                    const char* p) {
    if (i >= t.size() || t[i].kind != Tok::Punct || t[i].s != p)
      fail(ln, i < t.size() ? t[i] : t.back(),
           std::string("expected '") + p + "'");
  }

  void expect_line_end(const Line& ln, const std::vector<Tok>& t,
                       std::size_t i) {
    if (t[i].kind != Tok::End) fail(ln, t[i], "unexpected trailing input");
  }

  // Signed rational: [-] NUMBER [/ NUMBER].  Advances i past it.
  Rational parse_number(const Line& ln, const std::vector<Tok>& t,
                        std::size_t& i) {
    bool neg = false;
    if (t[i].kind == Tok::Punct && t[i].s == "-") {
      neg = true;
      ++i;
    }
    const Tok& num = expect(ln, t, i, Tok::Number, "a number");
    Rational v;
    try {
      v = parse_rational(num.s);
    } catch (const ParseError& e) {
      fail(ln, num, e.raw());
    }
    ++i;
    if (i < t.size() && t[i].kind == Tok::Punct && t[i].s == "/") {
      ++i;
      const Tok& den = expect(ln, t, i, Tok::Number, "a denominator");
      Rational d;
      try {
        d = parse_rational(den.s);
      } catch (const ParseError& e) {
        fail(ln, den, e.raw());
      }
      if (d == 0) fail(ln, den, "zero denominator");
      ++i;
      v = v / d;
    }
    return neg ? Rational(-v) : v;
  }

  void parse_env(Program& p) {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    if (t[0].kind != Tok::Ident || t[0].s != "env")
      fail(ln, t[0], "expected 'env NAME' as the first line");
    p.name = expect(ln, t, 1, Tok::Ident, "a program name").s;
    expect_line_end(ln, t, 2);
    ++pos_;
  }

  void parse_state(Program& p) {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    StateVar sv;
    sv.name = expect(ln, t, 1, Tok::Ident, "a state variable name").s;
    std::size_t i = 2;
    if (i >= t.size() || t[i].kind != Tok::Ident || t[i].s != "in")
      fail(ln, i < t.size() ? t[i] : t.back(), "expected 'in'");
    ++i;
    expect_punct(ln, t, i, "[");
    ++i;
    sv.lo = parse_number(ln, t, i);
    expect_punct(ln, t, i, ",");
    ++i;
    sv.hi = parse_number(ln, t, i);
    expect_punct(ln, t, i, "]");
    ++i;
    if (i < t.size() && t[i].kind == Tok::Ident && t[i].s == "discrete") {
      sv.discrete = true;
      ++i;
    }
    expect_line_end(ln, t, i);
    p.states.push_back(std::move(sv));
    ++pos_;
  }

  void parse_param(Program& p) {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    std::string name = expect(ln, t, 1, Tok::Ident, "a parameter name").s;
    expect_punct(ln, t, 2, "=");
    std::size_t i = 3;
    Rational v = parse_number(ln, t, i);
    expect_line_end(ln, t, i);
    p.params.emplace_back(std::move(name), std::move(v));
    ++pos_;
  }

  void parse_actions(Program& p) {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    if (t[0].kind != Tok::Ident || t[0].s != "actions")
      fail(ln, t[0], "expected an 'actions' block");
    std::size_t i = 1;
    while (t[i].kind == Tok::Ident) {
      p.action_components.push_back(t[i].s);
      ++i;
    }
    expect_line_end(ln, t, i);
    if (p.action_components.empty())
      fail(ln, t[1], "expected at least one action component name");
    ++pos_;
    for (;;) {
      const Line& row = cur();
      std::vector<Tok> rt = lex_line(row);
      if (rt[0].kind == Tok::Ident && rt[0].s == "end" &&
          rt[1].kind == Tok::End) {
        ++pos_;
        break;
      }
      Action a;
      a.name = expect(row, rt, 0, Tok::Ident, "an action name").s;
      std::size_t j = 1;
      while (rt[j].kind != Tok::End) a.values.push_back(parse_number(row, rt, j));
      p.actions.push_back(std::move(a));
      ++pos_;
    }
  }

  void parse_body(Program& p) {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    if (t[0].kind != Tok::Ident || t[0].s != "body")
      fail(ln, t[0], "expected a 'body' block");
    expect_line_end(ln, t, 1);
    ++pos_;
    p.body = parse_stmts({"end"});
    ++pos_;  // consume 'end'
  }

  // Slices the raw text of the current line from 1-based column `from`,
  // parses it as a formula, and rebases error positions onto this file.
  FormulaPtr parse_guard(const Line& ln, int from) {
    std::string text = ln.text.substr(from - 1);
    try {
      return parse_formula(text);
    } catch (const ParseError& e) {
      throw ParseError(e.raw(), ln.no, from);
    }
  }

  TermPtr parse_expr(const Line& ln, int from) {
    std::string text = ln.text.substr(from - 1);
    try {
      return parse_term_text(text);
    } catch (const ParseError& e) {
      throw ParseError(e.raw(), ln.no, from);
    }
  }

  // Parses statements until the next line whose sole content is one of the
  // stop keywords; the stop line is left unconsumed.
  std::vector<StmtPtr> parse_stmts(const std::set<std::string>& stop) {
    std::vector<StmtPtr> out;
    for (;;) {
      const Line& ln = cur();
      std::vector<Tok> t = lex_line(ln);
      if (t[0].kind == Tok::Ident && stop.count(t[0].s) &&
          t[1].kind == Tok::End)
        return out;
      out.push_back(parse_stmt());
    }
  }

  StmtPtr parse_stmt() {
    const Line& ln = cur();
    std::vector<Tok> t = lex_line(ln);
    if (t[0].kind != Tok::Ident) fail(ln, t[0], "expected a statement");
    auto s = std::make_shared<Stmt>();
    s->line = ln.no;
    const std::string& head = t[0].s;

    if (head == "skip") {
      expect_line_end(ln, t, 1);
      s->kind = Stmt::Kind::Skip;
      ++pos_;
      return s;
    }
    if (head == "if") {
      s->kind = Stmt::Kind::If;
      s->guard = parse_guard(ln, t[0].col + 2);
      ++pos_;
      s->body = parse_stmts({"else", "end"});
      const Line& term = cur();
      if (lex_line(term)[0].s == "else") {
        ++pos_;
        s->else_body = parse_stmts({"end"});
      }
      ++pos_;  // consume 'end'
      return s;
    }
    if (head == "while") {
      s->kind = Stmt::Kind::While;
      s->guard = parse_guard(ln, t[0].col + 5);
      ++pos_;
      s->body = parse_stmts({"end"});
      ++pos_;  // consume 'end'
      return s;
    }
    if (head == "end" || head == "else")
      fail(ln, t[0], "'" + head + "' without an open block");

    // Assignment or sampling.
    s->var = head;
    if (t[1].kind == Tok::Punct && t[1].s == "=") {
      s->kind = Stmt::Kind::Assign;
      s->expr = parse_expr(ln, t[1].col + 1);
      ++pos_;
      return s;
    }
    if (t[1].kind == Tok::Punct && t[1].s == "~") {
      s->kind = Stmt::Kind::Sample;
      const Tok& dist = expect(ln, t, 2, Tok::Ident, "a distribution name");
      std::size_t i = 3;
      expect_punct(ln, t, i, "(");
      ++i;
      if (dist.s == "uniform") {
        s->dist = DistKind::Uniform;
        s->dist_a = parse_number(ln, t, i);
        expect_punct(ln, t, i, ",");
        ++i;
        s->dist_b = parse_number(ln, t, i);
      } else if (dist.s == "bernoulli") {
        s->dist = DistKind::Bernoulli;
        s->dist_a = parse_number(ln, t, i);
      } else {
        fail(ln, dist, "unknown distribution '" + dist.s +
                           "' (expected uniform or bernoulli)");
      }
      expect_punct(ln, t, i, ")");
      ++i;
      expect_line_end(ln, t, i);
      ++pos_;
      return s;
    }
    fail(ln, t[1], "expected '=' or '~' after variable name");
  }

  void parse_tail(Program& p) {
    bool have_next = false, have_reward = false, have_done = false,
         have_success = false;
    while (!at_end()) {
      const Line& ln = cur();
      std::vector<Tok> t = lex_line(ln);
      if (t[0].kind != Tok::Ident) fail(ln, t[0], "expected a directive");
      const std::string& head = t[0].s;
      if (head == "next") {
        if (have_next) fail(ln, t[0], "duplicate 'next' directive");
        have_next = true;
        std::size_t i = 1;
        while (t[i].kind == Tok::Ident) p.next_vars.push_back(t[i++].s);
        expect_line_end(ln, t, i);
      } else if (head == "reward") {
        if (have_reward) fail(ln, t[0], "duplicate 'reward' directive");
        have_reward = true;
        p.reward_var = expect(ln, t, 1, Tok::Ident, "a variable name").s;
        expect_line_end(ln, t, 2);
      } else if (head == "done") {
        if (have_done) fail(ln, t[0], "duplicate 'done' directive");
        have_done = true;
        p.done_var = expect(ln, t, 1, Tok::Ident, "a variable name").s;
        expect_line_end(ln, t, 2);
      } else if (head == "success") {
        if (have_success) fail(ln, t[0], "duplicate 'success' directive");
        have_success = true;
        std::size_t i = 1;
        p.success_threshold = parse_number(ln, t, i);
        expect_line_end(ln, t, i);
      } else {
        fail(ln, t[0], "unknown directive '" + head + "'");
      }
      ++pos_;
    }
    if (!have_next) throw ParseError("missing 'next' directive", 1, 1);
    if (!have_reward) throw ParseError("missing 'reward' directive", 1, 1);
    if (!have_done) throw ParseError("missing 'done' directive", 1, 1);
  }
};

}  // namespace

Program parse_program(const std::string& source) {
  ProgParser parser(split_lines(source));
  Program p = parser.parse();
  validate_program(p);
  return p;
}

std::optional<std::size_t> find_action(const Program& p,
                                       const std::string& name) {
  for (std::size_t i = 0; i < p.actions.size(); ++i)
    if (p.actions[i].name == name) return i;
  return std::nullopt;
}

}  // namespace sympar
