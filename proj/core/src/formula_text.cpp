#include "sympar/formula_text.hpp"

#include <cctype>
#include <vector>

#include "sympar/error.hpp"

namespace sympar {

namespace {

enum class Tok {
  End,
  Number,
  Ident,
  LParen,
  RParen,
  Plus,
  Minus,
  Star,
  Slash,
  Lt,
  Le,
  Eq,
  Gt,
  Ge,
  Ne,
};

struct Token {
  Tok kind;
  std::string text;
  int pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int pos = static_cast<int>(i) + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.'))
        ++j;
      out.push_back({Tok::Number, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), pos});
      i = j;
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < s.size() && s[i + 1] == b;
    };
    if (two('<', '=')) {
      out.push_back({Tok::Le, "<=", pos});
      i += 2;
    } else if (two('>', '=')) {
      out.push_back({Tok::Ge, ">=", pos});
      i += 2;
    } else if (two('=', '=')) {
      out.push_back({Tok::Eq, "==", pos});
      i += 2;
    } else if (two('!', '=')) {
      out.push_back({Tok::Ne, "!=", pos});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '<': k = Tok::Lt; break;
        case '>': k = Tok::Gt; break;
        default:
          throw ParseError("unexpected character '" + std::string(1, c) +
                           "' at position " + std::to_string(pos));
      }
      out.push_back({k, std::string(1, c), pos});
      ++i;
    }
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr formula() {
    FormulaPtr f = or_expr();
    expect(Tok::End, "end of input");
    return f;
  }

  TermPtr term_only() {
    TermPtr t = sum();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_kw(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError("expected " + std::string(what) + " near position " +
                       std::to_string(peek().pos));
    take();
  }

  FormulaPtr or_expr() {
    std::vector<FormulaPtr> kids{and_expr()};
    while (at_kw("or")) {
      take();
      kids.push_back(and_expr());
    }
    return kids.size() == 1 ? kids[0] : f_or(std::move(kids));
  }

  FormulaPtr and_expr() {
    std::vector<FormulaPtr> kids{unary()};
    while (at_kw("and")) {
      take();
      kids.push_back(unary());
    }
    return kids.size() == 1 ? kids[0] : f_and(std::move(kids));
  }

  // Distinguishes "(formula)" from an atom starting with a parenthesized
  // arithmetic expression by scanning ahead for boolean material before
  // the matching close paren ends an atom-less region.
  bool paren_is_formula() const {
    int depth = 0;
    for (std::size_t i = pos_;; ++i) {
      const Token& t = toks_[std::min(i, toks_.size() - 1)];
      if (t.kind == Tok::End) return true;
      if (t.kind == Tok::LParen) ++depth;
      if (t.kind == Tok::RParen) {
        --depth;
        if (depth == 0) {
          // A comparison right after the close paren means the paren
          // group was arithmetic.
          const Token& n = toks_[std::min(i + 1, toks_.size() - 1)];
          switch (n.kind) {
            case Tok::Lt:
            case Tok::Le:
            case Tok::Eq:
            case Tok::Gt:
            case Tok::Ge:
            case Tok::Ne:
            case Tok::Plus:
            case Tok::Minus:
            case Tok::Star:
            case Tok::Slash:
              return false;
            default:
              return true;
          }
        }
      }
    }
  }

  FormulaPtr unary() {
    if (at_kw("not")) {
      take();
      return f_not(unary());
    }
    if (at_kw("true")) {
      take();
      return f_true();
    }
    if (at_kw("false")) {
      take();
      return f_false();
    }
    if (peek().kind == Tok::LParen && paren_is_formula()) {
      take();
      FormulaPtr f = or_expr();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr atom() {
    TermPtr lhs = sum();
    CmpOp op;
    switch (peek().kind) {
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      default:
        throw ParseError("expected comparison near position " +
                         std::to_string(peek().pos));
    }
    take();
    TermPtr rhs = sum();
    return f_cmp(std::move(lhs), op, std::move(rhs));
  }

  TermPtr sum() {
    TermPtr t = prod();
    for (;;) {
      if (peek().kind == Tok::Plus) {
        take();
        t = t_add(t, prod());
      } else if (peek().kind == Tok::Minus) {
        take();
        t = t_sub(t, prod());
      } else {
        return t;
      }
    }
  }

  TermPtr prod() {
    TermPtr t = factor();
    for (;;) {
      if (peek().kind == Tok::Star) {
        take();
        t = t_mul(t, factor());
      } else if (peek().kind == Tok::Slash) {
        take();
        t = t_div(t, factor());
      } else {
        return t;
      }
    }
  }

  TermPtr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Minus:
        take();
        return t_neg(factor());
      case Tok::Number: {
        Token tok = take();
        return t_const(parse_rational(tok.text));
      }
      case Tok::LParen: {
        take();
        TermPtr inner = sum();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: {
        Token tok = take();
        if (tok.text == "cos" || tok.text == "sin") {
          expect(Tok::LParen, "'('");
          TermPtr arg = sum();
          expect(Tok::RParen, "')'");
          return tok.text == "cos" ? t_cos(arg) : t_sin(arg);
        }
        return t_var(tok.text);
      }
      default:
        throw ParseError("expected term near position " +
                         std::to_string(t.pos));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  return Parser(lex(text)).formula();
}

TermPtr parse_term_text(const std::string& text) {
  return Parser(lex(text)).term_only();
}

}  // namespace sympar
