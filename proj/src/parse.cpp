#include "freediv/parse.hpp"

#include <cctype>
#include <sstream>

#include "freediv/error.hpp"

namespace freediv {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '/': k = Tok::Slash; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const VarContext& ctx) : toks_(std::move(toks)), ctx_(ctx) {}

  Polynomial parse() {
    Polynomial p = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().kind == Tok::End ? msg + " (end of input)" : msg, peek().pos);
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = next().kind == Tok::Minus;
      Polynomial t = term();
      if (minus) acc -= t; else acc += t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (peek().kind == Tok::Star) {
      next();
      acc *= unary();
    }
    if (peek().kind == Tok::Number || peek().kind == Tok::Ident || peek().kind == Tok::LParen)
      fail("implicit multiplication is not allowed before '" + peek().text + "'");
    return acc;
  }

  Polynomial unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek().kind == Tok::Caret) {
      next();
      if (peek().kind != Tok::Number) fail("exponent must be a non-negative integer literal");
      const Token& t = next();
      if (t.text.size() > 6) throw ParseError("exponent too large", t.pos);
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
      if (peek().kind == Tok::Caret) fail("chained '^' is ambiguous; use parentheses");
    }
    return base;
  }

  Polynomial atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        Rational q(Integer(t.text), 1);
        if (peek().kind == Tok::Slash) {
          next();
          if (peek().kind != Tok::Number) fail("expected denominator after '/'");
          const Token& d = next();
          Integer den(d.text);
          if (den == 0) throw ParseError("zero denominator", d.pos);
          q = Rational(Integer(t.text), den);
          q.canonicalize();
        }
        return Polynomial::constant(ctx_, q);
      }
      case Tok::Ident: {
        next();
        auto i = ctx_.index_of(t.text);
        if (!i) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return Polynomial::variable(ctx_, *i);
      }
      case Tok::LParen: {
        next();
        Polynomial p = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return p;
      }
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  const VarContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> scan_identifiers(std::string_view text) {
  std::vector<std::string> names;
  for (const auto& t : tokenize(text)) {
    if (t.kind != Tok::Ident) continue;
    if (std::find(names.begin(), names.end(), t.text) == names.end()) names.push_back(t.text);
  }
  return names;
}

Polynomial parse_polynomial(std::string_view text, const VarContext& ctx) {
  return Parser(tokenize(text), ctx).parse();
}

Polynomial parse_polynomial(std::string_view text) {
  return parse_polynomial(text, VarContext(scan_identifiers(text)));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    Rational mag = abs(c);
    const bool is_const = total_degree(e) == 0;
    bool need_star = false;
    if (is_const || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      os << p.context().name(i);
      if (e[i] > 1) os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace freediv
