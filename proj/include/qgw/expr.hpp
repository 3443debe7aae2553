#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qgw/error.hpp"
#include "qgw/ncpoly.hpp"
#include "qgw/scalar.hpp"

namespace qgw {

/// Name resolution for the shared expression grammar. Names in `gens` parse
/// as noncommuting letters; names in `params` as commuting parameters. With
/// `auto_params` set, unknown names register as new parameters (used for
/// matrix files, which carry no declarations); otherwise they are rejected.
struct ExprContext {
  std::set<std::string> gens;
  std::map<std::string, ParamId> params;
  bool auto_params = false;

  static ExprContext scalars_only() {
    ExprContext ctx;
    ctx.auto_params = true;
    return ctx;
  }
};

namespace detail {

struct Token {
  enum Kind { Int, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, At, End };
  Kind kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  Lexer(const std::string& src, int line_offset)
      : src_(src), line_(line_offset) {}

  Token next() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) advance();
    int line = line_, col = col_;
    if (pos_ >= src_.size()) return {Token::End, "", line, col};
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        text += src_[pos_];
        advance();
      }
      return {Token::Int, text, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string text;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        text += src_[pos_];
        advance();
      }
      return {Token::Name, text, line, col};
    }
    advance();
    switch (c) {
      case '+': return {Token::Plus, "+", line, col};
      case '-': return {Token::Minus, "-", line, col};
      case '*': return {Token::Star, "*", line, col};
      case '/': return {Token::Slash, "/", line, col};
      case '^': return {Token::Caret, "^", line, col};
      case '(': return {Token::LParen, "(", line, col};
      case ')': return {Token::RParen, ")", line, col};
      case '@': return {Token::At, "@", line, col};
    }
    fail(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "' at line " +
                                     std::to_string(line) + ", col " + std::to_string(col));
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_, col_ = 1;
};

class ExprParser {
 public:
  ExprParser(const std::string& src, const ExprContext& ctx, int line_offset)
      : lexer_(src, line_offset), ctx_(ctx) {
    cur_ = lexer_.next();
  }

  NCPoly parse_full() {
    NCPoly out = parse_sum();
    expect(Token::End, "end of expression");
    return out;
  }

 private:
  [[noreturn]] void error_at(const Token& tok, const std::string& what) {
    fail(ErrorKind::SyntaxError, what + " at line " + std::to_string(tok.line) + ", col " +
                                     std::to_string(tok.col));
  }

  void bump() { cur_ = lexer_.next(); }

  void expect(Token::Kind kind, const std::string& what) {
    if (cur_.kind != kind) error_at(cur_, "expected " + what);
  }

  NCPoly parse_sum() {
    NCPoly acc = parse_product();
    while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
      bool minus = cur_.kind == Token::Minus;
      bump();
      NCPoly rhs = parse_product();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  NCPoly parse_product() {
    NCPoly acc = parse_factor();
    while (cur_.kind == Token::Star || cur_.kind == Token::Slash) {
      bool divide = cur_.kind == Token::Slash;
      Token op = cur_;
      bump();
      NCPoly rhs = parse_factor();
      if (divide) {
        Scalar d = as_scalar(rhs, op);
        if (d.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero in expression");
        acc = (Scalar(1L) / d) * acc;
      } else {
        acc *= rhs;
      }
    }
    return acc;
  }

  NCPoly parse_factor() {
    if (cur_.kind == Token::Minus) {
      bump();
      return -parse_factor();
    }
    return parse_power();
  }

  NCPoly parse_power() {
    NCPoly base = parse_atom();
    if (cur_.kind != Token::Caret) return base;
    Token op = cur_;
    bump();
    int sign = 1;
    if (cur_.kind == Token::Minus) {
      sign = -1;
      bump();
    }
    expect(Token::Int, "integer exponent");
    int e = sign * std::stoi(cur_.text);
    bump();
    if (e >= 0) return base.pow(e);
    return NCPoly(as_scalar(base, op).pow(e));
  }

  NCPoly parse_atom() {
    if (cur_.kind == Token::Int) {
      NCPoly out(Scalar(BigRat(BigInt(cur_.text))));
      bump();
      return out;
    }
    if (cur_.kind == Token::LParen) {
      bump();
      NCPoly out = parse_sum();
      expect(Token::RParen, "')'");
      bump();
      return out;
    }
    if (cur_.kind == Token::Name) {
      Token tok = cur_;
      bump();
      if (ctx_.gens.count(tok.text)) {
        int slot = 1;
        if (cur_.kind == Token::At) {
          bump();
          expect(Token::Int, "slot index after '@'");
          slot = std::stoi(cur_.text);
          if (slot < 1) error_at(cur_, "slots are 1-based");
          bump();
        }
        return NCPoly::gen(tok.text, slot);
      }
      auto it = ctx_.params.find(tok.text);
      if (it != ctx_.params.end()) return NCPoly(Scalar::param(it->second));
      if (ctx_.auto_params) return NCPoly(Scalar::param(param_id(tok.text)));
      fail(ErrorKind::UnknownGenerator,
           "unknown name '" + tok.text + "' at line " + std::to_string(tok.line) + ", col " +
               std::to_string(tok.col));
    }
    error_at(cur_, "expected a value");
  }

  Scalar as_scalar(const NCPoly& p, const Token& where) {
    if (p.is_zero()) return Scalar();
    if (p.terms().size() == 1 && p.terms().begin()->first.empty())
      return p.terms().begin()->second;
    error_at(where, "operation needs a pure scalar operand");
  }

  Lexer lexer_;
  Token cur_;
  const ExprContext& ctx_;
};

}  // namespace detail

/// Parses the shared expression grammar into an NCPoly over the given
/// context. `line_offset` seeds error locations when the text is embedded in
/// a larger file.
inline NCPoly parse_ncpoly(const std::string& text, const ExprContext& ctx,
                           int line_offset = 1) {
  return detail::ExprParser(text, ctx, line_offset).parse_full();
}

/// Parses a commutative expression; names become parameters.
inline Scalar parse_scalar(const std::string& text, int line_offset = 1) {
  ExprContext ctx = ExprContext::scalars_only();
  NCPoly p = parse_ncpoly(text, ctx, line_offset);
  if (p.is_zero()) return Scalar();
  if (p.terms().size() == 1 && p.terms().begin()->first.empty())
    return p.terms().begin()->second;
  fail(ErrorKind::SyntaxError, "expected a scalar expression: " + text);
}

}  // namespace qgw
