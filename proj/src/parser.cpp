#include "biq/parser.hpp"

#include <cctype>

#include "biq/errors.hpp"

namespace biq {
namespace detail {

Lexer::Lexer(const std::string& text) : text_(text) { advance(); }

void Lexer::advance() {
  while (pos_ < text_.size() && std::isspace(uint8_t(text_[pos_]))) ++pos_;
  size_t start = pos_;
  if (pos_ >= text_.size()) {
    tok_ = {Tok::End, "", start};
    return;
  }
  char c = text_[pos_];
  if (c >= 'a' && c <= 'z') {
    size_t e = pos_ + 1;
    while (e < text_.size() &&
           ((text_[e] >= 'a' && text_[e] <= 'z') ||
            (text_[e] >= '0' && text_[e] <= '9')))
      ++e;
    tok_ = {Tok::Name, text_.substr(pos_, e - pos_), start};
    pos_ = e;
    return;
  }
  if (c >= '0' && c <= '9') {
    size_t e = pos_ + 1;
    while (e < text_.size() && text_[e] >= '0' && text_[e] <= '9') ++e;
    tok_ = {Tok::Int, text_.substr(pos_, e - pos_), start};
    pos_ = e;
    return;
  }
  ++pos_;
  switch (c) {
    case '+': tok_ = {Tok::Plus, "+", start}; return;
    case '*': tok_ = {Tok::Star, "*", start}; return;
    case '/': tok_ = {Tok::Slash, "/", start}; return;
    case '^': tok_ = {Tok::Caret, "^", start}; return;
    case '(': tok_ = {Tok::LParen, "(", start}; return;
    case ')': tok_ = {Tok::RParen, ")", start}; return;
    case '=': tok_ = {Tok::Eq, "=", start}; return;
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
}

Token Lexer::next() {
  Token t = tok_;
  advance();
  return t;
}

void Lexer::expect(Tok kind, const char* what) {
  if (tok_.kind != kind)
    throw ParseError(std::string("expected ") + what, tok_.pos);
  advance();
}

namespace {

int parse_exponent(Lexer& lex) {
  if (lex.peek().kind != Tok::Int)
    throw ParseError("expected integer exponent", lex.peek().pos);
  Token t = lex.next();
  long v = 0;
  for (char c : t.text) {
    v = v * 10 + (c - '0');
    if (v > 0xffff) throw ParseError("exponent too large", t.pos);
  }
  if (v < 1) throw ParseError("exponent must be positive", t.pos);
  return int(v);
}

Scalar parse_factor(Lexer& lex, const FieldCtx& ctx) {
  Scalar base;
  const Token& t = lex.peek();
  if (t.kind == Tok::Name) {
    int idx = ctx.index_of(t.text);
    if (idx < 0)
      throw ParseError("unknown indeterminate '" + t.text + "'", t.pos);
    lex.next();
    base = Scalar::var(idx);
  } else if (t.kind == Tok::Int) {
    if (t.text == "0") {
      base = Scalar::zero();
    } else if (t.text == "1") {
      base = Scalar::one();
    } else {
      throw ParseError("only the constants 0 and 1 are allowed", t.pos);
    }
    lex.next();
  } else if (t.kind == Tok::LParen) {
    lex.next();
    base = parse_scalar_expr(lex, ctx);
    lex.expect(Tok::RParen, "')'");
  } else {
    throw ParseError("expected name, constant or '('", t.pos);
  }
  if (lex.peek().kind == Tok::Caret) {
    lex.next();
    int e = parse_exponent(lex);
    Scalar r = Scalar::one();
    for (int i = 0; i < e; ++i) r *= base;
    base = r;
  }
  return base;
}

Scalar parse_term(Lexer& lex, const FieldCtx& ctx) {
  Scalar r = parse_factor(lex, ctx);
  while (lex.peek().kind == Tok::Star || lex.peek().kind == Tok::Slash) {
    Tok op = lex.next().kind;
    size_t pos = lex.peek().pos;
    Scalar f = parse_factor(lex, ctx);
    if (op == Tok::Star) {
      r *= f;
    } else {
      if (f.is_zero()) throw ParseError("division by zero polynomial", pos);
      r = r / f;
    }
  }
  return r;
}

}  // namespace

Scalar parse_scalar_expr(Lexer& lex, const FieldCtx& ctx) {
  Scalar r = parse_term(lex, ctx);
  while (lex.peek().kind == Tok::Plus) {
    lex.next();
    r += parse_term(lex, ctx);
  }
  return r;
}

}  // namespace detail

Scalar parse_scalar(const std::string& text, const FieldCtx& ctx) {
  detail::Lexer lex(text);
  Scalar s = detail::parse_scalar_expr(lex, ctx);
  if (lex.peek().kind != detail::Tok::End)
    throw ParseError("trailing input", lex.peek().pos);
  return s;
}

}  // namespace biq
