#ifndef BIQ_PARSER_HPP
#define BIQ_PARSER_HPP

#include <string>

#include "biq/scalar.hpp"

namespace biq {

// Expression grammar (whitespace insignificant):
//   expr   := term ('+' term)*
//   term   := factor (('*' | '/') factor)*
//   factor := atom ('^' posint)?
//   atom   := name | '0' | '1' | '(' expr ')'
// Names match [a-z][a-z0-9]* and must be declared in the field context.
Scalar parse_scalar(const std::string& text, const FieldCtx& ctx);

namespace detail {

enum class Tok { Name, Int, Plus, Star, Slash, Caret, LParen, RParen, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text);
  const Token& peek() const { return tok_; }
  Token next();
  void expect(Tok kind, const char* what);

 private:
  void advance();
  const std::string text_;
  size_t pos_ = 0;
  Token tok_;
};

// Parses an expr starting at the lexer's current token.
Scalar parse_scalar_expr(Lexer& lex, const FieldCtx& ctx);

}  // namespace detail
}  // namespace biq

#endif
