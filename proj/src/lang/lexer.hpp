#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tgb/lang/ast.hpp"
#include "tgb/lang/parser.hpp"

namespace tgb::lang::detail {

enum class Tok {
  End,
  Ident,
  Int,
  Float,
  String,
  // keywords
  KwFn, KwGlobal, KwRecord, KwLet, KwIf, KwElse, KwWhile, KwReturn,
  KwBreak, KwContinue, KwNull, KwInt, KwFloat, KwBytes, KwRef,
  // punctuation
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Semi, Colon, Dot, Arrow, Assign,
  EqEq, NotEq, Lt, Le, Gt, Ge, Plus, Minus, Star, Slash, Percent,
  AndAnd, OrOr, Bang,
};

const char* tok_name(Tok t);

struct Token {
  Tok kind = Tok::End;
  SourcePos pos;
  std::string text;       // identifier name or decoded string literal
  std::int64_t int_value = 0;
  double float_value = 0.0;
};

// Appends lexical errors to `diags`; the returned stream always ends in End.
std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags);

}  // namespace tgb::lang::detail
