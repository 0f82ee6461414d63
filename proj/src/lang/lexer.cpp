#include "lexer.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

namespace tgb::lang::detail {

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer literal";
    case Tok::Float: return "float literal";
    case Tok::String: return "string literal";
    case Tok::KwFn: return "'fn'";
    case Tok::KwGlobal: return "'global'";
    case Tok::KwRecord: return "'record'";
    case Tok::KwLet: return "'let'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwBreak: return "'break'";
    case Tok::KwContinue: return "'continue'";
    case Tok::KwNull: return "'null'";
    case Tok::KwInt: return "'int'";
    case Tok::KwFloat: return "'float'";
    case Tok::KwBytes: return "'bytes'";
    case Tok::KwRef: return "'ref'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::Assign: return "'='";
    case Tok::EqEq: return "'=='";
    case Tok::NotEq: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Percent: return "'%'";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keywords() {
  static const std::unordered_map<std::string_view, Tok> table = {
      {"fn", Tok::KwFn},         {"global", Tok::KwGlobal}, {"record", Tok::KwRecord},
      {"let", Tok::KwLet},       {"if", Tok::KwIf},         {"else", Tok::KwElse},
      {"while", Tok::KwWhile},   {"return", Tok::KwReturn}, {"break", Tok::KwBreak},
      {"continue", Tok::KwContinue}, {"null", Tok::KwNull}, {"int", Tok::KwInt},
      {"float", Tok::KwFloat},   {"bytes", Tok::KwBytes},   {"ref", Tok::KwRef},
  };
  return table;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.pos = pos();
      if (at_end()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      const char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_word(t);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(t);
      } else if (c == '"') {
        lex_string(t);
      } else if (!lex_punct(t)) {
        error(t.pos, std::string("unexpected character '") + c + "'");
        advance();
        continue;
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
  SourcePos pos() const { return {line_, col_}; }

  char advance() {
    const char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void error(SourcePos p, std::string msg) {
    diags_.push_back({Diagnostic::Kind::Syntax, p, std::move(msg)});
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const auto start = pos();
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) {
          error(start, "unterminated block comment");
          return;
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_word(Token& t) {
    const std::size_t start = i_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) advance();
    const std::string_view word = src_.substr(start, i_ - start);
    if (auto it = keywords().find(word); it != keywords().end()) {
      t.kind = it->second;
    } else {
      t.kind = Tok::Ident;
    }
    t.text = std::string(word);
  }

  void lex_number(Token& t) {
    const std::size_t start = i_;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      const std::size_t digits = i_;
      while (!at_end() && hex_digit(peek()) >= 0) advance();
      std::uint64_t v = 0;
      const auto* first = src_.data() + digits;
      const auto* last = src_.data() + i_;
      auto [p, ec] = std::from_chars(first, last, v, 16);
      if (digits == i_ || ec != std::errc() || p != last) error(t.pos, "malformed hex literal");
      t.kind = Tok::Int;
      t.int_value = static_cast<std::int64_t>(v);
      return;
    }
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    bool is_float = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    const std::string text(src_.substr(start, i_ - start));
    if (is_float) {
      t.kind = Tok::Float;
      t.float_value = std::stod(text);
    } else {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      // 9223372036854775808 is accepted so that `-9223372036854775808` is expressible.
      if (ec != std::errc() || v > 9223372036854775808ull) error(t.pos, "integer literal out of range");
      t.kind = Tok::Int;
      t.int_value = static_cast<std::int64_t>(v);
    }
  }

  void lex_string(Token& t) {
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (at_end() || peek() == '\n') {
        error(t.pos, "unterminated string literal");
        break;
      }
      const char c = advance();
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) continue;
      const char e = advance();
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '0': out.push_back('\0'); break;
        case '\\': out.push_back('\\'); break;
        case '"': out.push_back('"'); break;
        case 'x': {
          const int hi = hex_digit(peek());
          const int lo = hex_digit(peek(1));
          if (hi < 0 || lo < 0) {
            error(pos(), "malformed \\x escape");
          } else {
            advance();
            advance();
            out.push_back(static_cast<char>(hi * 16 + lo));
          }
          break;
        }
        default:
          error(pos(), std::string("unknown escape '\\") + e + "'");
      }
    }
    t.kind = Tok::String;
    t.text = std::move(out);
  }

  bool lex_punct(Token& t) {
    const char c = peek();
    const char n = peek(1);
    auto two = [&](Tok k) {
      advance();
      advance();
      t.kind = k;
      return true;
    };
    auto one = [&](Tok k) {
      advance();
      t.kind = k;
      return true;
    };
    switch (c) {
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case '{': return one(Tok::LBrace);
      case '}': return one(Tok::RBrace);
      case '[': return one(Tok::LBracket);
      case ']': return one(Tok::RBracket);
      case ',': return one(Tok::Comma);
      case ';': return one(Tok::Semi);
      case ':': return one(Tok::Colon);
      case '.': return one(Tok::Dot);
      case '+': return one(Tok::Plus);
      case '*': return one(Tok::Star);
      case '/': return one(Tok::Slash);
      case '%': return one(Tok::Percent);
      case '-': return n == '>' ? two(Tok::Arrow) : one(Tok::Minus);
      case '=': return n == '=' ? two(Tok::EqEq) : one(Tok::Assign);
      case '!': return n == '=' ? two(Tok::NotEq) : one(Tok::Bang);
      case '<': return n == '=' ? two(Tok::Le) : one(Tok::Lt);
      case '>': return n == '=' ? two(Tok::Ge) : one(Tok::Gt);
      case '&':
        if (n == '&') return two(Tok::AndAnd);
        return false;
      case '|':
        if (n == '|') return two(Tok::OrOr);
        return false;
      default:
        return false;
    }
  }

  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  std::size_t i_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

std::vector<Token> lex(std::string_view source, std::vector<Diagnostic>& diags) {
  return Lexer(source, diags).run();
}

}  // namespace tgb::lang::detail
