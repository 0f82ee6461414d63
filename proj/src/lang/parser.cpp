#include "tgb/lang/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "lexer.hpp"

namespace tgb::lang {

using detail::Tok;
using detail::Token;

std::string to_string(const Diagnostic& d) {
  const char* kind = "syntax error";
  if (d.kind == Diagnostic::Kind::DuplicateDefinition) kind = "duplicate definition";
  if (d.kind == Diagnostic::Kind::UnresolvedReference) kind = "unresolved reference";
  std::ostringstream os;
  os << d.pos.line << ":" << d.pos.column << ": " << kind << ": " << d.message;
  return os.str();
}

namespace {

std::string join(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += to_string(d);
  }
  return out;
}

[[noreturn]] void raise(std::vector<Diagnostic> ds) {
  switch (ds.front().kind) {
    case Diagnostic::Kind::Syntax: throw SyntaxError(std::move(ds));
    case Diagnostic::Kind::DuplicateDefinition: throw DuplicateDefinition(std::move(ds));
    case Diagnostic::Kind::UnresolvedReference: throw UnresolvedReference(std::move(ds));
  }
  throw SyntaxError(std::move(ds));
}

struct Abort {};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  Program run() {
    Program p;
    while (!check(Tok::End)) {
      if (check(Tok::KwRecord)) {
        p.records.push_back(record_decl());
      } else if (check(Tok::KwGlobal)) {
        p.globals.push_back(global_decl());
      } else if (check(Tok::KwFn)) {
        p.functions.push_back(function_decl());
      } else {
        fail(std::string("expected 'fn', 'global' or 'record', found ") + detail::tok_name(peek().kind));
      }
    }
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool check(Tok t) const { return peek().kind == t; }
  const Token& advance() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  bool accept(Tok t) {
    if (!check(t)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(std::string msg) {
    diags_.push_back({Diagnostic::Kind::Syntax, peek().pos, std::move(msg)});
    throw Abort{};
  }

  const Token& expect(Tok t, const char* what) {
    if (!check(t)) {
      fail(std::string("expected ") + detail::tok_name(t) + " " + what + ", found " + detail::tok_name(peek().kind));
    }
    return advance();
  }

  Type type() {
    if (accept(Tok::KwInt)) return Type::int_type();
    if (accept(Tok::KwFloat)) return Type::float_type();
    if (accept(Tok::KwBytes)) return Type::bytes_type();
    if (accept(Tok::KwRef)) return Type::ref_to(type());
    if (accept(Tok::LBracket)) {
      Type elem = type();
      expect(Tok::RBracket, "to close array type");
      return Type::array_of(std::move(elem));
    }
    if (check(Tok::Ident)) return Type::record_named(advance().text);
    fail(std::string("expected a type, found ") + detail::tok_name(peek().kind));
  }

  RecordDef record_decl() {
    RecordDef r;
    r.pos = advance().pos;
    r.name = expect(Tok::Ident, "after 'record'").text;
    expect(Tok::LBrace, "to open record body");
    while (!check(Tok::RBrace)) {
      Param f;
      f.name = expect(Tok::Ident, "as field name").text;
      expect(Tok::Colon, "after field name");
      f.type = type();
      r.fields.push_back(std::move(f));
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RBrace, "to close record body");
    return r;
  }

  GlobalDef global_decl() {
    GlobalDef g;
    g.pos = advance().pos;
    g.name = expect(Tok::Ident, "after 'global'").text;
    expect(Tok::Colon, "after global name");
    g.type = type();
    if (accept(Tok::Assign)) g.init = expr();
    expect(Tok::Semi, "after global declaration");
    return g;
  }

  FunctionDef function_decl() {
    FunctionDef f;
    f.pos = advance().pos;
    f.name = expect(Tok::Ident, "after 'fn'").text;
    expect(Tok::LParen, "to open parameter list");
    while (!check(Tok::RParen)) {
      Param prm;
      prm.name = expect(Tok::Ident, "as parameter name").text;
      expect(Tok::Colon, "after parameter name");
      prm.type = type();
      f.params.push_back(std::move(prm));
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RParen, "to close parameter list");
    if (accept(Tok::Arrow)) f.returns = type();
    f.body = block();
    return f;
  }

  std::vector<std::unique_ptr<Stmt>> block() {
    expect(Tok::LBrace, "to open block");
    std::vector<std::unique_ptr<Stmt>> out;
    while (!check(Tok::RBrace) && !check(Tok::End)) out.push_back(statement());
    expect(Tok::RBrace, "to close block");
    return out;
  }

  std::unique_ptr<Stmt> statement() {
    auto s = std::make_unique<Stmt>();
    s->pos = peek().pos;
    if (accept(Tok::KwLet)) {
      s->kind = Stmt::Kind::Let;
      s->name = expect(Tok::Ident, "after 'let'").text;
      if (accept(Tok::Colon)) s->declared = type();
      expect(Tok::Assign, "in let statement");
      s->value = expr();
      expect(Tok::Semi, "after let statement");
    } else if (accept(Tok::KwIf)) {
      if_rest(*s);
    } else if (accept(Tok::KwWhile)) {
      s->kind = Stmt::Kind::While;
      expect(Tok::LParen, "after 'while'");
      s->value = expr();
      expect(Tok::RParen, "after loop condition");
      s->body = block();
    } else if (accept(Tok::KwReturn)) {
      s->kind = Stmt::Kind::Return;
      if (!check(Tok::Semi)) s->value = expr();
      expect(Tok::Semi, "after return");
    } else if (accept(Tok::KwBreak)) {
      s->kind = Stmt::Kind::Break;
      expect(Tok::Semi, "after break");
    } else if (accept(Tok::KwContinue)) {
      s->kind = Stmt::Kind::Continue;
      expect(Tok::Semi, "after continue");
    } else {
      auto e = expr();
      if (accept(Tok::Assign)) {
        using K = Expr::Kind;
        if (e->kind != K::Name && e->kind != K::Index && e->kind != K::Field && e->kind != K::Arrow) {
          diags_.push_back({Diagnostic::Kind::Syntax, e->pos, "left side of '=' is not assignable"});
          throw Abort{};
        }
        s->kind = Stmt::Kind::Assign;
        s->target = std::move(e);
        s->value = expr();
      } else {
        s->kind = Stmt::Kind::ExprStmt;
        s->value = std::move(e);
      }
      expect(Tok::Semi, "after statement");
    }
    return s;
  }

  void if_rest(Stmt& s) {
    s.kind = Stmt::Kind::If;
    expect(Tok::LParen, "after 'if'");
    s.value = expr();
    expect(Tok::RParen, "after condition");
    s.body = block();
    if (accept(Tok::KwElse)) {
      s.has_else = true;
      if (check(Tok::KwIf)) {
        auto nested = std::make_unique<Stmt>();
        nested->pos = advance().pos;
        if_rest(*nested);
        s.orelse.push_back(std::move(nested));
      } else {
        s.orelse = block();
      }
    }
  }

  std::unique_ptr<Expr> make(Expr::Kind k, SourcePos pos) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->pos = pos;
    return e;
  }

  std::unique_ptr<Expr> expr() { return logical_or(); }

  std::unique_ptr<Expr> logical_or() {
    auto lhs = logical_and();
    while (check(Tok::OrOr)) {
      auto e = make(Expr::Kind::Logical, advance().pos);
      e->logical = LogicalOp::Or;
      e->operands.push_back(std::move(lhs));
      e->operands.push_back(logical_and());
      lhs = std::move(e);
    }
    return lhs;
  }

  std::unique_ptr<Expr> logical_and() {
    auto lhs = equality();
    while (check(Tok::AndAnd)) {
      auto e = make(Expr::Kind::Logical, advance().pos);
      e->logical = LogicalOp::And;
      e->operands.push_back(std::move(lhs));
      e->operands.push_back(equality());
      lhs = std::move(e);
    }
    return lhs;
  }

  std::unique_ptr<Expr> binary(std::unique_ptr<Expr> lhs, BinaryOp op, std::unique_ptr<Expr> (Parser::*next)()) {
    auto e = make(Expr::Kind::Binary, advance().pos);
    e->binary = op;
    e->operands.push_back(std::move(lhs));
    e->operands.push_back((this->*next)());
    return e;
  }

  std::unique_ptr<Expr> equality() {
    auto lhs = comparison();
    for (;;) {
      if (check(Tok::EqEq)) lhs = binary(std::move(lhs), BinaryOp::Eq, &Parser::comparison);
      else if (check(Tok::NotEq)) lhs = binary(std::move(lhs), BinaryOp::Ne, &Parser::comparison);
      else return lhs;
    }
  }

  std::unique_ptr<Expr> comparison() {
    auto lhs = additive();
    for (;;) {
      if (check(Tok::Lt)) lhs = binary(std::move(lhs), BinaryOp::Lt, &Parser::additive);
      else if (check(Tok::Le)) lhs = binary(std::move(lhs), BinaryOp::Le, &Parser::additive);
      else if (check(Tok::Gt)) lhs = binary(std::move(lhs), BinaryOp::Gt, &Parser::additive);
      else if (check(Tok::Ge)) lhs = binary(std::move(lhs), BinaryOp::Ge, &Parser::additive);
      else return lhs;
    }
  }

  std::unique_ptr<Expr> additive() {
    auto lhs = multiplicative();
    for (;;) {
      if (check(Tok::Plus)) lhs = binary(std::move(lhs), BinaryOp::Add, &Parser::multiplicative);
      else if (check(Tok::Minus)) lhs = binary(std::move(lhs), BinaryOp::Sub, &Parser::multiplicative);
      else return lhs;
    }
  }

  std::unique_ptr<Expr> multiplicative() {
    auto lhs = unary();
    for (;;) {
      if (check(Tok::Star)) lhs = binary(std::move(lhs), BinaryOp::Mul, &Parser::unary);
      else if (check(Tok::Slash)) lhs = binary(std::move(lhs), BinaryOp::Div, &Parser::unary);
      else if (check(Tok::Percent)) lhs = binary(std::move(lhs), BinaryOp::Mod, &Parser::unary);
      else return lhs;
    }
  }

  std::unique_ptr<Expr> unary() {
    if (check(Tok::Minus)) {
      const auto pos = advance().pos;
      // Fold negative literals so that INT64_MIN is writable.
      if (check(Tok::Int)) {
        auto e = make(Expr::Kind::IntLit, pos);
        e->int_value = static_cast<std::int64_t>(0ull - static_cast<std::uint64_t>(advance().int_value));
        return postfix(std::move(e));
      }
      if (check(Tok::Float)) {
        auto e = make(Expr::Kind::FloatLit, pos);
        e->float_value = -advance().float_value;
        return postfix(std::move(e));
      }
      auto e = make(Expr::Kind::Unary, pos);
      e->unary = UnaryOp::Neg;
      e->operands.push_back(unary());
      return e;
    }
    if (check(Tok::Bang)) {
      auto e = make(Expr::Kind::Unary, advance().pos);
      e->unary = UnaryOp::Not;
      e->operands.push_back(unary());
      return e;
    }
    return postfix(primary());
  }

  std::unique_ptr<Expr> postfix(std::unique_ptr<Expr> e) {
    for (;;) {
      if (check(Tok::LBracket)) {
        auto idx = make(Expr::Kind::Index, advance().pos);
        idx->operands.push_back(std::move(e));
        idx->operands.push_back(expr());
        expect(Tok::RBracket, "to close index");
        e = std::move(idx);
      } else if (check(Tok::Dot)) {
        auto f = make(Expr::Kind::Field, advance().pos);
        f->text = expect(Tok::Ident, "after '.'").text;
        f->operands.push_back(std::move(e));
        e = std::move(f);
      } else if (check(Tok::Arrow)) {
        auto f = make(Expr::Kind::Arrow, advance().pos);
        f->text = expect(Tok::Ident, "after '->'").text;
        f->operands.push_back(std::move(e));
        e = std::move(f);
      } else {
        return e;
      }
    }
  }

  std::unique_ptr<Expr> primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        auto e = make(Expr::Kind::IntLit, t.pos);
        e->int_value = advance().int_value;
        return e;
      }
      case Tok::Float: {
        auto e = make(Expr::Kind::FloatLit, t.pos);
        e->float_value = advance().float_value;
        return e;
      }
      case Tok::String: {
        auto e = make(Expr::Kind::BytesLit, t.pos);
        e->text = advance().text;
        return e;
      }
      case Tok::KwNull:
        advance();
        return make(Expr::Kind::NullLit, t.pos);
      case Tok::LParen: {
        advance();
        auto e = expr();
        expect(Tok::RParen, "to close parenthesis");
        return e;
      }
      case Tok::LBracket: {
        auto e = make(Expr::Kind::ArrayLit, advance().pos);
        while (!check(Tok::RBracket)) {
          e->operands.push_back(expr());
          if (!accept(Tok::Comma)) break;
        }
        expect(Tok::RBracket, "to close array literal");
        return e;
      }
      case Tok::Ident: {
        const Token& id = advance();
        if (check(Tok::LParen)) {
          auto e = make(Expr::Kind::Call, id.pos);
          e->text = id.text;
          advance();
          while (!check(Tok::RParen)) {
            e->operands.push_back(expr());
            if (!accept(Tok::Comma)) break;
          }
          expect(Tok::RParen, "to close argument list");
          return e;
        }
        if (check(Tok::LBrace)) {
          auto e = make(Expr::Kind::RecordLit, id.pos);
          e->text = id.text;
          advance();
          while (!check(Tok::RBrace)) {
            e->field_names.push_back(expect(Tok::Ident, "as field name").text);
            expect(Tok::Colon, "after field name");
            e->operands.push_back(expr());
            if (!accept(Tok::Comma)) break;
          }
          expect(Tok::RBrace, "to close record literal");
          return e;
        }
        auto e = make(Expr::Kind::Name, id.pos);
        e->text = id.text;
        return e;
      }
      default:
        fail(std::string("expected an expression, found ") + detail::tok_name(t.kind));
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<Diagnostic>& diags_;
};

// Name resolution, arity checks and statement numbering.
class Resolver {
 public:
  Resolver(Program& p, std::vector<Diagnostic>& diags) : p_(p), diags_(diags) {}

  void run() {
    std::set<std::string> seen;
    for (auto& r : p_.records) {
      if (!seen.insert(r.name).second) dup(r.pos, "record '" + r.name + "'");
      auto shape = std::make_shared<RecordShape>();
      shape->name = r.name;
      std::set<std::string> fields;
      for (const auto& f : r.fields) {
        if (!fields.insert(f.name).second) dup(r.pos, "field '" + f.name + "' in record '" + r.name + "'");
        shape->fields.push_back(f.name);
      }
      r.shape = std::move(shape);
    }
    for (const auto& r : p_.records) {
      for (const auto& f : r.fields) check_type(f.type, r.pos);
    }

    seen.clear();
    for (std::uint32_t i = 0; i < p_.functions.size(); ++i) {
      auto& f = p_.functions[i];
      f.id = i;
      if (!seen.insert(f.name).second) dup(f.pos, "function '" + f.name + "'");
      if (builtin_from_name(f.name)) dup(f.pos, "function '" + f.name + "' shadows a builtin");
      fn_index_.emplace(f.name, i);
    }
    if (auto it = fn_index_.find("main"); it == fn_index_.end()) {
      diags_.push_back({Diagnostic::Kind::UnresolvedReference, {1, 1}, "program has no function 'main'"});
    } else {
      p_.entry = it->second;
      if (!p_.functions[it->second].params.empty()) {
        diags_.push_back({Diagnostic::Kind::Syntax, p_.functions[it->second].pos, "'main' takes no parameters"});
      }
    }

    seen.clear();
    for (std::uint32_t i = 0; i < p_.globals.size(); ++i) {
      auto& g = p_.globals[i];
      check_type(g.type, g.pos);
      if (g.init) {
        scopes_.clear();
        resolve(*g.init);
      }
      if (!seen.insert(g.name).second) dup(g.pos, "global '" + g.name + "'");
      // Only globals declared earlier are visible to initializers.
      global_index_.emplace(g.name, i);
    }

    for (auto& f : p_.functions) {
      scopes_.clear();
      scopes_.emplace_back();
      next_slot_ = 0;
      for (const auto& prm : f.params) {
        check_type(prm.type, f.pos);
        if (!scopes_.back().emplace(prm.name, next_slot_).second) dup(f.pos, "parameter '" + prm.name + "'");
        ++next_slot_;
      }
      if (f.returns) check_type(*f.returns, f.pos);
      loop_depth_ = 0;
      resolve_block(f.body);
      f.num_slots = next_slot_;
    }

    StmtId next = 0;
    for (auto& f : p_.functions) number(f.body, next);
    p_.num_stmts = next;
  }

 private:
  void dup(SourcePos pos, const std::string& what) {
    diags_.push_back({Diagnostic::Kind::DuplicateDefinition, pos, what + " is defined more than once"});
  }

  void unresolved(SourcePos pos, const std::string& what) {
    diags_.push_back({Diagnostic::Kind::UnresolvedReference, pos, what});
  }

  void check_type(const Type& t, SourcePos pos) {
    if (t.kind == Type::Kind::Record && !p_.find_record(t.record)) {
      unresolved(pos, "unknown record type '" + t.record + "'");
    }
    if (t.elem) check_type(*t.elem, pos);
  }

  void number(std::vector<std::unique_ptr<Stmt>>& block, StmtId& next) {
    for (auto& s : block) {
      s->id = next++;
      number(s->body, next);
      number(s->orelse, next);
    }
  }

  void resolve_block(std::vector<std::unique_ptr<Stmt>>& block) {
    scopes_.emplace_back();
    for (auto& s : block) resolve(*s);
    scopes_.pop_back();
  }

  void resolve(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Let:
        resolve(*s.value);
        if (s.declared) check_type(*s.declared, s.pos);
        if (scopes_.back().count(s.name)) dup(s.pos, "local '" + s.name + "'");
        s.slot = next_slot_++;
        scopes_.back()[s.name] = s.slot;
        break;
      case Stmt::Kind::Assign:
        resolve(*s.target);
        resolve(*s.value);
        break;
      case Stmt::Kind::ExprStmt:
        resolve(*s.value);
        break;
      case Stmt::Kind::Return:
        if (s.value) resolve(*s.value);
        break;
      case Stmt::Kind::If:
        resolve(*s.value);
        resolve_block(s.body);
        resolve_block(s.orelse);
        break;
      case Stmt::Kind::While:
        resolve(*s.value);
        ++loop_depth_;
        resolve_block(s.body);
        --loop_depth_;
        break;
      case Stmt::Kind::Break:
      case Stmt::Kind::Continue:
        if (loop_depth_ == 0) {
          diags_.push_back({Diagnostic::Kind::Syntax, s.pos, "'break'/'continue' outside of a loop"});
        }
        break;
    }
  }

  void resolve(Expr& e) {
    for (auto& op : e.operands) resolve(*op);
    switch (e.kind) {
      case Expr::Kind::Name: {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
          if (auto f = it->find(e.text); f != it->end()) {
            e.kind = Expr::Kind::Local;
            e.index = f->second;
            return;
          }
        }
        if (auto g = global_index_.find(e.text); g != global_index_.end()) {
          e.kind = Expr::Kind::Global;
          e.index = g->second;
          return;
        }
        unresolved(e.pos, "unknown variable '" + e.text + "'");
        return;
      }
      case Expr::Kind::Call: {
        if (auto f = fn_index_.find(e.text); f != fn_index_.end()) {
          e.index = f->second;
          const auto want = p_.functions[f->second].params.size();
          if (e.operands.size() != want) {
            diags_.push_back({Diagnostic::Kind::Syntax, e.pos,
                              "'" + e.text + "' expects " + std::to_string(want) + " argument(s)"});
          }
          return;
        }
        if (auto b = builtin_from_name(e.text)) {
          e.kind = Expr::Kind::BuiltinCall;
          e.index = static_cast<std::uint32_t>(*b);
          if (static_cast<int>(e.operands.size()) != builtin_arity(*b)) {
            diags_.push_back({Diagnostic::Kind::Syntax, e.pos,
                              "builtin '" + e.text + "' expects " + std::to_string(builtin_arity(*b)) +
                                  " argument(s)"});
          }
          return;
        }
        unresolved(e.pos, "unknown function '" + e.text + "'");
        return;
      }
      case Expr::Kind::RecordLit: {
        const RecordDef* r = p_.find_record(e.text);
        if (!r) {
          unresolved(e.pos, "unknown record type '" + e.text + "'");
          return;
        }
        std::set<std::string> given;
        for (const auto& name : e.field_names) {
          if (r->shape->index_of(name) < 0) unresolved(e.pos, "record '" + e.text + "' has no field '" + name + "'");
          if (!given.insert(name).second) dup(e.pos, "field '" + name + "' in record literal");
        }
        return;
      }
      default:
        return;
    }
  }

  Program& p_;
  std::vector<Diagnostic>& diags_;
  std::unordered_map<std::string, FunctionId> fn_index_;
  std::unordered_map<std::string, std::uint32_t> global_index_;
  std::vector<std::unordered_map<std::string, std::uint32_t>> scopes_;
  std::uint32_t next_slot_ = 0;
  int loop_depth_ = 0;
};

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Program parse(std::string_view source) {
  std::vector<Diagnostic> diags;
  auto toks = detail::lex(source, diags);
  if (!diags.empty()) raise(std::move(diags));
  Program p;
  try {
    p = Parser(std::move(toks), diags).run();
  } catch (const Abort&) {
    raise(std::move(diags));
  }
  Resolver(p, diags).run();
  if (!diags.empty()) raise(std::move(diags));
  return p;
}

Program parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read program '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace tgb::lang
