#include "tgb/lang/pretty.hpp"

#include <charconv>
#include <cstdio>

namespace tgb::lang {
namespace {

std::string quote(const std::string& bytes) {
  std::string out = "\"";
  for (unsigned char c : bytes) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default:
        if (c >= 0x20 && c < 0x7F) {
          out.push_back(static_cast<char>(c));
        } else {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\x%02x", c);
          out += buf;
        }
    }
  }
  return out + "\"";
}

std::string float_literal(double v) {
  char buf[400];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  std::string s(buf, p);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

const char* binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

class Printer {
 public:
  explicit Printer(const Program& p) : p_(p) {}

  std::string run() {
    for (const auto& r : p_.records) {
      out_ += "record " + r.name + " {";
      for (std::size_t i = 0; i < r.fields.size(); ++i) {
        out_ += (i ? ", " : " ") + r.fields[i].name + ": " + to_string(r.fields[i].type);
      }
      out_ += " }\n";
    }
    for (const auto& g : p_.globals) {
      out_ += "global " + g.name + ": " + to_string(g.type);
      if (g.init) out_ += " = " + expr(*g.init);
      out_ += ";\n";
    }
    for (const auto& f : p_.functions) {
      out_ += "fn " + f.name + "(";
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        if (i) out_ += ", ";
        out_ += f.params[i].name + ": " + to_string(f.params[i].type);
      }
      out_ += ")";
      if (f.returns) out_ += " -> " + to_string(*f.returns);
      out_ += " ";
      block(f.body, 0);
      out_ += "\n";
    }
    return out_;
  }

 private:
  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void block(const std::vector<std::unique_ptr<Stmt>>& body, int depth) {
    out_ += "{\n";
    for (const auto& s : body) stmt(*s, depth + 1);
    indent(depth);
    out_ += "}";
  }

  void stmt(const Stmt& s, int depth) {
    indent(depth);
    switch (s.kind) {
      case Stmt::Kind::Let:
        out_ += "let " + s.name;
        if (s.declared) out_ += ": " + to_string(*s.declared);
        out_ += " = " + expr(*s.value) + ";\n";
        return;
      case Stmt::Kind::Assign:
        out_ += expr(*s.target) + " = " + expr(*s.value) + ";\n";
        return;
      case Stmt::Kind::ExprStmt:
        out_ += expr(*s.value) + ";\n";
        return;
      case Stmt::Kind::Return:
        out_ += s.value ? "return " + expr(*s.value) + ";\n" : "return;\n";
        return;
      case Stmt::Kind::Break:
        out_ += "break;\n";
        return;
      case Stmt::Kind::Continue:
        out_ += "continue;\n";
        return;
      case Stmt::Kind::While:
        out_ += "while (" + expr(*s.value) + ") ";
        block(s.body, depth);
        out_ += "\n";
        return;
      case Stmt::Kind::If:
        out_ += "if (" + expr(*s.value) + ") ";
        block(s.body, depth);
        if (s.has_else) {
          out_ += " else ";
          block(s.orelse, depth);
        }
        out_ += "\n";
        return;
    }
  }

  std::string name_of(const Expr& e) const {
    if (e.kind == Expr::Kind::Global) return p_.globals[e.index].name;
    return e.text;
  }

  std::string args(const Expr& e) {
    std::string out;
    for (std::size_t i = 0; i < e.operands.size(); ++i) {
      if (i) out += ", ";
      out += expr(*e.operands[i]);
    }
    return out;
  }

  std::string expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::IntLit: return e.int_value < 0 ? "(" + std::to_string(e.int_value) + ")" : std::to_string(e.int_value);
      case Expr::Kind::FloatLit: return e.float_value < 0 ? "(" + float_literal(e.float_value) + ")" : float_literal(e.float_value);
      case Expr::Kind::BytesLit: return quote(e.text);
      case Expr::Kind::NullLit: return "null";
      case Expr::Kind::Name:
      case Expr::Kind::Local:
      case Expr::Kind::Global: return name_of(e);
      case Expr::Kind::Unary:
        return e.unary == UnaryOp::Neg ? "(-(" + expr(*e.operands[0]) + "))" : "(!" + expr(*e.operands[0]) + ")";
      case Expr::Kind::Binary:
        return "(" + expr(*e.operands[0]) + " " + binary_symbol(e.binary) + " " + expr(*e.operands[1]) + ")";
      case Expr::Kind::Logical:
        return "(" + expr(*e.operands[0]) + (e.logical == LogicalOp::And ? " && " : " || ") + expr(*e.operands[1]) + ")";
      case Expr::Kind::Call:
      case Expr::Kind::BuiltinCall: return e.text + "(" + args(e) + ")";
      case Expr::Kind::Index: return expr(*e.operands[0]) + "[" + expr(*e.operands[1]) + "]";
      case Expr::Kind::Field: return expr(*e.operands[0]) + "." + e.text;
      case Expr::Kind::Arrow: return expr(*e.operands[0]) + "->" + e.text;
      case Expr::Kind::ArrayLit: return "[" + args(e) + "]";
      case Expr::Kind::RecordLit: {
        std::string out = e.text + "{";
        for (std::size_t i = 0; i < e.operands.size(); ++i) {
          if (i) out += ", ";
          out += e.field_names[i] + ": " + expr(*e.operands[i]);
        }
        return out + "}";
      }
    }
    return "?";
  }

  const Program& p_;
  std::string out_;
};

bool equal(const Expr& a, const Expr& b);

bool equal_all(const std::vector<std::unique_ptr<Expr>>& a, const std::vector<std::unique_ptr<Expr>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(*a[i], *b[i])) return false;
  }
  return true;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.index != b.index || a.field_names != b.field_names) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit: return a.int_value == b.int_value;
    case Expr::Kind::FloatLit: return a.float_value == b.float_value;
    case Expr::Kind::Binary: if (a.binary != b.binary) return false; break;
    case Expr::Kind::Logical: if (a.logical != b.logical) return false; break;
    case Expr::Kind::Unary: if (a.unary != b.unary) return false; break;
    default: break;
  }
  return equal_all(a.operands, b.operands);
}

bool equal_opt(const std::unique_ptr<Expr>& a, const std::unique_ptr<Expr>& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal_block(const std::vector<std::unique_ptr<Stmt>>& a, const std::vector<std::unique_ptr<Stmt>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Stmt& x = *a[i];
    const Stmt& y = *b[i];
    if (x.kind != y.kind || x.id != y.id || x.name != y.name || x.slot != y.slot || x.has_else != y.has_else ||
        x.declared != y.declared) {
      return false;
    }
    if (!equal_opt(x.target, y.target) || !equal_opt(x.value, y.value)) return false;
    if (!equal_block(x.body, y.body) || !equal_block(x.orelse, y.orelse)) return false;
  }
  return true;
}

bool equal_params(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !(a[i].type == b[i].type)) return false;
  }
  return true;
}

}  // namespace

std::string pretty_print(const Program& p) { return Printer(p).run(); }

bool structurally_equal(const Program& a, const Program& b) {
  if (a.records.size() != b.records.size() || a.globals.size() != b.globals.size() ||
      a.functions.size() != b.functions.size() || a.entry != b.entry || a.num_stmts != b.num_stmts) {
    return false;
  }
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].name != b.records[i].name || !equal_params(a.records[i].fields, b.records[i].fields)) return false;
  }
  for (std::size_t i = 0; i < a.globals.size(); ++i) {
    const auto& x = a.globals[i];
    const auto& y = b.globals[i];
    if (x.name != y.name || !(x.type == y.type) || !equal_opt(x.init, y.init)) return false;
  }
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& x = a.functions[i];
    const auto& y = b.functions[i];
    if (x.name != y.name || x.num_slots != y.num_slots || !equal_params(x.params, y.params) ||
        x.returns != y.returns || !equal_block(x.body, y.body)) {
      return false;
    }
  }
  return true;
}

}  // namespace tgb::lang
