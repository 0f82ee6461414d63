#include "tgb/lang/ast.hpp"

#include <array>
#include <charconv>

#include "tgb/util/error.hpp"

namespace tgb::lang {

bool operator==(const Type& a, const Type& b) {
  if (a.kind != b.kind || a.record != b.record) return false;
  if (!a.elem || !b.elem) return !a.elem && !b.elem;
  return *a.elem == *b.elem;
}

std::string to_string(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Int: return "int";
    case Type::Kind::Float: return "float";
    case Type::Kind::Bytes: return "bytes";
    case Type::Kind::Array: return "[" + to_string(*t.elem) + "]";
    case Type::Kind::Ref: return "ref " + to_string(*t.elem);
    case Type::Kind::Record: return t.record;
  }
  return "?";
}

int RecordShape::index_of(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (fields[i] == field) return static_cast<int>(i);
  }
  return -1;
}

namespace {

struct BuiltinInfo {
  Builtin id;
  const char* name;
  int arity;
};

constexpr std::array<BuiltinInfo, 12> kBuiltins = {{
    {Builtin::ArgCount, "arg_count", 0},
    {Builtin::Arg, "arg", 1},
    {Builtin::ReadAllInput, "read_all_input", 0},
    {Builtin::Print, "print", 1},
    {Builtin::Len, "len", 1},
    {Builtin::ByteAt, "byte_at", 2},
    {Builtin::Slice, "slice", 3},
    {Builtin::Concat, "concat", 2},
    {Builtin::ParseInt, "parse_int", 1},
    {Builtin::ToString, "to_string", 1},
    {Builtin::AllocArray, "alloc_array", 2},
    {Builtin::Abort, "abort", 1},
}};

}  // namespace

const char* builtin_name(Builtin b) { return kBuiltins[static_cast<std::size_t>(b)].name; }

int builtin_arity(Builtin b) { return kBuiltins[static_cast<std::size_t>(b)].arity; }

std::optional<Builtin> builtin_from_name(const std::string& name) {
  for (const auto& info : kBuiltins) {
    if (name == info.name) return info.id;
  }
  return std::nullopt;
}

std::optional<FunctionId> Program::find_function(const std::string& name) const {
  for (const auto& f : functions) {
    if (f.name == name) return f.id;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Program::find_global(const std::string& name) const {
  for (std::uint32_t i = 0; i < globals.size(); ++i) {
    if (globals[i].name == name) return i;
  }
  return std::nullopt;
}

const RecordDef* Program::find_record(const std::string& name) const {
  for (const auto& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Then: return "then";
    case Outcome::Else: return "else";
    case Outcome::LoopEnter: return "loop-enter";
    case Outcome::LoopExit: return "loop-exit";
  }
  return "?";
}

std::optional<Outcome> outcome_from_name(const std::string& name) {
  if (name == "then") return Outcome::Then;
  if (name == "else") return Outcome::Else;
  if (name == "loop-enter") return Outcome::LoopEnter;
  if (name == "loop-exit") return Outcome::LoopExit;
  return std::nullopt;
}

std::string to_string(const BranchGoal& g) {
  return std::to_string(g.function) + ":" + std::to_string(g.stmt) + ":" + outcome_name(g.outcome);
}

BranchGoal goal_from_string(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw FormatError("malformed goal '" + text + "'");
  BranchGoal g;
  auto parse_u32 = [&](std::size_t from, std::size_t to, std::uint32_t& out) {
    auto [p, ec] = std::from_chars(text.data() + from, text.data() + to, out);
    if (ec != std::errc() || p != text.data() + to || from == to) {
      throw FormatError("malformed goal '" + text + "'");
    }
  };
  parse_u32(0, a, g.function);
  parse_u32(a + 1, b, g.stmt);
  const auto o = outcome_from_name(text.substr(b + 1));
  if (!o) throw FormatError("malformed goal outcome in '" + text + "'");
  g.outcome = *o;
  return g;
}

std::string describe(const Program& p, const BranchGoal& g) {
  const std::string name = g.function < p.functions.size() ? p.functions[g.function].name : "?";
  return name + ":" + std::to_string(g.stmt) + ":" + outcome_name(g.outcome);
}

}  // namespace tgb::lang
