#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tgb::lang {

struct SourcePos {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  auto operator<=>(const SourcePos&) const = default;
};

using FunctionId = std::uint32_t;
using StmtId = std::uint32_t;

// Declared type. Records are referenced by name; `ref T` and `[T]` nest.
struct Type {
  enum class Kind { Int, Float, Bytes, Array, Record, Ref };
  Kind kind = Kind::Int;
  std::string record;                 // Kind::Record
  std::shared_ptr<const Type> elem;   // Kind::Array, Kind::Ref

  static Type int_type() { return {Kind::Int, {}, nullptr}; }
  static Type float_type() { return {Kind::Float, {}, nullptr}; }
  static Type bytes_type() { return {Kind::Bytes, {}, nullptr}; }
  static Type array_of(Type t) { return {Kind::Array, {}, std::make_shared<const Type>(std::move(t))}; }
  static Type ref_to(Type t) { return {Kind::Ref, {}, std::make_shared<const Type>(std::move(t))}; }
  static Type record_named(std::string name) { return {Kind::Record, std::move(name), nullptr}; }

  friend bool operator==(const Type& a, const Type& b);
};

std::string to_string(const Type& t);

// Runtime layout of a record: shared by every value of that record type.
struct RecordShape {
  std::string name;
  std::vector<std::string> fields;

  // Returns the field index or -1.
  int index_of(const std::string& field) const;
};

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge };
enum class LogicalOp { And, Or };
enum class UnaryOp { Neg, Not };

enum class Builtin {
  ArgCount,
  Arg,
  ReadAllInput,
  Print,
  Len,
  ByteAt,
  Slice,
  Concat,
  ParseInt,
  ToString,
  AllocArray,
  Abort,
};

const char* builtin_name(Builtin b);
std::optional<Builtin> builtin_from_name(const std::string& name);
int builtin_arity(Builtin b);

struct Expr {
  enum class Kind {
    IntLit,
    FloatLit,
    BytesLit,
    NullLit,
    Name,       // unresolved identifier; replaced by Local/Global during resolution
    Local,
    Global,
    Unary,
    Binary,
    Logical,
    Call,       // user function; `index` = FunctionId after resolution
    BuiltinCall,
    Index,      // operands[0][operands[1]]
    Field,      // operands[0].text
    Arrow,      // operands[0]->text, sugar for operands[0][0].text
    RecordLit,  // text = record name; field_names parallel to operands
    ArrayLit,
  };

  Kind kind = Kind::IntLit;
  SourcePos pos;
  std::int64_t int_value = 0;
  double float_value = 0.0;
  std::string text;  // identifier, callee, field name, record name or bytes literal
  std::uint32_t index = 0;  // slot, global index, function id, or Builtin
  BinaryOp binary = BinaryOp::Add;
  LogicalOp logical = LogicalOp::And;
  UnaryOp unary = UnaryOp::Neg;
  std::vector<std::unique_ptr<Expr>> operands;
  std::vector<std::string> field_names;

  Builtin builtin() const { return static_cast<Builtin>(index); }
};

struct Stmt {
  enum class Kind { Let, Assign, ExprStmt, If, While, Return, Break, Continue };

  Kind kind = Kind::ExprStmt;
  StmtId id = 0;  // pre-order numbering over the whole program
  SourcePos pos;
  std::string name;                 // Let
  std::optional<Type> declared;     // Let
  std::uint32_t slot = 0;           // Let
  std::unique_ptr<Expr> target;     // Assign
  std::unique_ptr<Expr> value;      // Let/Assign/ExprStmt/Return value; If/While condition
  std::vector<std::unique_ptr<Stmt>> body;    // If then-block, While body
  std::vector<std::unique_ptr<Stmt>> orelse;  // If else-block
  bool has_else = false;
};

struct Param {
  std::string name;
  Type type;
};

struct FunctionDef {
  FunctionId id = 0;
  std::string name;
  SourcePos pos;
  std::vector<Param> params;
  std::optional<Type> returns;
  std::vector<std::unique_ptr<Stmt>> body;
  std::uint32_t num_slots = 0;  // params occupy slots [0, params.size())
};

struct GlobalDef {
  std::string name;
  SourcePos pos;
  Type type;
  std::unique_ptr<Expr> init;  // may be null: zero value of `type`
};

struct RecordDef {
  std::string name;
  SourcePos pos;
  std::vector<Param> fields;
  std::shared_ptr<const RecordShape> shape;
};

// A parsed, name-resolved MiniLang program. Immutable after parse().
struct Program {
  std::vector<RecordDef> records;
  std::vector<GlobalDef> globals;
  std::vector<FunctionDef> functions;
  FunctionId entry = 0;
  std::uint32_t num_stmts = 0;

  const FunctionDef& function(FunctionId id) const { return functions.at(id); }
  std::optional<FunctionId> find_function(const std::string& name) const;
  std::optional<std::uint32_t> find_global(const std::string& name) const;
  const RecordDef* find_record(const std::string& name) const;
};

enum class Outcome : std::uint8_t { Then, Else, LoopEnter, LoopExit };

const char* outcome_name(Outcome o);
std::optional<Outcome> outcome_from_name(const std::string& name);

// A test goal: one outcome of one conditional statement.
struct BranchGoal {
  FunctionId function = 0;
  StmtId stmt = 0;
  Outcome outcome = Outcome::Then;

  auto operator<=>(const BranchGoal&) const = default;
};

// "<function id>:<stmt id>:<outcome>", e.g. "3:17:else".
std::string to_string(const BranchGoal& g);
BranchGoal goal_from_string(const std::string& text);

// Human-readable form using function names, e.g. "check_login:17:else".
std::string describe(const Program& p, const BranchGoal& g);

}  // namespace tgb::lang
