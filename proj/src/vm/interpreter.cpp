#include <charconv>
#include <set>

#include "tgb/snapshot/reachable.hpp"
#include "tgb/vm/vm.hpp"

namespace tgb::vm {

using lang::BinaryOp;
using lang::Builtin;
using lang::Expr;
using lang::FunctionId;
using lang::Outcome;
using lang::SourcePos;
using lang::Stmt;

const char* crash_kind_name(CrashKind k) {
  switch (k) {
    case CrashKind::Oob: return "oob";
    case CrashKind::DivZero: return "div-zero";
    case CrashKind::Abort: return "abort";
    case CrashKind::TypeError: return "type-error";
  }
  return "?";
}

std::optional<CrashKind> crash_kind_from_name(const std::string& name) {
  for (auto k : {CrashKind::Oob, CrashKind::DivZero, CrashKind::Abort, CrashKind::TypeError})
    if (name == crash_kind_name(k)) return k;
  return std::nullopt;
}

std::string describe(const lang::Program& p, const RunStatus& s) {
  switch (s.kind) {
    case RunStatus::Kind::Exit: return "exit " + decimal(s.code);
    case RunStatus::Kind::BudgetExhausted: return "budget exhausted";
    case RunStatus::Kind::Crash:
      return std::string("crash ") + crash_kind_name(s.crash) + " in " + p.function(s.crash_function).name + " at " +
             std::to_string(s.crash_pos.line) + ":" + std::to_string(s.crash_pos.column) + ": " + s.message;
  }
  return "?";
}

TraceOverflow::TraceOverflow(RunResult result)
    : Error("trace exceeded " + std::to_string(result.trace.size()) + " events"), result_(std::move(result)) {}

namespace {

struct CrashSignal {
  CrashKind kind;
  FunctionId function;
  SourcePos pos;
  std::string message;
};

struct BudgetSignal {};

enum class Flow { Normal, Return, Break, Continue };

struct Frame {
  std::vector<Value> slots;
  Value ret;
};

struct Tracer {
  std::vector<TraceEvent> events;
  std::size_t limit = 0;
  bool overflowed = false;
  std::vector<std::set<lang::BranchGoal>> open;  // goals already reported per open call
  std::vector<std::size_t> dumps;                // dumps taken per function

  void push(TraceEvent e) {
    if (events.size() >= limit) {
      overflowed = true;
      return;
    }
    events.push_back(std::move(e));
  }
};

bool conforms(const Value& v, const lang::Type& t) {
  using K = lang::Type::Kind;
  switch (t.kind) {
    case K::Int: return v.is(ValueKind::Int);
    case K::Float: return v.is(ValueKind::Float);
    case K::Bytes: return v.is(ValueKind::Bytes);
    case K::Array: return v.is(ValueKind::Array);
    case K::Ref: return v.is(ValueKind::Ref);
    case K::Record: return v.is(ValueKind::Record) && v.as_record().shape->name == t.record;
  }
  return false;
}

class Interpreter {
 public:
  Interpreter(const lang::Program& p, const RunOptions& opts, SystemInput input, bool tracing)
      : p_(p), opts_(opts), input_(std::move(input)) {
    hit_.assign(std::size_t{p.num_stmts} * 4, 0);
    hit_fn_.assign(p.num_stmts, 0);
    if (tracing) {
      tracer_.emplace();
      tracer_->limit = opts.trace_limit;
      tracer_->open.emplace_back();
      tracer_->dumps.assign(p.functions.size(), 0);
    }
  }

  RunResult run_main() {
    return guarded([&](RunResult& out) {
      init_globals();
      Value r = call_user(p_.entry, {}, p_.function(p_.entry).pos);
      out.status.code = r.is(ValueKind::Int) ? r.as_int() : 0;
    });
  }

  RunResult run_unit(FunctionId f, std::vector<Value> args, World world) {
    return guarded([&](RunResult& out) {
      cur_fn_ = f;
      globals_.reserve(p_.globals.size());
      for (const auto& g : p_.globals) {
        auto it = world.globals.find(g.name);
        if (it == world.globals.end())
          crash(CrashKind::Oob, "context incomplete: global '" + g.name + "' missing", g.pos);
        globals_.push_back(std::move(it->second));
      }
      heap_ = std::move(world.segments);
      Value r = call_user(f, std::move(args), p_.function(f).pos);
      out.return_value = std::move(r);
    });
  }

 private:
  template <typename Body>
  RunResult guarded(Body&& body) {
    RunResult out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(out);
      out.status.kind = RunStatus::Kind::Exit;
    } catch (const CrashSignal& c) {
      out.status.kind = RunStatus::Kind::Crash;
      out.status.crash = c.kind;
      out.status.crash_function = c.function;
      out.status.crash_pos = c.pos;
      out.status.message = c.message;
    } catch (const BudgetSignal&) {
      out.status.kind = RunStatus::Kind::BudgetExhausted;
    }
    out.wall = std::chrono::steady_clock::now() - t0;
    out.steps = steps_;
    out.output = std::move(output_);
    for (std::size_t i = 0; i < hit_.size(); ++i) {
      if (hit_[i])
        out.coverage.insert(lang::BranchGoal{hit_fn_[i / 4], static_cast<lang::StmtId>(i / 4),
                                             static_cast<Outcome>(i % 4)});
    }
    if (tracer_) {
      out.trace = std::move(tracer_->events);
      out.trace_overflowed = tracer_->overflowed;
    }
    return out;
  }

  [[noreturn]] void crash(CrashKind k, std::string msg, SourcePos pos) {
    throw CrashSignal{k, cur_fn_, pos, std::move(msg)};
  }

  void tick() {
    if (++steps_ > opts_.step_limit) throw BudgetSignal{};
  }

  void take(lang::StmtId stmt, Outcome o) {
    const std::size_t i = std::size_t{stmt} * 4 + static_cast<std::size_t>(o);
    hit_[i] = 1;
    hit_fn_[stmt] = cur_fn_;
    if (tracer_) {
      lang::BranchGoal g{cur_fn_, stmt, o};
      if (tracer_->open.back().insert(g).second) tracer_->push(BranchEvent{g});
    }
  }

  void init_globals() {
    cur_fn_ = p_.entry;
    in_init_ = true;
    globals_.clear();
    for (const auto& g : p_.globals) globals_.push_back(zero_value(p_, g.type));
    Frame frame;
    for (std::size_t i = 0; i < p_.globals.size(); ++i) {
      const auto& g = p_.globals[i];
      if (g.init) {
        Value v = eval(*g.init, frame);
        if (!conforms(v, g.type))
          crash(CrashKind::TypeError, "initializer of '" + g.name + "' is not " + lang::to_string(g.type), g.pos);
        globals_[i] = std::move(v);
      }
      if (tracer_) tracer_->push(GlobalStoreEvent{g.name, globals_[i]});
    }
    in_init_ = false;
  }

  Value call_user(FunctionId fid, std::vector<Value> args, SourcePos pos) {
    const lang::FunctionDef& fn = p_.function(fid);
    if (depth_ >= opts_.max_call_depth) throw BudgetSignal{};
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      if (!conforms(args[i], fn.params[i].type))
        crash(CrashKind::TypeError,
              "argument '" + fn.params[i].name + "' of " + fn.name + " must be " + lang::to_string(fn.params[i].type),
              pos);
    }
    const std::uint64_t index = next_call_++;
    if (tracer_) {
      CallEvent ev{index, fid, args, std::nullopt};
      if (fid != p_.entry && !tracer_->overflowed && tracer_->dumps[fid] < opts_.dumps_per_function) {
        ++tracer_->dumps[fid];
        std::vector<Value> roots = args;
        roots.insert(roots.end(), globals_.begin(), globals_.end());
        auto r = snapshot::snapshot_reachable(std::move(roots), heap_, opts_.max_dump_bytes);
        ev.dump = HeapDump{std::move(r.segments), r.truncated, heap_.next_id()};
      }
      tracer_->push(std::move(ev));
      tracer_->open.emplace_back();
    }

    Frame frame;
    frame.slots.resize(fn.num_slots);
    for (std::size_t i = 0; i < args.size(); ++i) frame.slots[i] = std::move(args[i]);
    const FunctionId saved = cur_fn_;
    cur_fn_ = fid;
    ++depth_;
    Flow fl = exec_block(fn.body, frame);
    --depth_;
    Value ret = fl == Flow::Return ? std::move(frame.ret) : Value::integer(0);
    if (fn.returns && !conforms(ret, *fn.returns))
      crash(CrashKind::TypeError, fn.name + " must return " + lang::to_string(*fn.returns), fn.pos);
    cur_fn_ = saved;

    if (tracer_) {
      auto done = std::move(tracer_->open.back());
      tracer_->open.pop_back();
      tracer_->open.back().merge(done);
      tracer_->push(ReturnEvent{index, ret});
    }
    return ret;
  }

  Flow exec_block(const std::vector<std::unique_ptr<Stmt>>& block, Frame& f) {
    for (const auto& s : block) {
      Flow fl = exec(*s, f);
      if (fl != Flow::Normal) return fl;
    }
    return Flow::Normal;
  }

  bool truth(const Value& v, SourcePos pos) {
    if (!v.is(ValueKind::Int)) crash(CrashKind::TypeError, std::string("condition is ") + kind_name(v.kind()), pos);
    return v.as_int() != 0;
  }

  Flow exec(const Stmt& s, Frame& f) {
    tick();
    switch (s.kind) {
      case Stmt::Kind::Let: {
        Value v = eval(*s.value, f);
        if (s.declared && !conforms(v, *s.declared))
          crash(CrashKind::TypeError, "'" + s.name + "' must be " + lang::to_string(*s.declared), s.pos);
        f.slots[s.slot] = std::move(v);
        return Flow::Normal;
      }
      case Stmt::Kind::Assign: assign(s, f); return Flow::Normal;
      case Stmt::Kind::ExprStmt: eval(*s.value, f); return Flow::Normal;
      case Stmt::Kind::If: {
        Value tmp;
        const bool c = truth(eval_ref(*s.value, f, tmp), s.pos);
        take(s.id, c ? Outcome::Then : Outcome::Else);
        return exec_block(c ? s.body : s.orelse, f);
      }
      case Stmt::Kind::While: {
        for (;;) {
          Value tmp;
          if (!truth(eval_ref(*s.value, f, tmp), s.pos)) {
            take(s.id, Outcome::LoopExit);
            return Flow::Normal;
          }
          take(s.id, Outcome::LoopEnter);
          Flow fl = exec_block(s.body, f);
          if (fl == Flow::Return) return fl;
          if (fl == Flow::Break) return Flow::Normal;
          tick();  // back edge
        }
      }
      case Stmt::Kind::Return:
        f.ret = s.value ? eval(*s.value, f) : Value::integer(0);
        return Flow::Return;
      case Stmt::Kind::Break: return Flow::Break;
      case Stmt::Kind::Continue: return Flow::Continue;
    }
    return Flow::Normal;
  }

  // ---- memory ----

  Segment& segment_of(Ref r, SourcePos pos) {
    if (r.is_null()) crash(CrashKind::Oob, "null dereference", pos);
    Segment* s = heap_.find(r.segment);
    if (!s) crash(CrashKind::Oob, "context incomplete: dangling reference to segment " + std::to_string(r.segment), pos);
    return *s;
  }

  Value& element_of(Ref r, std::int64_t i, SourcePos pos) {
    Segment& s = segment_of(r, pos);
    const std::int64_t at = r.offset + i;
    if (i < 0 || at < 0 || at >= static_cast<std::int64_t>(s.length()))
      crash(CrashKind::Oob, "index " + decimal(i) + " outside reference of length " +
                                decimal(static_cast<std::int64_t>(s.length()) - r.offset), pos);
    return s.elements[static_cast<std::size_t>(at)];
  }

  std::int64_t int_of(const Value& v, const char* what, SourcePos pos) {
    if (!v.is(ValueKind::Int)) crash(CrashKind::TypeError, std::string(what) + " must be int, got " + kind_name(v.kind()), pos);
    return v.as_int();
  }

  const Bytes& bytes_of(const Value& v, const char* what, SourcePos pos) {
    if (!v.is(ValueKind::Bytes))
      crash(CrashKind::TypeError, std::string(what) + " must be bytes, got " + kind_name(v.kind()), pos);
    return v.as_bytes();
  }

  Value* field_of(Value& rec, const std::string& name, SourcePos pos) {
    if (!rec.is(ValueKind::Record))
      crash(CrashKind::TypeError, "field '" + name + "' of a " + kind_name(rec.kind()), pos);
    Record& r = rec.as_record();
    const int i = r.shape->index_of(name);
    if (i < 0) crash(CrashKind::TypeError, r.shape->name + " has no field '" + name + "'", pos);
    return &r.fields[static_cast<std::size_t>(i)];
  }

  void check_index(std::int64_t i, std::size_t n, SourcePos pos) {
    if (i < 0 || i >= static_cast<std::int64_t>(n))
      crash(CrashKind::Oob, "index " + decimal(i) + " outside length " + std::to_string(n), pos);
  }

  // Writes go through a resolved accessor chain. The right side is evaluated
  // first, then index operands from the root outwards.
  void assign(const Stmt& s, Frame& f) {
    Value v = eval(*s.value, f);

    std::vector<const Expr*> chain;
    const Expr* root = s.target.get();
    while (root->kind == Expr::Kind::Index || root->kind == Expr::Kind::Field || root->kind == Expr::Kind::Arrow) {
      chain.push_back(root);
      root = root->operands[0].get();
    }
    std::reverse(chain.begin(), chain.end());

    Value temp_root;
    Value* cur = nullptr;
    if (root->kind == Expr::Kind::Local) {
      cur = &f.slots[root->index];
    } else if (root->kind == Expr::Kind::Global) {
      cur = &globals_[root->index];
    } else {
      temp_root = eval(*root, f);
      cur = &temp_root;
    }
    std::vector<std::int64_t> idx(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (chain[i]->kind == Expr::Kind::Index) {
        Value tmp;
        idx[i] = int_of(eval_ref(*chain[i]->operands[1], f, tmp), "index", chain[i]->pos);
      }
    }
    tick();  // the store itself

    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Expr& a = *chain[i];
      const bool last = i + 1 == chain.size();
      if (a.kind == Expr::Kind::Index) {
        if (cur->is(ValueKind::Array)) {
          Array& arr = cur->as_array();
          check_index(idx[i], arr.size(), a.pos);
          cur = &arr[static_cast<std::size_t>(idx[i])];
        } else if (cur->is(ValueKind::Ref)) {
          Segment& seg = segment_of(cur->as_ref(), a.pos);
          Value& slot = element_of(cur->as_ref(), idx[i], a.pos);
          if (last && v.kind() != seg.element_kind)
            crash(CrashKind::TypeError,
                  std::string("storing ") + kind_name(v.kind()) + " into a " + kind_name(seg.element_kind) + " segment",
                  a.pos);
          cur = &slot;
        } else if (cur->is(ValueKind::Bytes) && last) {
          Bytes& b = cur->as_bytes();
          check_index(idx[i], b.size(), a.pos);
          b[static_cast<std::size_t>(idx[i])] = static_cast<char>(int_of(v, "byte", s.pos) & 0xFF);
          note_global_store(root);
          return;
        } else {
          crash(CrashKind::TypeError, std::string("cannot index a ") + kind_name(cur->kind()), a.pos);
        }
      } else if (a.kind == Expr::Kind::Field) {
        cur = field_of(*cur, a.text, a.pos);
      } else {  // Arrow
        if (!cur->is(ValueKind::Ref)) crash(CrashKind::TypeError, std::string("'->' on a ") + kind_name(cur->kind()), a.pos);
        cur = field_of(element_of(cur->as_ref(), 0, a.pos), a.text, a.pos);
      }
    }
    if (chain.empty() && root->kind == Expr::Kind::Global && !conforms(v, p_.globals[root->index].type))
      crash(CrashKind::TypeError,
            "'" + p_.globals[root->index].name + "' must be " + lang::to_string(p_.globals[root->index].type), s.pos);
    *cur = std::move(v);
    note_global_store(root);
  }

  void note_global_store(const Expr* root) {
    if (tracer_ && root->kind == Expr::Kind::Global)
      tracer_->push(GlobalStoreEvent{p_.globals[root->index].name, globals_[root->index]});
  }

  // ---- expressions ----

  Value eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case Expr::Kind::Local:
      case Expr::Kind::Global:
      case Expr::Kind::Index:
      case Expr::Kind::Field:
      case Expr::Kind::Arrow: {
        Value tmp;
        const Value& v = eval_ref(e, f, tmp);
        return &v == &tmp ? std::move(tmp) : v;
      }
      default: break;
    }
    tick();
    switch (e.kind) {
      case Expr::Kind::IntLit: return Value::integer(e.int_value);
      case Expr::Kind::FloatLit: return Value::floating(e.float_value);
      case Expr::Kind::BytesLit: return Value::bytes(e.text);
      case Expr::Kind::NullLit: return Value::null();
      case Expr::Kind::Unary: {
        Value v = eval(*e.operands[0], f);
        if (e.unary == lang::UnaryOp::Not) return Value::integer(int_of(v, "operand of '!'", e.pos) == 0 ? 1 : 0);
        if (v.is(ValueKind::Int)) return Value::integer(static_cast<std::int64_t>(0 - static_cast<std::uint64_t>(v.as_int())));
        if (v.is(ValueKind::Float)) return Value::floating(-v.as_float());
        crash(CrashKind::TypeError, std::string("negating a ") + kind_name(v.kind()), e.pos);
      }
      case Expr::Kind::Binary: return binary(e, f);
      case Expr::Kind::Logical: {
        const bool a = truth(eval(*e.operands[0], f), e.pos);
        if (e.logical == lang::LogicalOp::And && !a) return Value::integer(0);
        if (e.logical == lang::LogicalOp::Or && a) return Value::integer(1);
        return Value::integer(truth(eval(*e.operands[1], f), e.pos) ? 1 : 0);
      }
      case Expr::Kind::Call: {
        std::vector<Value> args;
        args.reserve(e.operands.size());
        for (const auto& a : e.operands) args.push_back(eval(*a, f));
        return call_user(e.index, std::move(args), e.pos);
      }
      case Expr::Kind::BuiltinCall: return builtin(e, f);
      case Expr::Kind::RecordLit: {
        const lang::RecordDef* def = p_.find_record(e.text);
        Value rec = zero_value(p_, lang::Type::record_named(e.text));
        for (std::size_t i = 0; i < e.operands.size(); ++i) {
          Value v = eval(*e.operands[i], f);
          const int fi = def->shape->index_of(e.field_names[i]);
          if (fi < 0) crash(CrashKind::TypeError, e.text + " has no field '" + e.field_names[i] + "'", e.pos);
          if (!conforms(v, def->fields[static_cast<std::size_t>(fi)].type))
            crash(CrashKind::TypeError, "field '" + e.field_names[i] + "' of " + e.text + " must be " +
                                            lang::to_string(def->fields[static_cast<std::size_t>(fi)].type),
                  e.pos);
          rec.as_record().fields[static_cast<std::size_t>(fi)] = std::move(v);
        }
        return rec;
      }
      case Expr::Kind::ArrayLit: {
        Array a;
        a.reserve(e.operands.size());
        for (const auto& op : e.operands) a.push_back(eval(*op, f));
        return Value::array(std::move(a));
      }
      default: break;
    }
    crash(CrashKind::TypeError, "unevaluable expression", e.pos);
  }

  // Evaluates e, returning a reference into variable or heap storage when e
  // names one, else into `tmp`. Non-base operands are evaluated first so the
  // returned reference is not invalidated before use.
  const Value& eval_ref(const Expr& e, Frame& f, Value& tmp) {
    switch (e.kind) {
      case Expr::Kind::Local: tick(); return f.slots[e.index];
      case Expr::Kind::Global: tick(); return globals_[e.index];
      case Expr::Kind::Index: {
        tick();
        Value itmp;
        const std::int64_t i = int_of(eval_ref(*e.operands[1], f, itmp), "index", e.pos);
        Value btmp;
        const Value& base = eval_ref(*e.operands[0], f, btmp);
        switch (base.kind()) {
          case ValueKind::Array: {
            const Array& a = base.as_array();
            check_index(i, a.size(), e.pos);
            return hold(a[static_cast<std::size_t>(i)], &base == &btmp, tmp);
          }
          case ValueKind::Bytes: {
            const Bytes& b = base.as_bytes();
            check_index(i, b.size(), e.pos);
            tmp = Value::integer(static_cast<unsigned char>(b[static_cast<std::size_t>(i)]));
            return tmp;
          }
          case ValueKind::Ref: return element_of(base.as_ref(), i, e.pos);
          default: crash(CrashKind::TypeError, std::string("cannot index a ") + kind_name(base.kind()), e.pos);
        }
      }
      case Expr::Kind::Field: {
        tick();
        Value btmp;
        const Value& base = eval_ref(*e.operands[0], f, btmp);
        const Value* fv = field_of(const_cast<Value&>(base), e.text, e.pos);
        return hold(*fv, &base == &btmp, tmp);
      }
      case Expr::Kind::Arrow: {
        tick();
        Value btmp;
        const Value& base = eval_ref(*e.operands[0], f, btmp);
        if (!base.is(ValueKind::Ref)) crash(CrashKind::TypeError, std::string("'->' on a ") + kind_name(base.kind()), e.pos);
        return *field_of(element_of(base.as_ref(), 0, e.pos), e.text, e.pos);
      }
      default: tmp = eval(e, f); return tmp;
    }
  }

  // Part of a temporary must be moved out before the temporary dies.
  static const Value& hold(const Value& part, bool in_temp, Value& tmp) {
    if (!in_temp) return part;
    Value copy = part;
    tmp = std::move(copy);
    return tmp;
  }

  Value binary(const Expr& e, Frame& f) {
    const Value a = eval(*e.operands[0], f);
    Value btmp;
    const Value& b = eval_ref(*e.operands[1], f, btmp);
    const BinaryOp op = e.binary;

    if (op == BinaryOp::Eq || op == BinaryOp::Ne) {
      if (a.kind() != b.kind())
        crash(CrashKind::TypeError, std::string("comparing ") + kind_name(a.kind()) + " with " + kind_name(b.kind()), e.pos);
      bool eq = a.is(ValueKind::Float) ? a.as_float() == b.as_float() : a == b;
      return Value::integer((op == BinaryOp::Eq) == eq ? 1 : 0);
    }
    if (op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt || op == BinaryOp::Ge) {
      int c = 0;
      bool unordered = false;
      if (a.is(ValueKind::Int) && b.is(ValueKind::Int)) {
        c = a.as_int() < b.as_int() ? -1 : a.as_int() > b.as_int();
      } else if (a.is(ValueKind::Float) && b.is(ValueKind::Float)) {
        const double x = a.as_float(), y = b.as_float();
        unordered = !(x < y || x > y || x == y);
        c = x < y ? -1 : x > y;
      } else if (a.is(ValueKind::Bytes) && b.is(ValueKind::Bytes)) {
        const int r = a.as_bytes().compare(b.as_bytes());
        c = r < 0 ? -1 : r > 0;
      } else {
        crash(CrashKind::TypeError, std::string("ordering ") + kind_name(a.kind()) + " with " + kind_name(b.kind()), e.pos);
      }
      if (unordered) return Value::integer(0);
      bool r = op == BinaryOp::Lt ? c < 0 : op == BinaryOp::Le ? c <= 0 : op == BinaryOp::Gt ? c > 0 : c >= 0;
      return Value::integer(r ? 1 : 0);
    }

    if (a.is(ValueKind::Int) && b.is(ValueKind::Int)) {
      const std::int64_t x = a.as_int(), y = b.as_int();
      const auto ux = static_cast<std::uint64_t>(x), uy = static_cast<std::uint64_t>(y);
      switch (op) {
        case BinaryOp::Add: return Value::integer(static_cast<std::int64_t>(ux + uy));
        case BinaryOp::Sub: return Value::integer(static_cast<std::int64_t>(ux - uy));
        case BinaryOp::Mul: return Value::integer(static_cast<std::int64_t>(ux * uy));
        case BinaryOp::Div:
        case BinaryOp::Mod:
          if (y == 0) crash(CrashKind::DivZero, "integer division by zero", e.pos);
          if (x == INT64_MIN && y == -1) return Value::integer(op == BinaryOp::Div ? x : 0);
          return Value::integer(op == BinaryOp::Div ? x / y : x % y);
        default: break;
      }
    }
    if (a.is(ValueKind::Float) && b.is(ValueKind::Float)) {
      const double x = a.as_float(), y = b.as_float();
      switch (op) {
        case BinaryOp::Add: return Value::floating(x + y);
        case BinaryOp::Sub: return Value::floating(x - y);
        case BinaryOp::Mul: return Value::floating(x * y);
        case BinaryOp::Div:
          if (y == 0.0) crash(CrashKind::DivZero, "float division by zero", e.pos);
          return Value::floating(x / y);
        default: break;
      }
    }
    if (a.is(ValueKind::Ref) && b.is(ValueKind::Int) && (op == BinaryOp::Add || op == BinaryOp::Sub)) {
      const Ref r = a.as_ref();
      const Segment& s = segment_of(r, e.pos);
      const std::int64_t off = op == BinaryOp::Add ? r.offset + b.as_int() : r.offset - b.as_int();
      if (off < 0 || off > static_cast<std::int64_t>(s.length()))
        crash(CrashKind::Oob, "reference offset " + decimal(off) + " outside length " + std::to_string(s.length()), e.pos);
      return Value::ref(Ref{r.segment, off});
    }
    crash(CrashKind::TypeError, std::string("arithmetic on ") + kind_name(a.kind()) + " and " + kind_name(b.kind()), e.pos);
  }

  Value builtin(const Expr& e, Frame& f) {
    const auto& ops = e.operands;
    switch (e.builtin()) {
      case Builtin::ArgCount: return Value::integer(static_cast<std::int64_t>(input_.argv.size()));
      case Builtin::Arg: {
        const std::int64_t i = int_of(eval(*ops[0], f), "arg index", e.pos);
        check_index(i, input_.argv.size(), e.pos);
        return Value::bytes(input_.argv[static_cast<std::size_t>(i)]);
      }
      case Builtin::ReadAllInput: return Value::bytes(input_.stdin_data);
      case Builtin::Print: {
        Value tmp;
        const Value& v = eval_ref(*ops[0], f, tmp);
        const std::string text = v.is(ValueKind::Bytes) ? v.as_bytes() : format_value(v);
        const std::size_t room = opts_.max_output_bytes - std::min(opts_.max_output_bytes, output_.size());
        output_.append(text, 0, std::min(room, text.size()));
        return Value::integer(0);
      }
      case Builtin::Len: {
        Value tmp;
        const Value& v = eval_ref(*ops[0], f, tmp);
        switch (v.kind()) {
          case ValueKind::Bytes: return Value::integer(static_cast<std::int64_t>(v.as_bytes().size()));
          case ValueKind::Array: return Value::integer(static_cast<std::int64_t>(v.as_array().size()));
          case ValueKind::Ref: {
            const Segment& s = segment_of(v.as_ref(), e.pos);
            return Value::integer(static_cast<std::int64_t>(s.length()) - v.as_ref().offset);
          }
          default: crash(CrashKind::TypeError, std::string("len of a ") + kind_name(v.kind()), e.pos);
        }
      }
      case Builtin::ByteAt: {
        Value itmp, btmp;
        const std::int64_t i = int_of(eval_ref(*ops[1], f, itmp), "byte_at index", e.pos);
        const Bytes& b = bytes_of(eval_ref(*ops[0], f, btmp), "byte_at operand", e.pos);
        check_index(i, b.size(), e.pos);
        return Value::integer(static_cast<unsigned char>(b[static_cast<std::size_t>(i)]));
      }
      case Builtin::Slice: {
        const std::int64_t s = int_of(eval(*ops[1], f), "slice start", e.pos);
        const std::int64_t t = int_of(eval(*ops[2], f), "slice end", e.pos);
        Value tmp;
        const Value& v = eval_ref(*ops[0], f, tmp);
        std::size_t n = 0;
        if (v.is(ValueKind::Bytes)) n = v.as_bytes().size();
        else if (v.is(ValueKind::Array)) n = v.as_array().size();
        else crash(CrashKind::TypeError, std::string("slice of a ") + kind_name(v.kind()), e.pos);
        if (s < 0 || s > t || t > static_cast<std::int64_t>(n))
          crash(CrashKind::Oob, "slice [" + decimal(s) + ", " + decimal(t) + ") outside length " + std::to_string(n), e.pos);
        if (v.is(ValueKind::Bytes))
          return Value::bytes(v.as_bytes().substr(static_cast<std::size_t>(s), static_cast<std::size_t>(t - s)));
        const Array& a = v.as_array();
        return Value::array(Array(a.begin() + s, a.begin() + t));
      }
      case Builtin::Concat: {
        Value a = eval(*ops[0], f);
        Value btmp;
        const Value& b = eval_ref(*ops[1], f, btmp);
        if (a.is(ValueKind::Bytes) && b.is(ValueKind::Bytes)) {
          a.as_bytes() += b.as_bytes();
          return a;
        }
        if (a.is(ValueKind::Array) && b.is(ValueKind::Array)) {
          a.as_array().insert(a.as_array().end(), b.as_array().begin(), b.as_array().end());
          return a;
        }
        crash(CrashKind::TypeError, std::string("concat of ") + kind_name(a.kind()) + " and " + kind_name(b.kind()), e.pos);
      }
      case Builtin::ParseInt: {
        Value tmp;
        const Bytes& b = bytes_of(eval_ref(*ops[0], f, tmp), "parse_int operand", e.pos);
        std::size_t i = 0;
        bool neg = false;
        if (i < b.size() && b[i] == '-') {
          neg = true;
          ++i;
        }
        std::uint64_t acc = 0;
        for (; i < b.size() && b[i] >= '0' && b[i] <= '9'; ++i) acc = acc * 10 + static_cast<std::uint64_t>(b[i] - '0');
        return Value::integer(static_cast<std::int64_t>(neg ? 0 - acc : acc));
      }
      case Builtin::ToString: {
        Value tmp;
        const Value& v = eval_ref(*ops[0], f, tmp);
        if (v.is(ValueKind::Bytes)) return v;
        if (v.is(ValueKind::Int) || v.is(ValueKind::Float)) return Value::bytes(format_value(v));
        crash(CrashKind::TypeError, std::string("to_string of a ") + kind_name(v.kind()), e.pos);
      }
      case Builtin::AllocArray: {
        const std::int64_t n = int_of(eval(*ops[0], f), "allocation length", e.pos);
        Value init = eval(*ops[1], f);
        if (n < 0) crash(CrashKind::Oob, "negative allocation length " + decimal(n), e.pos);
        steps_ += static_cast<std::uint64_t>(n);
        if (steps_ > opts_.step_limit) throw BudgetSignal{};
        const ValueKind k = init.kind();
        const Origin origin = in_init_ ? Origin::Global : Origin::Heap;
        const SegmentId id = heap_.allocate(k, origin, std::vector<Value>(static_cast<std::size_t>(n), init));
        if (tracer_) tracer_->push(AllocEvent{id, static_cast<std::uint64_t>(n), origin});
        return Value::ref(Ref{id, 0});
      }
      case Builtin::Abort: {
        Value v = eval(*ops[0], f);
        crash(CrashKind::Abort, v.is(ValueKind::Bytes) ? v.as_bytes() : format_value(v), e.pos);
      }
    }
    crash(CrashKind::TypeError, "unknown builtin", e.pos);
  }

  const lang::Program& p_;
  const RunOptions& opts_;
  SystemInput input_;
  std::vector<Value> globals_;
  SegmentTable heap_;
  std::uint64_t steps_ = 0;
  std::uint64_t next_call_ = 0;
  std::size_t depth_ = 0;
  FunctionId cur_fn_ = 0;
  bool in_init_ = false;
  std::vector<std::uint8_t> hit_;
  std::vector<FunctionId> hit_fn_;
  std::optional<Tracer> tracer_;
  Bytes output_;
};

}  // namespace

RunResult run_system(const lang::Program& p, const SystemInput& input, const RunOptions& opts) {
  return Interpreter(p, opts, input, false).run_main();
}

RunResult run_with_tracing(const lang::Program& p, const SystemInput& input, const RunOptions& opts) {
  RunResult r = Interpreter(p, opts, input, true).run_main();
  if (r.trace_overflowed) throw TraceOverflow(std::move(r));
  return r;
}

RunResult call_function(const lang::Program& p, FunctionId f, std::vector<Value> args, World world,
                        const RunOptions& opts) {
  if (f >= p.functions.size()) throw lang::UnknownFunction("no function with id " + std::to_string(f));
  const auto& fn = p.function(f);
  if (args.size() != fn.params.size())
    throw ArityMismatch(fn.name + " takes " + std::to_string(fn.params.size()) + " argument(s), got " +
                        std::to_string(args.size()));
  SystemInput input = std::move(world.input);
  return Interpreter(p, opts, std::move(input), false).run_unit(f, std::move(args), std::move(world));
}

}  // namespace tgb::vm
