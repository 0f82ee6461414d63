#include "tgb/lang/goals.hpp"

namespace tgb::lang {
namespace {

void collect(FunctionId f, const std::vector<std::unique_ptr<Stmt>>& block, GoalSet& out) {
  for (const auto& s : block) {
    if (s->kind == Stmt::Kind::If) {
      out.insert({f, s->id, Outcome::Then});
      out.insert({f, s->id, Outcome::Else});
    } else if (s->kind == Stmt::Kind::While) {
      out.insert({f, s->id, Outcome::LoopEnter});
      out.insert({f, s->id, Outcome::LoopExit});
    }
    collect(f, s->body, out);
    collect(f, s->orelse, out);
  }
}

const Stmt* find_stmt(const std::vector<std::unique_ptr<Stmt>>& block, StmtId id) {
  for (const auto& s : block) {
    if (s->id == id) return s.get();
    if (const Stmt* hit = find_stmt(s->body, id)) return hit;
    if (const Stmt* hit = find_stmt(s->orelse, id)) return hit;
  }
  return nullptr;
}

}  // namespace

GoalSet enumerate_goals(const Program& p) {
  GoalSet out;
  for (const auto& f : p.functions) collect(f.id, f.body, out);
  return out;
}

GoalSet goals_in_function(const Program& p, FunctionId f) {
  if (f >= p.functions.size()) throw UnknownFunction("unknown function id " + std::to_string(f));
  GoalSet out;
  collect(f, p.functions[f].body, out);
  return out;
}

std::optional<SourcePos> stmt_position(const Program& p, StmtId id) {
  for (const auto& f : p.functions) {
    if (const Stmt* s = find_stmt(f.body, id)) return s->pos;
  }
  return std::nullopt;
}

}  // namespace tgb::lang
