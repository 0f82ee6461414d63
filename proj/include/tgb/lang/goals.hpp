#pragma once

#include <set>

#include "tgb/lang/ast.hpp"
#include "tgb/util/error.hpp"

namespace tgb::lang {

class UnknownFunction : public Error {
 public:
  using Error::Error;
};

using GoalSet = std::set<BranchGoal>;

// Every (conditional statement x outcome) pair of the program: then/else for
// each `if`, loop-enter/loop-exit for each `while`.
GoalSet enumerate_goals(const Program& p);

// Goals lexically contained in `f`. Throws UnknownFunction.
GoalSet goals_in_function(const Program& p, FunctionId f);

// Source position of a conditional statement, or nullopt.
std::optional<SourcePos> stmt_position(const Program& p, StmtId id);

}  // namespace tgb::lang
