#pragma once

// Second, deliberately naive interpreter used as a test oracle. It shares only
// the AST and the value container with the VM; semantics are written out again
// from the language description, and trace events are counted by rule:
//   Call/Return  one per user-function activation (Return only if it returns)
//   GlobalStore  one per global at init, one per assignment rooted at a global
//   Alloc        one per alloc_array
//   Branch       first time a goal is taken within an activation, counting
//                goals taken by callees that already returned

#include <map>
#include <set>
#include <string>

#include "tgb/lang/ast.hpp"
#include "tgb/vm/vm.hpp"

namespace oracle {

struct NaiveResult {
  bool crashed = false;
  std::string crash_kind;
  std::int64_t exit_code = 0;
  std::string output;
  std::set<tgb::lang::BranchGoal> coverage;
  std::map<std::string, std::size_t> events;  // call, return, global_store, alloc, branch
};

NaiveResult naive_run(const tgb::lang::Program& p, const tgb::vm::SystemInput& in);

// Event counts of a VM trace under the same names.
std::map<std::string, std::size_t> count_events(const std::vector<tgb::vm::TraceEvent>& trace);

}  // namespace oracle
