#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgb/lang/goals.hpp"
#include "tgb/snapshot/context.hpp"
#include "tgb/vm/vm.hpp"

namespace tgb::snapshot {

struct StartPoint {
  lang::FunctionId function = 0;
  std::string function_name;
  std::uint64_t call_index = 0;
  friend bool operator==(const StartPoint&, const StartPoint&) = default;
};

// The system test a carve came from.
struct TestOrigin {
  std::string id;
  vm::SystemInput input;
  friend bool operator==(const TestOrigin&, const TestOrigin&) = default;
};

struct CarvedTest {
  StartPoint start;
  Context context;
  TestOrigin origin;
  lang::GoalSet observed_coverage;    // goals taken between Call and Return
  vm::RunStatus observed_status;      // exit(0) if the call returned, else the run's crash
  std::optional<vm::Value> observed_return;

  friend bool operator==(const CarvedTest&, const CarvedTest&) = default;
};

struct CarvePolicy {
  std::size_t max_per_function = 8;
  std::optional<std::set<std::string>> functions;  // allowlist; nullopt admits all
};

struct SkipReport {
  std::size_t calls = 0;        // user-function calls seen, main excluded
  std::size_t carved = 0;
  std::size_t filtered = 0;     // not on the allowlist
  std::size_t over_cap = 0;
  std::size_t no_dump = 0;      // probe took no dump for this call
  std::size_t unfinished = 0;   // still open when the run hit its budget
  bool trace_incomplete = false;

  friend bool operator==(const SkipReport&, const SkipReport&) = default;
};

struct CarveResult {
  std::vector<CarvedTest> tests;  // ordered by call index
  SkipReport skipped;
};

// Reconstructs one CarvedTest per admitted call purely from result.trace.
// Globals are rebuilt by replaying GlobalStore events up to the call.
CarveResult carve(const lang::Program& p, const vm::RunResult& result, const CarvePolicy& policy,
                  const TestOrigin& origin);

// Runs the carve's start function in its recorded context.
vm::RunResult replay(const lang::Program& p, const CarvedTest& c, const vm::RunOptions& opts = {});

// True when a replay matches the recorded coverage, status and return value.
bool replay_matches(const CarvedTest& c, const vm::RunResult& r);

}  // namespace tgb::snapshot
