#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tgb/lang/ast.hpp"
#include "tgb/lang/goals.hpp"
#include "tgb/util/error.hpp"
#include "tgb/vm/segments.hpp"
#include "tgb/vm/trace.hpp"
#include "tgb/vm/value.hpp"

namespace tgb::vm {

// The set S of system-level inputs: each argv element plus the input stream.
// Element i < argv.size() is argv[i]; element argv.size() is stdin.
struct SystemInput {
  std::vector<Bytes> argv;
  Bytes stdin_data;

  std::size_t element_count() const { return argv.size() + 1; }
  const Bytes& element(std::size_t i) const { return i < argv.size() ? argv[i] : stdin_data; }
  Bytes& element(std::size_t i) { return i < argv.size() ? argv[i] : stdin_data; }

  friend bool operator==(const SystemInput&, const SystemInput&) = default;
};

struct RunOptions {
  std::uint64_t step_limit = 5'000'000;
  std::size_t trace_limit = 2'000'000;
  std::size_t max_dump_bytes = 64 * 1024;
  std::size_t dumps_per_function = 8;
  std::size_t max_call_depth = 400;
  std::size_t max_output_bytes = 1 << 20;
};

enum class CrashKind { Oob, DivZero, Abort, TypeError };

const char* crash_kind_name(CrashKind k);
std::optional<CrashKind> crash_kind_from_name(const std::string& name);

struct RunStatus {
  enum class Kind { Exit, Crash, BudgetExhausted };
  Kind kind = Kind::Exit;
  std::int64_t code = 0;  // Exit
  CrashKind crash = CrashKind::Abort;
  lang::FunctionId crash_function = 0;
  lang::SourcePos crash_pos;
  std::string message;

  bool crashed() const { return kind == Kind::Crash; }
  friend bool operator==(const RunStatus&, const RunStatus&) = default;
};

std::string describe(const lang::Program& p, const RunStatus& s);

struct RunResult {
  RunStatus status;
  lang::GoalSet coverage;
  std::vector<TraceEvent> trace;
  bool trace_overflowed = false;
  std::uint64_t steps = 0;
  std::chrono::nanoseconds wall{0};
  std::optional<Value> return_value;  // call_function only
  Bytes output;
};

// Globals and heap handed to a unit execution. `input` backs arg() and
// read_all_input() inside the unit.
struct World {
  std::map<std::string, Value> globals;
  SegmentTable segments;
  SystemInput input;
};

// Raised by run_with_tracing when the event count exceeds trace_limit. The
// run itself completed; result() holds its status and coverage with a
// truncated trace.
class TraceOverflow : public Error {
 public:
  explicit TraceOverflow(RunResult result);
  const RunResult& result() const { return result_; }

 private:
  RunResult result_;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

// Deterministic execution of main(). Subject failures are statuses.
RunResult run_system(const lang::Program& p, const SystemInput& input, const RunOptions& opts = {});

// As run_system, additionally recording Call/Return/GlobalStore/Alloc/Branch
// events with a heap dump at each user-function call.
RunResult run_with_tracing(const lang::Program& p, const SystemInput& input, const RunOptions& opts = {});

// Invokes `f` directly with the given arguments in `world`. Coverage holds
// only branches taken during the call. A dangling reference is a crash.
RunResult call_function(const lang::Program& p, lang::FunctionId f, std::vector<Value> args, World world,
                        const RunOptions& opts = {});

}  // namespace tgb::vm
