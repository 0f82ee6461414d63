#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <set>
#include <vector>

#include "tgb/lang/goals.hpp"
#include "tgb/vm/vm.hpp"

namespace tgb::orch {

// Bug goals: a crash kind raised inside a function.
struct CrashSignature {
  vm::CrashKind kind = vm::CrashKind::Abort;
  lang::FunctionId function = 0;
  auto operator<=>(const CrashSignature&) const = default;
};

std::optional<CrashSignature> crash_signature(const vm::RunStatus& s);

enum class Source { SystemSeed, SystemGen, Lift };

const char* source_name(Source s);
Source source_from_name(const std::string& s);

struct LogEntry {
  double elapsed = 0;   // clock units: steps or seconds
  double wall_ms = 0;
  std::optional<lang::BranchGoal> goal;
  std::optional<CrashSignature> crash;
  Source source = Source::SystemSeed;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

// Campaign time. With a deterministic clock elapsed() counts VM steps spent
// by all executions; otherwise it is wall seconds since construction.
class Clock {
 public:
  explicit Clock(bool deterministic = false);

  void charge(std::uint64_t steps) { steps_ += steps; }
  double elapsed() const;
  double wall_ms() const;
  std::uint64_t steps() const { return steps_; }
  bool deterministic() const { return deterministic_; }

 private:
  bool deterministic_;
  std::uint64_t steps_ = 0;
  std::chrono::steady_clock::time_point start_;
};

class CoverageMap {
 public:
  const lang::GoalSet& discovered() const { return discovered_; }
  const std::set<CrashSignature>& crashes() const { return crashes_; }
  const std::vector<LogEntry>& log() const { return log_; }
  // Bumped on every change; outcomes record the version they were judged against.
  std::uint64_t version() const { return version_; }

  bool contains(const lang::BranchGoal& g) const { return discovered_.count(g) != 0; }
  bool contains(const CrashSignature& c) const { return crashes_.count(c) != 0; }

  // Adds goals and returns the ones not seen before, logging each.
  lang::GoalSet merge(const lang::GoalSet& goals, Source source, const Clock& clock);
  bool merge_crash(const CrashSignature& c, Source source, const Clock& clock);
  // Coverage and crash of one run.
  lang::GoalSet merge_run(const vm::RunResult& r, Source source, const Clock& clock);

 private:
  lang::GoalSet discovered_;
  std::set<CrashSignature> crashes_;
  std::vector<LogEntry> log_;
  std::uint64_t version_ = 0;
};

}  // namespace tgb::orch
