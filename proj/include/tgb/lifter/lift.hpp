#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tgb/mapper/mapping.hpp"
#include "tgb/orchestrator/coverage_map.hpp"
#include "tgb/unitgen/assignment.hpp"

namespace tgb::lifter {

struct Replacement {
  mapper::Match match;
  vm::Bytes bytes;
  friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct LiftedInput {
  vm::SystemInput input;               // S_new
  std::vector<Replacement> replaced;
  std::set<std::size_t> untouched;     // S_u: elements passed through unchanged
};

struct LiftOptions {
  bool first_occurrence_only = false;
};

class UnmappedParameter : public Error {
 public:
  using Error::Error;
};

// Rewrites every match of each assigned path with the new value's encoding.
// Within one element the rewrites run right to left over the original
// ranges: s = s[:start] + enc + s[min(end, |s|):].
LiftedInput lift(const mapper::Mapping& m, const unitgen::ParamAssignment& a, const vm::SystemInput& origin,
                 const LiftOptions& opts = {});

enum class Classification { Effective, OtherGoal, FalsePositive };

const char* classification_name(Classification c);
Classification classification_from_name(const std::string& s);

struct LiftOutcome {
  Classification classification = Classification::FalsePositive;
  lang::GoalSet system_goals;  // goals the system run discovered (new to the map)
  lang::GoalSet sought;
  vm::RunStatus status;
  bool crash_reproduced = false;
  bool new_crash = false;
};

struct Validation {
  LiftOutcome outcome;
  vm::RunResult run;  // traced, for re-carving
};

// Executes the lifted input at system level, classifies it against the map as
// it was before the run, then merges everything the run discovered.
Validation validate(const lang::Program& p, const LiftedInput& li, const lang::GoalSet& sought,
                    const std::optional<orch::CrashSignature>& unit_crash, orch::CoverageMap& cov,
                    orch::Clock& clock, const vm::RunOptions& opts = {});

}  // namespace tgb::lifter
