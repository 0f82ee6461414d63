#pragma once

#include <vector>

#include "tgb/mapper/mapping.hpp"
#include "tgb/orchestrator/coverage_map.hpp"
#include "tgb/snapshot/carve.hpp"
#include "tgb/sysgen/rng.hpp"
#include "tgb/unitgen/assignment.hpp"

namespace tgb::unitgen {

class NoParameters : public Error {
 public:
  using Error::Error;
};

struct UnitOutcome {
  ParamAssignment assignment;
  vm::RunStatus status;
  lang::GoalSet coverage;
  lang::GoalSet new_goals;  // not in the map, nor found earlier in this batch
  bool crashed = false;     // crash with a signature new in the same sense
  std::uint64_t coverage_version = 0;

  friend bool operator==(const UnitOutcome&, const UnitOutcome&) = default;
};

struct FuzzOptions {
  vm::RunOptions run;  // step_limit is the unit limit
};

struct FuzzResult {
  std::vector<UnitOutcome> outcomes;
  std::size_t executions = 0;
  std::uint64_t steps = 0;
  std::vector<double> exec_ms;
};

// Draws up to `budget` assignments, each changing one parameter chosen
// uniformly, executes them and keeps the ones that crash or reach goals not
// in `cov`. Throws NoParameters when the mapping has none.
FuzzResult fuzz_unit(const lang::Program& p, const snapshot::CarvedTest& c, const mapper::Mapping& m,
                     std::size_t budget, const orch::CoverageMap& cov, sysgen::Rng& rng,
                     const FuzzOptions& opts = {});

}  // namespace tgb::unitgen
