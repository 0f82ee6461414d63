#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgb/lifter/lift.hpp"
#include "tgb/mapper/mapping.hpp"
#include "tgb/report/report.hpp"
#include "tgb/sysgen/mutators.hpp"

namespace tgb::orch {

enum class Mode { Bridge, SystemOnly };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& s);  // throws ConfigError

class SubjectLoadError : public Error {
 public:
  using Error::Error;
};

// Parses a subject file, wrapping I/O and parse failures.
lang::Program load_subject(const std::string& path);

struct RunConfig {
  Mode mode = Mode::Bridge;
  double budget_seconds = 60;
  std::optional<std::uint64_t> step_budget;  // deterministic clock when set
  std::size_t n_per_seed = 10;
  std::size_t unit_budget = 200;
  std::uint64_t rng_seed = 0;
  vm::RunOptions system;                      // unit step limit is system.step_limit / 10
  mapper::MapOptions map;
  lifter::LiftOptions lift;
  sysgen::MutateOptions mutate;
  snapshot::CarvePolicy carve;
  bool recarve_effective = true;
  std::size_t pool_cap_per_function = 256;    // unconsumed carves kept per function
  std::string corpus_out;                     // effective lifts are written here when set
  std::string program_path;                   // echoed in the report
};

void validate_config(const RunConfig& cfg);

report::CampaignReport run_campaign(const lang::Program& p, const std::vector<vm::SystemInput>& seeds,
                                    const RunConfig& cfg);

// Notation used by report logs: "fn:stmt:outcome" or "crash:kind:fn".
std::string goal_label(const LogEntry& e);

}  // namespace tgb::orch
