#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tgb/vm/vm.hpp"

namespace tgb::report {

inline constexpr int kReportVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct SeriesPoint {
  double elapsed = 0;
  double fraction = 0;
  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

// First discovery of a branch goal ("fn:stmt:outcome") or crash ("crash:kind:fn").
struct LogRecord {
  double elapsed = 0;
  double wall_ms = 0;
  std::string goal;
  std::string source;
  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct Tables {
  std::size_t system_runs = 0;
  std::size_t carves = 0;
  std::size_t parameterized_carves = 0;
  std::size_t functions_total = 0;
  std::size_t functions_carved = 0;
  std::size_t functions_parameterized = 0;
  std::size_t unit_rounds = 0;
  std::size_t unit_executions = 0;
  std::size_t no_parameter_carves = 0;
  std::size_t unit_winners = 0;
  std::size_t lifts = 0;
  std::size_t effective = 0;
  std::size_t other_goal = 0;
  std::size_t false_positive = 0;
  double pct_lifted = 0;     // lifts / unit winners
  double pct_effective = 0;  // effective / lifts
  friend bool operator==(const Tables&, const Tables&) = default;
};

struct Speedup {
  double median_system_ms = 0;
  double median_unit_ms = 0;
  double ratio = 0;  // system / unit; 0 without unit samples
  std::size_t system_samples = 0;
  std::size_t unit_samples = 0;
  friend bool operator==(const Speedup&, const Speedup&) = default;
};

struct NewSystemTest {
  vm::SystemInput input;
  std::vector<std::string> goals;  // what it discovered, same notation as LogRecord::goal
  std::string classification;
  std::string function;            // carve the winning assignment came from
  std::string corpus_path;
  friend bool operator==(const NewSystemTest&, const NewSystemTest&) = default;
};

struct WinningAssignment {
  std::string function;
  std::string carve_origin;
  std::uint64_t call_index = 0;
  std::map<std::string, vm::Value> values;
  std::string provenance;
  std::vector<std::string> new_goals;
  bool crashed = false;
  std::string lift;  // classification, or "unlifted"
  std::optional<vm::SystemInput> lifted_input;
  double lift_elapsed = 0;  // clock right after the lifted run was charged
  friend bool operator==(const WinningAssignment&, const WinningAssignment&) = default;
};

struct CampaignReport {
  std::string tool_version = kToolVersion;
  std::string program;
  std::string mode;
  std::uint64_t rng_seed = 0;
  bool deterministic_clock = false;
  nlohmann::json config = nlohmann::json::object();

  std::size_t total_goals = 0;
  std::size_t discovered_goals = 0;
  double elapsed = 0;
  std::vector<SeriesPoint> series;
  std::vector<LogRecord> log;
  Tables tables;
  Speedup speedup;
  std::vector<NewSystemTest> new_tests;
  std::vector<std::string> crashes;
  std::vector<WinningAssignment> winners;

  friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

nlohmann::json to_json(const CampaignReport& r);
CampaignReport report_from_json(const nlohmann::json& j);

void write_report(const CampaignReport& r, const std::string& path);
CampaignReport read_report(const std::string& path);

// "elapsed<TAB>coverage" header, then one line per series point.
std::string series_text(const CampaignReport& r);
void emit_series(const CampaignReport& r, const std::string& path);

}  // namespace tgb::report
