#include "tgb/orchestrator/coverage_map.hpp"

namespace tgb::orch {

std::optional<CrashSignature> crash_signature(const vm::RunStatus& s) {
  if (!s.crashed()) return std::nullopt;
  return CrashSignature{s.crash, s.crash_function};
}

const char* source_name(Source s) {
  switch (s) {
    case Source::SystemSeed: return "system-seed";
    case Source::SystemGen: return "system-gen";
    case Source::Lift: return "lift";
  }
  return "?";
}

Source source_from_name(const std::string& s) {
  for (auto x : {Source::SystemSeed, Source::SystemGen, Source::Lift})
    if (s == source_name(x)) return x;
  throw FormatError("unknown discovery source '" + s + "'");
}

Clock::Clock(bool deterministic) : deterministic_(deterministic), start_(std::chrono::steady_clock::now()) {}

double Clock::wall_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

double Clock::elapsed() const { return deterministic_ ? static_cast<double>(steps_) : wall_ms() / 1000.0; }

lang::GoalSet CoverageMap::merge(const lang::GoalSet& goals, Source source, const Clock& clock) {
  lang::GoalSet fresh;
  for (const auto& g : goals) {
    if (discovered_.insert(g).second) {
      fresh.insert(g);
      log_.push_back({clock.elapsed(), clock.wall_ms(), g, std::nullopt, source});
    }
  }
  if (!fresh.empty()) ++version_;
  return fresh;
}

bool CoverageMap::merge_crash(const CrashSignature& c, Source source, const Clock& clock) {
  if (!crashes_.insert(c).second) return false;
  log_.push_back({clock.elapsed(), clock.wall_ms(), std::nullopt, c, source});
  ++version_;
  return true;
}

lang::GoalSet CoverageMap::merge_run(const vm::RunResult& r, Source source, const Clock& clock) {
  auto fresh = merge(r.coverage, source, clock);
  if (auto c = crash_signature(r.status)) merge_crash(*c, source, clock);
  return fresh;
}

}  // namespace tgb::orch
