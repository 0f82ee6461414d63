#include "tgb/lifter/lift.hpp"

#include <algorithm>
#include <map>

namespace tgb::lifter {

LiftedInput lift(const mapper::Mapping& m, const unitgen::ParamAssignment& a, const vm::SystemInput& origin,
                 const LiftOptions& opts) {
  LiftedInput out;
  out.input = origin;
  std::map<std::size_t, std::vector<Replacement>> per_input;
  for (const auto& [path, value] : a.values) {
    auto matches = mapper::matches_for(m, path);
    if (matches.empty()) throw UnmappedParameter("'" + path + "' has no match in the system input");
    if (opts.first_occurrence_only) matches.resize(1);
    for (const auto& mt : matches) {
      vm::Bytes enc;
      if (mt.encoding == mapper::Encoding::RawBytes) {
        if (!value.is(vm::ValueKind::Bytes)) throw unitgen::TypeMismatch("'" + path + "' needs a bytes value");
        enc = value.as_bytes();
      } else {
        if (!value.is(vm::ValueKind::Int)) throw unitgen::TypeMismatch("'" + path + "' needs an int value");
        enc = vm::decimal(value.as_int());
      }
      per_input[mt.input].push_back({mt, std::move(enc)});
    }
  }

  for (auto& [input, reps] : per_input) {
    std::sort(reps.begin(), reps.end(), [](const Replacement& x, const Replacement& y) {
      if (x.match.start != y.match.start) return x.match.start > y.match.start;
      return x.match.end > y.match.end;
    });
    vm::Bytes& s = out.input.element(input);
    for (const auto& r : reps) {
      const std::size_t start = std::min(r.match.start, s.size());
      const std::size_t end = std::min(r.match.end, s.size());
      s = s.substr(0, start) + r.bytes + s.substr(std::max(start, end));
    }
    for (auto& r : reps) out.replaced.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < origin.element_count(); ++i)
    if (!per_input.count(i)) out.untouched.insert(i);
  return out;
}

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Effective: return "effective";
    case Classification::OtherGoal: return "other-goal";
    case Classification::FalsePositive: return "false-positive";
  }
  return "?";
}

Classification classification_from_name(const std::string& s) {
  for (auto c : {Classification::Effective, Classification::OtherGoal, Classification::FalsePositive})
    if (s == classification_name(c)) return c;
  throw FormatError("unknown lift classification '" + s + "'");
}

Validation validate(const lang::Program& p, const LiftedInput& li, const lang::GoalSet& sought,
                    const std::optional<orch::CrashSignature>& unit_crash, orch::CoverageMap& cov,
                    orch::Clock& clock, const vm::RunOptions& opts) {
  Validation v;
  try {
    v.run = vm::run_with_tracing(p, li.input, opts);
  } catch (const vm::TraceOverflow& e) {
    v.run = e.result();
  }
  clock.charge(std::max<std::uint64_t>(v.run.steps, 1));

  LiftOutcome& o = v.outcome;
  o.sought = sought;
  o.status = v.run.status;
  const auto sig = orch::crash_signature(v.run.status);
  o.crash_reproduced = unit_crash && sig && *sig == *unit_crash;
  o.new_crash = sig && !cov.contains(*sig);
  o.system_goals = cov.merge_run(v.run, orch::Source::Lift, clock);

  bool hit = false;
  for (const auto& g : sought) hit = hit || o.system_goals.count(g);
  if (hit || (o.crash_reproduced && o.new_crash)) {
    o.classification = Classification::Effective;
  } else if (!o.system_goals.empty() || o.new_crash) {
    o.classification = Classification::OtherGoal;
  } else {
    o.classification = Classification::FalsePositive;
  }
  return v;
}

}  // namespace tgb::lifter
