#include "tgb/unitgen/fuzz.hpp"

#include <variant>

#include "tgb/unitgen/mutations.hpp"

namespace tgb::unitgen {

FuzzResult fuzz_unit(const lang::Program& p, const snapshot::CarvedTest& c, const mapper::Mapping& m,
                     std::size_t budget, const orch::CoverageMap& cov, sysgen::Rng& rng, const FuzzOptions& opts) {
  const auto params = mapper::hrvar(m);
  if (params.empty()) throw NoParameters(c.start.function_name + " carve has no parameters");

  const std::vector<Bytes> harvest = harvest_values(c.context);
  using Stream = std::variant<std::monostate, IntMutations, BytesMutations>;
  std::vector<Stream> streams(params.size());
  const sysgen::Rng base = rng.child(0x57AEu);

  FuzzResult out;
  lang::GoalSet seen;
  std::set<orch::CrashSignature> seen_crashes;
  for (std::size_t n = 0; n < budget; ++n) {
    const std::size_t i = rng.below(params.size());
    if (std::holds_alternative<std::monostate>(streams[i])) {
      const vm::Value& orig = snapshot::resolve_path(c.context, params[i]);
      if (orig.is(vm::ValueKind::Int)) {
        streams[i] = IntMutations(orig.as_int(), base.child(i));
      } else {
        streams[i] = BytesMutations(orig.as_bytes(), harvest, base.child(i));
      }
    }
    ParamAssignment a;
    if (auto* s = std::get_if<IntMutations>(&streams[i])) {
      a.values[params[i]] = vm::Value::integer(s->next());
      a.provenance = s->family();
    } else {
      auto& b = std::get<BytesMutations>(streams[i]);
      a.values[params[i]] = vm::Value::bytes(b.next());
      a.provenance = b.family();
    }

    vm::RunResult r = execute(p, c, a, opts.run);
    ++out.executions;
    out.steps += r.steps;
    out.exec_ms.push_back(std::chrono::duration<double, std::milli>(r.wall).count());

    UnitOutcome o;
    for (const auto& g : r.coverage)
      if (!cov.contains(g) && !seen.count(g)) o.new_goals.insert(g);
    if (auto sig = orch::crash_signature(r.status); sig && !cov.contains(*sig) && !seen_crashes.count(*sig)) {
      o.crashed = true;
      seen_crashes.insert(*sig);
    }
    if (o.new_goals.empty() && !o.crashed) continue;
    seen.insert(o.new_goals.begin(), o.new_goals.end());
    o.assignment = std::move(a);
    o.status = r.status;
    o.coverage = std::move(r.coverage);
    o.coverage_version = cov.version();
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

}  // namespace tgb::unitgen
