#include "tgb/snapshot/carve.hpp"

#include <algorithm>

namespace tgb::snapshot {

namespace {

struct OpenCall {
  std::uint64_t call_index = 0;
  lang::GoalSet goals;
  std::optional<CarvedTest> pending;
};

void sever_outside(vm::Value& v, const vm::SegmentTable& t) {
  vm::for_each_ref_mut(v, [&](vm::Ref& r) {
    if (!r.is_null() && !t.contains(r.segment)) r = vm::Ref{};
  });
}

}  // namespace

CarveResult carve(const lang::Program& p, const vm::RunResult& result, const CarvePolicy& policy,
                  const TestOrigin& origin) {
  CarveResult out;
  if (result.trace_overflowed) {
    out.skipped.trace_incomplete = true;
    return out;
  }

  std::map<std::string, vm::Value> globals;
  for (const auto& g : p.globals) globals[g.name] = vm::zero_value(p, g.type);
  std::vector<std::size_t> per_function(p.functions.size(), 0);
  std::vector<OpenCall> open;
  open.emplace_back();  // base frame for calls made outside main

  for (const auto& ev : result.trace) {
    if (const auto* call = std::get_if<vm::CallEvent>(&ev)) {
      OpenCall frame;
      frame.call_index = call->call_index;
      if (call->function != p.entry) {
        ++out.skipped.calls;
        const auto& name = p.function(call->function).name;
        if (policy.functions && !policy.functions->count(name)) {
          ++out.skipped.filtered;
        } else if (per_function[call->function] >= policy.max_per_function) {
          ++out.skipped.over_cap;
        } else if (!call->dump) {
          ++out.skipped.no_dump;
        } else {
          ++per_function[call->function];
          CarvedTest t;
          t.start = {call->function, name, call->call_index};
          t.origin = origin;
          t.context.segments = call->dump->segments;
          t.context.segments.set_next_id(call->dump->next_segment);
          t.context.truncated = call->dump->truncated;
          t.context.args = call->args;
          t.context.globals = globals;
          for (auto& a : t.context.args) sever_outside(a, t.context.segments);
          for (auto& [n, g] : t.context.globals) sever_outside(g, t.context.segments);
          frame.pending = std::move(t);
        }
      }
      open.push_back(std::move(frame));
    } else if (const auto* ret = std::get_if<vm::ReturnEvent>(&ev)) {
      if (open.size() < 2) continue;  // malformed; nothing to close
      OpenCall frame = std::move(open.back());
      open.pop_back();
      if (frame.pending) {
        frame.pending->observed_coverage = frame.goals;
        frame.pending->observed_status = vm::RunStatus{};
        frame.pending->observed_return = ret->value;
        out.tests.push_back(std::move(*frame.pending));
      }
      open.back().goals.merge(frame.goals);
    } else if (const auto* store = std::get_if<vm::GlobalStoreEvent>(&ev)) {
      globals[store->global] = store->value;
    } else if (const auto* br = std::get_if<vm::BranchEvent>(&ev)) {
      open.back().goals.insert(br->goal);
    }
  }

  // Calls still open died with the run.
  while (open.size() > 1) {
    OpenCall frame = std::move(open.back());
    open.pop_back();
    if (frame.pending) {
      if (result.status.crashed()) {
        frame.pending->observed_coverage = frame.goals;
        frame.pending->observed_status = result.status;
        out.tests.push_back(std::move(*frame.pending));
      } else {
        ++out.skipped.unfinished;
      }
    }
    open.back().goals.merge(frame.goals);
  }

  std::sort(out.tests.begin(), out.tests.end(),
            [](const CarvedTest& a, const CarvedTest& b) { return a.start.call_index < b.start.call_index; });
  out.skipped.carved = out.tests.size();
  return out;
}

vm::RunResult replay(const lang::Program& p, const CarvedTest& c, const vm::RunOptions& opts) {
  vm::World w;
  w.globals = c.context.globals;
  w.segments = c.context.segments;
  w.input = c.origin.input;
  return vm::call_function(p, c.start.function, c.context.args, std::move(w), opts);
}

bool replay_matches(const CarvedTest& c, const vm::RunResult& r) {
  if (r.coverage != c.observed_coverage || !(r.status == c.observed_status)) return false;
  if (c.observed_return.has_value() != r.return_value.has_value()) return false;
  return !c.observed_return || *c.observed_return == *r.return_value;
}

}  // namespace tgb::snapshot
