#include "tgb/unitgen/assignment.hpp"

namespace tgb::unitgen {

snapshot::Context apply_to_context(const snapshot::Context& c, const ParamAssignment& a, const mapper::Mapping* m) {
  snapshot::Context out = c;
  for (const auto& [path, v] : a.values) {
    if (m && !m->parameters.count(path)) throw UnknownParameter("'" + path + "' is not a parameter of this carve");
    vm::Value* slot = nullptr;
    try {
      slot = &snapshot::resolve_path(out, path);
    } catch (const snapshot::BadPath& e) {
      throw UnknownParameter(e.what());
    }
    if (slot->kind() != v.kind() || !(v.is(vm::ValueKind::Int) || v.is(vm::ValueKind::Bytes)))
      throw TypeMismatch("'" + path + "' holds " + vm::kind_name(slot->kind()) + ", assignment gives " +
                         vm::kind_name(v.kind()));
    *slot = v;
  }
  return out;
}

UnitCall apply_assignment(const snapshot::CarvedTest& c, const ParamAssignment& a, const mapper::Mapping* m) {
  snapshot::Context ctx = apply_to_context(c.context, a, m);
  UnitCall call;
  call.args = std::move(ctx.args);
  call.world.globals = std::move(ctx.globals);
  call.world.segments = std::move(ctx.segments);
  call.world.input = c.origin.input;
  return call;
}

vm::RunResult execute(const lang::Program& p, const snapshot::CarvedTest& c, const ParamAssignment& a,
                      const vm::RunOptions& opts) {
  UnitCall call = apply_assignment(c, a);
  return vm::call_function(p, c.start.function, std::move(call.args), std::move(call.world), opts);
}

}  // namespace tgb::unitgen
