#pragma once

#include <map>
#include <string>
#include <vector>

#include "tgb/mapper/mapping.hpp"
#include "tgb/snapshot/carve.hpp"
#include "tgb/util/error.hpp"

namespace tgb::unitgen {

// New values for parameter leaves; every other leaf keeps its carved value.
struct ParamAssignment {
  std::map<std::string, vm::Value> values;
  std::string provenance;  // mutator family, or "harvested"

  friend bool operator==(const ParamAssignment&, const ParamAssignment&) = default;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownParameter : public Error {
 public:
  using Error::Error;
};

struct UnitCall {
  std::vector<vm::Value> args;
  vm::World world;
};

// Deep copy of the context with the assigned leaves overwritten. When `m` is
// given, every assigned path must be one of its parameters.
snapshot::Context apply_to_context(const snapshot::Context& c, const ParamAssignment& a,
                                   const mapper::Mapping* m = nullptr);
UnitCall apply_assignment(const snapshot::CarvedTest& c, const ParamAssignment& a, const mapper::Mapping* m = nullptr);

// Runs the carve's start function under an assignment.
vm::RunResult execute(const lang::Program& p, const snapshot::CarvedTest& c, const ParamAssignment& a,
                      const vm::RunOptions& opts);

}  // namespace tgb::unitgen
