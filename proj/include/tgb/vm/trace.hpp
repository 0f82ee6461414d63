#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tgb/lang/ast.hpp"
#include "tgb/vm/segments.hpp"
#include "tgb/vm/value.hpp"

namespace tgb::vm {

// Heap state captured by the probe at a call: every segment reachable from
// the callee's arguments and all globals, cut at the dump size limit.
struct HeapDump {
  SegmentTable segments;
  bool truncated = false;
  SegmentId next_segment = 1;

  friend bool operator==(const HeapDump&, const HeapDump&) = default;
};

struct CallEvent {
  std::uint64_t call_index = 0;
  lang::FunctionId function = 0;
  std::vector<Value> args;
  std::optional<HeapDump> dump;  // absent once the per-function dump cap is hit
  friend bool operator==(const CallEvent&, const CallEvent&) = default;
};

struct ReturnEvent {
  std::uint64_t call_index = 0;
  Value value;
  friend bool operator==(const ReturnEvent&, const ReturnEvent&) = default;
};

struct GlobalStoreEvent {
  std::string global;
  Value value;
  friend bool operator==(const GlobalStoreEvent&, const GlobalStoreEvent&) = default;
};

struct AllocEvent {
  SegmentId segment = 0;
  std::uint64_t length = 0;
  Origin origin = Origin::Heap;
  friend bool operator==(const AllocEvent&, const AllocEvent&) = default;
};

// Emitted the first time a goal is taken within the dynamic extent of the
// innermost open call.
struct BranchEvent {
  lang::BranchGoal goal;
  friend bool operator==(const BranchEvent&, const BranchEvent&) = default;
};

using TraceEvent = std::variant<CallEvent, ReturnEvent, GlobalStoreEvent, AllocEvent, BranchEvent>;

// JSON codecs for values and segment tables; byte arrays are base64.
nlohmann::json value_to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);
nlohmann::json segments_to_json(const SegmentTable& t);
SegmentTable segments_from_json(const nlohmann::json& j);

// One record per line, fields `kind`, `call_index`, `fn`, `args`, `global`,
// `value`, `segment`, `len`, `origin`, `goal` (plus `dump` on calls).
nlohmann::json event_to_json(const lang::Program& p, const TraceEvent& e);
TraceEvent event_from_json(const lang::Program& p, const nlohmann::json& j);

void write_trace(std::ostream& out, const lang::Program& p, const std::vector<TraceEvent>& trace);
std::vector<TraceEvent> read_trace(std::istream& in, const lang::Program& p);

}  // namespace tgb::vm
