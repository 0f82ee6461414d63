#pragma once

#include <cstddef>
#include <vector>

#include "tgb/vm/segments.hpp"
#include "tgb/vm/value.hpp"

namespace tgb::snapshot {

struct Reachable {
  vm::SegmentTable segments;     // next_id copied from the source table
  std::vector<vm::Value> roots;  // input roots with severed references nulled
  bool truncated = false;
};

// Collects the segments reachable from `roots`, breadth first in discovery
// order. Collection stops at the first segment that would push the total
// encoded size past `max_bytes`; references into segments left behind
// (including dangling ones) become null.
Reachable snapshot_reachable(std::vector<vm::Value> roots, const vm::SegmentTable& table, std::size_t max_bytes);

}  // namespace tgb::snapshot
