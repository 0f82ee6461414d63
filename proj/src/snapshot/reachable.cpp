#include "tgb/snapshot/reachable.hpp"

#include <deque>
#include <set>

namespace tgb::snapshot {

Reachable snapshot_reachable(std::vector<vm::Value> roots, const vm::SegmentTable& table, std::size_t max_bytes) {
  Reachable out;
  out.segments.set_next_id(table.next_id());

  std::set<vm::SegmentId> seen;
  std::deque<vm::SegmentId> queue;
  auto discover = [&](vm::Ref r) {
    if (r.is_null() || !table.contains(r.segment)) return;
    if (seen.insert(r.segment).second) queue.push_back(r.segment);
  };
  for (const auto& v : roots) vm::for_each_ref(v, discover);

  std::size_t total = 0;
  while (!queue.empty()) {
    vm::SegmentId id = queue.front();
    queue.pop_front();
    const vm::Segment* seg = table.find(id);
    std::size_t size = 0;
    for (const auto& e : seg->elements) size += vm::encoded_size(e);
    if (total + size > max_bytes) {
      out.truncated = true;
      break;
    }
    total += size;
    out.segments.insert(id, *seg);
    for (const auto& e : seg->elements) vm::for_each_ref(e, discover);
  }
  out.segments.set_next_id(table.next_id());

  auto sever = [&](vm::Ref& r) {
    if (!r.is_null() && !out.segments.contains(r.segment)) r = vm::Ref{};
  };
  for (auto& v : roots) vm::for_each_ref_mut(v, sever);
  for (const auto& [id, seg] : out.segments.segments()) {
    vm::Segment* s = out.segments.find(id);
    for (auto& e : s->elements) vm::for_each_ref_mut(e, sever);
  }
  out.roots = std::move(roots);
  return out;
}

}  // namespace tgb::snapshot
