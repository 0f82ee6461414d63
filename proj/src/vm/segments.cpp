#include "tgb/vm/segments.hpp"

namespace tgb::vm {

const char* origin_name(Origin o) {
  switch (o) {
    case Origin::Heap: return "heap";
    case Origin::Global: return "global";
    case Origin::Argv: return "argv";
    case Origin::Input: return "input";
  }
  return "?";
}

std::optional<Origin> origin_from_name(const std::string& name) {
  if (name == "heap") return Origin::Heap;
  if (name == "global") return Origin::Global;
  if (name == "argv") return Origin::Argv;
  if (name == "input") return Origin::Input;
  return std::nullopt;
}

SegmentId SegmentTable::allocate(ValueKind element_kind, Origin origin, std::vector<Value> elements) {
  const SegmentId id = next_id_++;
  segments_.emplace(id, Segment{element_kind, origin, std::move(elements)});
  return id;
}

void SegmentTable::insert(SegmentId id, Segment segment) {
  segments_.insert_or_assign(id, std::move(segment));
  if (id >= next_id_) next_id_ = id + 1;
}

const Segment* SegmentTable::find(SegmentId id) const {
  auto it = segments_.find(id);
  return it == segments_.end() ? nullptr : &it->second;
}

Segment* SegmentTable::find(SegmentId id) {
  auto it = segments_.find(id);
  return it == segments_.end() ? nullptr : &it->second;
}

std::optional<std::int64_t> SegmentTable::remaining(Ref r) const {
  const Segment* s = find(r.segment);
  if (!s) return std::nullopt;
  return static_cast<std::int64_t>(s->length()) - r.offset;
}

}  // namespace tgb::vm
