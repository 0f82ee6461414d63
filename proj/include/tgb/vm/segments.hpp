#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tgb/vm/value.hpp"

namespace tgb::vm {

enum class Origin { Heap, Global, Argv, Input };

const char* origin_name(Origin o);
std::optional<Origin> origin_from_name(const std::string& name);

// One allocation. The element count is fixed at allocation time.
struct Segment {
  ValueKind element_kind = ValueKind::Int;
  Origin origin = Origin::Heap;
  std::vector<Value> elements;

  std::size_t length() const { return elements.size(); }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// The allocation registry: segment id -> (element type, length, values,
// origin). Ids are never reused within one execution.
class SegmentTable {
 public:
  SegmentId allocate(ValueKind element_kind, Origin origin, std::vector<Value> elements);

  // Inserts a segment under a known id (snapshot restore).
  void insert(SegmentId id, Segment segment);

  const Segment* find(SegmentId id) const;
  Segment* find(SegmentId id);
  bool contains(SegmentId id) const { return segments_.count(id) != 0; }

  // Remaining length behind a reference: length - offset. nullopt if dangling.
  std::optional<std::int64_t> remaining(Ref r) const;

  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  SegmentId next_id() const { return next_id_; }
  void set_next_id(SegmentId id) { next_id_ = id; }

  const std::map<SegmentId, Segment>& segments() const { return segments_; }

  friend bool operator==(const SegmentTable&, const SegmentTable&) = default;

 private:
  std::map<SegmentId, Segment> segments_;
  SegmentId next_id_ = 1;
};

}  // namespace tgb::vm
