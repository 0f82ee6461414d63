#pragma once

#include <map>
#include <string>
#include <vector>

#include "tgb/util/error.hpp"
#include "tgb/vm/segments.hpp"
#include "tgb/vm/value.hpp"

namespace tgb::snapshot {

// C_t: callee arguments, every global, and the heap slice reachable from them.
struct Context {
  std::vector<vm::Value> args;
  std::map<std::string, vm::Value> globals;
  vm::SegmentTable segments;  // next_id = first id the unit may allocate
  bool truncated = false;

  friend bool operator==(const Context&, const Context&) = default;
};

class BadPath : public Error {
 public:
  using Error::Error;
};

// Paths name a value inside a context. Roots are `arg[i]`, `global:<name>`
// and `seg#<id>` (a heap segment); `[i]` indexes arrays and segments,
// `.f` selects record fields. Example: `seg#3[1].name`.
std::string arg_path(std::size_t i);
std::string global_path(const std::string& name);
std::string segment_path(vm::SegmentId id);

// var(C): root paths in deterministic order (args, then globals by name).
std::vector<std::string> root_paths(const Context& c);

struct Leaf {
  std::string path;
  const vm::Value* value;
};

// Every Int, Float and Bytes leaf under roots and segments.
std::vector<Leaf> enumerate_leaves(const Context& c);

// Throws BadPath if the path is malformed or does not resolve.
const vm::Value& resolve_path(const Context& c, const std::string& path);
vm::Value& resolve_path(Context& c, const std::string& path);

// True if a reference in the roots or segments points outside the slice.
bool has_dangling_refs(const Context& c);

}  // namespace tgb::snapshot
