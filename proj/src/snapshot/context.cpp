#include "tgb/snapshot/context.hpp"

#include <charconv>

namespace tgb::snapshot {

std::string arg_path(std::size_t i) { return "arg[" + std::to_string(i) + "]"; }
std::string global_path(const std::string& name) { return "global:" + name; }
std::string segment_path(vm::SegmentId id) { return "seg#" + std::to_string(id); }

std::vector<std::string> root_paths(const Context& c) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < c.args.size(); ++i) out.push_back(arg_path(i));
  for (const auto& [name, v] : c.globals) out.push_back(global_path(name));
  return out;
}

namespace {

void walk(const vm::Value& v, std::string path, std::vector<Leaf>& out) {
  switch (v.kind()) {
    case vm::ValueKind::Int:
    case vm::ValueKind::Float:
    case vm::ValueKind::Bytes: out.push_back({std::move(path), &v}); break;
    case vm::ValueKind::Ref: break;
    case vm::ValueKind::Record: {
      const auto& r = v.as_record();
      for (std::size_t i = 0; i < r.fields.size(); ++i) walk(r.fields[i], path + "." + r.shape->fields[i], out);
      break;
    }
    case vm::ValueKind::Array: {
      const auto& a = v.as_array();
      for (std::size_t i = 0; i < a.size(); ++i) walk(a[i], path + "[" + std::to_string(i) + "]", out);
      break;
    }
  }
}

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  throw BadPath("path '" + path + "': " + why);
}

// Shared by the const and mutable resolvers.
template <typename Ctx, typename V>
V& resolve(Ctx& c, const std::string& path) {
  std::size_t pos = 0;
  auto number = [&](std::size_t& at) -> std::uint64_t {
    std::uint64_t n = 0;
    auto [p, ec] = std::from_chars(path.data() + at, path.data() + path.size(), n);
    if (ec != std::errc() || p == path.data() + at) bad(path, "expected a number");
    at = static_cast<std::size_t>(p - path.data());
    return n;
  };

  V* cur = nullptr;
  if (path.rfind("arg[", 0) == 0) {
    pos = 4;
    const auto i = number(pos);
    if (pos >= path.size() || path[pos] != ']') bad(path, "expected ']'");
    ++pos;
    if (i >= c.args.size()) bad(path, "no such argument");
    cur = &c.args[i];
  } else if (path.rfind("global:", 0) == 0) {
    pos = 7;
    std::size_t end = path.find_first_of(".[", pos);
    if (end == std::string::npos) end = path.size();
    auto it = c.globals.find(path.substr(pos, end - pos));
    if (it == c.globals.end()) bad(path, "no such global");
    cur = &it->second;
    pos = end;
  } else if (path.rfind("seg#", 0) == 0) {
    pos = 4;
    const auto id = number(pos);
    auto* seg = c.segments.find(id);
    if (!seg) bad(path, "no such segment");
    if (pos >= path.size() || path[pos] != '[') bad(path, "segment paths need an index");
    ++pos;
    const auto i = number(pos);
    if (pos >= path.size() || path[pos] != ']') bad(path, "expected ']'");
    ++pos;
    if (i >= seg->elements.size()) bad(path, "segment index out of range");
    cur = &seg->elements[i];
  } else {
    bad(path, "unknown root");
  }

  while (pos < path.size()) {
    if (path[pos] == '[') {
      ++pos;
      const auto i = number(pos);
      if (pos >= path.size() || path[pos] != ']') bad(path, "expected ']'");
      ++pos;
      if (!cur->is(vm::ValueKind::Array)) bad(path, "indexing a non-array");
      auto& a = cur->as_array();
      if (i >= a.size()) bad(path, "array index out of range");
      cur = &a[i];
    } else if (path[pos] == '.') {
      ++pos;
      std::size_t end = path.find_first_of(".[", pos);
      if (end == std::string::npos) end = path.size();
      if (!cur->is(vm::ValueKind::Record)) bad(path, "field of a non-record");
      auto& r = cur->as_record();
      const int fi = r.shape->index_of(path.substr(pos, end - pos));
      if (fi < 0) bad(path, "no such field");
      cur = &r.fields[static_cast<std::size_t>(fi)];
      pos = end;
    } else {
      bad(path, "unexpected character");
    }
  }
  return *cur;
}

}  // namespace

std::vector<Leaf> enumerate_leaves(const Context& c) {
  std::vector<Leaf> out;
  for (std::size_t i = 0; i < c.args.size(); ++i) walk(c.args[i], arg_path(i), out);
  for (const auto& [name, v] : c.globals) walk(v, global_path(name), out);
  for (const auto& [id, seg] : c.segments.segments()) {
    for (std::size_t i = 0; i < seg.elements.size(); ++i)
      walk(seg.elements[i], segment_path(id) + "[" + std::to_string(i) + "]", out);
  }
  return out;
}

const vm::Value& resolve_path(const Context& c, const std::string& path) {
  return resolve<const Context, const vm::Value>(c, path);
}

vm::Value& resolve_path(Context& c, const std::string& path) { return resolve<Context, vm::Value>(c, path); }

bool has_dangling_refs(const Context& c) {
  bool dangling = false;
  auto check = [&](vm::Ref r) {
    if (!r.is_null() && !c.segments.contains(r.segment)) dangling = true;
  };
  for (const auto& a : c.args) vm::for_each_ref(a, check);
  for (const auto& [n, g] : c.globals) vm::for_each_ref(g, check);
  for (const auto& [id, seg] : c.segments.segments())
    for (const auto& e : seg.elements) vm::for_each_ref(e, check);
  return dangling;
}

}  // namespace tgb::snapshot
