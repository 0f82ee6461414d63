#include "tgb/vm/trace.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "tgb/util/base64.hpp"
#include "tgb/util/error.hpp"

namespace tgb::vm {

using nlohmann::json;

namespace {

std::shared_ptr<const lang::RecordShape> shared_shape(const std::string& name, std::vector<std::string> fields) {
  // Decoded records of the same layout share one shape object.
  thread_local std::map<std::pair<std::string, std::vector<std::string>>, std::shared_ptr<const lang::RecordShape>>
      cache;
  auto key = std::make_pair(name, fields);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto shape = std::make_shared<lang::RecordShape>();
  shape->name = name;
  shape->fields = std::move(fields);
  cache.emplace(std::move(key), shape);
  return shape;
}

ValueKind kind_from_name(const std::string& s) {
  for (auto k : {ValueKind::Int, ValueKind::Float, ValueKind::Bytes, ValueKind::Ref, ValueKind::Record,
                 ValueKind::Array})
    if (s == kind_name(k)) return k;
  throw FormatError("unknown value kind '" + s + "'");
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

}  // namespace

json value_to_json(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Int: return json{{"int", v.as_int()}};
    case ValueKind::Float: {
      double d = v.as_float();
      if (std::isfinite(d)) return json{{"float", d}};
      // keep the exact bit pattern for NaN and infinities
      return json{{"float_bits", std::bit_cast<std::uint64_t>(d)}};
    }
    case ValueKind::Bytes: return json{{"bytes", util::base64_encode(v.as_bytes())}};
    case ValueKind::Ref: {
      Ref r = v.as_ref();
      if (r.is_null()) return json{{"ref", nullptr}};
      return json{{"ref", json::array({r.segment, r.offset})}};
    }
    case ValueKind::Record: {
      const Record& r = v.as_record();
      json fields = json::array();
      for (std::size_t i = 0; i < r.fields.size(); ++i)
        fields.push_back(json::array({r.shape->fields[i], value_to_json(r.fields[i])}));
      return json{{"record", r.shape->name}, {"fields", std::move(fields)}};
    }
    case ValueKind::Array: {
      json elems = json::array();
      for (const auto& e : v.as_array()) elems.push_back(value_to_json(e));
      return json{{"array", std::move(elems)}};
    }
  }
  return {};
}

Value value_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("value must be an object");
  try {
    if (j.contains("int")) return Value::integer(j["int"].get<std::int64_t>());
    if (j.contains("float")) return Value::floating(j["float"].get<double>());
    if (j.contains("float_bits")) return Value::floating(std::bit_cast<double>(j["float_bits"].get<std::uint64_t>()));
    if (j.contains("bytes")) return Value::bytes(util::base64_decode(j["bytes"].get<std::string>()));
    if (j.contains("ref")) {
      const json& r = j["ref"];
      if (r.is_null()) return Value::null();
      if (!r.is_array() || r.size() != 2) throw FormatError("ref must be [segment, offset]");
      return Value::ref(Ref{r[0].get<SegmentId>(), r[1].get<std::int64_t>()});
    }
    if (j.contains("record")) {
      std::vector<std::string> names;
      Record rec;
      for (const auto& f : field(j, "fields")) {
        if (!f.is_array() || f.size() != 2) throw FormatError("record field must be [name, value]");
        names.push_back(f[0].get<std::string>());
        rec.fields.push_back(value_from_json(f[1]));
      }
      rec.shape = shared_shape(j["record"].get<std::string>(), std::move(names));
      return Value::record(std::move(rec));
    }
    if (j.contains("array")) {
      Array a;
      for (const auto& e : j["array"]) a.push_back(value_from_json(e));
      return Value::array(std::move(a));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad value: ") + e.what());
  }
  throw FormatError("unrecognised value encoding");
}

json segments_to_json(const SegmentTable& t) {
  json segs = json::array();
  for (const auto& [id, seg] : t.segments()) {
    json elems = json::array();
    for (const auto& e : seg.elements) elems.push_back(value_to_json(e));
    segs.push_back(json{{"id", id},
                        {"kind", kind_name(seg.element_kind)},
                        {"origin", origin_name(seg.origin)},
                        {"elements", std::move(elems)}});
  }
  return json{{"next_id", t.next_id()}, {"segments", std::move(segs)}};
}

SegmentTable segments_from_json(const json& j) {
  SegmentTable t;
  try {
    for (const auto& s : field(j, "segments")) {
      Segment seg;
      seg.element_kind = kind_from_name(field(s, "kind").get<std::string>());
      auto origin = origin_from_name(field(s, "origin").get<std::string>());
      if (!origin) throw FormatError("unknown segment origin");
      seg.origin = *origin;
      for (const auto& e : field(s, "elements")) seg.elements.push_back(value_from_json(e));
      SegmentId id = field(s, "id").get<SegmentId>();
      if (id == 0) throw FormatError("segment id 0 is reserved for null");
      t.insert(id, std::move(seg));
    }
    t.set_next_id(std::max(t.next_id(), field(j, "next_id").get<SegmentId>()));
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad segment table: ") + e.what());
  }
  return t;
}

json event_to_json(const lang::Program& p, const TraceEvent& e) {
  return std::visit(
      [&](const auto& ev) -> json {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, CallEvent>) {
          json args = json::array();
          for (const auto& a : ev.args) args.push_back(value_to_json(a));
          json j{{"kind", "call"}, {"call_index", ev.call_index}, {"fn", p.function(ev.function).name},
                 {"args", std::move(args)}};
          if (ev.dump) {
            j["dump"] = json{{"segments", segments_to_json(ev.dump->segments)},
                             {"truncated", ev.dump->truncated},
                             {"next_segment", ev.dump->next_segment}};
          }
          return j;
        } else if constexpr (std::is_same_v<T, ReturnEvent>) {
          return json{{"kind", "return"}, {"call_index", ev.call_index}, {"value", value_to_json(ev.value)}};
        } else if constexpr (std::is_same_v<T, GlobalStoreEvent>) {
          return json{{"kind", "global_store"}, {"global", ev.global}, {"value", value_to_json(ev.value)}};
        } else if constexpr (std::is_same_v<T, AllocEvent>) {
          return json{{"kind", "alloc"}, {"segment", ev.segment}, {"len", ev.length}, {"origin", origin_name(ev.origin)}};
        } else {
          return json{{"kind", "branch"}, {"goal", lang::to_string(ev.goal)}};
        }
      },
      e);
}

TraceEvent event_from_json(const lang::Program& p, const json& j) {
  try {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "call") {
      CallEvent ev;
      ev.call_index = field(j, "call_index").get<std::uint64_t>();
      auto fn = p.find_function(field(j, "fn").get<std::string>());
      if (!fn) throw FormatError("trace names unknown function '" + j["fn"].get<std::string>() + "'");
      ev.function = *fn;
      for (const auto& a : field(j, "args")) ev.args.push_back(value_from_json(a));
      if (j.contains("dump")) {
        const json& d = j["dump"];
        ev.dump = HeapDump{segments_from_json(field(d, "segments")), field(d, "truncated").get<bool>(),
                           field(d, "next_segment").get<SegmentId>()};
      }
      return ev;
    }
    if (kind == "return")
      return ReturnEvent{field(j, "call_index").get<std::uint64_t>(), value_from_json(field(j, "value"))};
    if (kind == "global_store")
      return GlobalStoreEvent{field(j, "global").get<std::string>(), value_from_json(field(j, "value"))};
    if (kind == "alloc") {
      auto origin = origin_from_name(field(j, "origin").get<std::string>());
      if (!origin) throw FormatError("unknown alloc origin");
      return AllocEvent{field(j, "segment").get<SegmentId>(), field(j, "len").get<std::uint64_t>(), *origin};
    }
    if (kind == "branch") return BranchEvent{lang::goal_from_string(field(j, "goal").get<std::string>())};
    throw FormatError("unknown trace event kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad trace event: ") + e.what());
  }
}

void write_trace(std::ostream& out, const lang::Program& p, const std::vector<TraceEvent>& trace) {
  for (const auto& e : trace) out << event_to_json(p, e).dump() << '\n';
}

std::vector<TraceEvent> read_trace(std::istream& in, const lang::Program& p) {
  std::vector<TraceEvent> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("bad trace line: ") + e.what());
    }
    out.push_back(event_from_json(p, j));
  }
  return out;
}

}  // namespace tgb::vm
