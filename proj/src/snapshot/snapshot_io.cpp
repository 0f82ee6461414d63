#include "tgb/snapshot/snapshot_io.hpp"

#include <fstream>

#include "tgb/util/base64.hpp"

namespace tgb::snapshot {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("snapshot is missing '") + key + "'");
  return *it;
}

}  // namespace

json status_to_json(const vm::RunStatus& s) {
  switch (s.kind) {
    case vm::RunStatus::Kind::Exit: return json{{"kind", "exit"}, {"code", s.code}};
    case vm::RunStatus::Kind::BudgetExhausted: return json{{"kind", "budget-exhausted"}};
    case vm::RunStatus::Kind::Crash:
      return json{{"kind", "crash"},
                  {"crash", vm::crash_kind_name(s.crash)},
                  {"fn_id", s.crash_function},
                  {"line", s.crash_pos.line},
                  {"column", s.crash_pos.column},
                  {"message", util::base64_encode(s.message)}};
  }
  return {};
}

vm::RunStatus status_from_json(const json& j) {
  vm::RunStatus s;
  const auto kind = need(j, "kind").get<std::string>();
  if (kind == "exit") {
    s.kind = vm::RunStatus::Kind::Exit;
    s.code = need(j, "code").get<std::int64_t>();
  } else if (kind == "budget-exhausted") {
    s.kind = vm::RunStatus::Kind::BudgetExhausted;
  } else if (kind == "crash") {
    s.kind = vm::RunStatus::Kind::Crash;
    auto k = vm::crash_kind_from_name(need(j, "crash").get<std::string>());
    if (!k) throw FormatError("unknown crash kind");
    s.crash = *k;
    s.crash_function = need(j, "fn_id").get<lang::FunctionId>();
    s.crash_pos.line = need(j, "line").get<std::uint32_t>();
    s.crash_pos.column = need(j, "column").get<std::uint32_t>();
    s.message = util::base64_decode(need(j, "message").get<std::string>());
  } else {
    throw FormatError("unknown status kind '" + kind + "'");
  }
  return s;
}

json input_to_json(const vm::SystemInput& s) {
  json argv = json::array();
  for (const auto& a : s.argv) argv.push_back(util::base64_encode(a));
  return json{{"argv", std::move(argv)}, {"stdin", util::base64_encode(s.stdin_data)}};
}

vm::SystemInput input_from_json(const json& j) {
  vm::SystemInput s;
  for (const auto& a : need(j, "argv")) s.argv.push_back(util::base64_decode(a.get<std::string>()));
  s.stdin_data = util::base64_decode(need(j, "stdin").get<std::string>());
  return s;
}

json goals_to_json(const lang::GoalSet& g) {
  json out = json::array();
  for (const auto& goal : g) out.push_back(lang::to_string(goal));
  return out;
}

lang::GoalSet goals_from_json(const json& j) {
  lang::GoalSet out;
  for (const auto& s : j) out.insert(lang::goal_from_string(s.get<std::string>()));
  return out;
}

json carved_to_json(const CarvedTest& c) {
  json roots = json::object();
  for (std::size_t i = 0; i < c.context.args.size(); ++i) roots[arg_path(i)] = vm::value_to_json(c.context.args[i]);
  for (const auto& [name, v] : c.context.globals) roots[global_path(name)] = vm::value_to_json(v);
  json j{{"version", kSnapshotVersion},
         {"start", {{"fn", c.start.function_name}, {"fn_id", c.start.function}, {"call_index", c.start.call_index}}},
         {"roots", std::move(roots)},
         {"segments", vm::segments_to_json(c.context.segments)},
         {"truncated", c.context.truncated},
         {"origin", {{"id", c.origin.id}, {"input", input_to_json(c.origin.input)}}},
         {"observed_coverage", goals_to_json(c.observed_coverage)},
         {"observed_status", status_to_json(c.observed_status)},
         {"observed_return", c.observed_return ? vm::value_to_json(*c.observed_return) : json(nullptr)}};
  return j;
}

CarvedTest carved_from_json(const json& j) {
  try {
    if (!j.is_object()) throw FormatError("snapshot must be an object");
    const int version = need(j, "version").get<int>();
    if (version != kSnapshotVersion)
      throw FormatError("snapshot version " + std::to_string(version) + " is not supported (expected " +
                        std::to_string(kSnapshotVersion) + ")");
    CarvedTest c;
    const json& start = need(j, "start");
    c.start.function_name = need(start, "fn").get<std::string>();
    c.start.function = need(start, "fn_id").get<lang::FunctionId>();
    c.start.call_index = need(start, "call_index").get<std::uint64_t>();

    std::map<std::size_t, vm::Value> args;
    for (const auto& [key, v] : need(j, "roots").items()) {
      if (key.rfind("arg[", 0) == 0 && key.back() == ']') {
        args[std::stoul(key.substr(4, key.size() - 5))] = vm::value_from_json(v);
      } else if (key.rfind("global:", 0) == 0) {
        c.context.globals[key.substr(7)] = vm::value_from_json(v);
      } else {
        throw FormatError("unknown root '" + key + "'");
      }
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto it = args.find(i);
      if (it == args.end()) throw FormatError("argument roots are not contiguous");
      c.context.args.push_back(std::move(it->second));
    }
    c.context.segments = vm::segments_from_json(need(j, "segments"));
    c.context.truncated = need(j, "truncated").get<bool>();
    const json& origin = need(j, "origin");
    c.origin.id = need(origin, "id").get<std::string>();
    c.origin.input = input_from_json(need(origin, "input"));
    c.observed_coverage = goals_from_json(need(j, "observed_coverage"));
    c.observed_status = status_from_json(need(j, "observed_status"));
    const json& ret = need(j, "observed_return");
    if (!ret.is_null()) c.observed_return = vm::value_from_json(ret);
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed snapshot: ") + e.what());
  } catch (const std::logic_error&) {
    throw FormatError("malformed argument root");
  }
}

void save_snapshot(const CarvedTest& c, const std::string& path, const json& extra) {
  json j = carved_to_json(c);
  if (extra.is_object())
    for (const auto& [k, v] : extra.items()) j[k] = v;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write snapshot '" + path + "'");
  out << j.dump(1) << '\n';
  if (!out) throw IoError("failed writing snapshot '" + path + "'");
}

json load_snapshot_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read snapshot '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("snapshot '" + path + "' is not valid JSON: " + e.what());
  }
}

CarvedTest load_snapshot(const std::string& path) { return carved_from_json(load_snapshot_document(path)); }

}  // namespace tgb::snapshot
