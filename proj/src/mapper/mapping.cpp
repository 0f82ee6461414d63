#include "tgb/mapper/mapping.hpp"

#include <string_view>

namespace tgb::mapper {

const char* encoding_name(Encoding e) { return e == Encoding::RawBytes ? "raw-bytes" : "decimal-int"; }

Encoding encoding_from_name(const std::string& s) {
  if (s == "raw-bytes") return Encoding::RawBytes;
  if (s == "decimal-int") return Encoding::DecimalInt;
  throw FormatError("unknown match encoding '" + s + "'");
}

std::optional<std::pair<std::string, Encoding>> leaf_encoding(const vm::Value& v) {
  if (v.is(vm::ValueKind::Bytes)) return std::make_pair(v.as_bytes(), Encoding::RawBytes);
  if (v.is(vm::ValueKind::Int)) return std::make_pair(vm::decimal(v.as_int()), Encoding::DecimalInt);
  return std::nullopt;
}

std::vector<Occurrence> classify_leaf(const vm::Value& leaf, const vm::SystemInput& s, const MapOptions& opts) {
  std::vector<Occurrence> out;
  auto enc = leaf_encoding(leaf);
  if (!enc || enc->first.empty() || enc->first.size() < opts.min_match_len) return out;
  const std::string_view needle = enc->first;
  for (std::size_t i = 0; i < s.element_count(); ++i) {
    const std::string_view hay = s.element(i);
    for (std::size_t at = hay.find(needle); at != std::string_view::npos; at = hay.find(needle, at + 1))
      out.push_back({i, at, at + needle.size(), enc->second});
  }
  return out;
}

Mapping build_mapping(const snapshot::Context& c, const vm::SystemInput& s, const MapOptions& opts) {
  Mapping m;
  std::vector<bool> touched(s.element_count(), false);
  for (const auto& leaf : snapshot::enumerate_leaves(c)) {
    for (const auto& o : classify_leaf(*leaf.value, s, opts)) {
      m.matches.push_back({leaf.path, o.input, o.start, o.end, o.encoding});
      m.parameters.insert(leaf.path);
      touched[o.input] = true;
    }
  }
  for (std::size_t i = 0; i < touched.size(); ++i)
    if (!touched[i]) m.unmatched_inputs.insert(i);
  return m;
}

Mapping build_mapping(const snapshot::CarvedTest& c, const vm::SystemInput& s, const MapOptions& opts) {
  return build_mapping(c.context, s, opts);
}

std::vector<std::string> hrvar(const Mapping& m) { return {m.parameters.begin(), m.parameters.end()}; }

std::vector<Match> matches_for(const Mapping& m, const std::string& path) {
  std::vector<Match> out;
  for (const auto& x : m.matches)
    if (x.leaf == path) out.push_back(x);
  return out;
}

nlohmann::json mapping_to_json(const Mapping& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : m.matches)
    arr.push_back({{"path", x.leaf}, {"input", x.input}, {"start", x.start}, {"end", x.end},
                   {"encoding", encoding_name(x.encoding)}});
  return arr;
}

Mapping mapping_from_json(const nlohmann::json& j, std::size_t input_count) {
  Mapping m;
  std::vector<bool> touched(input_count, false);
  try {
    for (const auto& x : j) {
      Match mt{x.at("path").get<std::string>(), x.at("input").get<std::size_t>(), x.at("start").get<std::size_t>(),
               x.at("end").get<std::size_t>(), encoding_from_name(x.at("encoding").get<std::string>())};
      if (mt.input >= input_count) throw FormatError("match refers to input " + std::to_string(mt.input));
      touched[mt.input] = true;
      m.parameters.insert(mt.leaf);
      m.matches.push_back(std::move(mt));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed matches: ") + e.what());
  }
  for (std::size_t i = 0; i < input_count; ++i)
    if (!touched[i]) m.unmatched_inputs.insert(i);
  return m;
}

}  // namespace tgb::mapper
