#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tgb/snapshot/carve.hpp"
#include "tgb/vm/vm.hpp"

namespace tgb::mapper {

enum class Encoding { RawBytes, DecimalInt };

const char* encoding_name(Encoding e);
Encoding encoding_from_name(const std::string& s);

// An occurrence of a context leaf inside one system input element. `input`
// indexes SystemInput::element (argv elements first, then stdin).
struct Match {
  std::string leaf;
  std::size_t input = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  Encoding encoding = Encoding::RawBytes;

  auto operator<=>(const Match&) const = default;
};

struct Occurrence {
  std::size_t input = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  Encoding encoding = Encoding::RawBytes;
  auto operator<=>(const Occurrence&) const = default;
};

struct MapOptions {
  std::size_t min_match_len = 3;
};

struct Mapping {
  std::vector<Match> matches;           // leaf path order, then input, then start
  std::set<std::string> parameters;     // hrvar
  std::set<std::size_t> unmatched_inputs;  // S_u

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

// Byte string a leaf is searched as: raw bytes, or the shortest decimal form
// of an Int. Floats, refs and aggregates have no encoding.
std::optional<std::pair<std::string, Encoding>> leaf_encoding(const vm::Value& v);

// All occurrences of the leaf's encoding in every input element, overlapping
// ones included. Encodings shorter than min_match_len never match.
std::vector<Occurrence> classify_leaf(const vm::Value& leaf, const vm::SystemInput& s, const MapOptions& opts = {});

Mapping build_mapping(const snapshot::Context& c, const vm::SystemInput& s, const MapOptions& opts = {});
Mapping build_mapping(const snapshot::CarvedTest& c, const vm::SystemInput& s, const MapOptions& opts = {});

// Parameter paths in lexicographic order.
std::vector<std::string> hrvar(const Mapping& m);

// Matches of one leaf path, in mapping order.
std::vector<Match> matches_for(const Mapping& m, const std::string& path);

nlohmann::json mapping_to_json(const Mapping& m);
Mapping mapping_from_json(const nlohmann::json& j, std::size_t input_count);

}  // namespace tgb::mapper
