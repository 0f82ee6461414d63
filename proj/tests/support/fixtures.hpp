#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tgb/lang/goals.hpp"
#include "tgb/lang/parser.hpp"
#include "tgb/sysgen/corpus.hpp"
#include "tgb/sysgen/mutators.hpp"

namespace fixtures {

inline const std::vector<std::string>& subject_names() {
  static const std::vector<std::string> names{"keycheck", "mini_dc", "mini_sed", "mini_cut", "mini_tac"};
  return names;
}

inline std::string subject_path(const std::string& name) { return std::string(TGB_SUBJECTS_DIR) + "/" + name + ".ml"; }
inline std::string seeds_dir(const std::string& name) { return std::string(TGB_SUBJECTS_DIR) + "/" + name + "_seeds"; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline tgb::lang::Program load(const std::string& name) { return tgb::lang::parse_file(subject_path(name)); }
inline std::vector<tgb::vm::SystemInput> seeds(const std::string& name) { return tgb::sysgen::read_corpus(seeds_dir(name)); }

inline tgb::vm::SystemInput input(std::vector<std::string> argv, std::string stdin_data = "") {
  return {std::move(argv), std::move(stdin_data)};
}

// The conditional statement on the line carrying `// @<marker>`.
inline std::optional<tgb::lang::StmtId> marker_stmt(const tgb::lang::Program& p, const std::string& name,
                                                   const std::string& marker) {
  std::istringstream src(read_text(subject_path(name)));
  std::string line;
  std::uint32_t n = 0, at = 0;
  while (std::getline(src, line)) {
    ++n;
    if (line.find("// @" + marker) != std::string::npos) at = n;
  }
  if (!at) return std::nullopt;
  for (const auto& g : tgb::lang::enumerate_goals(p)) {
    auto pos = tgb::lang::stmt_position(p, g.stmt);
    if (pos && pos->line == at) return g.stmt;
  }
  return std::nullopt;
}

// `n` inputs derived from the subject's seeds: the seeds themselves first,
// then mutants from a fixed stream.
inline std::vector<tgb::vm::SystemInput> random_inputs(const std::string& name, std::size_t n, std::uint64_t seed) {
  auto base = seeds(name);
  std::vector<tgb::vm::SystemInput> out;
  for (const auto& s : base) {
    if (out.size() == n) break;
    out.push_back(s);
  }
  tgb::sysgen::Rng rng(seed);
  while (out.size() < n) out.push_back(tgb::sysgen::mutate_input(base[rng.below(base.size())], rng));
  return out;
}

}  // namespace fixtures
