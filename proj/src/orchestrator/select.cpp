#include "tgb/orchestrator/select.hpp"

#include <utility>

namespace tgb::orch {

std::optional<std::size_t> select_next(const CarvePool& pool, const CoverageMap& cov, const lang::Program& p) {
  std::map<lang::FunctionId, std::size_t> uncovered;
  std::optional<std::size_t> best;
  std::pair<std::size_t, std::string> best_key;  // (prior selections, function name)
  std::size_t best_uncovered = 0;

  for (std::size_t i = 0; i < pool.entries.size(); ++i) {
    const auto& e = pool.entries[i];
    if (e.consumed) continue;
    const auto f = e.carve.start.function;
    auto it = uncovered.find(f);
    if (it == uncovered.end()) {
      std::size_t n = 0;
      for (const auto& g : lang::goals_in_function(p, f)) n += cov.contains(g) ? 0 : 1;
      it = uncovered.emplace(f, n).first;
    }
    const std::size_t n = it->second;
    if (n == 0) continue;
    auto sel = pool.selections.find(f);
    std::pair<std::size_t, std::string> key{sel == pool.selections.end() ? 0 : sel->second, p.function(f).name};
    if (!best || n > best_uncovered || (n == best_uncovered && key < best_key)) {
      best = i;
      best_uncovered = n;
      best_key = std::move(key);
    }
  }
  return best;
}

}  // namespace tgb::orch
