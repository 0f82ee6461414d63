#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tgb/mapper/mapping.hpp"
#include "tgb/orchestrator/coverage_map.hpp"
#include "tgb/snapshot/carve.hpp"

namespace tgb::orch {

struct PoolEntry {
  snapshot::CarvedTest carve;
  mapper::Mapping mapping;
  bool consumed = false;
};

struct CarvePool {
  std::vector<PoolEntry> entries;
  std::map<lang::FunctionId, std::size_t> selections;
};

// Index of an unconsumed carve whose function has the most goals missing from
// cov; ties go to fewer prior selections, then the smaller function name, then
// pool order. nullopt when the pool is empty or every pooled function is fully
// covered.
std::optional<std::size_t> select_next(const CarvePool& pool, const CoverageMap& cov, const lang::Program& p);

}  // namespace tgb::orch
