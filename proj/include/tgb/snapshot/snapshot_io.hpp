#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "tgb/snapshot/carve.hpp"

namespace tgb::snapshot {

inline constexpr int kSnapshotVersion = 1;

nlohmann::json status_to_json(const vm::RunStatus& s);
vm::RunStatus status_from_json(const nlohmann::json& j);

nlohmann::json input_to_json(const vm::SystemInput& s);
vm::SystemInput input_from_json(const nlohmann::json& j);

nlohmann::json goals_to_json(const lang::GoalSet& g);
lang::GoalSet goals_from_json(const nlohmann::json& j);

nlohmann::json carved_to_json(const CarvedTest& c);
// Throws FormatError on malformed documents or a version mismatch.
CarvedTest carved_from_json(const nlohmann::json& j);

// `extra` fields (a mapping sidecar such as `matches`, the program path) are
// merged into the top-level document.
void save_snapshot(const CarvedTest& c, const std::string& path, const nlohmann::json& extra = nullptr);
CarvedTest load_snapshot(const std::string& path);
nlohmann::json load_snapshot_document(const std::string& path);

}  // namespace tgb::snapshot
