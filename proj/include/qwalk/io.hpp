#pragma once

// JSON encodings of targets, schedules, walk states, circuits and cost
// reports. Parsing errors surface as InvalidInput.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qwalk/circuit.hpp"
#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::io {

using nlohmann::json;

/// {"c", "d", "amplitudes": [{"index": [...], "re", "im"}]}; zero entries
/// omitted.
json target_to_json(const TargetState& target);
/// Validates unit norm to kInputTol.
TargetState target_from_json(const json& j);

/// {"c", "d", "steps": [{"shift_power", "blocks": [{"pos", "matrix"}]}],
///  "final_blocks": [...], "metadata": {...}}. Matrices are row-major,
/// 2^c rows of 2^c [re, im] pairs. `metadata` is copied verbatim.
json schedule_to_json(const Schedule& schedule, const json& metadata = json::object());
/// Validates unitarity to kInputTol and positions inside [0,d)^c.
Schedule schedule_from_json(const json& j);

json walk_state_to_json(const WalkState& state);

json circuit_to_json(const CircuitIR& circuit);
json cost_report_to_json(const CostReport& report);
std::string cost_report_table(const CostReport& report);

/// Two-space indented dump followed by a newline.
std::string dump(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qwalk::io
