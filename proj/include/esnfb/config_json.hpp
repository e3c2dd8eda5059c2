#pragma once

#include <json.hpp>

#include "esnfb/closed_loop.hpp"
#include "esnfb/experiments.hpp"

// JSON mapping mirroring the field names of the C++ structs. Missing fields
// take the struct defaults, so partial documents are accepted as overrides.

namespace esnfb {

void to_json(nlohmann::json& j, const EsnSpec& v);
void from_json(const nlohmann::json& j, EsnSpec& v);

void to_json(nlohmann::json& j, const RlsSettings& v);
void from_json(const nlohmann::json& j, RlsSettings& v);

void to_json(nlohmann::json& j, const PdGains& v);
void from_json(const nlohmann::json& j, PdGains& v);

void to_json(nlohmann::json& j, const PretrainSpec& v);
void from_json(const nlohmann::json& j, PretrainSpec& v);

void to_json(nlohmann::json& j, const ScheduleEntry& v);
void from_json(const nlohmann::json& j, ScheduleEntry& v);

// The horizon lives at the episode level ("horizon"), not inside "signal".
void to_json(nlohmann::json& j, const EpisodeConfig& v);
void from_json(const nlohmann::json& j, EpisodeConfig& v);

void to_json(nlohmann::json& j, const Interval& v);
void from_json(const nlohmann::json& j, Interval& v);

void to_json(nlohmann::json& j, const Randomization& v);
void from_json(const nlohmann::json& j, Randomization& v);

void to_json(nlohmann::json& j, const Arm& v);
void from_json(const nlohmann::json& j, Arm& v);

void to_json(nlohmann::json& j, const EvaluationSpec& v);
void from_json(const nlohmann::json& j, EvaluationSpec& v);

void to_json(nlohmann::json& j, const Experiment& v);
void from_json(const nlohmann::json& j, Experiment& v);

}  // namespace esnfb
