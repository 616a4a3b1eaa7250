#pragma once

// JSON documents exchanged by the CLI, the HTTP API and the fixture files.

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "apr/input_model.hpp"
#include "apr/recommender.hpp"
#include "apr/service/pipeline.hpp"

namespace apr::service {

/// Structural parse only; limits are checked by validate_spec.
RequirementsSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const RequirementsSpec& spec);
RequirementsSpec parse_spec(std::string_view document);
RequirementsSpec load_spec(const std::filesystem::path& path);

EvalCase eval_case_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const ConfidenceTable& table);
nlohmann::json recommendation_set_to_json(const RecommendationSet& set);
nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json taxonomy_to_json(const Taxonomy& taxonomy);
nlohmann::json field_errors_to_json(const std::vector<FieldError>& errors);

/// Stable text for byte-comparison: two-space indent, sorted keys, newline.
std::string dump_machine(const nlohmann::json& j);

}  // namespace apr::service
