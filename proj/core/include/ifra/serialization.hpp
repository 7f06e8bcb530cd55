#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ifra/dataset.hpp"
#include "ifra/evaluation.hpp"
#include "ifra/feature_selection.hpp"
#include "ifra/risk_scale.hpp"

namespace ifra {

using Json = nlohmann::ordered_json;

// Scale file: {name, provenance, entries:[{feature, direction, t_low, t_high, selection_pct?}]}.
Json to_json(const RiskScale& scale);
RiskScale scale_from_json(const Json& doc);
// Accepts a single scale object or an array of them. Every scale is validated.
std::vector<RiskScale> parse_scales(std::string_view json_text);
std::vector<RiskScale> load_scales(const std::filesystem::path& path);
std::string scale_to_string(const RiskScale& scale);

// {config, iterations_run, iterations_passed_gate, no_gated_iterations,
//  features:[{name, relevance_count, selection_pct}], selected:[...]}
Json to_json(const SelectionReport& report);
SelectionReport selection_report_from_json(const Json& doc);
SelectionReport load_selection_report(const std::filesystem::path& path);

Json to_json(const EvaluationReport& report);
Json to_json(const std::vector<EvaluationReport>& reports);

// One line: {subject_id, stratum, votes:[{feature, value, stratum}], skipped:[...]}.
Json assessment_line(const SubjectRecord& subject, const Assessment& assessment);

Json to_json(const IngestionLog& log);
Json to_json(const SplitSummary& summary);
Json to_json(const std::vector<DirectionConflict>& conflicts);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& doc);

}  // namespace ifra
