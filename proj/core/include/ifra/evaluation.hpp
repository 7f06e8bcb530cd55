#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ifra/dataset.hpp"
#include "ifra/risk_scale.hpp"
#include "ifra/stat_tests.hpp"

namespace ifra {

// Rows: non-faller, faller. Columns: low, medium, high.
stats::ContingencyTable build_contingency(const Dataset& subjects,
                                          const std::map<std::string, Stratum, std::less<>>& assessments);

struct EvaluationReport {
    std::string scale_name;
    stats::ContingencyTable counts;
    // Row-normalized percentages, [outcome][stratum].
    std::array<std::array<double, 3>, 2> percentages{};
    double p_value = 1.0;
    double alpha = 0.05;
    bool reject_h0 = false;
};

// Assesses every subject, tabulates outcome x stratum, and runs the exact
// test. Throws DataError unless the slice has at least one faller and one
// non-faller.
EvaluationReport evaluate_scale(const Dataset& test, const RiskScale& scale, double alpha = 0.05);

std::vector<EvaluationReport> compare_scales(const Dataset& test, const std::vector<RiskScale>& scales,
                                             double alpha = 0.05);

// Table with one row per scale: row percentages per stratum for non-fallers
// and fallers, then the p-value.
std::string reports_to_markdown(const std::vector<EvaluationReport>& reports);

}  // namespace ifra
