#include "ifra/evaluation.hpp"

#include <fmt/format.h>

#include "ifra/errors.hpp"

namespace ifra {

stats::ContingencyTable build_contingency(const Dataset& subjects,
                                          const std::map<std::string, Stratum, std::less<>>& assessments) {
    stats::ContingencyTable table(2, 3);
    for (const auto& s : subjects.subjects()) {
        auto it = assessments.find(s.subject_id);
        if (it == assessments.end()) {
            throw DataError(fmt::format("no assessment for subject '{}'", s.subject_id));
        }
        ++table(static_cast<std::size_t>(s.outcome), static_cast<std::size_t>(it->second));
    }
    return table;
}

EvaluationReport evaluate_scale(const Dataset& test, const RiskScale& scale, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("evaluate: alpha must lie in (0, 1)");
    const std::size_t fallers = test.count(Outcome::faller);
    const std::size_t non_fallers = test.count(Outcome::non_faller);
    if (fallers == 0 || non_fallers == 0) {
        throw DataError(fmt::format("evaluate: degenerate slice ({} fallers, {} non-fallers); both groups are required",
                                    fallers, non_fallers));
    }

    std::map<std::string, Stratum, std::less<>> assessments;
    for (const auto& s : test.subjects()) assessments.emplace(s.subject_id, assess(s, scale).stratum);

    EvaluationReport report;
    report.scale_name = scale.name;
    report.counts = build_contingency(test, assessments);
    const auto rows = report.counts.row_margins();
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            report.percentages[r][c] = 100.0 * static_cast<double>(report.counts(r, c)) / static_cast<double>(rows[r]);
        }
    }
    report.p_value = stats::fisher_exact(report.counts).p_value;
    report.alpha = alpha;
    report.reject_h0 = report.p_value < alpha;
    return report;
}

std::vector<EvaluationReport> compare_scales(const Dataset& test, const std::vector<RiskScale>& scales, double alpha) {
    std::vector<EvaluationReport> out;
    out.reserve(scales.size());
    for (const auto& scale : scales) out.push_back(evaluate_scale(test, scale, alpha));
    return out;
}

std::string reports_to_markdown(const std::vector<EvaluationReport>& reports) {
    std::string out =
        "| Scale | Non-fallers Low | Non-fallers Medium | Non-fallers High "
        "| Fallers Low | Fallers Medium | Fallers High | p-value |\n"
        "|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : reports) {
        out += fmt::format("| {} ", r.scale_name);
        for (std::size_t row = 0; row < 2; ++row) {
            for (std::size_t c = 0; c < 3; ++c) {
                out += fmt::format("| {:.1f}% ({}) ", r.percentages[row][c], r.counts(row, c));
            }
        }
        out += fmt::format("| {:.3f} |\n", r.p_value);
    }
    return out;
}

}  // namespace ifra
