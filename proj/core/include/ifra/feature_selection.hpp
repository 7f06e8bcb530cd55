#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifra/catalog.hpp"
#include "ifra/dataset.hpp"
#include "ifra/svm.hpp"

namespace ifra {

enum class FeatureFilter { itug, clinical, all };
enum class SelectionDenominator { gated, total };

std::string_view to_string(FeatureFilter filter);
std::string_view to_string(SelectionDenominator denominator);
FeatureFilter parse_feature_filter(std::string_view text);
SelectionDenominator parse_denominator(std::string_view text);

struct SelectionConfig {
    std::size_t iterations = 1000;
    double accuracy_gate = 0.80;
    double alpha = 0.05;
    double relevance_fraction = 0.50;
    std::uint64_t seed = 0;
    FeatureFilter feature_kind = FeatureFilter::itug;
    SelectionDenominator denominator = SelectionDenominator::gated;
    // Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    std::size_t threads = 1;
};

// Throws DataError for out-of-range settings.
void validate(const SelectionConfig& config);

struct FeatureRelevance {
    std::string name;
    std::size_t relevance_count = 0;
    double selection_pct = 0.0;

    friend bool operator==(const FeatureRelevance&, const FeatureRelevance&) = default;
};

struct SelectionReport {
    SelectionConfig config;
    SvmConfig svm;
    std::size_t iterations_run = 0;
    std::size_t iterations_passed_gate = 0;
    // Set when no iteration passed the accuracy gate; `selected` is then empty.
    bool no_gated_iterations = false;
    std::vector<FeatureRelevance> features;  // catalog order
    std::vector<std::string> selected;       // descending selection_pct, ties by catalog order
};

// All fallers of `train` plus an equally sized uniform sample of its
// non-fallers, drawn without replacement. Returned in dataset order.
// Throws DataError when non-fallers are fewer than fallers.
std::vector<SubjectRecord> sample_balanced_subset(const Dataset& train, std::uint64_t iteration_seed);

// Subsampled, SVM-gated significance counting. For each iteration: draw a
// balanced subset, train a linear SVM on the filtered features, and if the
// validation accuracy reaches the gate, test each feature for a faller vs
// non-faller difference (pooled t-test when both groups pass Shapiro-Wilk at
// alpha, rank-sum otherwise). Deterministic in config.seed for any thread count.
SelectionReport run_selection(const Dataset& train, const Dataset& validation,
                              const FeatureCatalog& catalog, const SvmConfig& svm_config,
                              const SelectionConfig& config);

// Per-feature decision used inside gated iterations, exposed for testing.
// Returns the p-value of the chosen comparison.
double feature_comparison_p_value(const std::vector<double>& fallers,
                                  const std::vector<double>& non_fallers, double alpha);

}  // namespace ifra
