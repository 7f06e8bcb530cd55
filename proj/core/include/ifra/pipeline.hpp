#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifra/augmentation.hpp"
#include "ifra/dataset.hpp"
#include "ifra/evaluation.hpp"
#include "ifra/feature_selection.hpp"
#include "ifra/risk_scale.hpp"
#include "ifra/svm.hpp"

namespace ifra {

// End-to-end run on a seeded synthetic cohort: generate, augment, select,
// derive, assess the test split, evaluate. Every stage seed is derived from
// `seed`, so the whole run is reproducible from it.
struct DemoConfig {
    std::uint64_t seed = 0;
    std::size_t planted_count = 6;
    double shift_sd = 1.5;
    AugmentationConfig augmentation;  // seed field is overwritten
    SelectionConfig selection;        // seed field is overwritten
    SvmConfig svm;
    double alpha = 0.05;
};

struct DemoResult {
    std::vector<std::string> planted;
    Dataset dataset;  // augmented cohort
    SelectionReport selection;
    DerivedScale derived;
    EvaluationReport evaluation;
    // Share of test-split fallers assigned to the high stratum.
    double faller_high_fraction = 0.0;
};

DemoResult run_demo(const DemoConfig& config);

}  // namespace ifra
