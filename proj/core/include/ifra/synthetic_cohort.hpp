#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ifra/catalog.hpp"
#include "ifra/dataset.hpp"

namespace ifra {

// Seeded generator for cohorts with planted faller/non-faller separation.
// Every feature is Gaussian with a feature-specific location and scale;
// planted features shift the faller mean by `shift_sd` standard deviations in
// the feature's risk direction. Split sizes default to the reference
// composition before augmentation (127 real subjects, 39 fallers).
struct CohortSpec {
    FeatureCatalog catalog;
    std::vector<std::string> planted;  // feature names with a faller shift
    double shift_sd = 1.5;
    std::size_t train_non_fallers = 54;
    std::size_t train_fallers = 24;
    std::size_t validation_non_fallers = 12;
    std::size_t validation_fallers = 5;
    std::size_t test_non_fallers = 22;
    std::size_t test_fallers = 10;
    std::uint64_t seed = 0;
};

Dataset generate_cohort(const CohortSpec& spec);

// Reference catalog with `planted_count` ITUG features planted, chosen as a
// seeded sample of the ITUG features.
CohortSpec demo_cohort_spec(std::uint64_t seed, std::size_t planted_count = 6, double shift_sd = 1.5);

}  // namespace ifra
