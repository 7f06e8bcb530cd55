#include "ifra/synthetic_cohort.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include <fmt/format.h>

#include "ifra/errors.hpp"
#include "ifra/reference_data.hpp"
#include "ifra/seeding.hpp"

namespace ifra {

namespace {

// Deterministic per-feature location and scale spanning several orders of
// magnitude, like real gait features (jerk scores vs. cadence).
double feature_location(std::size_t f) {
    static constexpr double magnitudes[] = {0.5, 5.0, 50.0, 500.0};
    return magnitudes[f % 4] * (1.0 + 0.25 * static_cast<double>(f % 3));
}

double feature_scale(std::size_t f) { return feature_location(f) * (0.15 + 0.05 * static_cast<double>(f % 5)); }

}  // namespace

Dataset generate_cohort(const CohortSpec& spec) {
    const auto& features = spec.catalog.features();
    std::vector<double> shift(features.size(), 0.0);
    for (const auto& name : spec.planted) {
        const auto idx = spec.catalog.index_of(name);
        if (!idx) throw DataError(fmt::format("cohort: planted feature '{}' not in catalog", name));
        const double sign = features[*idx].direction == Direction::higher_riskier ? 1.0 : -1.0;
        shift[*idx] = sign * spec.shift_sd * feature_scale(*idx);
    }

    Rng rng(derive_seed(spec.seed, SeedStream::cohort));
    std::normal_distribution<double> standard_normal(0.0, 1.0);
    std::vector<SubjectRecord> subjects;
    std::size_t next_id = 0;
    auto emit = [&](std::size_t count, Outcome outcome, Split split) {
        for (std::size_t k = 0; k < count; ++k) {
            SubjectRecord s;
            s.subject_id = fmt::format("S{:04d}", ++next_id);
            s.outcome = outcome;
            s.split = split;
            for (std::size_t f = 0; f < features.size(); ++f) {
                double v = feature_location(f) + feature_scale(f) * standard_normal(rng);
                if (outcome == Outcome::faller) v += shift[f];
                s.values.emplace(features[f].name, v);
            }
            subjects.push_back(std::move(s));
        }
    };
    emit(spec.train_non_fallers, Outcome::non_faller, Split::train);
    emit(spec.train_fallers, Outcome::faller, Split::train);
    emit(spec.validation_non_fallers, Outcome::non_faller, Split::validation);
    emit(spec.validation_fallers, Outcome::faller, Split::validation);
    emit(spec.test_non_fallers, Outcome::non_faller, Split::test);
    emit(spec.test_fallers, Outcome::faller, Split::test);
    return Dataset(spec.catalog, std::move(subjects));
}

CohortSpec demo_cohort_spec(std::uint64_t seed, std::size_t planted_count, double shift_sd) {
    CohortSpec spec;
    spec.catalog = reference_catalog();
    spec.seed = seed;
    spec.shift_sd = shift_sd;
    auto itug = spec.catalog.indices(FeatureKind::itug);
    if (planted_count > itug.size()) throw DataError("cohort: more planted features than ITUG features");
    Rng rng(derive_seed(seed, SeedStream::cohort, 1));
    std::shuffle(itug.begin(), itug.end(), rng);
    itug.resize(planted_count);
    std::sort(itug.begin(), itug.end());
    for (std::size_t i : itug) spec.planted.push_back(spec.catalog[i].name);
    return spec;
}

}  // namespace ifra
