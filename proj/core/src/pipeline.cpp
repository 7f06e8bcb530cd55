#include "ifra/pipeline.hpp"

#include "ifra/errors.hpp"
#include "ifra/seeding.hpp"
#include "ifra/synthetic_cohort.hpp"

namespace ifra {

DemoResult run_demo(const DemoConfig& config) {
    DemoResult result;
    const auto spec = demo_cohort_spec(config.seed, config.planted_count, config.shift_sd);
    result.planted = spec.planted;

    auto augmentation = config.augmentation;
    augmentation.seed = derive_seed(config.seed, SeedStream::augmentation);
    result.dataset = augment_fallers(generate_cohort(spec), augmentation);

    const auto train = result.dataset.slice(Split::train);
    auto selection = config.selection;
    selection.seed = derive_seed(config.seed, SeedStream::selection_subset);
    result.selection =
        run_selection(train, result.dataset.slice(Split::validation), result.dataset.catalog(), config.svm, selection);
    if (result.selection.selected.empty()) {
        throw NumericError("demo: feature selection selected no features");
    }

    result.derived = derive_scale(train, result.selection, result.dataset.catalog());
    result.evaluation = evaluate_scale(result.dataset.slice(Split::test), result.derived.scale, config.alpha);
    const auto& counts = result.evaluation.counts;
    result.faller_high_fraction =
        static_cast<double>(counts(1, 2)) / static_cast<double>(counts(1, 0) + counts(1, 1) + counts(1, 2));
    return result;
}

}  // namespace ifra
