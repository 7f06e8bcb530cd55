#include "ifra/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "ifra/errors.hpp"
#include "ifra/seeding.hpp"

namespace ifra {

namespace {

std::string fresh_id(const Dataset& dataset, std::size_t& counter) {
    for (;;) {
        std::string id = fmt::format("SYN-{:04d}", ++counter);
        if (!dataset.contains_id(id)) return id;
    }
}

}  // namespace

Dataset augment_fallers(const Dataset& dataset, const AugmentationConfig& config) {
    if (!(config.noise_scale >= 0.0) || !std::isfinite(config.noise_scale)) {
        throw DataError(fmt::format("augment: noise_scale must be non-negative, got {}", config.noise_scale));
    }
    std::vector<const SubjectRecord*> donors;
    for (const auto& s : dataset.subjects()) {
        if (s.is_faller() && !s.synthetic && s.split == Split::train) donors.push_back(&s);
    }
    if (donors.size() < config.count) {
        throw DataError(fmt::format("augment: {} synthetic fallers requested but only {} real training fallers available",
                                    config.count, donors.size()));
    }

    const auto& features = dataset.catalog().features();
    std::vector<double> noise_sd(features.size(), 0.0);
    if (donors.size() > 1) {
        for (std::size_t f = 0; f < features.size(); ++f) {
            double mean = 0.0;
            for (const auto* d : donors) mean += *d->value(features[f].name);
            mean /= static_cast<double>(donors.size());
            double ss = 0.0;
            for (const auto* d : donors) {
                const double dev = *d->value(features[f].name) - mean;
                ss += dev * dev;
            }
            noise_sd[f] = config.noise_scale * std::sqrt(ss / static_cast<double>(donors.size() - 1));
        }
    }

    Rng rng(config.seed);
    std::vector<std::size_t> order(donors.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<SubjectRecord> subjects = dataset.subjects();
    std::size_t counter = 0;
    std::normal_distribution<double> standard_normal(0.0, 1.0);
    for (std::size_t k = 0; k < config.count; ++k) {
        const SubjectRecord& donor = *donors[order[k]];
        SubjectRecord synthetic;
        synthetic.subject_id = fresh_id(dataset, counter);
        synthetic.outcome = Outcome::faller;
        synthetic.synthetic = true;
        synthetic.split = Split::train;
        for (std::size_t f = 0; f < features.size(); ++f) {
            const double base = *donor.value(features[f].name);
            // Draw even when the scale is zero so the stream does not depend on it.
            const double z = standard_normal(rng);
            synthetic.values.emplace(features[f].name, noise_sd[f] > 0.0 ? base + noise_sd[f] * z : base);
        }
        subjects.push_back(std::move(synthetic));
    }
    return Dataset(dataset.catalog(), std::move(subjects));
}

}  // namespace ifra
