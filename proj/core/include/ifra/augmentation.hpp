#pragma once

#include <cstddef>
#include <cstdint>

#include "ifra/dataset.hpp"

namespace ifra {

struct AugmentationConfig {
    std::size_t count = 15;
    // Noise standard deviation as a multiple of each feature's sample standard
    // deviation over the real training fallers.
    double noise_scale = 0.1;
    std::uint64_t seed = 0;
};

// Appends `count` synthetic fallers to the train split. Donors are drawn
// without replacement from the real training fallers; each synthetic value is
// donor + N(0, (noise_scale * sigma_f)^2). Values are not clipped.
// Throws DataError on insufficient donors or negative noise_scale.
Dataset augment_fallers(const Dataset& dataset, const AugmentationConfig& config);

}  // namespace ifra
