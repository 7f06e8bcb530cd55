#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifra/catalog.hpp"
#include "ifra/dataset.hpp"
#include "ifra/feature_selection.hpp"

namespace ifra {

enum class Stratum { low = 0, medium = 1, high = 2 };

std::string_view to_string(Stratum stratum);
Stratum parse_stratum(std::string_view text);

// Thresholds for one feature in raw-value convention.
//   higher_safer:   low iff x >= t_low, high iff x <= t_high (t_low >= t_high)
//   higher_riskier: low iff x <= t_low, high iff x >= t_high (t_low <= t_high)
struct FeatureThresholds {
    std::string feature;
    Direction direction = Direction::higher_safer;
    double t_low = 0.0;
    double t_high = 0.0;
    std::optional<double> selection_pct;

    friend bool operator==(const FeatureThresholds&, const FeatureThresholds&) = default;
};

enum class Provenance { derived, published };

std::string_view to_string(Provenance provenance);
Provenance parse_provenance(std::string_view text);

struct RiskScale {
    std::string name;
    std::vector<FeatureThresholds> entries;
    Provenance provenance = Provenance::derived;

    friend bool operator==(const RiskScale&, const RiskScale&) = default;
};

// Throws DataError on duplicate features, non-finite thresholds, or
// thresholds ordered against the declared direction.
void validate(const RiskScale& scale);
// Additionally requires every entry's feature to be in the catalog.
void validate(const RiskScale& scale, const FeatureCatalog& catalog);

struct DerivedScale {
    RiskScale scale;
    // Features whose order statistic at a tertile boundary is tied with its
    // neighbour, so the three groups are not exactly balanced.
    std::vector<std::string> tied_boundaries;
};

// Tertile thresholds from the train slice: values are ordered by increasing
// risk; with k = floor(n/3), t_low is the k-th and t_high the 2k-th value in
// that order. Entries follow selection.selected order.
DerivedScale derive_scale(const Dataset& train, const SelectionReport& selection,
                          const FeatureCatalog& catalog, std::string name = "IFRA-derived");

// Same rule for a single feature; exposed for direct use and testing.
FeatureThresholds tertile_thresholds(std::string feature, Direction direction,
                                     std::vector<double> values);

Stratum stratify_feature(double value, const FeatureThresholds& thresholds);

struct FeatureVote {
    std::string feature;
    double value = 0.0;
    Stratum stratum = Stratum::low;
};

struct Assessment {
    Stratum stratum = Stratum::low;
    std::vector<FeatureVote> votes;
    std::vector<std::string> skipped;  // scale features absent on the subject
    std::array<std::size_t, 3> tally{};
};

// Mode of per-feature strata; ties resolve to the highest-risk tied stratum.
// Throws DataError when `votes` is empty.
Stratum mode_vote(const std::vector<Stratum>& votes);

// Throws DataError when the subject has none of the scale's features.
Assessment assess(const SubjectRecord& subject, const RiskScale& scale);

}  // namespace ifra
