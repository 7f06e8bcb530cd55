#include "ifra/risk_scale.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "ifra/errors.hpp"

namespace ifra {

std::string_view to_string(Stratum stratum) {
    switch (stratum) {
        case Stratum::low: return "low";
        case Stratum::medium: return "medium";
        case Stratum::high: return "high";
    }
    return "low";
}

Stratum parse_stratum(std::string_view text) {
    if (text == "low") return Stratum::low;
    if (text == "medium") return Stratum::medium;
    if (text == "high") return Stratum::high;
    throw DataError(fmt::format("unknown stratum '{}'", text));
}

std::string_view to_string(Provenance provenance) {
    return provenance == Provenance::derived ? "derived" : "published";
}

Provenance parse_provenance(std::string_view text) {
    if (text == "derived") return Provenance::derived;
    if (text == "published") return Provenance::published;
    throw DataError(fmt::format("unknown scale provenance '{}'", text));
}

void validate(const RiskScale& scale) {
    std::unordered_set<std::string> seen;
    for (const auto& e : scale.entries) {
        if (!seen.insert(e.feature).second) {
            throw DataError(fmt::format("scale '{}': duplicate feature '{}'", scale.name, e.feature));
        }
        if (!std::isfinite(e.t_low) || !std::isfinite(e.t_high)) {
            throw DataError(fmt::format("scale '{}': non-finite threshold for '{}'", scale.name, e.feature));
        }
        const bool ordered = e.direction == Direction::higher_safer ? e.t_low >= e.t_high : e.t_low <= e.t_high;
        if (!ordered) {
            throw DataError(fmt::format("scale '{}': thresholds for '{}' contradict direction {} (t_low={}, t_high={})",
                                        scale.name, e.feature, to_string(e.direction), e.t_low, e.t_high));
        }
        if (e.selection_pct && !(*e.selection_pct >= 0.0 && *e.selection_pct <= 1.0)) {
            throw DataError(fmt::format("scale '{}': selection_pct for '{}' outside [0, 1]", scale.name, e.feature));
        }
    }
}

void validate(const RiskScale& scale, const FeatureCatalog& catalog) {
    validate(scale);
    for (const auto& e : scale.entries) {
        if (!catalog.contains(e.feature)) {
            throw DataError(fmt::format("scale '{}': feature '{}' not in catalog", scale.name, e.feature));
        }
    }
}

FeatureThresholds tertile_thresholds(std::string feature, Direction direction, std::vector<double> values) {
    const std::size_t n = values.size();
    if (n < 3) throw DataError(fmt::format("derive: feature '{}' needs at least 3 training values", feature));
    // Increasing risk order.
    if (direction == Direction::higher_riskier) {
        std::sort(values.begin(), values.end());
    } else {
        std::sort(values.begin(), values.end(), std::greater<>{});
    }
    const std::size_t k = n / 3;
    return {std::move(feature), direction, values[k - 1], values[2 * k - 1], std::nullopt};
}

DerivedScale derive_scale(const Dataset& train, const SelectionReport& selection, const FeatureCatalog& catalog,
                          std::string name) {
    if (train.empty()) throw DataError("derive: train slice is empty");
    if (selection.selected.empty()) throw DataError("derive: selection report has no selected features");
    if (train.size() < 3) throw DataError("derive: need at least 3 training subjects");

    DerivedScale out;
    out.scale.name = std::move(name);
    out.scale.provenance = Provenance::derived;
    for (const auto& feature : selection.selected) {
        const FeatureDescriptor& fd = catalog.at(feature);
        auto values = train.column(feature);
        auto thresholds = tertile_thresholds(feature, fd.direction, values);

        for (const auto& rel : selection.features) {
            if (rel.name == feature) {
                thresholds.selection_pct = rel.selection_pct;
                break;
            }
        }

        // A boundary value shared with the next subject in risk order means the
        // inclusive extreme strata absorb extra subjects.
        const std::size_t k = values.size() / 3;
        const auto at_or_beyond = [&](double t, bool low_boundary) {
            std::size_t n_in = 0;
            for (double v : values) {
                const bool in = fd.direction == Direction::higher_riskier ? (low_boundary ? v <= t : v >= t)
                                                                          : (low_boundary ? v >= t : v <= t);
                n_in += in ? 1 : 0;
            }
            return n_in;
        };
        const bool tied = at_or_beyond(thresholds.t_low, true) != k ||
                          at_or_beyond(thresholds.t_high, false) != values.size() - 2 * k + 1;
        if (tied) out.tied_boundaries.push_back(feature);

        out.scale.entries.push_back(std::move(thresholds));
    }
    validate(out.scale, catalog);
    return out;
}

Stratum stratify_feature(double value, const FeatureThresholds& t) {
    if (t.direction == Direction::higher_safer) {
        if (value >= t.t_low) return Stratum::low;
        if (value <= t.t_high) return Stratum::high;
        return Stratum::medium;
    }
    if (value <= t.t_low) return Stratum::low;
    if (value >= t.t_high) return Stratum::high;
    return Stratum::medium;
}

Stratum mode_vote(const std::vector<Stratum>& votes) {
    if (votes.empty()) throw DataError("mode vote over zero features");
    std::array<std::size_t, 3> tally{};
    for (Stratum s : votes) ++tally[static_cast<std::size_t>(s)];
    Stratum best = Stratum::high;
    for (int s = 2; s >= 0; --s) {
        if (tally[static_cast<std::size_t>(s)] > tally[static_cast<std::size_t>(best)]) best = static_cast<Stratum>(s);
    }
    return best;
}

Assessment assess(const SubjectRecord& subject, const RiskScale& scale) {
    Assessment out;
    std::vector<Stratum> strata;
    for (const auto& e : scale.entries) {
        auto v = subject.value(e.feature);
        if (!v) {
            out.skipped.push_back(e.feature);
            continue;
        }
        const Stratum s = stratify_feature(*v, e);
        out.votes.push_back({e.feature, *v, s});
        ++out.tally[static_cast<std::size_t>(s)];
        strata.push_back(s);
    }
    if (strata.empty()) {
        throw DataError(fmt::format("subject '{}' has none of the {} features of scale '{}'", subject.subject_id,
                                    scale.entries.size(), scale.name));
    }
    out.stratum = mode_vote(strata);
    return out;
}

}  // namespace ifra
