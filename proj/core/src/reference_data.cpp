#include "ifra/reference_data.hpp"

#include "ifra/serialization.hpp"

namespace ifra {

namespace detail {
extern const std::string_view kReferenceCatalogJson;
extern const std::string_view kIfraPublishedJson;
extern const std::string_view kClinicalPublishedJson;
}  // namespace detail

std::string_view reference_catalog_json() { return detail::kReferenceCatalogJson; }
std::string_view ifra_published_json() { return detail::kIfraPublishedJson; }
std::string_view clinical_published_json() { return detail::kClinicalPublishedJson; }

const FeatureCatalog& reference_catalog() {
    static const FeatureCatalog catalog = parse_catalog(reference_catalog_json());
    return catalog;
}

const RiskScale& published_ifra_scale() {
    static const RiskScale scale = [] {
        auto scales = parse_scales(ifra_published_json());
        validate(scales.front(), reference_catalog());
        return scales.front();
    }();
    return scale;
}

const std::vector<RiskScale>& builtin_clinical_scales() {
    static const std::vector<RiskScale> scales = [] {
        auto parsed = parse_scales(clinical_published_json());
        for (const auto& s : parsed) validate(s, reference_catalog());
        return parsed;
    }();
    return scales;
}

}  // namespace ifra
