#pragma once

#include <string_view>
#include <vector>

#include "ifra/catalog.hpp"
#include "ifra/risk_scale.hpp"

namespace ifra {

// 8 clinical + 100 ITUG features. Names follow the instrumented-TUG feature
// list; units are split out of the bracketed suffix.
const FeatureCatalog& reference_catalog();

// The published 22-feature instrumented scale with its selection percentages.
const RiskScale& published_ifra_scale();

// Single-feature clinical scales with literature thresholds:
// MB, FIM (total), FIM (motor domain), POMA-B, TUG Test (TTD), FES-I,
// Conley Scale, 10MWT.
const std::vector<RiskScale>& builtin_clinical_scales();

// Raw text of the bundled data files.
std::string_view reference_catalog_json();
std::string_view ifra_published_json();
std::string_view clinical_published_json();

}  // namespace ifra
