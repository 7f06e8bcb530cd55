#include <gtest/gtest.h>

#include "golden.hpp"
#include "ifra/reference_data.hpp"
#include "ifra/serialization.hpp"

namespace ifra {
namespace {

TEST(ReferenceData, PublishedScaleMatchesGolden) {
    const auto golden = testing::read_tsv("golden/ifra_published.tsv");
    const auto& scale = published_ifra_scale();
    EXPECT_EQ(scale.name, "IFRA");
    EXPECT_EQ(scale.provenance, Provenance::published);
    ASSERT_EQ(golden.size(), 22u);
    ASSERT_EQ(scale.entries.size(), 22u);
    for (std::size_t i = 0; i < golden.size(); ++i) {
        const auto& e = scale.entries[i];
        EXPECT_EQ(e.feature, golden[i][0]);
        EXPECT_EQ(to_string(e.direction), golden[i][1]) << e.feature;
        EXPECT_EQ(e.t_low, std::stod(golden[i][2])) << e.feature;
        EXPECT_EQ(e.t_high, std::stod(golden[i][3])) << e.feature;
        ASSERT_TRUE(e.selection_pct.has_value());
        EXPECT_EQ(*e.selection_pct, std::stod(golden[i][4])) << e.feature;
        EXPECT_EQ(reference_catalog().at(e.feature).kind, FeatureKind::itug);
    }
}

TEST(ReferenceData, ClinicalScalesMatchGolden) {
    const auto golden = testing::read_tsv("golden/clinical_published.tsv");
    const auto& scales = builtin_clinical_scales();
    ASSERT_EQ(golden.size(), 8u);
    ASSERT_EQ(scales.size(), 8u);
    for (std::size_t i = 0; i < golden.size(); ++i) {
        EXPECT_EQ(scales[i].name, golden[i][0]);
        ASSERT_EQ(scales[i].entries.size(), 1u);
        const auto& e = scales[i].entries[0];
        EXPECT_EQ(e.feature, golden[i][1]);
        EXPECT_EQ(to_string(e.direction), golden[i][2]);
        EXPECT_EQ(e.t_low, std::stod(golden[i][3]));
        EXPECT_EQ(e.t_high, std::stod(golden[i][4]));
        EXPECT_EQ(reference_catalog().at(e.feature).kind, FeatureKind::clinical);
    }
}

TEST(ReferenceData, ClinicalSpotChecks) {
    const auto& scales = builtin_clinical_scales();
    auto find = [&](std::string_view name) -> const RiskScale& {
        for (const auto& s : scales) {
            if (s.name == name) return s;
        }
        throw std::runtime_error("missing scale");
    };
    EXPECT_EQ(stratify_feature(16.55, find("TUG Test (TTD)").entries[0]), Stratum::medium);
    EXPECT_EQ(stratify_feature(24.0, find("MB").entries[0]), Stratum::low);
    EXPECT_EQ(stratify_feature(7.0, find("Conley Scale").entries[0]), Stratum::high);
}

TEST(ReferenceData, JsonRoundTrip) {
    const auto published = parse_scales(ifra_published_json());
    ASSERT_EQ(published.size(), 1u);
    EXPECT_EQ(published[0], published_ifra_scale());
    EXPECT_EQ(parse_scales(scale_to_string(published[0]))[0], published[0]);
    EXPECT_EQ(parse_scales(clinical_published_json()), builtin_clinical_scales());
}

}  // namespace
}  // namespace ifra
