#include <gtest/gtest.h>

#include "ifra/errors.hpp"
#include "ifra/evaluation.hpp"
#include "ifra/reference_data.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace ifra {
namespace {

// 22 non-fallers followed by 10 fallers on a single riskier feature "F00".
Dataset test_slice(const std::vector<double>& values) {
    std::vector<SubjectRecord> subjects;
    for (std::size_t i = 0; i < values.size(); ++i) {
        subjects.push_back(testing::make_subject("T" + std::to_string(i), i < 22 ? Outcome::non_faller : Outcome::faller,
                                                 Split::test, {{"F00", values[i]}}));
    }
    return Dataset(testing::numbered_catalog(1), std::move(subjects));
}

const RiskScale kOneFeature{"one", {{"F00", Direction::higher_riskier, 1.0, 3.0, std::nullopt}}, Provenance::derived};

TEST(Contingency, PerfectSeparation) {
    std::vector<double> v(22, 0.0);
    v.resize(32, 5.0);
    const auto report = evaluate_scale(test_slice(v), kOneFeature);
    EXPECT_EQ(report.counts(0, 0), 22);
    EXPECT_EQ(report.counts(1, 2), 10);
    EXPECT_LT(report.p_value, 1e-6);
    EXPECT_TRUE(report.reject_h0);
    EXPECT_DOUBLE_EQ(report.percentages[0][0], 100.0);
    EXPECT_DOUBLE_EQ(report.percentages[1][2], 100.0);
    // Single-table probability 1 / C(32, 10).
    EXPECT_NEAR(report.p_value, 1.0 / static_cast<double>(oracle::binomial(32, 10)), 1e-15);
}

TEST(Contingency, EveryoneMedium) {
    const auto report = evaluate_scale(test_slice(std::vector<double>(32, 2.0)), kOneFeature);
    EXPECT_DOUBLE_EQ(report.p_value, 1.0);
    EXPECT_FALSE(report.reject_h0);
}

TEST(Contingency, BuildFromAssessments) {
    const auto slice = test_slice(std::vector<double>(32, 2.0));
    EXPECT_EQ(build_contingency(Dataset{}, {}).total(), 0);
    std::map<std::string, Stratum, std::less<>> one{{"T30", Stratum::medium}};
    std::vector<SubjectRecord> single{slice.subjects()[30]};
    const auto table = build_contingency(Dataset(slice.catalog(), single), one);
    EXPECT_EQ(table.total(), 1);
    EXPECT_EQ(table(1, 1), 1);
    EXPECT_THROW(build_contingency(slice, one), DataError);
}

TEST(Contingency, DegenerateSlice) {
    std::vector<SubjectRecord> nf;
    for (int i = 0; i < 5; ++i) {
        nf.push_back(testing::make_subject("n" + std::to_string(i), Outcome::non_faller, Split::test, {{"F00", 1.0}}));
    }
    EXPECT_THROW(evaluate_scale(Dataset(testing::numbered_catalog(1), nf), kOneFeature), DataError);
}

TEST(Compare, CardinalityAndDuplicates) {
    std::vector<double> v;
    for (int i = 0; i < 32; ++i) v.push_back(i % 5);
    const auto slice = test_slice(v);
    const auto reports = compare_scales(slice, {kOneFeature, kOneFeature});
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_EQ(reports[0].p_value, reports[1].p_value);
    EXPECT_EQ(reports[0].counts, reports[1].counts);
    const auto md = reports_to_markdown(reports);
    EXPECT_NE(md.find("one"), std::string::npos);
}

}  // namespace
}  // namespace ifra
