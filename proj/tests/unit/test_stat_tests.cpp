#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ifra/errors.hpp"
#include "ifra/stat_tests.hpp"
#include "oracles.hpp"

namespace ifra::stats {
namespace {

std::vector<double> normal_scores(std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (static_cast<double>(n) + 0.25));
    }
    return x;
}

double sw_statistic(const std::vector<double>& x) { return shapiro_wilk(x).statistic; }

TEST(ShapiroWilk, RejectsConstantSample) {
    const std::vector<double> x = {5, 5, 5, 5};
    EXPECT_THROW(shapiro_wilk(x), DataError);
}

TEST(ShapiroWilk, RejectsOutOfRangeSizes) {
    EXPECT_THROW(shapiro_wilk(std::vector<double>{1.0, 2.0}), DataError);
    EXPECT_THROW(shapiro_wilk(std::vector<double>(5001, 1.0)), DataError);
}

TEST(ShapiroWilk, ThreePointsUseExactDistribution) {
    // Equally spaced triple is maximally "normal" for n = 3: W = 1, p = 1.
    const auto r = shapiro_wilk(std::vector<double>{1.0, 2.0, 3.0});
    EXPECT_NEAR(r.statistic, 1.0, 1e-12);
    EXPECT_NEAR(r.p_value, 1.0, 1e-9);
    // Most skewed triple sits at the W = 0.75 floor.
    const auto s = shapiro_wilk(std::vector<double>{0.0, 0.0, 1.0});
    EXPECT_NEAR(s.statistic, 0.75, 1e-12);
    EXPECT_NEAR(s.p_value, 0.0, 1e-9);
}

TEST(ShapiroWilk, NormalScoresLookNormal) {
    const auto x = normal_scores(39);
    const auto r = shapiro_wilk(x);
    EXPECT_GT(r.statistic, 0.99);
    EXPECT_GT(r.p_value, 0.5);
    // Simulated null: the share of N(0,1) samples with W at or below this W.
    const double mc = oracle::monte_carlo_lower_tail(sw_statistic, 39, r.statistic, 100000, 11);
    EXPECT_GT(mc, 0.5);
    EXPECT_NEAR(r.p_value, mc, 0.02);
}

TEST(ShapiroWilk, BimodalSampleIsRejected) {
    std::vector<double> x(20, 0.0);
    x.insert(x.end(), 19, 10.0);
    const auto r = shapiro_wilk(x);
    EXPECT_LT(r.p_value, 0.001);
    const double mc = oracle::monte_carlo_lower_tail(sw_statistic, 39, r.statistic, 100000, 12);
    EXPECT_LT(mc, 0.001);
}

TEST(ShapiroWilk, PValueTracksSimulatedNull) {
    // Mildly skewed samples across both approximation regimes (n <= 11 and n > 11).
    for (std::size_t n : {8u, 20u, 39u}) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(0.35 * normal_scores(n)[i]);
        const auto r = shapiro_wilk(x);
        const double mc = oracle::monte_carlo_lower_tail(sw_statistic, n, r.statistic, 40000, 100 + n);
        EXPECT_NEAR(r.p_value, mc, 0.02) << "n=" << n;
    }
}

TEST(ShapiroWilk, AffineInvariant) {
    std::mt19937_64 rng(3);
    std::gamma_distribution<double> g(2.0, 1.0);
    std::vector<double> x(30);
    for (auto& v : x) v = g(rng);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.5 * x[i] - 100.0;
    const auto rx = shapiro_wilk(x);
    const auto ry = shapiro_wilk(y);
    EXPECT_NEAR(rx.statistic, ry.statistic, 1e-12);
    EXPECT_NEAR(rx.p_value, ry.p_value, 1e-10);
}

TEST(TTest, IdenticalSamples) {
    const std::vector<double> a = {1, 2, 3, 4};
    const auto r = t_test_two_sample(a, a);
    EXPECT_DOUBLE_EQ(r.statistic, 0.0);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(TTest, ClosedFormDf2) {
    const std::vector<double> a = {0, 1};
    const std::vector<double> b = {1, 2};
    const auto r = t_test_two_sample(a, b, VarianceMode::pooled);
    EXPECT_NEAR(r.statistic, -std::sqrt(2.0), 1e-12);
    const double expected = 2.0 * (1.0 - oracle::t_cdf_df2(std::sqrt(2.0)));
    EXPECT_NEAR(r.p_value, expected, 1e-9);
    EXPECT_NEAR(r.p_value, 0.29289, 1e-5);
}

TEST(TTest, LargeShiftGivesTinyPValue) {
    const std::vector<double> a = {0, 1};
    const std::vector<double> b = {1e6, 1e6 + 1};
    const auto r = t_test_two_sample(a, b);
    const double expected = 2.0 * (1.0 - oracle::t_cdf_df2(std::abs(r.statistic)));
    EXPECT_LT(r.p_value, 1e-6);
    EXPECT_NEAR(r.p_value, expected, 1e-12);
}

TEST(TTest, WelchMatchesPooledForEqualSizesAndVariances) {
    const std::vector<double> a = {1.0, 2.5, 3.0, 4.5};
    const std::vector<double> b = {2.0, 3.5, 4.0, 5.5};
    const auto p = t_test_two_sample(a, b, VarianceMode::pooled);
    const auto w = t_test_two_sample(a, b, VarianceMode::welch);
    EXPECT_NEAR(p.statistic, w.statistic, 1e-12);
    EXPECT_NEAR(p.p_value, w.p_value, 1e-9);
    EXPECT_EQ(w.method, Method::t_welch);
}

TEST(TTest, Errors) {
    EXPECT_THROW(t_test_two_sample(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), DataError);
    EXPECT_THROW(t_test_two_sample(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 1.0}), DataError);
    EXPECT_THROW(t_test_two_sample(std::vector<double>{1.0, 1.0}, std::vector<double>{2.0, 2.0}), DataError);
}

TEST(TTest, SymmetricUnderGroupSwap) {
    const std::vector<double> a = {1.1, 2.3, 0.4, 5.0, 3.3};
    const std::vector<double> b = {4.1, 2.2, 6.7, 5.5};
    for (auto mode : {VarianceMode::pooled, VarianceMode::welch}) {
        const auto ab = t_test_two_sample(a, b, mode);
        const auto ba = t_test_two_sample(b, a, mode);
        EXPECT_NEAR(ab.statistic, -ba.statistic, 1e-12);
        EXPECT_NEAR(ab.p_value, ba.p_value, 1e-12);
    }
}

TEST(Ranksum, ExactSmallExample) {
    const auto r = ranksum_test(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5, 6}, RanksumMode::exact);
    EXPECT_DOUBLE_EQ(r.statistic, 6.0);
    EXPECT_NEAR(r.p_value, 0.1, 1e-15);
}

TEST(Ranksum, IdenticalSamplesApprox) {
    const std::vector<double> a = {3.0, 1.0, 4.0, 1.5, 9.0};
    const auto r = ranksum_test(a, a, RanksumMode::approx);
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(Ranksum, AllTiedGivesPOne) {
    const std::vector<double> a(5, 2.0);
    const auto r = ranksum_test(a, a, RanksumMode::approx);
    EXPECT_EQ(r.p_value, 1.0);
}

TEST(Ranksum, ExactErrors) {
    EXPECT_THROW(ranksum_test(std::vector<double>{1, 2}, std::vector<double>{2, 3}, RanksumMode::exact), DataError);
    std::vector<double> a(9);
    std::vector<double> b(8);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i);
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = 100.0 + static_cast<double>(i);
    EXPECT_THROW(ranksum_test(a, b, RanksumMode::exact), DataError);
    EXPECT_THROW(ranksum_test(std::vector<double>{}, b), DataError);
}

TEST(Ranksum, ApproxMatchesHandComputedTieCorrection) {
    // a = {1, 2, 2}, b = {2, 3}: midranks 1, 3, 3 | 3, 5; W = 7, E = 9,
    // Var = 3*2/12 * (6 - (27-3)/(5*4)) = 0.5 * 4.8 = 2.4.
    const auto r = ranksum_test(std::vector<double>{1, 2, 2}, std::vector<double>{2, 3});
    const double z = (7.0 - 9.0) / std::sqrt(2.4);
    EXPECT_NEAR(r.statistic, z, 1e-12);
    EXPECT_NEAR(r.p_value, std::erfc(std::abs(z) / std::sqrt(2.0)), 1e-12);
}

TEST(Ranksum, MonotoneTransformInvariant) {
    const std::vector<double> a = {0.3, 1.7, 2.2, 0.9, 5.1, 3.3};
    const std::vector<double> b = {2.8, 4.4, 6.0, 7.2, 1.1};
    std::vector<double> ta(a.size());
    std::vector<double> tb(b.size());
    std::transform(a.begin(), a.end(), ta.begin(), [](double v) { return std::exp(v); });
    std::transform(b.begin(), b.end(), tb.begin(), [](double v) { return std::exp(v); });
    for (auto mode : {RanksumMode::approx, RanksumMode::exact}) {
        EXPECT_DOUBLE_EQ(ranksum_test(a, b, mode).p_value, ranksum_test(ta, tb, mode).p_value);
        EXPECT_DOUBLE_EQ(ranksum_test(a, b, mode).p_value, ranksum_test(b, a, mode).p_value);
    }
}

TEST(Fisher, ReconstructedMiniBestRow) {
    const auto r = fisher_exact({{6, 16, 0}, {1, 7, 2}});
    EXPECT_NEAR(r.p_value, 0.119, 0.0005);
    EXPECT_NEAR(r.p_value, oracle::fisher_2x3_row_enumeration({{{6, 16, 0}, {1, 7, 2}}}), 1e-12);
}

TEST(Fisher, UniformTableIsLeastExtreme) {
    EXPECT_NEAR(fisher_exact({{1, 1, 1}, {1, 1, 1}}).p_value, 1.0, 1e-12);
}

TEST(Fisher, TwoByTwoPerfectSeparation) {
    EXPECT_NEAR(fisher_exact({{5, 0}, {0, 5}}).p_value, 2.0 / 252.0, 1e-14);
}

TEST(Fisher, ClassicTwoByTwo) {
    // Tea-tasting table: two-sided p = 34/70 via the probability ordering.
    EXPECT_NEAR(fisher_exact({{3, 1}, {1, 3}}).p_value, 34.0 / 70.0, 1e-12);
}

TEST(Fisher, LargerTablesAgreeWithCellwiseOracle) {
    // A 3x3 table against a brute-force 3x3 enumeration.
    const std::vector<std::vector<long>> obs = {{3, 1, 0}, {1, 2, 2}, {0, 1, 4}};
    const long n = 14;
    // Margins: rows (4,5,5), cols (4,4,6). Enumerate the 4 free cells.
    const std::array<long, 3> r = {4, 5, 5};
    const std::array<long, 3> c = {4, 4, 6};
    auto multinomial = [&](const std::array<std::array<long, 3>, 3>& t) {
        long double p = 1.0L;
        for (int i = 0; i < 3; ++i) p *= oracle::factorial(static_cast<int>(r[i]));
        for (int j = 0; j < 3; ++j) p *= oracle::factorial(static_cast<int>(c[j]));
        p /= oracle::factorial(static_cast<int>(n));
        for (const auto& row : t)
            for (long v : row) p /= oracle::factorial(static_cast<int>(v));
        return p;
    };
    const std::array<std::array<long, 3>, 3> o = {{{3, 1, 0}, {1, 2, 2}, {0, 1, 4}}};
    const long double p_obs = multinomial(o);
    long double expected = 0.0L;
    for (long a = 0; a <= 4; ++a)
        for (long b = 0; a + b <= 4; ++b)
            for (long d = 0; d <= 5; ++d)
                for (long e = 0; d + e <= 5; ++e) {
                    std::array<std::array<long, 3>, 3> t = {{{a, b, r[0] - a - b}, {d, e, r[1] - d - e}, {0, 0, 0}}};
                    bool ok = true;
                    for (int j = 0; j < 3; ++j) {
                        t[2][j] = c[j] - t[0][j] - t[1][j];
                        ok = ok && t[2][j] >= 0;
                    }
                    if (!ok || t[2][0] + t[2][1] + t[2][2] != r[2]) continue;
                    const long double q = multinomial(t);
                    if (q <= p_obs * (1.0L + 1e-7L)) expected += q;
                }
    EXPECT_NEAR(fisher_exact(ContingencyTable(obs)).p_value, static_cast<double>(expected), 1e-10);
}

TEST(Fisher, ColumnPermutationInvariant) {
    const ContingencyTable t{{4, 9, 2}, {1, 3, 6}};
    const ContingencyTable permuted{{2, 4, 9}, {6, 1, 3}};
    const ContingencyTable swapped_rows{{1, 3, 6}, {4, 9, 2}};
    const double p = fisher_exact(t).p_value;
    EXPECT_NEAR(p, fisher_exact(permuted).p_value, 1e-12);
    EXPECT_NEAR(p, fisher_exact(swapped_rows).p_value, 1e-12);
}

TEST(Fisher, ZeroMarginsAreAllowedAndZeroTotalIsNot) {
    EXPECT_NEAR(fisher_exact({{22, 0, 0}, {0, 0, 10}}).p_value,
                oracle::fisher_2x3_row_enumeration({{{22, 0, 0}, {0, 0, 10}}}), 1e-15);
    EXPECT_LT(fisher_exact({{22, 0, 0}, {0, 0, 10}}).p_value, 1e-6);
    EXPECT_NEAR(fisher_exact({{0, 22, 0}, {0, 10, 0}}).p_value, 1.0, 1e-12);
    EXPECT_THROW(fisher_exact({{0, 0, 0}, {0, 0, 0}}), DataError);
    EXPECT_THROW(ContingencyTable({{1, -1}, {0, 2}}), DataError);
    EXPECT_THROW(ContingencyTable({{1, 2}, {0}}), DataError);
}

TEST(Fisher, OversizedEnumerationIsRejected) {
    ContingencyTable big(6, 6);
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) big(r, c) = 30;
    EXPECT_THROW(fisher_exact(big), DataError);
}

TEST(Fisher, ReferenceSizedTableIsFast) {
    // n = 200 for a 2x3 table must be supported.
    const auto r = fisher_exact({{40, 35, 25}, {30, 30, 40}});
    EXPECT_NEAR(r.p_value, oracle::fisher_2x3_row_enumeration({{{40, 35, 25}, {30, 30, 40}}}), 1e-9);
}

}  // namespace
}  // namespace ifra::stats
