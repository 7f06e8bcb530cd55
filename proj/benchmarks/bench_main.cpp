#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ifra/feature_selection.hpp"
#include "ifra/matrix.hpp"
#include "ifra/stat_tests.hpp"
#include "ifra/svm.hpp"
#include "ifra/synthetic_cohort.hpp"

namespace {

void BM_FisherExact2x3(benchmark::State& state) {
    const long n = state.range(0);
    const ifra::stats::ContingencyTable table{{n / 6, n / 3, n / 6}, {n / 12, n / 6, n - n / 6 - n / 3 - n / 6 - n / 12 - n / 6}};
    for (auto _ : state) benchmark::DoNotOptimize(ifra::stats::fisher_exact(table).p_value);
}
BENCHMARK(BM_FisherExact2x3)->Arg(32)->Arg(120)->Arg(400);

void BM_ShapiroWilk(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    std::vector<double> x(static_cast<std::size_t>(state.range(0)));
    for (auto& v : x) v = normal(rng);
    for (auto _ : state) benchmark::DoNotOptimize(ifra::stats::shapiro_wilk(x).p_value);
}
BENCHMARK(BM_ShapiroWilk)->Arg(39)->Arg(500);

void BM_RanksumApprox(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    std::vector<double> a(39), b(39);
    for (auto& v : a) v = normal(rng);
    for (auto& v : b) v = normal(rng) + 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(ifra::stats::ranksum_test(a, b).p_value);
}
BENCHMARK(BM_RanksumApprox);

// 78 subjects x 100 features: the SVM fitted in each selection iteration.
void BM_SvmTrain(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    ifra::Matrix x(78, 100);
    std::vector<int> y(78);
    for (std::size_t i = 0; i < 78; ++i) {
        y[i] = i < 39 ? 1 : -1;
        for (std::size_t j = 0; j < 100; ++j) x(i, j) = normal(rng) + (j < 5 ? 0.8 * y[i] : 0.0);
    }
    for (auto _ : state) benchmark::DoNotOptimize(ifra::train_svm(x, y, ifra::SvmConfig{}, 7).bias);
}
BENCHMARK(BM_SvmTrain)->Unit(benchmark::kMillisecond);

void BM_SelectionIterations(benchmark::State& state) {
    const auto data = ifra::generate_cohort(ifra::demo_cohort_spec(1));
    const auto train = data.slice(ifra::Split::train);
    const auto validation = data.slice(ifra::Split::validation);
    ifra::SelectionConfig config;
    config.iterations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ifra::run_selection(train, validation, data.catalog(), ifra::SvmConfig{}, config).iterations_passed_gate);
    }
}
BENCHMARK(BM_SelectionIterations)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
