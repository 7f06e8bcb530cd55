#include "ifra/feature_selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "ifra/errors.hpp"
#include "ifra/matrix.hpp"
#include "ifra/seeding.hpp"
#include "ifra/stat_tests.hpp"

namespace ifra {

std::string_view to_string(FeatureFilter filter) {
    switch (filter) {
        case FeatureFilter::itug: return "itug";
        case FeatureFilter::clinical: return "clinical";
        case FeatureFilter::all: return "all";
    }
    return "all";
}

std::string_view to_string(SelectionDenominator denominator) {
    return denominator == SelectionDenominator::gated ? "gated" : "total";
}

FeatureFilter parse_feature_filter(std::string_view text) {
    if (text == "itug") return FeatureFilter::itug;
    if (text == "clinical") return FeatureFilter::clinical;
    if (text == "all") return FeatureFilter::all;
    throw DataError(fmt::format("unknown feature kind filter '{}'", text));
}

SelectionDenominator parse_denominator(std::string_view text) {
    if (text == "gated") return SelectionDenominator::gated;
    if (text == "total") return SelectionDenominator::total;
    throw DataError(fmt::format("unknown selection denominator '{}'", text));
}

void validate(const SelectionConfig& config) {
    if (config.iterations == 0) throw DataError("selection: iterations must be positive");
    if (!(config.accuracy_gate > 0.0 && config.accuracy_gate <= 1.0)) {
        throw DataError("selection: accuracy_gate must lie in (0, 1]");
    }
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw DataError("selection: alpha must lie in (0, 1)");
    if (!(config.relevance_fraction > 0.0 && config.relevance_fraction <= 1.0)) {
        throw DataError("selection: relevance_fraction must lie in (0, 1]");
    }
}

std::vector<SubjectRecord> sample_balanced_subset(const Dataset& train, std::uint64_t iteration_seed) {
    std::vector<std::size_t> fallers;
    std::vector<std::size_t> non_fallers;
    for (std::size_t i = 0; i < train.size(); ++i) {
        (train.subjects()[i].is_faller() ? fallers : non_fallers).push_back(i);
    }
    if (non_fallers.size() < fallers.size()) {
        throw DataError(fmt::format("balanced subset: {} non-fallers cannot match {} fallers",
                                    non_fallers.size(), fallers.size()));
    }
    // Partial Fisher-Yates: the first |fallers| slots become the sample.
    Rng rng(iteration_seed);
    for (std::size_t k = 0; k < fallers.size(); ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, non_fallers.size() - 1);
        std::swap(non_fallers[k], non_fallers[pick(rng)]);
    }
    std::vector<std::size_t> chosen(fallers);
    chosen.insert(chosen.end(), non_fallers.begin(), non_fallers.begin() + static_cast<long>(fallers.size()));
    std::sort(chosen.begin(), chosen.end());

    std::vector<SubjectRecord> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(train.subjects()[i]);
    return out;
}

namespace {

bool is_constant(const std::vector<double>& x) {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

bool looks_normal(const std::vector<double>& x, double alpha) {
    if (x.size() < 3 || is_constant(x)) return false;
    return stats::shapiro_wilk(x).p_value > alpha;
}

std::optional<FeatureKind> kind_of(FeatureFilter filter) {
    switch (filter) {
        case FeatureFilter::itug: return FeatureKind::itug;
        case FeatureFilter::clinical: return FeatureKind::clinical;
        case FeatureFilter::all: return std::nullopt;
    }
    return std::nullopt;
}

struct IterationResult {
    bool passed_gate = false;
    std::vector<unsigned char> relevant;
};

// Subjects x features, restricted to the filtered feature columns.
struct FeatureTable {
    Matrix values;
    std::vector<int> labels;  // +1 faller, -1 non-faller
};

FeatureTable tabulate(const std::vector<SubjectRecord>& subjects, const std::vector<std::string>& names) {
    FeatureTable t{Matrix(subjects.size(), names.size()), std::vector<int>(subjects.size())};
    for (std::size_t r = 0; r < subjects.size(); ++r) {
        const auto& s = subjects[r];
        t.labels[r] = s.is_faller() ? 1 : -1;
        for (std::size_t c = 0; c < names.size(); ++c) {
            auto v = s.value(names[c]);
            if (!v) throw DataError(fmt::format("subject '{}' lacks feature '{}'", s.subject_id, names[c]));
            t.values(r, c) = *v;
        }
    }
    return t;
}

}  // namespace

double feature_comparison_p_value(const std::vector<double>& fallers, const std::vector<double>& non_fallers,
                                  double alpha) {
    if (looks_normal(fallers, alpha) && looks_normal(non_fallers, alpha)) {
        return stats::t_test_two_sample(fallers, non_fallers, stats::VarianceMode::pooled).p_value;
    }
    return stats::ranksum_test(fallers, non_fallers, stats::RanksumMode::approx).p_value;
}

SelectionReport run_selection(const Dataset& train, const Dataset& validation, const FeatureCatalog& catalog,
                              const SvmConfig& svm_config, const SelectionConfig& config) {
    validate(config);
    if (validation.empty()) throw DataError("selection: validation slice is empty");
    if (train.empty()) throw DataError("selection: train slice is empty");
    if (train.count(Outcome::faller) == 0) throw DataError("selection: train slice has no fallers");

    const auto feature_indices = catalog.indices(kind_of(config.feature_kind));
    if (feature_indices.empty()) {
        throw DataError(fmt::format("selection: no '{}' features in catalog", to_string(config.feature_kind)));
    }
    std::vector<std::string> names;
    names.reserve(feature_indices.size());
    for (std::size_t i : feature_indices) names.push_back(catalog[i].name);

    const FeatureTable validation_table = tabulate(validation.subjects(), names);
    const std::size_t n_features = names.size();

    auto run_iteration = [&](std::size_t i) {
        IterationResult result;
        const auto subset = sample_balanced_subset(train, derive_seed(config.seed, SeedStream::selection_subset, i));
        const FeatureTable table = tabulate(subset, names);
        const SvmModel model =
            train_svm(table.values, table.labels, svm_config, derive_seed(config.seed, SeedStream::selection_svm, i));

        std::size_t correct = 0;
        for (std::size_t r = 0; r < validation_table.values.rows(); ++r) {
            if (predict(model, validation_table.values.row(r)) == validation_table.labels[r]) ++correct;
        }
        result.passed_gate = passes_accuracy_gate(correct, validation_table.values.rows(), config.accuracy_gate);
        if (!result.passed_gate) return result;

        result.relevant.assign(n_features, 0);
        std::vector<double> fallers;
        std::vector<double> non_fallers;
        for (std::size_t c = 0; c < n_features; ++c) {
            fallers.clear();
            non_fallers.clear();
            for (std::size_t r = 0; r < table.values.rows(); ++r) {
                (table.labels[r] > 0 ? fallers : non_fallers).push_back(table.values(r, c));
            }
            if (feature_comparison_p_value(fallers, non_fallers, config.alpha) < config.alpha) {
                result.relevant[c] = 1;
            }
        }
        return result;
    };

    std::vector<IterationResult> results(config.iterations);
    std::size_t workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    workers = std::min(workers, config.iterations);
    if (workers <= 1) {
        for (std::size_t i = 0; i < config.iterations; ++i) results[i] = run_iteration(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < config.iterations; i = next++) {
                    try {
                        results[i] = run_iteration(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = config.iterations;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    SelectionReport report;
    report.config = config;
    report.svm = svm_config;
    report.iterations_run = config.iterations;
    std::vector<std::size_t> counts(n_features, 0);
    for (const auto& r : results) {
        if (!r.passed_gate) continue;
        ++report.iterations_passed_gate;
        for (std::size_t c = 0; c < n_features; ++c) counts[c] += r.relevant[c];
    }
    report.no_gated_iterations = report.iterations_passed_gate == 0;

    const std::size_t denominator =
        config.denominator == SelectionDenominator::gated ? report.iterations_passed_gate : report.iterations_run;
    report.features.reserve(n_features);
    for (std::size_t c = 0; c < n_features; ++c) {
        const double pct = denominator == 0 ? 0.0 : static_cast<double>(counts[c]) / static_cast<double>(denominator);
        report.features.push_back({names[c], counts[c], pct});
    }

    if (!report.no_gated_iterations) {
        std::vector<std::size_t> order;
        for (std::size_t c = 0; c < n_features; ++c) {
            if (static_cast<double>(counts[c]) >= config.relevance_fraction * static_cast<double>(denominator) - 1e-9) {
                order.push_back(c);
            }
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
        for (std::size_t c : order) report.selected.push_back(names[c]);
    }
    return report;
}

}  // namespace ifra
