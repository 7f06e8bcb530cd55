#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ifra/matrix.hpp"

namespace ifra {

enum class Kernel { linear };

struct SvmConfig {
    double c = 1.0;
    double tolerance = 1e-3;
    // Consecutive sweeps without any multiplier update required to stop.
    int max_passes = 100;
    // Hard cap on total sweeps over the training set.
    int max_sweeps = 20'000;
    Kernel kernel = Kernel::linear;
};

// Linear soft-margin SVM. Inputs are standardized with training statistics;
// zero-variance input columns are dropped and listed in dropped_columns.
struct SvmModel {
    std::vector<std::size_t> columns;          // input columns the model uses
    std::vector<std::size_t> dropped_columns;  // zero-variance inputs
    std::vector<double> means;                 // aligned with columns
    std::vector<double> stds;                  // aligned with columns
    std::vector<double> weights;               // aligned with columns, standardized space
    double bias = 0.0;

    // Training diagnostics.
    std::vector<double> alphas;
    int sweeps = 0;
    bool converged = false;

    double decision(std::span<const double> x) const;
};

// Labels are -1 (non-faller) or +1 (faller). SMO pair selection is seeded.
// Throws DataError on empty input, mismatched sizes, invalid labels, or a
// single-class training set.
SvmModel train_svm(const Matrix& x, std::span<const int> y, const SvmConfig& config,
                   std::uint64_t seed);

// sign(w . scaled(x) + b), with sign(0) mapped to +1.
int predict(const SvmModel& model, std::span<const double> x);

// Fraction of rows whose prediction matches the label. Throws on empty input.
double accuracy(const SvmModel& model, const Matrix& x, std::span<const int> y);

// True when accuracy >= gate, counted exactly on correct predictions.
bool passes_accuracy_gate(std::size_t correct, std::size_t total, double gate);

}  // namespace ifra
