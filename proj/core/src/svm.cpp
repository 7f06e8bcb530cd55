#include "ifra/svm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "ifra/errors.hpp"
#include "ifra/seeding.hpp"

namespace ifra {

double SvmModel::decision(std::span<const double> x) const {
    double value = bias;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        const std::size_t col = columns[k];
        if (col >= x.size()) {
            throw DataError(fmt::format("svm: input vector lacks column {}", col));
        }
        value += weights[k] * (x[col] - means[k]) / stds[k];
    }
    return value;
}

namespace {

void validate_training_input(const Matrix& x, std::span<const int> y) {
    if (x.rows() == 0 || x.cols() == 0) throw DataError("svm: empty training input");
    if (x.rows() != y.size()) {
        throw DataError(fmt::format("svm: {} rows but {} labels", x.rows(), y.size()));
    }
    bool has_pos = false;
    bool has_neg = false;
    for (int label : y) {
        if (label == 1) has_pos = true;
        else if (label == -1) has_neg = true;
        else throw DataError(fmt::format("svm: invalid label {}", label));
    }
    if (!has_pos || !has_neg) throw DataError("svm: training set has a single class");
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (double v : x.row(r))
            if (!std::isfinite(v)) throw DataError("svm: non-finite feature value");
}

}  // namespace

SvmModel train_svm(const Matrix& x, std::span<const int> y, const SvmConfig& config,
                   std::uint64_t seed) {
    if (!(config.c > 0.0) || !(config.tolerance > 0.0) || config.max_passes <= 0) {
        throw DataError("svm: c, tolerance and max_passes must be positive");
    }
    validate_training_input(x, y);

    const std::size_t n = x.rows();
    SvmModel model;

    // Standardization with training statistics (sample standard deviation).
    for (std::size_t c = 0; c < x.cols(); ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += x(r, c);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t r = 0; r < n; ++r) ss += (x(r, c) - mean) * (x(r, c) - mean);
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        if (!(sd > 1e-12 * (1.0 + std::abs(mean)))) {
            model.dropped_columns.push_back(c);
            continue;
        }
        model.columns.push_back(c);
        model.means.push_back(mean);
        model.stds.push_back(sd);
    }

    const std::size_t d = model.columns.size();
    Matrix z(n, d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < d; ++k)
            z(r, k) = (x(r, model.columns[k]) - model.means[k]) / model.stds[k];

    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += z(i, k) * z(j, k);
            gram(i, j) = dot;
            gram(j, i) = dot;
        }
    }

    const double c_bound = config.c;
    const double tol = config.tolerance;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> f(n, 0.0);  // decision value cache, f_i = sum a_k y_k K_ki + b
    double b = 0.0;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 2);

    int idle_passes = 0;
    int sweeps = 0;
    while (idle_passes < config.max_passes && sweeps < config.max_sweeps) {
        ++sweeps;
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double yi = y[i];
            const double ei = f[i] - yi;
            const bool violates = (yi * ei < -tol && alpha[i] < c_bound) ||
                                  (yi * ei > tol && alpha[i] > 0.0);
            if (!violates) continue;

            std::size_t j = pick(rng);
            if (j >= i) ++j;
            const double yj = y[j];
            const double ej = f[j] - yj;
            const double ai_old = alpha[i];
            const double aj_old = alpha[j];

            double lo;
            double hi;
            if (y[i] != y[j]) {
                lo = std::max(0.0, aj_old - ai_old);
                hi = std::min(c_bound, c_bound + aj_old - ai_old);
            } else {
                lo = std::max(0.0, ai_old + aj_old - c_bound);
                hi = std::min(c_bound, ai_old + aj_old);
            }
            if (lo >= hi) continue;

            const double eta = 2.0 * gram(i, j) - gram(i, i) - gram(j, j);
            if (eta >= 0.0) continue;

            double aj = std::clamp(aj_old - yj * (ei - ej) / eta, lo, hi);
            if (std::abs(aj - aj_old) < 1e-5 * (aj + aj_old + 1e-5)) continue;
            double ai = ai_old + yi * yj * (aj_old - aj);
            if (ai < 0.0) ai = 0.0;

            const double dai = ai - ai_old;
            const double daj = aj - aj_old;
            const double b1 = b - ei - yi * dai * gram(i, i) - yj * daj * gram(i, j);
            const double b2 = b - ej - yi * dai * gram(i, j) - yj * daj * gram(j, j);
            double b_new;
            if (ai > 0.0 && ai < c_bound) b_new = b1;
            else if (aj > 0.0 && aj < c_bound) b_new = b2;
            else b_new = 0.5 * (b1 + b2);

            const double db = b_new - b;
            for (std::size_t k = 0; k < n; ++k) {
                f[k] += yi * dai * gram(i, k) + yj * daj * gram(j, k) + db;
            }
            alpha[i] = ai;
            alpha[j] = aj;
            b = b_new;
            ++changed;
        }
        idle_passes = changed == 0 ? idle_passes + 1 : 0;
    }

    model.weights.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] == 0.0) continue;
        const double coef = alpha[i] * y[i];
        for (std::size_t k = 0; k < d; ++k) model.weights[k] += coef * z(i, k);
    }
    model.bias = b;
    model.alphas = std::move(alpha);
    model.sweeps = sweeps;
    model.converged = idle_passes >= config.max_passes;
    return model;
}

int predict(const SvmModel& model, std::span<const double> x) {
    return model.decision(x) >= 0.0 ? 1 : -1;
}

double accuracy(const SvmModel& model, const Matrix& x, std::span<const int> y) {
    if (x.rows() == 0) throw DataError("accuracy: empty evaluation set");
    if (x.rows() != y.size()) throw DataError("accuracy: row/label count mismatch");
    std::size_t correct = 0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        if (predict(model, x.row(r)) == y[r]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(x.rows());
}

bool passes_accuracy_gate(std::size_t correct, std::size_t total, double gate) {
    if (total == 0) return false;
    // Integer-exact comparison of correct / total >= gate, tolerant to the
    // representation error of gate itself.
    return static_cast<double>(correct) >= gate * static_cast<double>(total) - 1e-9;
}

}  // namespace ifra
