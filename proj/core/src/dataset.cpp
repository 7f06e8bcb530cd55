#include "ifra/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include <fmt/format.h>

#include "ifra/errors.hpp"
#include "ifra/seeding.hpp"
#include "io_util.hpp"

namespace ifra {

std::string_view to_string(Outcome outcome) {
    return outcome == Outcome::faller ? "faller" : "non_faller";
}

std::string_view to_string(Split split) {
    switch (split) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    return "train";
}

Outcome parse_outcome(std::string_view text) {
    if (text == "faller") return Outcome::faller;
    if (text == "non_faller") return Outcome::non_faller;
    throw DataError(fmt::format("unknown outcome '{}'", text));
}

Split parse_split(std::string_view text) {
    if (text == "train") return Split::train;
    if (text == "validation") return Split::validation;
    if (text == "test") return Split::test;
    throw DataError(fmt::format("unknown split '{}'", text));
}

std::optional<double> SubjectRecord::value(std::string_view feature) const {
    if (auto it = values.find(feature); it != values.end()) return it->second;
    return std::nullopt;
}

Dataset::Dataset(FeatureCatalog catalog, std::vector<SubjectRecord> subjects)
    : catalog_(std::move(catalog)), subjects_(std::move(subjects)) {
    std::unordered_set<std::string> ids;
    for (const auto& s : subjects_) {
        if (s.subject_id.empty()) throw DataError("subject with empty subject_id");
        if (!ids.insert(s.subject_id).second) {
            throw DataError(fmt::format("duplicate subject_id '{}'", s.subject_id));
        }
        if (s.synthetic && s.split != Split::train) {
            throw DataError(fmt::format("synthetic subject '{}' must be in the train split", s.subject_id));
        }
        for (const auto& f : catalog_.features()) {
            auto v = s.value(f.name);
            if (!v) {
                throw DataError(fmt::format("subject '{}' lacks feature '{}'", s.subject_id, f.name));
            }
            if (!std::isfinite(*v)) {
                throw DataError(fmt::format("subject '{}' has non-finite '{}'", s.subject_id, f.name));
            }
        }
    }
}

Dataset Dataset::slice(Split split) const {
    Dataset out;
    out.catalog_ = catalog_;
    for (const auto& s : subjects_) {
        if (s.split == split) out.subjects_.push_back(s);
    }
    return out;
}

std::size_t Dataset::count(Outcome outcome) const {
    return static_cast<std::size_t>(std::count_if(
        subjects_.begin(), subjects_.end(), [&](const SubjectRecord& s) { return s.outcome == outcome; }));
}

bool Dataset::contains_id(std::string_view id) const {
    return std::any_of(subjects_.begin(), subjects_.end(),
                       [&](const SubjectRecord& s) { return s.subject_id == id; });
}

std::vector<double> Dataset::column(std::string_view feature) const {
    std::vector<double> out;
    out.reserve(subjects_.size());
    for (const auto& s : subjects_) {
        auto v = s.value(feature);
        if (!v) throw DataError(fmt::format("feature '{}' missing on '{}'", feature, s.subject_id));
        out.push_back(*v);
    }
    return out;
}

namespace {

constexpr std::array<std::string_view, 4> kFixedColumns = {"subject_id", "outcome", "synthetic", "split"};

bool parse_synthetic_flag(std::string_view text) {
    if (text == "0") return false;
    if (text == "1") return true;
    throw DataError(fmt::format("synthetic flag must be 0 or 1, got '{}'", text));
}

}  // namespace

LoadedDataset parse_dataset(std::string_view csv_text, const FeatureCatalog& catalog) {
    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= csv_text.size();) {
        std::size_t end = csv_text.find('\n', pos);
        if (end == std::string_view::npos) end = csv_text.size();
        auto line = csv_text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = end + 1;
    }
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw DataError("dataset: missing header row");

    const auto header = detail::split_csv_record(lines[0]);
    if (header.size() < kFixedColumns.size()) throw DataError("dataset: header too short");
    for (std::size_t i = 0; i < kFixedColumns.size(); ++i) {
        if (header[i] != kFixedColumns[i]) {
            throw DataError(fmt::format("dataset: column {} must be '{}', found '{}'", i + 1,
                                        kFixedColumns[i], header[i]));
        }
    }
    std::vector<std::string> feature_columns(header.begin() + kFixedColumns.size(), header.end());
    for (const auto& name : feature_columns) {
        if (!catalog.contains(name)) throw DataError(fmt::format("dataset: unknown feature column '{}'", name));
    }
    for (const auto& f : catalog.features()) {
        if (std::find(feature_columns.begin(), feature_columns.end(), f.name) == feature_columns.end()) {
            throw DataError(fmt::format("dataset: header lacks catalog feature '{}'", f.name));
        }
    }
    if (feature_columns.size() != catalog.size()) {
        throw DataError("dataset: header repeats a feature column");
    }
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (feature_columns[i] != catalog[i].name) {
            throw DataError(fmt::format("dataset: feature columns must follow catalog order; column {} is '{}', expected '{}'",
                                        i + kFixedColumns.size() + 1, feature_columns[i], catalog[i].name));
        }
    }

    LoadedDataset result;
    std::vector<SubjectRecord> subjects;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (detail::trim(lines[li]).empty()) continue;
        const std::size_t line_no = li + 1;
        ++result.log.rows_read;
        const auto cells = detail::split_csv_record(lines[li]);
        if (cells.size() != header.size()) {
            throw DataError(fmt::format("dataset line {}: expected {} fields, found {}", line_no,
                                        header.size(), cells.size()));
        }
        SubjectRecord rec;
        rec.subject_id = cells[0];
        if (rec.subject_id.empty()) throw DataError(fmt::format("dataset line {}: empty subject_id", line_no));
        try {
            rec.outcome = parse_outcome(cells[1]);
            rec.synthetic = parse_synthetic_flag(cells[2]);
            rec.split = parse_split(cells[3]);
        } catch (const DataError& e) {
            throw DataError(fmt::format("dataset line {}: {}", line_no, e.what()));
        }

        std::vector<std::string> missing;
        for (std::size_t i = 0; i < feature_columns.size(); ++i) {
            const std::string& cell = cells[i + kFixedColumns.size()];
            if (detail::trim(cell).empty()) {
                missing.push_back(feature_columns[i]);
                continue;
            }
            double v = 0.0;
            if (!detail::parse_double(cell, v) || !std::isfinite(v)) {
                throw DataError(fmt::format("dataset line {}: non-numeric value '{}' in column '{}'",
                                            line_no, cell, feature_columns[i]));
            }
            rec.values.emplace(feature_columns[i], v);
        }
        if (!missing.empty()) {
            std::string reason = fmt::format("missing value for {} feature(s): {}", missing.size(), missing.front());
            if (missing.size() > 1) reason += fmt::format(" (+{} more)", missing.size() - 1);
            result.log.excluded.push_back({line_no, rec.subject_id, std::move(reason)});
            continue;
        }
        subjects.push_back(std::move(rec));
    }
    result.dataset = Dataset(catalog, std::move(subjects));
    return result;
}

LoadedDataset load_dataset(const std::filesystem::path& path, const FeatureCatalog& catalog) {
    return parse_dataset(detail::read_file(path), catalog);
}

std::string dataset_to_csv(const Dataset& dataset) {
    std::string out;
    for (std::size_t i = 0; i < kFixedColumns.size(); ++i) {
        if (i) out += ',';
        out += kFixedColumns[i];
    }
    for (const auto& f : dataset.catalog().features()) {
        out += ',';
        out += detail::csv_escape(f.name);
    }
    out += '\n';
    for (const auto& s : dataset.subjects()) {
        out += detail::csv_escape(s.subject_id);
        out += ',';
        out += to_string(s.outcome);
        out += s.synthetic ? ",1," : ",0,";
        out += to_string(s.split);
        for (const auto& f : dataset.catalog().features()) {
            out += ',';
            out += detail::format_double(*s.value(f.name));
        }
        out += '\n';
    }
    return out;
}

std::size_t SplitSummary::split_total(Split s) const {
    return outcome_total(s, Outcome::faller) + outcome_total(s, Outcome::non_faller);
}

std::size_t SplitSummary::outcome_total(Split s, Outcome o) const {
    return at(s, o, false) + at(s, o, true);
}

std::size_t SplitSummary::total() const {
    return split_total(Split::train) + split_total(Split::validation) + split_total(Split::test);
}

SplitSummary split_summary(const Dataset& dataset) {
    SplitSummary summary;
    for (const auto& s : dataset.subjects()) {
        ++summary.counts[static_cast<int>(s.split)][static_cast<int>(s.outcome)][s.synthetic ? 1 : 0];
    }
    return summary;
}

Dataset make_splits(const Dataset& dataset, const SplitPlan& plan, std::uint64_t seed) {
    std::vector<std::size_t> fallers;
    std::vector<std::size_t> non_fallers;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto& s = dataset.subjects()[i];
        if (s.synthetic) continue;
        (s.is_faller() ? fallers : non_fallers).push_back(i);
    }
    if (fallers.size() < plan.validation_fallers + plan.test_fallers) {
        throw DataError(fmt::format("make_splits: {} real fallers cannot fill {} validation + {} test",
                                    fallers.size(), plan.validation_fallers, plan.test_fallers));
    }
    if (non_fallers.size() < plan.validation_non_fallers + plan.test_non_fallers) {
        throw DataError(fmt::format("make_splits: {} real non-fallers cannot fill {} validation + {} test",
                                    non_fallers.size(), plan.validation_non_fallers, plan.test_non_fallers));
    }

    Rng rng(seed);
    std::shuffle(fallers.begin(), fallers.end(), rng);
    std::shuffle(non_fallers.begin(), non_fallers.end(), rng);

    std::vector<SubjectRecord> subjects = dataset.subjects();
    for (auto& s : subjects) s.split = Split::train;
    auto assign = [&](const std::vector<std::size_t>& pool, std::size_t n_val, std::size_t n_test) {
        for (std::size_t k = 0; k < n_val; ++k) subjects[pool[k]].split = Split::validation;
        for (std::size_t k = n_val; k < n_val + n_test; ++k) subjects[pool[k]].split = Split::test;
    };
    assign(fallers, plan.validation_fallers, plan.test_fallers);
    assign(non_fallers, plan.validation_non_fallers, plan.test_non_fallers);
    return Dataset(dataset.catalog(), std::move(subjects));
}

std::vector<DirectionConflict> lint_directions(const Dataset& dataset) {
    std::vector<DirectionConflict> out;
    const std::size_t nf = dataset.count(Outcome::faller);
    const std::size_t nn = dataset.count(Outcome::non_faller);
    if (nf == 0 || nn == 0) return out;
    for (const auto& f : dataset.catalog().features()) {
        double sum_f = 0.0;
        double sum_n = 0.0;
        for (const auto& s : dataset.subjects()) {
            (s.is_faller() ? sum_f : sum_n) += *s.value(f.name);
        }
        const double mean_f = sum_f / static_cast<double>(nf);
        const double mean_n = sum_n / static_cast<double>(nn);
        const bool conflict = f.direction == Direction::higher_safer ? mean_f > mean_n : mean_f < mean_n;
        if (conflict) out.push_back({f.name, f.direction, mean_f, mean_n});
    }
    return out;
}

}  // namespace ifra
