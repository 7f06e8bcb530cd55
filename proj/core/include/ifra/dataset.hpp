#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifra/catalog.hpp"

namespace ifra {

enum class Outcome { non_faller, faller };
enum class Split { train, validation, test };

std::string_view to_string(Outcome outcome);
std::string_view to_string(Split split);
Outcome parse_outcome(std::string_view text);
Split parse_split(std::string_view text);

struct SubjectRecord {
    std::string subject_id;
    Outcome outcome = Outcome::non_faller;
    bool synthetic = false;
    Split split = Split::train;
    std::map<std::string, double, std::less<>> values;

    bool is_faller() const noexcept { return outcome == Outcome::faller; }
    // nullopt when the subject carries no value for the feature.
    std::optional<double> value(std::string_view feature) const;

    friend bool operator==(const SubjectRecord&, const SubjectRecord&) = default;
};

// Catalog plus fully populated subject rows. Constructing a Dataset validates
// unique ids, complete feature values, and synthetic => train.
class Dataset {
public:
    Dataset() = default;
    Dataset(FeatureCatalog catalog, std::vector<SubjectRecord> subjects);

    const FeatureCatalog& catalog() const noexcept { return catalog_; }
    const std::vector<SubjectRecord>& subjects() const noexcept { return subjects_; }
    std::size_t size() const noexcept { return subjects_.size(); }
    bool empty() const noexcept { return subjects_.empty(); }

    Dataset slice(Split split) const;
    std::size_t count(Outcome outcome) const;
    bool contains_id(std::string_view id) const;

    // Values of one feature over all subjects, in subject order.
    std::vector<double> column(std::string_view feature) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    FeatureCatalog catalog_;
    std::vector<SubjectRecord> subjects_;
};

struct IngestionExclusion {
    std::size_t line = 0;  // 1-based line number in the source file
    std::string subject_id;
    std::string reason;
};

struct IngestionLog {
    std::size_t rows_read = 0;
    std::vector<IngestionExclusion> excluded;
};

struct LoadedDataset {
    Dataset dataset;
    IngestionLog log;
};

// CSV header: subject_id,outcome,synthetic,split,<catalog features in order>.
// Rows with blank feature cells are excluded and logged; every other
// deviation from the format throws DataError.
LoadedDataset parse_dataset(std::string_view csv_text, const FeatureCatalog& catalog);
LoadedDataset load_dataset(const std::filesystem::path& path, const FeatureCatalog& catalog);

// Serializes with shortest round-trip number formatting, so that parsing the
// output reproduces an equal Dataset.
std::string dataset_to_csv(const Dataset& dataset);

// Cross-tabulated counts indexed [split][outcome][synthetic].
struct SplitSummary {
    std::array<std::array<std::array<std::size_t, 2>, 2>, 3> counts{};

    std::size_t at(Split s, Outcome o, bool synthetic) const {
        return counts[static_cast<int>(s)][static_cast<int>(o)][synthetic ? 1 : 0];
    }
    std::size_t split_total(Split s) const;
    std::size_t outcome_total(Split s, Outcome o) const;
    std::size_t total() const;
};

SplitSummary split_summary(const Dataset& dataset);

// Requested sizes of the held-out splits; every remaining real subject and
// every synthetic subject goes to train.
struct SplitPlan {
    std::size_t validation_non_fallers = 12;
    std::size_t validation_fallers = 5;
    std::size_t test_non_fallers = 22;
    std::size_t test_fallers = 10;
};

// Stratified by outcome, seeded. Only real subjects are eligible for the
// held-out splits. Throws DataError when a stratum is too small.
Dataset make_splits(const Dataset& dataset, const SplitPlan& plan, std::uint64_t seed);

// A feature whose faller mean orders against its declared direction
// (e.g. fallers faster on a higher_safer feature).
struct DirectionConflict {
    std::string feature;
    Direction declared = Direction::higher_safer;
    double faller_mean = 0.0;
    double non_faller_mean = 0.0;
};

std::vector<DirectionConflict> lint_directions(const Dataset& dataset);

}  // namespace ifra
