#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ifra {

enum class FeatureKind { clinical, itug };

// Expected relationship between a feature's value and fall risk.
enum class Direction { higher_safer, higher_riskier };

std::string_view to_string(FeatureKind kind);
std::string_view to_string(Direction direction);
FeatureKind parse_feature_kind(std::string_view text);
Direction parse_direction(std::string_view text);

struct FeatureDescriptor {
    std::string name;
    std::string unit;
    FeatureKind kind = FeatureKind::itug;
    Direction direction = Direction::higher_safer;

    friend bool operator==(const FeatureDescriptor&, const FeatureDescriptor&) = default;
};

// Ordered, name-unique list of features. Immutable once constructed.
class FeatureCatalog {
public:
    FeatureCatalog() = default;
    // Throws DataError on duplicate or empty names.
    explicit FeatureCatalog(std::vector<FeatureDescriptor> features);

    const std::vector<FeatureDescriptor>& features() const noexcept { return features_; }
    std::size_t size() const noexcept { return features_.size(); }
    bool empty() const noexcept { return features_.empty(); }

    std::optional<std::size_t> index_of(std::string_view name) const;
    bool contains(std::string_view name) const { return index_of(name).has_value(); }
    // Throws DataError when the feature is unknown.
    const FeatureDescriptor& at(std::string_view name) const;
    const FeatureDescriptor& operator[](std::size_t i) const { return features_[i]; }

    std::size_t count(FeatureKind kind) const;
    // Catalog-ordered indices of features of the given kind; nullopt means all.
    std::vector<std::size_t> indices(std::optional<FeatureKind> kind) const;

    friend bool operator==(const FeatureCatalog& a, const FeatureCatalog& b) {
        return a.features_ == b.features_;
    }

private:
    std::vector<FeatureDescriptor> features_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Catalog JSON: array of {name, unit, kind, direction}.
FeatureCatalog parse_catalog(std::string_view json_text);
FeatureCatalog load_catalog(const std::filesystem::path& path);
std::string catalog_to_json(const FeatureCatalog& catalog);

}  // namespace ifra
