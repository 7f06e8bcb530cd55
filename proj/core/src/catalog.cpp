#include "ifra/catalog.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "ifra/errors.hpp"
#include "io_util.hpp"

namespace ifra {

std::string_view to_string(FeatureKind kind) {
    return kind == FeatureKind::clinical ? "clinical" : "itug";
}

std::string_view to_string(Direction direction) {
    return direction == Direction::higher_safer ? "higher_safer" : "higher_riskier";
}

FeatureKind parse_feature_kind(std::string_view text) {
    if (text == "clinical") return FeatureKind::clinical;
    if (text == "itug") return FeatureKind::itug;
    throw DataError(fmt::format("unknown feature kind '{}'", text));
}

Direction parse_direction(std::string_view text) {
    if (text == "higher_safer") return Direction::higher_safer;
    if (text == "higher_riskier") return Direction::higher_riskier;
    throw DataError(fmt::format("unknown risk direction '{}'", text));
}

FeatureCatalog::FeatureCatalog(std::vector<FeatureDescriptor> features)
    : features_(std::move(features)) {
    index_.reserve(features_.size());
    for (std::size_t i = 0; i < features_.size(); ++i) {
        const auto& name = features_[i].name;
        if (name.empty()) throw DataError(fmt::format("catalog entry {} has an empty name", i));
        if (!index_.emplace(name, i).second) {
            throw DataError(fmt::format("duplicate feature name '{}' in catalog", name));
        }
    }
}

std::optional<std::size_t> FeatureCatalog::index_of(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
    return std::nullopt;
}

const FeatureDescriptor& FeatureCatalog::at(std::string_view name) const {
    if (auto i = index_of(name)) return features_[*i];
    throw DataError(fmt::format("feature '{}' not in catalog", name));
}

std::size_t FeatureCatalog::count(FeatureKind kind) const {
    std::size_t n = 0;
    for (const auto& f : features_) n += f.kind == kind ? 1 : 0;
    return n;
}

std::vector<std::size_t> FeatureCatalog::indices(std::optional<FeatureKind> kind) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (!kind || features_[i].kind == *kind) out.push_back(i);
    }
    return out;
}

FeatureCatalog parse_catalog(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(fmt::format("catalog: JSON parse error: {}", e.what()));
    }
    if (!doc.is_array()) throw DataError("catalog: top-level value must be an array");

    std::vector<FeatureDescriptor> features;
    features.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.is_object()) throw DataError(fmt::format("catalog: entry {} is not an object", i));
        auto field = [&](const char* key, bool required) -> std::string {
            auto it = item.find(key);
            if (it == item.end()) {
                if (required) throw DataError(fmt::format("catalog: entry {} lacks '{}'", i, key));
                return {};
            }
            if (!it->is_string()) throw DataError(fmt::format("catalog: entry {} '{}' must be a string", i, key));
            return it->get<std::string>();
        };
        FeatureDescriptor fd;
        fd.name = field("name", true);
        fd.unit = field("unit", false);
        fd.kind = parse_feature_kind(field("kind", true));
        fd.direction = parse_direction(field("direction", true));
        features.push_back(std::move(fd));
    }
    return FeatureCatalog(std::move(features));
}

FeatureCatalog load_catalog(const std::filesystem::path& path) {
    return parse_catalog(detail::read_file(path));
}

std::string catalog_to_json(const FeatureCatalog& catalog) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& f : catalog.features()) {
        doc.push_back({{"name", f.name},
                       {"unit", f.unit},
                       {"kind", to_string(f.kind)},
                       {"direction", to_string(f.direction)}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace ifra
