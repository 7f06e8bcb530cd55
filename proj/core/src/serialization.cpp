#include "ifra/serialization.hpp"

#include <fmt/format.h>

#include "ifra/errors.hpp"
#include "io_util.hpp"

namespace ifra {

namespace {

const Json& require(const Json& doc, const char* key, const char* context) {
    auto it = doc.find(key);
    if (it == doc.end()) throw DataError(fmt::format("{}: missing field '{}'", context, key));
    return *it;
}

template <typename T>
T get_as(const Json& doc, const char* key, const char* context) {
    const Json& v = require(doc, key, context);
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw DataError(fmt::format("{}: field '{}' has the wrong type", context, key));
    }
}

Json parse_json(std::string_view text, const char* context) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(fmt::format("{}: JSON parse error: {}", context, e.what()));
    }
}

}  // namespace

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json to_json(const RiskScale& scale) {
    Json entries = Json::array();
    for (const auto& e : scale.entries) {
        Json item{{"feature", e.feature},
                  {"direction", to_string(e.direction)},
                  {"t_low", e.t_low},
                  {"t_high", e.t_high}};
        if (e.selection_pct) item["selection_pct"] = *e.selection_pct;
        entries.push_back(std::move(item));
    }
    return Json{{"name", scale.name}, {"provenance", to_string(scale.provenance)}, {"entries", std::move(entries)}};
}

RiskScale scale_from_json(const Json& doc) {
    constexpr const char* ctx = "scale";
    if (!doc.is_object()) throw DataError("scale: expected a JSON object");
    RiskScale scale;
    scale.name = get_as<std::string>(doc, "name", ctx);
    scale.provenance = parse_provenance(get_as<std::string>(doc, "provenance", ctx));
    const Json& entries = require(doc, "entries", ctx);
    if (!entries.is_array()) throw DataError("scale: 'entries' must be an array");
    for (const auto& item : entries) {
        constexpr const char* ectx = "scale entry";
        if (!item.is_object()) throw DataError("scale entry: expected an object");
        FeatureThresholds t;
        t.feature = get_as<std::string>(item, "feature", ectx);
        t.direction = parse_direction(get_as<std::string>(item, "direction", ectx));
        t.t_low = get_as<double>(item, "t_low", ectx);
        t.t_high = get_as<double>(item, "t_high", ectx);
        if (item.contains("selection_pct") && !item["selection_pct"].is_null()) {
            t.selection_pct = get_as<double>(item, "selection_pct", ectx);
        }
        scale.entries.push_back(std::move(t));
    }
    validate(scale);
    return scale;
}

std::vector<RiskScale> parse_scales(std::string_view json_text) {
    const Json doc = parse_json(json_text, "scale file");
    std::vector<RiskScale> out;
    if (doc.is_array()) {
        for (const auto& item : doc) out.push_back(scale_from_json(item));
    } else {
        out.push_back(scale_from_json(doc));
    }
    return out;
}

std::vector<RiskScale> load_scales(const std::filesystem::path& path) {
    try {
        return parse_scales(detail::read_file(path));
    } catch (const DataError& e) {
        throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string scale_to_string(const RiskScale& scale) { return dump(to_json(scale)); }

Json to_json(const SelectionReport& report) {
    const auto& c = report.config;
    Json config{{"iterations", c.iterations},
                {"accuracy_gate", c.accuracy_gate},
                {"alpha", c.alpha},
                {"relevance_fraction", c.relevance_fraction},
                {"seed", c.seed},
                {"feature_kind", to_string(c.feature_kind)},
                {"denominator", to_string(c.denominator)},
                {"svm",
                 {{"kernel", "linear"},
                  {"c", report.svm.c},
                  {"tolerance", report.svm.tolerance},
                  {"max_passes", report.svm.max_passes},
                  {"max_sweeps", report.svm.max_sweeps}}}};
    Json features = Json::array();
    for (const auto& f : report.features) {
        features.push_back({{"name", f.name}, {"relevance_count", f.relevance_count}, {"selection_pct", f.selection_pct}});
    }
    return Json{{"config", std::move(config)},
                {"iterations_run", report.iterations_run},
                {"iterations_passed_gate", report.iterations_passed_gate},
                {"no_gated_iterations", report.no_gated_iterations},
                {"features", std::move(features)},
                {"selected", report.selected}};
}

SelectionReport selection_report_from_json(const Json& doc) {
    constexpr const char* ctx = "selection report";
    if (!doc.is_object()) throw DataError("selection report: expected a JSON object");
    SelectionReport report;
    if (auto it = doc.find("config"); it != doc.end() && it->is_object()) {
        const Json& c = *it;
        report.config.iterations = c.value("iterations", report.config.iterations);
        report.config.accuracy_gate = c.value("accuracy_gate", report.config.accuracy_gate);
        report.config.alpha = c.value("alpha", report.config.alpha);
        report.config.relevance_fraction = c.value("relevance_fraction", report.config.relevance_fraction);
        report.config.seed = c.value("seed", report.config.seed);
        if (c.contains("feature_kind")) report.config.feature_kind = parse_feature_filter(c["feature_kind"].get<std::string>());
        if (c.contains("denominator")) report.config.denominator = parse_denominator(c["denominator"].get<std::string>());
        if (auto s = c.find("svm"); s != c.end() && s->is_object()) {
            report.svm.c = s->value("c", report.svm.c);
            report.svm.tolerance = s->value("tolerance", report.svm.tolerance);
            report.svm.max_passes = s->value("max_passes", report.svm.max_passes);
            report.svm.max_sweeps = s->value("max_sweeps", report.svm.max_sweeps);
        }
    }
    report.iterations_run = get_as<std::size_t>(doc, "iterations_run", ctx);
    report.iterations_passed_gate = get_as<std::size_t>(doc, "iterations_passed_gate", ctx);
    report.no_gated_iterations = doc.value("no_gated_iterations", report.iterations_passed_gate == 0);
    for (const auto& f : require(doc, "features", ctx)) {
        report.features.push_back({get_as<std::string>(f, "name", "selection feature"),
                                   get_as<std::size_t>(f, "relevance_count", "selection feature"),
                                   get_as<double>(f, "selection_pct", "selection feature")});
    }
    report.selected = get_as<std::vector<std::string>>(doc, "selected", ctx);
    return report;
}

SelectionReport load_selection_report(const std::filesystem::path& path) {
    return selection_report_from_json(parse_json(detail::read_file(path), "selection report"));
}

Json to_json(const EvaluationReport& report) {
    Json counts = Json::object();
    Json pct = Json::object();
    const std::array<const char*, 2> rows = {"non_faller", "faller"};
    for (std::size_t r = 0; r < 2; ++r) {
        Json c = Json::object();
        Json p = Json::object();
        for (std::size_t s = 0; s < 3; ++s) {
            const auto name = std::string(to_string(static_cast<Stratum>(s)));
            c[name] = report.counts(r, s);
            p[name] = report.percentages[r][s];
        }
        counts[rows[r]] = std::move(c);
        pct[rows[r]] = std::move(p);
    }
    return Json{{"scale", report.scale_name},
                {"counts", std::move(counts)},
                {"percentages", std::move(pct)},
                {"p_value", report.p_value},
                {"alpha", report.alpha},
                {"reject_h0", report.reject_h0}};
}

Json to_json(const std::vector<EvaluationReport>& reports) {
    Json out = Json::array();
    for (const auto& r : reports) out.push_back(to_json(r));
    return out;
}

Json assessment_line(const SubjectRecord& subject, const Assessment& assessment) {
    Json votes = Json::array();
    for (const auto& v : assessment.votes) {
        votes.push_back({{"feature", v.feature}, {"value", v.value}, {"stratum", to_string(v.stratum)}});
    }
    Json out{{"subject_id", subject.subject_id}, {"stratum", to_string(assessment.stratum)}, {"votes", std::move(votes)}};
    if (!assessment.skipped.empty()) out["skipped"] = assessment.skipped;
    return out;
}

Json to_json(const IngestionLog& log) {
    Json excluded = Json::array();
    for (const auto& e : log.excluded) {
        excluded.push_back({{"line", e.line}, {"subject_id", e.subject_id}, {"reason", e.reason}});
    }
    return Json{{"rows_read", log.rows_read},
                {"rows_kept", log.rows_read - log.excluded.size()},
                {"excluded", std::move(excluded)}};
}

Json to_json(const SplitSummary& summary) {
    Json out = Json::object();
    for (Split split : {Split::train, Split::validation, Split::test}) {
        Json s{{"total", summary.split_total(split)}};
        for (Outcome o : {Outcome::non_faller, Outcome::faller}) {
            s[std::string(to_string(o))] = {{"real", summary.at(split, o, false)},
                                            {"synthetic", summary.at(split, o, true)}};
        }
        out[std::string(to_string(split))] = std::move(s);
    }
    out["total"] = summary.total();
    return out;
}

Json to_json(const std::vector<DirectionConflict>& conflicts) {
    Json out = Json::array();
    for (const auto& c : conflicts) {
        out.push_back({{"feature", c.feature},
                       {"declared_direction", to_string(c.declared)},
                       {"faller_mean", c.faller_mean},
                       {"non_faller_mean", c.non_faller_mean}});
    }
    return out;
}

}  // namespace ifra
