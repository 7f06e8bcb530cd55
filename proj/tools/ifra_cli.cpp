// ifra: command-line front end for the fall-risk pipeline.
//
// Every stage reads and writes plain files. When --out is given, a
// <out>.manifest.json is written next to each output recording the command,
// the effective configuration, input digests and the master seed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ifra/augmentation.hpp"
#include "ifra/catalog.hpp"
#include "ifra/dataset.hpp"
#include "ifra/errors.hpp"
#include "ifra/evaluation.hpp"
#include "ifra/feature_selection.hpp"
#include "ifra/manifest.hpp"
#include "ifra/pipeline.hpp"
#include "ifra/reference_data.hpp"
#include "ifra/risk_scale.hpp"
#include "ifra/seeding.hpp"
#include "ifra/serialization.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string catalog;
    std::string out;
    std::size_t iterations = 1000;
    double accuracy_gate = 0.80;
    double alpha = 0.05;
    double relevance_threshold = 0.50;
    double noise_scale = 0.1;
    std::size_t count = 15;
    std::size_t threads = 1;
};

struct CommandOptions {
    std::string data;
    std::vector<std::string> scales;
    std::string selection;
    std::string name = "IFRA-derived";
    std::string split;
    std::string features = "itug";
    std::string denominator = "gated";
    bool builtin_clinical = false;
    bool builtin_ifra = false;
    ifra::SplitPlan plan;
    std::size_t planted = 6;
    double shift = 1.5;
};

ifra::RunManifest new_manifest(std::string command) {
    ifra::RunManifest m;
    m.command = std::move(command);
    return m;
}

ifra::FeatureCatalog active_catalog(const GlobalOptions& g) {
    return g.catalog.empty() ? ifra::reference_catalog() : ifra::load_catalog(g.catalog);
}

ifra::Dataset load_data(const GlobalOptions& g, const CommandOptions& c, ifra::RunManifest& manifest) {
    if (c.data.empty()) throw ifra::DataError("--data is required");
    manifest.add_input(c.data);
    auto loaded = ifra::load_dataset(c.data, active_catalog(g));
    for (const auto& ex : loaded.log.excluded) {
        std::cerr << fmt::format("warning: line {} ({}) excluded: {}\n", ex.line, ex.subject_id, ex.reason);
    }
    return std::move(loaded.dataset);
}

void add_catalog_input(const GlobalOptions& g, ifra::RunManifest& manifest) {
    if (!g.catalog.empty()) manifest.add_input(g.catalog);
}

// "builtin:IFRA" or "builtin:<clinical scale name>", otherwise a file path.
std::vector<ifra::RiskScale> resolve_scale(const std::string& ref, ifra::RunManifest& manifest) {
    constexpr std::string_view prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        const auto name = ref.substr(prefix.size());
        if (name == ifra::published_ifra_scale().name) return {ifra::published_ifra_scale()};
        for (const auto& s : ifra::builtin_clinical_scales()) {
            if (s.name == name) return {s};
        }
        throw ifra::DataError(fmt::format("unknown builtin scale '{}'", name));
    }
    manifest.add_input(ref);
    return ifra::load_scales(ref);
}

ifra::RiskScale single_scale(const CommandOptions& c, ifra::RunManifest& manifest) {
    if (c.scales.size() != 1) throw ifra::DataError("exactly one --scale is required");
    auto scales = resolve_scale(c.scales[0], manifest);
    if (scales.size() != 1) throw ifra::DataError(fmt::format("{} holds {} scales; expected one", c.scales[0], scales.size()));
    return std::move(scales[0]);
}

ifra::Dataset select_split(const ifra::Dataset& d, const std::string& split) {
    if (split.empty() || split == "all") return d;
    return d.slice(ifra::parse_split(split));
}

ifra::SelectionConfig selection_config(const GlobalOptions& g, const CommandOptions& c) {
    ifra::SelectionConfig s;
    s.iterations = g.iterations;
    s.accuracy_gate = g.accuracy_gate;
    s.alpha = g.alpha;
    s.relevance_fraction = g.relevance_threshold;
    s.seed = ifra::derive_seed(g.seed, ifra::SeedStream::selection_subset);
    s.feature_kind = ifra::parse_feature_filter(c.features);
    s.denominator = ifra::parse_denominator(c.denominator);
    s.threads = g.threads;
    ifra::validate(s);
    return s;
}

// Writes `content` to `path` (or stdout when path is empty) and records it.
void emit(const std::string& path, const std::string& content, ifra::RunManifest& manifest) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ifra::DataError(fmt::format("cannot write '{}'", path));
    out << content;
    if (!out) throw ifra::DataError(fmt::format("failed writing '{}'", path));
    manifest.outputs.push_back(path);
}

void write_manifest(const std::string& primary, const ifra::RunManifest& manifest) {
    if (primary.empty()) return;
    std::ofstream out(primary + ".manifest.json", std::ios::binary);
    if (!out) throw ifra::DataError(fmt::format("cannot write manifest for '{}'", primary));
    out << ifra::dump(manifest.to_json());
}

int cmd_ingest(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("ingest");
    add_catalog_input(g, m);
    if (c.data.empty()) throw ifra::DataError("--data is required");
    m.add_input(c.data);
    const auto loaded = ifra::load_dataset(c.data, active_catalog(g));
    ifra::Json doc;
    doc["log"] = ifra::to_json(loaded.log);
    doc["summary"] = ifra::to_json(ifra::split_summary(loaded.dataset));
    doc["direction_conflicts"] = ifra::to_json(ifra::lint_directions(loaded.dataset));
    emit(g.out, ifra::dump(doc), m);
    write_manifest(g.out, m);
    return 0;
}

int cmd_augment(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("augment");
    m.seed = g.seed;
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    const ifra::AugmentationConfig config{g.count, g.noise_scale,
                                          ifra::derive_seed(g.seed, ifra::SeedStream::augmentation)};
    m.config["count"] = config.count;
    m.config["noise_scale"] = config.noise_scale;
    emit(g.out, ifra::dataset_to_csv(ifra::augment_fallers(data, config)), m);
    write_manifest(g.out, m);
    return 0;
}

int cmd_make_splits(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("make-splits");
    m.seed = g.seed;
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    m.config["validation_non_fallers"] = c.plan.validation_non_fallers;
    m.config["validation_fallers"] = c.plan.validation_fallers;
    m.config["test_non_fallers"] = c.plan.test_non_fallers;
    m.config["test_fallers"] = c.plan.test_fallers;
    const auto split = ifra::make_splits(data, c.plan, ifra::derive_seed(g.seed, ifra::SeedStream::splits));
    emit(g.out, ifra::dataset_to_csv(split), m);
    write_manifest(g.out, m);
    return 0;
}

int cmd_select(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("select");
    m.seed = g.seed;
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    const auto config = selection_config(g, c);
    const auto report = ifra::run_selection(data.slice(ifra::Split::train), data.slice(ifra::Split::validation),
                                            data.catalog(), ifra::SvmConfig{}, config);
    const auto doc = ifra::to_json(report);
    m.config = doc["config"];
    if (report.no_gated_iterations) std::cerr << "warning: no iteration passed the accuracy gate\n";
    emit(g.out, ifra::dump(doc), m);
    write_manifest(g.out, m);
    return 0;
}

int cmd_derive(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("derive");
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    if (c.selection.empty()) throw ifra::DataError("--selection is required");
    m.add_input(c.selection);
    const auto report = ifra::load_selection_report(c.selection);
    const auto derived = ifra::derive_scale(data.slice(ifra::Split::train), report, data.catalog(), c.name);
    for (const auto& f : derived.tied_boundaries) {
        std::cerr << fmt::format("warning: tied values at a tertile boundary for '{}'\n", f);
    }
    m.config["name"] = c.name;
    emit(g.out, ifra::scale_to_string(derived.scale), m);
    write_manifest(g.out, m);
    return 0;
}

int cmd_assess(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("assess");
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    const auto scale = single_scale(c, m);
    ifra::validate(scale, data.catalog());
    m.config["scale"] = scale.name;
    m.config["split"] = c.split.empty() ? "all" : c.split;
    const auto subjects = select_split(data, c.split);
    std::string lines;
    for (const auto& s : subjects.subjects()) {
        lines += ifra::assessment_line(s, ifra::assess(s, scale)).dump() + "\n";
    }
    emit(g.out, lines, m);
    write_manifest(g.out, m);
    return 0;
}

int cmd_evaluate(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("evaluate");
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    const auto scale = single_scale(c, m);
    ifra::validate(scale, data.catalog());
    const std::string split = c.split.empty() ? "test" : c.split;
    m.config["scale"] = scale.name;
    m.config["split"] = split;
    m.config["alpha"] = g.alpha;
    const auto report = ifra::evaluate_scale(select_split(data, split), scale, g.alpha);
    emit(g.out, ifra::dump(ifra::to_json(report)), m);
    if (!g.out.empty()) std::cout << ifra::reports_to_markdown({report});
    write_manifest(g.out, m);
    return 0;
}

int cmd_compare(const GlobalOptions& g, const CommandOptions& c) {
    auto m = new_manifest("compare");
    add_catalog_input(g, m);
    const auto data = load_data(g, c, m);
    std::vector<ifra::RiskScale> scales;
    if (c.builtin_ifra) scales.push_back(ifra::published_ifra_scale());
    if (c.builtin_clinical) {
        const auto& clinical = ifra::builtin_clinical_scales();
        scales.insert(scales.end(), clinical.begin(), clinical.end());
    }
    for (const auto& ref : c.scales) {
        auto more = resolve_scale(ref, m);
        scales.insert(scales.end(), more.begin(), more.end());
    }
    if (scales.empty()) throw ifra::DataError("compare needs at least one scale");
    for (const auto& s : scales) ifra::validate(s, data.catalog());
    const std::string split = c.split.empty() ? "test" : c.split;
    m.config["split"] = split;
    m.config["alpha"] = g.alpha;
    auto& names = m.config["scales"] = ifra::Json::array();
    for (const auto& s : scales) names.push_back(s.name);

    const auto reports = ifra::compare_scales(select_split(data, split), scales, g.alpha);
    const auto markdown = ifra::reports_to_markdown(reports);
    emit(g.out, ifra::dump(ifra::to_json(reports)), m);
    if (g.out.empty()) {
        std::cout << markdown;
    } else {
        emit(fs::path(g.out).replace_extension(".md").string(), markdown, m);
    }
    write_manifest(g.out, m);
    return 0;
}

int cmd_demo(const GlobalOptions& g, const CommandOptions& c) {
    ifra::DemoConfig config;
    config.seed = g.seed;
    config.planted_count = c.planted;
    config.shift_sd = c.shift;
    config.augmentation.count = g.count;
    config.augmentation.noise_scale = g.noise_scale;
    config.selection = selection_config(g, c);
    config.alpha = g.alpha;
    const auto result = ifra::run_demo(config);

    const auto scale_text = ifra::scale_to_string(result.derived.scale);
    const auto markdown = ifra::reports_to_markdown({result.evaluation});
    std::cout << fmt::format("planted features ({}):\n", result.planted.size());
    for (const auto& p : result.planted) std::cout << "  " << p << "\n";
    std::cout << "\nderived scale:\n" << scale_text << "\n" << markdown;
    std::cout << fmt::format("fallers assigned high: {:.1f}%\n", 100.0 * result.faller_high_fraction);

    if (g.out.empty()) return 0;
    fs::create_directories(g.out);
    const auto path = [&](const char* name) { return (fs::path(g.out) / name).string(); };
    auto m = new_manifest("demo");
    m.seed = g.seed;
    m.config = ifra::to_json(result.selection)["config"];
    m.config["planted_count"] = c.planted;
    m.config["shift_sd"] = c.shift;
    m.config["augmentation_count"] = g.count;
    m.config["noise_scale"] = g.noise_scale;

    ifra::Json summary;
    summary["planted"] = result.planted;
    summary["selection"] = ifra::to_json(result.selection);
    summary["scale"] = ifra::to_json(result.derived.scale);
    summary["evaluation"] = ifra::to_json(result.evaluation);
    summary["faller_high_fraction"] = result.faller_high_fraction;

    emit(path("cohort.csv"), ifra::dataset_to_csv(result.dataset), m);
    emit(path("selection.json"), ifra::dump(ifra::to_json(result.selection)), m);
    emit(path("scale.json"), scale_text, m);
    emit(path("evaluation.json"), ifra::dump(ifra::to_json(result.evaluation)), m);
    emit(path("evaluation.md"), markdown, m);
    emit(path("demo.json"), ifra::dump(summary), m);
    write_manifest(path("demo.json"), m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Instrumented fall-risk assessment pipeline"};
    app.set_version_flag("--version", std::string(ifra::tool_version()));
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    CommandOptions c;
    app.add_option("--seed", g.seed, "Master seed; stage seeds are derived from it");
    app.add_option("--catalog", g.catalog, "Feature catalog JSON (default: built-in reference catalog)");
    app.add_option("--out", g.out, "Output path (directory for demo); stdout when omitted");
    app.add_option("--iterations", g.iterations, "Feature-selection iterations")->capture_default_str();
    app.add_option("--accuracy-gate", g.accuracy_gate, "Validation accuracy an iteration must reach")
        ->capture_default_str();
    app.add_option("--alpha", g.alpha, "Significance level")->capture_default_str();
    app.add_option("--relevance-threshold", g.relevance_threshold, "Selection fraction needed to keep a feature")
        ->capture_default_str();
    app.add_option("--noise-scale", g.noise_scale, "Augmentation noise, in faller standard deviations")
        ->capture_default_str();
    app.add_option("--count", g.count, "Synthetic fallers to add")->capture_default_str();
    app.add_option("--threads", g.threads, "Selection worker threads (0 = all cores); results do not depend on it")
        ->capture_default_str();

    auto data_option = [&](CLI::App* sub) { sub->add_option("--data", c.data, "Dataset CSV")->required(); };
    auto split_option = [&](CLI::App* sub, const char* help) {
        sub->add_option("--split", c.split, help)->check(CLI::IsMember({"train", "validation", "test", "all"}));
    };
    auto selection_options = [&](CLI::App* sub) {
        sub->add_option("--features", c.features, "Features the selection considers")
            ->check(CLI::IsMember({"itug", "clinical", "all"}))
            ->capture_default_str();
        sub->add_option("--denominator", c.denominator, "Selection percentage denominator")
            ->check(CLI::IsMember({"gated", "total"}))
            ->capture_default_str();
    };

    auto* ingest = app.add_subcommand("ingest", "Validate a dataset and report exclusions and split counts");
    data_option(ingest);

    auto* augment = app.add_subcommand("augment", "Append synthetic fallers to the train split");
    data_option(augment);

    auto* splits = app.add_subcommand("make-splits", "Assign real subjects to validation/test splits");
    data_option(splits);
    splits->add_option("--validation-non-fallers", c.plan.validation_non_fallers)->capture_default_str();
    splits->add_option("--validation-fallers", c.plan.validation_fallers)->capture_default_str();
    splits->add_option("--test-non-fallers", c.plan.test_non_fallers)->capture_default_str();
    splits->add_option("--test-fallers", c.plan.test_fallers)->capture_default_str();

    auto* select = app.add_subcommand("select", "Run SVM-gated feature selection on train/validation");
    data_option(select);
    selection_options(select);

    auto* derive = app.add_subcommand("derive", "Derive tertile thresholds for the selected features");
    data_option(derive);
    derive->add_option("--selection", c.selection, "Selection report JSON")->required();
    derive->add_option("--name", c.name, "Scale name")->capture_default_str();

    auto* assess = app.add_subcommand("assess", "Stratify subjects; one JSON line per subject");
    data_option(assess);
    assess->add_option("--scale", c.scales, "Scale JSON file or builtin:<name>")->required()->expected(1);
    split_option(assess, "Subjects to assess (default all)");

    auto* evaluate = app.add_subcommand("evaluate", "Exact test of stratum vs outcome for one scale");
    data_option(evaluate);
    evaluate->add_option("--scale", c.scales, "Scale JSON file or builtin:<name>")->required()->expected(1);
    split_option(evaluate, "Subjects to evaluate (default test)");

    auto* compare = app.add_subcommand("compare", "Evaluate several scales; JSON plus a Markdown table");
    data_option(compare);
    compare->add_option("--scale", c.scales, "Scale JSON file or builtin:<name> (repeatable)");
    compare->add_flag("--clinical", c.builtin_clinical, "Include the bundled clinical scales");
    compare->add_flag("--ifra", c.builtin_ifra, "Include the bundled published IFRA scale");
    split_option(compare, "Subjects to evaluate (default test)");

    auto* demo = app.add_subcommand("demo", "Run the full pipeline on a seeded synthetic cohort");
    demo->add_option("--planted", c.planted, "Features with a planted faller shift")->capture_default_str();
    demo->add_option("--shift", c.shift, "Planted shift in feature standard deviations")->capture_default_str();
    selection_options(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*ingest) return cmd_ingest(g, c);
        if (*augment) return cmd_augment(g, c);
        if (*splits) return cmd_make_splits(g, c);
        if (*select) return cmd_select(g, c);
        if (*derive) return cmd_derive(g, c);
        if (*assess) return cmd_assess(g, c);
        if (*evaluate) return cmd_evaluate(g, c);
        if (*compare) return cmd_compare(g, c);
        if (*demo) return cmd_demo(g, c);
    } catch (const ifra::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ifra::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
