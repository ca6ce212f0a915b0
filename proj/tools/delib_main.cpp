#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "delib/errors.hpp"
#include "delib/ingest.hpp"
#include "delib/metrics.hpp"
#include "delib/render.hpp"
#include "delib/stats.hpp"
#include "delib/synth.hpp"
#include "delib/thread_model.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) delib::fail(delib::ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Relative output paths land under $DELIB_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    const char* base = std::getenv("DELIB_OUT_DIR");
    if (!base || !*base || fs::path(path).is_absolute()) return path;
    return (fs::path(base) / path).string();
}

void write_file(const std::string& raw_path, const std::string& content) {
    const std::string path = resolve_out(raw_path);
    std::error_code ec;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent, ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) delib::fail(delib::ErrorCode::IoError, "cannot write '" + path + "'");
    out << content;
    if (!out) delib::fail(delib::ErrorCode::IoError, "short write to '" + path + "'");
}

delib::CorpusFormat format_for(const std::string& path, const std::string& flag) {
    if (flag == "json") return delib::CorpusFormat::Json;
    if (flag == "csv") return delib::CorpusFormat::Csv;
    return fs::path(path).extension() == ".csv" ? delib::CorpusFormat::Csv
                                                : delib::CorpusFormat::Json;
}

delib::Corpus load_corpus(const std::string& path, const std::string& format_flag, bool lenient) {
    delib::ParseOptions opts;
    opts.lenient_alignment = lenient;
    return delib::parse_corpus(read_file(path), format_for(path, format_flag), opts);
}

struct CorpusArgs {
    std::string input;
    std::string format = "auto";
    bool lenient = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("input", input, "corpus file (canonical JSON or CSV)")->required();
        cmd->add_option("--format", format, "input format")
            ->check(CLI::IsMember({"auto", "json", "csv"}))
            ->capture_default_str();
        cmd->add_flag("--lenient", lenient,
                      "map missing first-level alignments to neutral instead of failing");
    }

    delib::Corpus load() const { return load_corpus(input, format, lenient); }
};

const CLI::Validator HexColor(
    [](std::string& value) -> std::string {
        if (value.size() == 7 && value[0] == '#' &&
            value.find_first_not_of("0123456789abcdefABCDEF", 1) == std::string::npos)
            return {};
        return "expected #rrggbb, got '" + value + "'";
    },
    "HEXCOLOR");

void add_style_flags(CLI::App* cmd, delib::StyleConfig& style) {
    cmd->add_option("--ring-spacing", style.ring_spacing, "px between reply levels")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--node-radius", style.node_radius, "base node radius in px")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cell-size", style.cell_size, "heatmap cell size in px")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--color-neutral", style.neutral_color, "hex color for neutral")
        ->check(HexColor);
    cmd->add_option("--color-positive", style.positive_color, "hex color for positive")
        ->check(HexColor);
    cmd->add_option("--color-negative", style.negative_color, "hex color for negative")
        ->check(HexColor);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"delib - structural analysis of threaded discussions on civic proposals"};
    app.require_subcommand(1);

    // summary ----------------------------------------------------------------
    auto* summary = app.add_subcommand("summary", "corpus counts and alignment split");
    CorpusArgs summary_args;
    summary_args.attach(summary);
    bool summary_json = false;
    summary->add_flag("--json", summary_json, "emit canonical JSON instead of text");
    summary->callback([&] {
        auto s = delib::summarize_corpus(summary_args.load());
        std::cout << (summary_json ? delib::summary_to_json(s) : delib::summary_to_text(s));
    });

    // metrics ----------------------------------------------------------------
    auto* metrics = app.add_subcommand("metrics", "per-cascade structural metrics table");
    CorpusArgs metrics_args;
    metrics_args.attach(metrics);
    std::string metrics_out;
    metrics->add_option("--out", metrics_out, "CSV output path")->required();
    metrics->callback([&] {
        write_file(metrics_out, delib::metrics_to_csv(delib::metrics_table(metrics_args.load())));
    });

    // top --------------------------------------------------------------------
    auto* top = app.add_subcommand("top", "proposals ranked by comment count");
    CorpusArgs top_args;
    top_args.attach(top);
    size_t top_n = 5;
    bool top_json = false;
    top->add_option("-n,--count", top_n, "rows to report")->check(CLI::PositiveNumber)
        ->capture_default_str();
    top->add_flag("--json", top_json, "emit canonical JSON instead of text");
    top->callback([&] {
        auto ranks = delib::top_proposals(top_args.load(), top_n);
        if (top_json) {
            nlohmann::ordered_json doc;
            doc["schema_version"] = delib::kSchemaVersion;
            doc["kind"] = "top_proposals";
            auto list = nlohmann::ordered_json::array();
            for (const auto& r : ranks) {
                nlohmann::ordered_json row;
                row["id"] = r.proposal_id;
                row["title"] = r.title;
                row["comments"] = r.comment_count;
                list.push_back(std::move(row));
            }
            doc["proposals"] = std::move(list);
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& r : ranks)
                std::cout << r.comment_count << "\t" << r.title << "\n";
        }
    });

    // sizedist ---------------------------------------------------------------
    auto* sizedist = app.add_subcommand("sizedist", "cascade-size distribution per alignment");
    CorpusArgs sizedist_args;
    sizedist_args.attach(sizedist);
    uint32_t min_size = 1;
    std::string sizedist_out;
    sizedist->add_option("--min-size", min_size, "drop cascades smaller than this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sizedist->add_option("--out", sizedist_out, "JSON output path (stdout when omitted)");
    sizedist->callback([&] {
        auto rows = delib::metrics_table(sizedist_args.load());
        std::erase_if(rows, [&](const delib::CascadeMetrics& m) { return m.size < min_size; });
        const std::string json = delib::size_distribution_to_json(delib::size_distribution(rows));
        if (sizedist_out.empty()) std::cout << json;
        else write_file(sizedist_out, json);
    });

    // heatmap ----------------------------------------------------------------
    auto* heatmap = app.add_subcommand("heatmap", "conditional alignment probability heatmap");
    CorpusArgs heatmap_args;
    heatmap_args.attach(heatmap);
    std::string heatmap_metric;
    uint32_t heatmap_size_cap = 6, heatmap_metric_cap = 5;
    std::string heatmap_json_out, heatmap_svg_out;
    delib::StyleConfig heatmap_style;
    heatmap->add_option("--metric", heatmap_metric, "structural metric on the vertical axis")
        ->required()
        ->check(CLI::IsMember({"width", "depth", "h-index", "h_index"}));
    heatmap->add_option("--size-cap", heatmap_size_cap, "sizes >= cap share the last column")
        ->check(CLI::Range(2u, 1000000u))
        ->capture_default_str();
    heatmap->add_option("--metric-cap", heatmap_metric_cap, "values >= cap share the top row")
        ->check(CLI::Range(2u, 1000000u))
        ->capture_default_str();
    heatmap
        ->add_option("--caps", [&heatmap_size_cap, &heatmap_metric_cap](CLI::results_t values) {
            heatmap_size_cap = static_cast<uint32_t>(std::stoul(values[0]));
            heatmap_metric_cap = static_cast<uint32_t>(std::stoul(values[1]));
            return true;
        })
        ->description("size and metric caps in one flag")
        ->type_name("SIZE METRIC")
        ->expected(2)
        ->check(CLI::Range(2u, 1000000u))
        ->excludes("--size-cap", "--metric-cap");
    heatmap->add_option("--out-json", heatmap_json_out, "JSON output path");
    heatmap->add_option("--out-svg", heatmap_svg_out, "SVG output path");
    add_style_flags(heatmap, heatmap_style);
    heatmap->callback([&] {
        if (heatmap_json_out.empty() && heatmap_svg_out.empty())
            throw CLI::ValidationError("heatmap", "need --out-json and/or --out-svg");
        auto grid = delib::conditional_heatmap(delib::metrics_table(heatmap_args.load()),
                                               delib::metric_from_string(heatmap_metric),
                                               heatmap_size_cap, heatmap_metric_cap);
        if (!heatmap_json_out.empty()) write_file(heatmap_json_out, delib::heatmap_to_json(grid));
        if (!heatmap_svg_out.empty())
            write_file(heatmap_svg_out, delib::render_heatmap(grid, heatmap_style));
    });

    // bootstrap ----------------------------------------------------------------
    auto* bootstrap = app.add_subcommand("bootstrap", "bootstrap polarity significance test");
    CorpusArgs bootstrap_args;
    bootstrap_args.attach(bootstrap);
    std::string bootstrap_metric;
    delib::BootstrapConfig bconfig;
    std::string bootstrap_json_out, bootstrap_svg_out;
    bool bootstrap_serial = false;
    delib::StyleConfig bootstrap_style;
    bootstrap->add_option("--metric", bootstrap_metric, "structural metric on the vertical axis")
        ->required()
        ->check(CLI::IsMember({"width", "depth", "h-index", "h_index"}));
    bootstrap->add_option("--seed", bconfig.seed, "RNG seed")->capture_default_str();
    bootstrap->add_option("--evaluations", bconfig.evaluations, "bootstrap iterations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bootstrap->add_option("--resample", bconfig.resample_size,
                          "rows drawn per polarity per iteration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bootstrap->add_option("--alpha", bconfig.alpha, "significance level")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9))
        ->capture_default_str();
    bootstrap->add_option("--size-cap", bconfig.size_cap, "sizes >= cap share the last column")
        ->check(CLI::Range(2u, 1000000u))
        ->capture_default_str();
    bootstrap->add_option("--metric-cap", bconfig.metric_cap, "values >= cap share the top row")
        ->check(CLI::Range(2u, 1000000u))
        ->capture_default_str();
    bootstrap
        ->add_option("--caps", [&bconfig](CLI::results_t values) {
            bconfig.size_cap = static_cast<uint32_t>(std::stoul(values[0]));
            bconfig.metric_cap = static_cast<uint32_t>(std::stoul(values[1]));
            return true;
        })
        ->description("size and metric caps in one flag")
        ->type_name("SIZE METRIC")
        ->expected(2)
        ->check(CLI::Range(2u, 1000000u))
        ->excludes("--size-cap", "--metric-cap");
    bootstrap->add_option("--min-visit", bconfig.min_visit_fraction,
                          "cells hit in fewer iterations come back undefined")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    bootstrap->add_flag("--serial", bootstrap_serial, "run the serial reference kernel");
    bootstrap->add_option("--out-json", bootstrap_json_out, "JSON output path");
    bootstrap->add_option("--out-svg", bootstrap_svg_out, "SVG output path");
    add_style_flags(bootstrap, bootstrap_style);
    bootstrap->callback([&] {
        if (bootstrap_json_out.empty() && bootstrap_svg_out.empty())
            throw CLI::ValidationError("bootstrap", "need --out-json and/or --out-svg");
        auto rows = delib::metrics_table(bootstrap_args.load());
        auto metric = delib::metric_from_string(bootstrap_metric);
        auto result = bootstrap_serial ? delib::bootstrap_polarity_serial(rows, metric, bconfig)
                                       : delib::bootstrap_polarity(rows, metric, bconfig);
        if (!bootstrap_json_out.empty())
            write_file(bootstrap_json_out, delib::bootstrap_to_json(result));
        if (!bootstrap_svg_out.empty())
            write_file(bootstrap_svg_out, delib::render_heatmap(result, bootstrap_style));
    });

    // tree ---------------------------------------------------------------------
    auto* tree = app.add_subcommand("tree", "radial SVG of one proposal's discussion tree");
    CorpusArgs tree_args;
    tree_args.attach(tree);
    std::string tree_proposal, tree_out;
    delib::StyleConfig tree_style;
    tree->add_option("--proposal-id", tree_proposal, "proposal to draw")->required();
    tree->add_option("--out", tree_out, "SVG output path")->required();
    add_style_flags(tree, tree_style);
    tree->callback([&] {
        auto corpus = tree_args.load();
        for (const delib::DiscussionTree& t : corpus.trees) {
            if (t.proposal_id == tree_proposal) {
                write_file(tree_out, delib::render_radial_tree(t, tree_style));
                return;
            }
        }
        delib::fail(delib::ErrorCode::NotFound, "proposal '" + tree_proposal + "' not found");
    });

    // generate -------------------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "seeded synthetic corpus");
    std::string gen_config_path, gen_out;
    uint64_t gen_seed = 0;
    bool gen_seed_set = false;
    generate->add_option("--config", gen_config_path, "GeneratorConfig JSON file")->required();
    generate->add_option("--out", gen_out, "corpus JSON output path")->required();
    generate->add_option("--seed", gen_seed, "override the seed from the config file")
        ->each([&](const std::string&) { gen_seed_set = true; });
    generate->callback([&] {
        auto config = delib::generator_config_from_json(read_file(gen_config_path));
        if (gen_seed_set) config.seed = gen_seed;
        write_file(gen_out, delib::serialize_corpus(delib::generate_corpus(config),
                                                    delib::CorpusFormat::Json));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const delib::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
