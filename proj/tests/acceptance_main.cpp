// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned in code next to each check.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "delib/ingest.hpp"
#include "delib/metrics.hpp"
#include "delib/render.hpp"
#include "delib/stats.hpp"
#include "delib/synth.hpp"
#include "fixtures.hpp"
#include "test_support.hpp"

using namespace delib;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, const char* name, bool pass, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", n, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++failures;
}

template <typename Fn>
void criterion(int n, const char* name, Fn&& fn) {
    try {
        auto [pass, detail] = fn();
        report(n, name, pass, detail);
    } catch (const std::exception& e) {
        report(n, name, false, std::string("exception: ") + e.what());
    }
}

using Verdict = std::pair<bool, std::string>;

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

// ---------------------------------------------------------------------------

Verdict worked_example() {
    auto corpus = parse_corpus(testsup::read_file(testsup::fixture_path("ice_rink.json")),
                               CorpusFormat::Json);
    auto rows = metrics_table(corpus);
    for (const CascadeMetrics& m : rows) {
        if (m.alignment != Alignment::Negative) continue;
        const bool pass = m.size == 9 && m.width == 4 && m.depth == 3 && m.h_index == 3;
        return {pass, fmt("got (size %u, width %u, depth %u, h %u), want (9, 4, 3, 3)", m.size,
                          m.width, m.depth, m.h_index)};
    }
    return {false, "no negative cascade in the fixture"};
}

Verdict dataset_arithmetic() {
    Corpus corpus;
    const uint64_t counts[3] = {10221, 5198, 798};
    const Alignment kinds[3] = {Alignment::Neutral, Alignment::Positive, Alignment::Negative};
    const uint64_t n_proposals = 10860;
    std::vector<std::vector<Comment>> drafts(n_proposals);
    uint64_t serial = 0, replies_left = 1975, cursor = 0;
    for (int k = 0; k < 3; ++k)
        for (uint64_t i = 0; i < counts[k]; ++i) {
            const uint64_t p = cursor++ % n_proposals;
            const std::string pid = "p" + std::to_string(p);
            const std::string id = "c" + std::to_string(++serial);
            Comment c = testsup::make_comment(id, pid, std::nullopt, kinds[k],
                                              static_cast<Timestamp>(serial * 2));
            drafts[p].push_back(std::move(c));
            if (replies_left > 0) {
                --replies_left;
                drafts[p].push_back(testsup::make_comment("r" + std::to_string(serial), pid, id,
                                                          std::nullopt,
                                                          static_cast<Timestamp>(serial * 2 + 1)));
            }
        }
    for (uint64_t p = 0; p < n_proposals; ++p)
        corpus.trees.push_back(build_tree("p" + std::to_string(p), "t", std::move(drafts[p])));

    auto s = summarize_corpus(corpus);
    const bool totals = s.proposals == 10860 && s.comments == 18192 && s.first_level == 16217 &&
                        s.replies == 1975;
    const bool pct = s.neutral.pct == 63.03 && s.positive.pct == 32.05 && s.negative.pct == 4.92;
    return {totals && pct,
            fmt("totals %llu/%llu/%llu/%llu, pct %.2f/%.2f/%.2f",
                static_cast<unsigned long long>(s.proposals),
                static_cast<unsigned long long>(s.comments),
                static_cast<unsigned long long>(s.first_level),
                static_cast<unsigned long long>(s.replies), s.neutral.pct.value_or(-1),
                s.positive.pct.value_or(-1), s.negative.pct.value_or(-1))};
}

Verdict metric_oracle_equivalence() {
    SplitMix64 rng(20160215);
    uint64_t trees = 0, cascades = 0, mismatches = 0;
    while (trees < 1000) {
        testsup::RandomTreeOptions opt;
        opt.n_comments = 1 + static_cast<uint32_t>(rng.next_below(200));
        opt.p_first_level = 0.05 + 0.55 * rng.next_double();
        auto comments = testsup::random_comments(rng, "p1", opt);
        auto tree = build_tree("p1", "t", comments);
        ++trees;
        for (const Cascade& cascade : extract_cascades(tree)) {
            ++cascades;
            auto got = compute_metrics(cascade);
            auto want = testsup::oracle_metrics(cascade.root_comment_id, comments);
            if (got.size != want.size || got.width != want.width || got.depth != want.depth ||
                got.h_index != want.h_index)
                ++mismatches;
        }
    }
    return {mismatches == 0, fmt("%llu trees, %llu cascades, %llu mismatches",
                                 static_cast<unsigned long long>(trees),
                                 static_cast<unsigned long long>(cascades),
                                 static_cast<unsigned long long>(mismatches))};
}

Verdict metric_invariants() {
    SplitMix64 rng(424242);
    uint64_t checked = 0, violations = 0;
    while (checked < 10000) {
        testsup::RandomTreeOptions opt;
        opt.n_comments = 1 + static_cast<uint32_t>(rng.next_below(60));
        opt.shuffle = false;
        auto comments = testsup::random_comments(rng, "p1", opt);
        auto tree = build_tree("p1", "t", comments);
        auto cascades = extract_cascades(tree);
        if (cascades.empty()) continue;

        for (const Cascade& cascade : cascades) {
            auto m = compute_metrics(cascade);
            bool ok = m.h_index >= 1 && m.h_index <= std::min(m.width, m.depth) &&
                      m.size >= std::max(m.width, m.depth) && m.size >= 2 * m.h_index - 1;
            if (m.size == 1) ok = ok && m.width == 1 && m.depth == 1 && m.h_index == 1;
            if (!ok) ++violations;
            ++checked;
        }

        // single-reply monotonicity on one cascade per tree
        const Cascade& target = cascades[rng.next_below(cascades.size())];
        auto before = compute_metrics(target);
        Comment extra;
        extra.id = "zz-extra";
        extra.proposal_id = "p1";
        extra.parent_id = target.node_ids[rng.next_below(target.node_ids.size())];
        extra.created_at = 1 << 30;
        comments.push_back(extra);
        for (const Cascade& grown : extract_cascades(build_tree("p1", "t", comments))) {
            if (grown.root_comment_id != target.root_comment_id) continue;
            auto after = compute_metrics(grown);
            if (after.size != before.size + 1 || after.width < before.width ||
                after.depth < before.depth || after.h_index < before.h_index)
                ++violations;
        }
    }
    return {violations == 0, fmt("%llu cascades checked, %llu violations",
                                 static_cast<unsigned long long>(checked),
                                 static_cast<unsigned long long>(violations))};
}

Corpus null_corpus(uint64_t seed) {
    GeneratorConfig config;
    config.seed = seed;
    config.n_proposals = 3300;
    config.first_level_min = 20;
    config.first_level_max = 20;  // 66,000 polar cascades, well over the 5,000 floor
    config.p_neutral = 0.0;
    config.p_positive = 0.5;
    config.p_negative = 0.5;
    config.b_positive = 0.5;  // identical branching for both polarities
    config.b_negative = 0.5;
    return generate_corpus(config);
}

Verdict bootstrap_calibration() {
    double fraction_sum = 0;
    int runs = 0;
    for (uint64_t s = 0; s < 20; ++s) {
        auto rows = metrics_table(null_corpus(100 + s));
        BootstrapConfig config;  // paper protocol: 10K evaluations, 10K per polarity
        config.seed = 9000 + s;
        auto result = bootstrap_polarity(rows, MetricName::Depth, config);
        uint64_t defined = 0, significant = 0;
        for (const BootstrapCell& cell : result.cells) {
            if (!cell.defined) continue;
            ++defined;
            significant += cell.significant ? 1 : 0;
        }
        if (defined == 0) return {false, "no defined cells"};
        fraction_sum += static_cast<double>(significant) / static_cast<double>(defined);
        ++runs;
    }
    const double mean_fraction = fraction_sum / runs;
    return {mean_fraction <= 0.08,
            fmt("mean significant-cell fraction %.4f over %d seeds (bound 0.08)", mean_fraction,
                runs)};
}

Verdict planted_effect() {
    GeneratorConfig config;
    config.seed = 606;
    config.n_proposals = 2800;
    config.first_level_min = 20;
    config.first_level_max = 20;
    config.p_neutral = 0.0;
    config.p_positive = 0.7;  // ~39K positive vs ~17K negative first-level
    config.p_negative = 0.3;
    config.b_positive = 0.2;
    config.b_negative = 0.6;
    auto rows = metrics_table(generate_corpus(config));

    BootstrapConfig bconfig;
    bconfig.seed = 51;
    auto result = bootstrap_polarity(rows, MetricName::Depth, bconfig);

    // depth-axis profile: occupancy-weighted mean P(negative) per depth row
    std::vector<double> mass(result.cells.size(), 0.0);
    for (const CascadeMetrics& m : rows) {
        if (m.alignment == Alignment::Neutral || m.size < 2) continue;
        uint32_t sb = std::min(m.size, result.size_cap);
        uint32_t mb = std::min(m.depth, result.metric_cap);
        mass[(mb - 1) * result.size_cap + (sb - 1)] += 1.0;
    }
    std::vector<double> profile;
    for (uint32_t mb = 1; mb <= result.metric_cap; ++mb) {
        double num = 0, den = 0;
        for (uint32_t sb = 1; sb <= result.size_cap; ++sb) {
            const BootstrapCell& cell = result.cell(mb, sb);
            if (!cell.defined) continue;
            const double w = mass[(mb - 1) * result.size_cap + (sb - 1)];
            num += cell.p_negative * w;
            den += w;
        }
        if (den > 0) profile.push_back(num / den);
    }
    int inversions = 0;
    for (size_t i = 1; i < profile.size(); ++i)
        if (profile[i] < profile[i - 1]) ++inversions;

    bool deep_cell = false;
    double best_deep = 0;
    for (uint32_t mb = 3; mb <= result.metric_cap; ++mb)
        for (uint32_t sb = 1; sb <= result.size_cap; ++sb) {
            const BootstrapCell& cell = result.cell(mb, sb);
            if (cell.defined && cell.significant) best_deep = std::max(best_deep, cell.p_negative);
            if (cell.defined && cell.significant && cell.p_negative > 0.8) deep_cell = true;
        }

    std::string shape;
    for (double p : profile) shape += fmt("%.3f ", p);
    const bool monotone = profile.size() >= 3 && inversions <= 1 &&
                          profile.back() > profile.front();
    return {monotone && deep_cell,
            fmt("depth profile [ %s], %d inversions, best deep significant P(neg) %.3f",
                shape.c_str(), inversions, best_deep)};
}

Verdict cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / "delib_acceptance_run";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto path = [&](const char* name) { return (dir / name).string(); };

    testsup::write_file(path("config.json"), R"({
        "seed": 31415, "n_proposals": 400, "first_level_min": 4, "first_level_max": 10,
        "p_neutral": 0.4, "p_positive": 0.35, "p_negative": 0.25,
        "b_neutral": 0.2, "b_positive": 0.3, "b_negative": 0.55
    })");

    auto gen = [&](const char* out) {
        return testsup::run_cli("generate --config " + path("config.json") + " --out " + path(out))
                   .exit_code == 0;
    };
    if (!gen("corpus_a.json") || !gen("corpus_b.json")) return {false, "generate failed"};
    if (testsup::read_file(path("corpus_a.json")) != testsup::read_file(path("corpus_b.json")))
        return {false, "cmd_generate output differs between runs"};

    auto boot = [&](const char* json, const char* svg) {
        return testsup::run_cli("bootstrap " + path("corpus_a.json") +
                                " --metric h-index --seed 8128 --evaluations 4000" +
                                " --resample 4000 --out-json " + path(json) + " --out-svg " +
                                path(svg))
                   .exit_code == 0;
    };
    if (!boot("boot_a.json", "boot_a.svg") || !boot("boot_b.json", "boot_b.svg"))
        return {false, "bootstrap failed"};
    const bool json_equal =
        testsup::read_file(path("boot_a.json")) == testsup::read_file(path("boot_b.json"));
    const bool svg_equal =
        testsup::read_file(path("boot_a.svg")) == testsup::read_file(path("boot_b.svg"));
    fs::remove_all(dir);
    return {json_equal && svg_equal,
            fmt("generate identical, bootstrap json %s, svg %s", json_equal ? "identical" : "DIFFERS",
                svg_equal ? "identical" : "DIFFERS")};
}

Verdict round_trip() {
    SplitMix64 rng(271828);
    uint64_t failures_json = 0, failures_csv = 0;
    for (int round = 0; round < 100; ++round) {
        auto corpus = testsup::random_corpus(rng, 8);
        if (!(parse_corpus(serialize_corpus(corpus, CorpusFormat::Json), CorpusFormat::Json) ==
              corpus))
            ++failures_json;
        auto via_csv = parse_corpus(serialize_corpus(corpus, CorpusFormat::Csv), CorpusFormat::Csv);
        if (!(via_csv.trees == corpus.trees)) ++failures_csv;
    }

    const bool json_golden =
        serialize_corpus(testsup::fixture_corpus(), CorpusFormat::Json) ==
        testsup::read_file(testsup::fixture_path("corpus20.json"));
    const bool tree_golden =
        render_radial_tree(testsup::fixture_tree()) ==
        testsup::read_file(testsup::fixture_path("golden/ice_rink.svg"));
    auto grid = conditional_heatmap(metrics_table(testsup::fixture_corpus()), MetricName::Depth,
                                    6, 5);
    const bool heatmap_golden =
        render_heatmap(grid) ==
        testsup::read_file(testsup::fixture_path("golden/corpus20_heatmap.svg"));

    return {failures_json == 0 && failures_csv == 0 && json_golden && tree_golden && heatmap_golden,
            fmt("json mismatches %llu, csv mismatches %llu, goldens json/tree/heatmap %d/%d/%d",
                static_cast<unsigned long long>(failures_json),
                static_cast<unsigned long long>(failures_csv), json_golden, tree_golden,
                heatmap_golden)};
}

Verdict galton_watson_mean() {
    std::string detail;
    bool pass = true;
    for (double b : {0.0, 0.2, 0.5}) {
        GeneratorConfig config;
        config.seed = 1000 + static_cast<uint64_t>(b * 10);
        config.n_proposals = 500;
        config.first_level_min = 20;
        config.first_level_max = 20;  // 10,000 cascades
        config.p_neutral = 1.0;
        config.b_neutral = b;
        auto rows = metrics_table(generate_corpus(config));
        double sum = 0;
        for (const CascadeMetrics& m : rows) sum += m.size;
        const double mean = sum / static_cast<double>(rows.size());
        const double want = 1.0 / (1.0 - b);
        const double rel = std::fabs(mean - want) / want;
        pass = pass && rows.size() == 10000 && rel <= 0.10;
        detail += fmt("b=%.1f mean %.4f vs %.4f (%.1f%%)  ", b, mean, want, rel * 100);
    }
    return {pass, detail};
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion(1, "worked example (size 9, width 4, depth 3, h-index 3)", worked_example);
    criterion(2, "dataset arithmetic (63.03% / 32.05% / 4.92%)", dataset_arithmetic);
    criterion(3, "metric oracle equivalence on 1,000 random trees", metric_oracle_equivalence);
    criterion(4, "metric invariants on 10,000 random cascades", metric_invariants);
    criterion(5, "bootstrap null calibration (<= 0.08 over 20 seeds)", bootstrap_calibration);
    criterion(6, "planted-effect recovery along the depth axis", planted_effect);
    criterion(7, "byte-identical reruns of cmd_bootstrap and cmd_generate", cli_determinism);
    criterion(8, "round-trip identity and golden-file stability", round_trip);
    criterion(9, "Galton-Watson mean size vs 1/(1-b)", galton_watson_mean);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/9 criteria passed in %.1f s\n", 9 - failures, secs);
    return failures == 0 ? 0 : 1;
}
