#include "delib/stats.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

#include "delib/errors.hpp"
#include "delib/ingest.hpp"
#include "delib/rng.hpp"

namespace delib {
namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> make_bins(uint32_t cap) {
    std::vector<std::string> bins;
    bins.reserve(cap);
    for (uint32_t v = 1; v < cap; ++v) bins.push_back(std::to_string(v));
    bins.push_back(std::to_string(cap) + "+");
    return bins;
}

uint32_t bin_of(uint32_t value, uint32_t cap) { return std::min(value, cap); }

void check_caps(uint32_t size_cap, uint32_t metric_cap) {
    if (size_cap < 2) fail(ErrorCode::InvalidCap, "size_cap must be >= 2");
    if (metric_cap < 2) fail(ErrorCode::InvalidCap, "metric_cap must be >= 2");
}

// Round to 6 significant digits so JSON output is byte-stable; nlohmann
// then prints the shortest representation of the rounded value.
double sig6(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    double out = v;
    std::from_chars(buf, res.ptr, out);
    return out;
}

} // namespace

const char* to_string(MetricName metric) {
    switch (metric) {
        case MetricName::Width: return "width";
        case MetricName::Depth: return "depth";
        case MetricName::HIndex: return "h_index";
    }
    return "width";
}

MetricName metric_from_string(const std::string& name) {
    if (name == "width") return MetricName::Width;
    if (name == "depth") return MetricName::Depth;
    if (name == "h_index" || name == "h-index") return MetricName::HIndex;
    fail(ErrorCode::InvalidConfig, "unknown metric '" + name + "'");
}

uint32_t metric_value(const CascadeMetrics& row, MetricName metric) {
    switch (metric) {
        case MetricName::Width: return row.width;
        case MetricName::Depth: return row.depth;
        case MetricName::HIndex: return row.h_index;
    }
    return row.width;
}

std::vector<SizeDistribution> size_distribution(const std::vector<CascadeMetrics>& rows) {
    std::vector<SizeDistribution> out;
    for (Alignment a : {Alignment::Neutral, Alignment::Positive, Alignment::Negative}) {
        SizeDistribution dist;
        dist.alignment = a;
        std::map<uint32_t, uint64_t> tally;
        for (const CascadeMetrics& row : rows) {
            if (row.alignment != a) continue;
            ++tally[row.size];
            ++dist.n;
        }
        if (dist.n == 0) continue;
        for (const auto& [size, count] : tally)
            dist.pmf[size] = static_cast<double>(count) / static_cast<double>(dist.n);
        out.push_back(std::move(dist));
    }
    return out;
}

HeatmapGrid conditional_heatmap(const std::vector<CascadeMetrics>& rows, MetricName metric,
                                uint32_t size_cap, uint32_t metric_cap) {
    check_caps(size_cap, metric_cap);
    HeatmapGrid grid;
    grid.metric = metric;
    grid.size_cap = size_cap;
    grid.metric_cap = metric_cap;
    grid.size_bins = make_bins(size_cap);
    grid.metric_bins = make_bins(metric_cap);
    grid.cells.resize(static_cast<size_t>(size_cap) * metric_cap);

    struct Tally {
        uint64_t neutral = 0, positive = 0, negative = 0;
    };
    std::vector<Tally> tallies(grid.cells.size());
    for (const CascadeMetrics& row : rows) {
        uint32_t sb = bin_of(row.size, size_cap);
        uint32_t mb = bin_of(metric_value(row, metric), metric_cap);
        Tally& t = tallies[(mb - 1) * size_cap + (sb - 1)];
        switch (row.alignment) {
            case Alignment::Neutral: ++t.neutral; break;
            case Alignment::Positive: ++t.positive; break;
            case Alignment::Negative: ++t.negative; break;
        }
    }
    for (size_t i = 0; i < tallies.size(); ++i) {
        const Tally& t = tallies[i];
        HeatmapCell& cell = grid.cells[i];
        cell.count = t.neutral + t.positive + t.negative;
        if (cell.count == 0) continue;
        const double total = static_cast<double>(cell.count);
        cell.p_neutral = static_cast<double>(t.neutral) / total;
        cell.p_positive = static_cast<double>(t.positive) / total;
        cell.p_negative = static_cast<double>(t.negative) / total;
    }
    return grid;
}

// ---------------------------------------------------------------------------
// bootstrap

namespace {

struct PolarPool {
    // Cell index (0-based, row-major over metric bins) per surviving row.
    std::vector<uint32_t> positive_cells;
    std::vector<uint32_t> negative_cells;
};

PolarPool build_pool(const std::vector<CascadeMetrics>& rows, MetricName metric,
                     uint32_t size_cap, uint32_t metric_cap) {
    PolarPool pool;
    for (const CascadeMetrics& row : rows) {
        if (row.alignment == Alignment::Neutral || row.size < 2) continue;
        uint32_t sb = bin_of(row.size, size_cap);
        uint32_t mb = bin_of(metric_value(row, metric), metric_cap);
        uint32_t cell = (mb - 1) * size_cap + (sb - 1);
        if (row.alignment == Alignment::Positive)
            pool.positive_cells.push_back(cell);
        else
            pool.negative_cells.push_back(cell);
    }
    if (pool.positive_cells.empty())
        fail(ErrorCode::EmptyPolarity, "no positive comment with at least one reply");
    if (pool.negative_cells.empty())
        fail(ErrorCode::EmptyPolarity, "no negative comment with at least one reply");
    return pool;
}

void check_config(const BootstrapConfig& config) {
    check_caps(config.size_cap, config.metric_cap);
    if (config.evaluations < 1) fail(ErrorCode::InvalidConfig, "evaluations must be >= 1");
    if (config.resample_size < 1) fail(ErrorCode::InvalidConfig, "resample_size must be >= 1");
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        fail(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    if (!(config.min_visit_fraction >= 0.0 && config.min_visit_fraction <= 1.0))
        fail(ErrorCode::InvalidConfig, "min_visit_fraction must lie in [0, 1]");
}

BootstrapResult result_shell(MetricName metric, const BootstrapConfig& config) {
    BootstrapResult r;
    r.metric = metric;
    r.size_cap = config.size_cap;
    r.metric_cap = config.metric_cap;
    r.size_bins = make_bins(config.size_cap);
    r.metric_bins = make_bins(config.metric_cap);
    r.cells.resize(static_cast<size_t>(config.size_cap) * config.metric_cap);
    r.evaluations = config.evaluations;
    r.resample_size = config.resample_size;
    r.alpha = config.alpha;
    r.seed = config.seed;
    r.min_visit_fraction = config.min_visit_fraction;
    return r;
}

// Negative share per cell for one iteration. Positive draws come first;
// both the draw order and the share arithmetic are part of the seeded
// output contract reproduced by serial and parallel entry points alike.
void iteration_shares(const PolarPool& pool, const BootstrapConfig& config, uint64_t iteration,
                      std::vector<uint32_t>& pos_hits, std::vector<uint32_t>& neg_hits,
                      double* shares, size_t n_cells) {
    SplitMix64 rng = stream_at(config.seed, iteration);
    std::fill(pos_hits.begin(), pos_hits.end(), 0u);
    std::fill(neg_hits.begin(), neg_hits.end(), 0u);
    const uint64_t n_pos = pool.positive_cells.size();
    const uint64_t n_neg = pool.negative_cells.size();
    for (uint32_t d = 0; d < config.resample_size; ++d)
        ++pos_hits[pool.positive_cells[rng.next_below(n_pos)]];
    for (uint32_t d = 0; d < config.resample_size; ++d)
        ++neg_hits[pool.negative_cells[rng.next_below(n_neg)]];
    for (size_t c = 0; c < n_cells; ++c) {
        uint32_t total = pos_hits[c] + neg_hits[c];
        shares[c] = total == 0 ? -1.0
                               : static_cast<double>(neg_hits[c]) / static_cast<double>(total);
    }
}

struct CellAccumulator {
    uint32_t visited = 0;
    double share_sum = 0.0;
    uint32_t le_half = 0;  // iterations with share <= 0.5
    uint32_t ge_half = 0;  // iterations with share >= 0.5
};

void accumulate(CellAccumulator& acc, double share) {
    if (share < 0.0) return;
    ++acc.visited;
    acc.share_sum += share;
    if (share <= 0.5) ++acc.le_half;
    if (share >= 0.5) ++acc.ge_half;
}

void finalize(BootstrapResult& result, const std::vector<CellAccumulator>& accs,
              const BootstrapConfig& config) {
    const double min_visits = config.min_visit_fraction * static_cast<double>(config.evaluations);
    for (size_t c = 0; c < accs.size(); ++c) {
        const CellAccumulator& acc = accs[c];
        BootstrapCell& cell = result.cells[c];
        cell.visited = acc.visited;
        if (acc.visited == 0 || static_cast<double>(acc.visited) < min_visits) continue;
        cell.defined = true;
        const double n = static_cast<double>(acc.visited);
        cell.p_negative = acc.share_sum / n;
        double p = 2.0 * std::min(static_cast<double>(acc.le_half) / n,
                                  static_cast<double>(acc.ge_half) / n);
        cell.p_value = std::min(p, 1.0);
        cell.significant = cell.p_value < config.alpha;
    }
}

} // namespace

BootstrapResult bootstrap_polarity_serial(const std::vector<CascadeMetrics>& rows,
                                          MetricName metric, const BootstrapConfig& config) {
    check_config(config);
    PolarPool pool = build_pool(rows, metric, config.size_cap, config.metric_cap);
    BootstrapResult result = result_shell(metric, config);
    const size_t n_cells = result.cells.size();

    std::vector<CellAccumulator> accs(n_cells);
    std::vector<uint32_t> pos_hits(n_cells), neg_hits(n_cells);
    std::vector<double> shares(n_cells);
    for (uint64_t i = 0; i < config.evaluations; ++i) {
        iteration_shares(pool, config, i, pos_hits, neg_hits, shares.data(), n_cells);
        for (size_t c = 0; c < n_cells; ++c) accumulate(accs[c], shares[c]);
    }
    finalize(result, accs, config);
    return result;
}

BootstrapResult bootstrap_polarity(const std::vector<CascadeMetrics>& rows, MetricName metric,
                                   const BootstrapConfig& config) {
    check_config(config);
    PolarPool pool = build_pool(rows, metric, config.size_cap, config.metric_cap);
    BootstrapResult result = result_shell(metric, config);
    const size_t n_cells = result.cells.size();
    const int64_t evaluations = config.evaluations;

    // Every iteration writes its own slice; the reduction below walks the
    // slices in iteration order, which keeps the floating-point sums equal
    // to the serial reference no matter the schedule.
    std::vector<double> shares(static_cast<size_t>(evaluations) * n_cells);

#pragma omp parallel
    {
        std::vector<uint32_t> pos_hits(n_cells), neg_hits(n_cells);
#pragma omp for schedule(static)
        for (int64_t i = 0; i < evaluations; ++i)
            iteration_shares(pool, config, static_cast<uint64_t>(i), pos_hits, neg_hits,
                             shares.data() + static_cast<size_t>(i) * n_cells, n_cells);
    }

    std::vector<CellAccumulator> accs(n_cells);
    for (int64_t i = 0; i < evaluations; ++i) {
        const double* slice = shares.data() + static_cast<size_t>(i) * n_cells;
        for (size_t c = 0; c < n_cells; ++c) accumulate(accs[c], slice[c]);
    }
    finalize(result, accs, config);
    return result;
}

// ---------------------------------------------------------------------------
// JSON export

std::string size_distribution_to_json(const std::vector<SizeDistribution>& dists) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "size_distribution";
    ojson list = ojson::array();
    for (const SizeDistribution& dist : dists) {
        ojson d;
        d["alignment"] = alignment_to_int(dist.alignment);
        d["n"] = dist.n;
        ojson pmf = ojson::array();
        for (const auto& [size, p] : dist.pmf) {
            ojson entry;
            entry["size"] = size;
            entry["p"] = sig6(p);
            pmf.push_back(std::move(entry));
        }
        d["pmf"] = std::move(pmf);
        list.push_back(std::move(d));
    }
    doc["distributions"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::string heatmap_to_json(const HeatmapGrid& grid) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "heatmap";
    doc["metric"] = to_string(grid.metric);
    doc["size_cap"] = grid.size_cap;
    doc["metric_cap"] = grid.metric_cap;
    doc["size_bins"] = grid.size_bins;
    doc["metric_bins"] = grid.metric_bins;
    ojson cells = ojson::array();
    for (uint32_t mb = 1; mb <= grid.metric_cap; ++mb)
        for (uint32_t sb = 1; sb <= grid.size_cap; ++sb) {
            const HeatmapCell& cell = grid.cell(mb, sb);
            ojson c;
            c["metric_bin"] = mb;
            c["size_bin"] = sb;
            c["count"] = cell.count;
            if (cell.count > 0) {
                c["p_neutral"] = sig6(cell.p_neutral);
                c["p_positive"] = sig6(cell.p_positive);
                c["p_negative"] = sig6(cell.p_negative);
            }
            cells.push_back(std::move(c));
        }
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::string bootstrap_to_json(const BootstrapResult& result) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "bootstrap";
    doc["metric"] = to_string(result.metric);
    doc["size_cap"] = result.size_cap;
    doc["metric_cap"] = result.metric_cap;
    doc["size_bins"] = result.size_bins;
    doc["metric_bins"] = result.metric_bins;
    doc["evaluations"] = result.evaluations;
    doc["resample_size"] = result.resample_size;
    doc["alpha"] = sig6(result.alpha);
    doc["seed"] = result.seed;
    doc["min_visit_fraction"] = sig6(result.min_visit_fraction);
    ojson cells = ojson::array();
    for (uint32_t mb = 1; mb <= result.metric_cap; ++mb)
        for (uint32_t sb = 1; sb <= result.size_cap; ++sb) {
            const BootstrapCell& cell = result.cell(mb, sb);
            ojson c;
            c["metric_bin"] = mb;
            c["size_bin"] = sb;
            c["defined"] = cell.defined;
            c["visited"] = cell.visited;
            if (cell.defined) {
                c["p_negative"] = sig6(cell.p_negative);
                c["p_value"] = sig6(cell.p_value);
                c["significant"] = cell.significant;
            }
            cells.push_back(std::move(c));
        }
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

} // namespace delib
