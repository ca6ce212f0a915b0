#pragma once
#include <map>
#include <string>
#include <vector>

#include "delib/metrics.hpp"

namespace delib {

// Default seed for every randomized command; a fixed constant, never the
// wall clock (reproducibility is the point of the artifact).
inline constexpr uint64_t kDefaultSeed = 20160201;

enum class MetricName { Width, Depth, HIndex };

const char* to_string(MetricName metric);                 // "width" / "depth" / "h_index"
MetricName metric_from_string(const std::string& name);   // accepts "h-index" and "h_index"
uint32_t metric_value(const CascadeMetrics& row, MetricName metric);

// Empirical cascade-size distribution of one alignment class.
struct SizeDistribution {
    Alignment alignment = Alignment::Neutral;
    std::map<uint32_t, double> pmf;  // size -> probability
    uint64_t n = 0;
};

// One distribution per alignment present in rows, in order neutral,
// positive, negative; absent alignments are omitted.
std::vector<SizeDistribution> size_distribution(const std::vector<CascadeMetrics>& rows);

// ---------------------------------------------------------------------------
// Conditional alignment probabilities on a (metric value x cascade size) grid.
// Bins are 1..cap-1 verbatim; the final bin aggregates every value >= cap.

struct HeatmapCell {
    uint64_t count = 0;  // rows landing in the cell
    // Conditional probabilities, only meaningful when count > 0.
    double p_neutral = 0.0;
    double p_positive = 0.0;
    double p_negative = 0.0;
};

struct HeatmapGrid {
    MetricName metric = MetricName::Width;
    uint32_t size_cap = 0;
    uint32_t metric_cap = 0;
    std::vector<std::string> size_bins;    // "1", "2", ..., "<cap>+"
    std::vector<std::string> metric_bins;
    std::vector<HeatmapCell> cells;        // row-major over metric bins

    const HeatmapCell& cell(uint32_t metric_bin, uint32_t size_bin) const {
        return cells[(metric_bin - 1) * size_cap + (size_bin - 1)];
    }
};

// P(alignment | size bin, metric bin) by exhaustive count. Caps must be >= 2
// (InvalidCap otherwise).
HeatmapGrid conditional_heatmap(const std::vector<CascadeMetrics>& rows, MetricName metric,
                                uint32_t size_cap, uint32_t metric_cap);

// ---------------------------------------------------------------------------
// Bootstrap polarity test. Rows are filtered to positive/negative alignment
// with size >= 2; each iteration resamples resample_size rows per polarity
// with replacement and measures, per cell, the share of negative rows among
// the resampled rows landing there. The reported P(negative) is the mean
// share; the p-value is the two-sided bootstrap tail against 0.5.

struct BootstrapConfig {
    uint64_t seed = kDefaultSeed;
    uint32_t evaluations = 10000;
    uint32_t resample_size = 10000;  // per polarity, per iteration
    double alpha = 0.05;
    uint32_t size_cap = 6;
    uint32_t metric_cap = 5;
    // Cells hit in fewer than this fraction of iterations come back undefined.
    double min_visit_fraction = 0.5;
};

struct BootstrapCell {
    bool defined = false;
    uint32_t visited = 0;      // iterations in which the cell received any row
    double p_negative = 0.0;   // mean per-iteration negative share
    double p_value = 1.0;
    bool significant = false;  // p_value < alpha
};

struct BootstrapResult {
    MetricName metric = MetricName::Width;
    uint32_t size_cap = 0;
    uint32_t metric_cap = 0;
    std::vector<std::string> size_bins;
    std::vector<std::string> metric_bins;
    std::vector<BootstrapCell> cells;  // row-major over metric bins
    uint32_t evaluations = 0;
    uint32_t resample_size = 0;
    double alpha = 0.0;
    uint64_t seed = 0;
    double min_visit_fraction = 0.0;

    const BootstrapCell& cell(uint32_t metric_bin, uint32_t size_bin) const {
        return cells[(metric_bin - 1) * size_cap + (size_bin - 1)];
    }
};

// Iterations derive independent RNG streams from (seed, index), so the
// OpenMP entry point and the serial reference return bit-identical results
// under any schedule or thread count. Throws EmptyPolarity when either
// polarity has no row with size >= 2, InvalidConfig / InvalidCap on bad
// parameters.
BootstrapResult bootstrap_polarity(const std::vector<CascadeMetrics>& rows, MetricName metric,
                                   const BootstrapConfig& config);
BootstrapResult bootstrap_polarity_serial(const std::vector<CascadeMetrics>& rows,
                                          MetricName metric, const BootstrapConfig& config);

// Canonical JSON (fixed key order, floats at 6 significant digits).
std::string size_distribution_to_json(const std::vector<SizeDistribution>& dists);
std::string heatmap_to_json(const HeatmapGrid& grid);
std::string bootstrap_to_json(const BootstrapResult& result);

} // namespace delib
