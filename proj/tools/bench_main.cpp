// Compares the OpenMP kernels against their serial reference
// implementations on a synthetic corpus and verifies both give identical
// results while at it.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "delib/metrics.hpp"
#include "delib/stats.hpp"
#include "delib/synth.hpp"

using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int main(int argc, char** argv) {
    uint32_t proposals = 4000;
    uint32_t evaluations = 2000;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--proposals") proposals = static_cast<uint32_t>(std::stoul(argv[i + 1]));
        else if (flag == "--evaluations") evaluations = static_cast<uint32_t>(std::stoul(argv[i + 1]));
    }

    delib::GeneratorConfig gen;
    gen.seed = 7;
    gen.n_proposals = proposals;
    gen.first_level_min = 4;
    gen.first_level_max = 12;
    gen.p_neutral = 0.2;
    gen.p_positive = 0.4;
    gen.p_negative = 0.4;
    gen.b_neutral = 0.3;
    gen.b_positive = 0.5;
    gen.b_negative = 0.5;

    auto t0 = Clock::now();
    delib::Corpus corpus = delib::generate_corpus(gen);
    std::printf("corpus: %zu proposals, generated in %.1f ms\n", corpus.trees.size(),
                ms_since(t0));
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif

    t0 = Clock::now();
    auto rows_serial = delib::metrics_table_serial(corpus);
    const double metrics_serial_ms = ms_since(t0);
    t0 = Clock::now();
    auto rows_parallel = delib::metrics_table(corpus);
    const double metrics_parallel_ms = ms_since(t0);
    std::printf("metrics_table   %8zu rows   serial %8.1f ms   parallel %8.1f ms   x%.2f   %s\n",
                rows_parallel.size(), metrics_serial_ms, metrics_parallel_ms,
                metrics_serial_ms / metrics_parallel_ms,
                rows_serial == rows_parallel ? "identical" : "MISMATCH");

    delib::BootstrapConfig config;
    config.seed = 11;
    config.evaluations = evaluations;
    config.resample_size = 10000;
    t0 = Clock::now();
    auto boot_serial = delib::bootstrap_polarity_serial(rows_parallel, delib::MetricName::Depth, config);
    const double boot_serial_ms = ms_since(t0);
    t0 = Clock::now();
    auto boot_parallel = delib::bootstrap_polarity(rows_parallel, delib::MetricName::Depth, config);
    const double boot_parallel_ms = ms_since(t0);

    bool equal = boot_serial.cells.size() == boot_parallel.cells.size();
    for (size_t i = 0; equal && i < boot_serial.cells.size(); ++i) {
        const auto& a = boot_serial.cells[i];
        const auto& b = boot_parallel.cells[i];
        equal = a.defined == b.defined && a.visited == b.visited &&
                a.p_negative == b.p_negative && a.p_value == b.p_value &&
                a.significant == b.significant;
    }
    std::printf("bootstrap       %8u iters  serial %8.1f ms   parallel %8.1f ms   x%.2f   %s\n",
                evaluations, boot_serial_ms, boot_parallel_ms, boot_serial_ms / boot_parallel_ms,
                equal ? "identical" : "MISMATCH");
    return equal && rows_serial == rows_parallel ? 0 : 1;
}
