#pragma once
#include <string>

#include "delib/thread_model.hpp"

namespace delib {

// Seeded corpus generator. Cascades grow by a Galton-Watson process: each
// node spawns k children with the geometric law
//     P(k) = (1/(1+b)) * (b/(1+b))^k,   b in [0, 1),
// so the expected offspring per node is exactly b and the expected cascade
// size is 1/(1-b). One branching parameter per alignment class lets tests
// plant a structural effect (or a null) for the bootstrap pipeline.
struct GeneratorConfig {
    uint64_t seed = 1;
    uint32_t n_proposals = 1;

    // First-level comments per proposal, uniform in [min, max].
    uint32_t first_level_min = 1;
    uint32_t first_level_max = 1;

    // Must sum to 1 (within 1e-9).
    double p_neutral = 1.0;
    double p_positive = 0.0;
    double p_negative = 0.0;

    // Branching parameter per alignment of the cascade root, each in [0, 1).
    double b_neutral = 0.0;
    double b_positive = 0.0;
    double b_negative = 0.0;

    uint32_t max_depth = 50;  // hard cap on cascade levels

    std::string source = "synthetic";
    Timestamp base_time = 1454284800;  // 2016-02-01T00:00:00Z
};

// Throws InvalidConfig. Fixed seed means an identical corpus, byte for byte
// once serialized.
Corpus generate_corpus(const GeneratorConfig& config);

GeneratorConfig generator_config_from_json(const std::string& text);
std::string generator_config_to_json(const GeneratorConfig& config);

} // namespace delib
