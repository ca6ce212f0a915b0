#include "delib/synth.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include <json.hpp>

#include "delib/errors.hpp"
#include "delib/ingest.hpp"
#include "delib/iso8601.hpp"
#include "delib/rng.hpp"

namespace delib {
namespace {

using ojson = nlohmann::ordered_json;

void validate(const GeneratorConfig& c) {
    if (c.n_proposals < 1) fail(ErrorCode::InvalidConfig, "n_proposals must be >= 1");
    if (c.first_level_min > c.first_level_max)
        fail(ErrorCode::InvalidConfig, "first_level_min must not exceed first_level_max");
    if (c.p_neutral < 0 || c.p_positive < 0 || c.p_negative < 0)
        fail(ErrorCode::InvalidConfig, "alignment probabilities must be non-negative");
    if (std::fabs(c.p_neutral + c.p_positive + c.p_negative - 1.0) > 1e-9)
        fail(ErrorCode::InvalidConfig, "alignment probabilities must sum to 1");
    for (double b : {c.b_neutral, c.b_positive, c.b_negative})
        if (!(b >= 0.0 && b < 1.0))
            fail(ErrorCode::InvalidConfig, "branching parameters must lie in [0, 1)");
    if (c.max_depth < 1) fail(ErrorCode::InvalidConfig, "max_depth must be >= 1");
}

std::string padded_id(char prefix, uint64_t n, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%0*llu", prefix, width, static_cast<unsigned long long>(n));
    return buf;
}

// Geometric offspring count with mean b, sampled as a chain of Bernoulli
// trials (one RNG draw per trial, no libm in the hot path so corpora are
// identical across platforms).
uint32_t offspring(SplitMix64& rng, double b) {
    const double q = b / (1.0 + b);
    uint32_t k = 0;
    while (rng.next_double() < q) ++k;
    return k;
}

double branching_for(const GeneratorConfig& c, Alignment a) {
    switch (a) {
        case Alignment::Neutral: return c.b_neutral;
        case Alignment::Positive: return c.b_positive;
        case Alignment::Negative: return c.b_negative;
    }
    return 0.0;
}

} // namespace

Corpus generate_corpus(const GeneratorConfig& config) {
    validate(config);
    SplitMix64 rng(mix64(config.seed));

    Corpus corpus;
    corpus.source = config.source;
    corpus.ingested_at = config.base_time;
    corpus.trees.reserve(config.n_proposals);

    uint64_t comment_counter = 0;
    const uint32_t fl_span = config.first_level_max - config.first_level_min + 1;

    for (uint32_t p = 0; p < config.n_proposals; ++p) {
        const std::string pid = padded_id('P', p + 1, 6);
        std::vector<Comment> comments;
        const uint32_t n_first = config.first_level_min + static_cast<uint32_t>(rng.next_below(fl_span));

        struct Pending {
            std::string id;
            uint32_t level;
            double b;
        };
        std::vector<Pending> queue;
        for (uint32_t f = 0; f < n_first; ++f) {
            double u = rng.next_double();
            Alignment a = u < config.p_neutral ? Alignment::Neutral
                          : u < config.p_neutral + config.p_positive ? Alignment::Positive
                                                                     : Alignment::Negative;
            Comment c;
            c.id = padded_id('C', ++comment_counter, 8);
            c.proposal_id = pid;
            c.alignment = a;
            c.created_at = config.base_time + static_cast<Timestamp>(comment_counter);
            queue.push_back({c.id, 1, branching_for(config, a)});
            comments.push_back(std::move(c));
        }

        // Breadth-first growth; timestamps follow creation order, so child
        // lists are already in generation order after build_tree sorts.
        for (size_t next = 0; next < queue.size(); ++next) {
            const Pending node = queue[next];
            if (node.level >= config.max_depth) continue;
            const uint32_t kids = offspring(rng, node.b);
            for (uint32_t k = 0; k < kids; ++k) {
                Comment c;
                c.id = padded_id('C', ++comment_counter, 8);
                c.proposal_id = pid;
                c.parent_id = node.id;
                c.created_at = config.base_time + static_cast<Timestamp>(comment_counter);
                queue.push_back({c.id, node.level + 1, node.b});
                comments.push_back(std::move(c));
            }
        }

        corpus.trees.push_back(
            build_tree(pid, "Synthetic proposal " + std::to_string(p + 1), std::move(comments)));
    }
    return corpus;
}

GeneratorConfig generator_config_from_json(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        fail(ErrorCode::SyntaxError, e.what());
    }
    if (!doc.is_object()) fail(ErrorCode::SchemaError, "generator config must be an object");

    GeneratorConfig config;
    auto get = [&](const char* key, auto& slot) {
        auto it = doc.find(key);
        if (it == doc.end()) return;
        try {
            slot = it->get<std::decay_t<decltype(slot)>>();
        } catch (const ojson::exception&) {
            fail(ErrorCode::SchemaError, std::string("bad value for '") + key + "'");
        }
    };
    get("seed", config.seed);
    get("n_proposals", config.n_proposals);
    get("first_level_min", config.first_level_min);
    get("first_level_max", config.first_level_max);
    get("p_neutral", config.p_neutral);
    get("p_positive", config.p_positive);
    get("p_negative", config.p_negative);
    get("b_neutral", config.b_neutral);
    get("b_positive", config.b_positive);
    get("b_negative", config.b_negative);
    get("max_depth", config.max_depth);
    get("source", config.source);
    if (auto it = doc.find("base_time"); it != doc.end())
        config.base_time = it->is_string() ? parse_iso8601(it->get<std::string>())
                                           : it->get<Timestamp>();
    validate(config);
    return config;
}

std::string generator_config_to_json(const GeneratorConfig& c) {
    ojson doc;
    doc["seed"] = c.seed;
    doc["n_proposals"] = c.n_proposals;
    doc["first_level_min"] = c.first_level_min;
    doc["first_level_max"] = c.first_level_max;
    doc["p_neutral"] = c.p_neutral;
    doc["p_positive"] = c.p_positive;
    doc["p_negative"] = c.p_negative;
    doc["b_neutral"] = c.b_neutral;
    doc["b_positive"] = c.b_positive;
    doc["b_negative"] = c.b_negative;
    doc["max_depth"] = c.max_depth;
    doc["source"] = c.source;
    doc["base_time"] = format_iso8601(c.base_time);
    return doc.dump(2) + "\n";
}

} // namespace delib
