#pragma once
#include <optional>
#include <string>

#include "delib/thread_model.hpp"

namespace delib {

// Version stamp of the JSON corpus schema and of every JSON artifact this
// project emits.
inline constexpr int kSchemaVersion = 1;

enum class CorpusFormat { Json, Csv };

// One comment as it sits on the wire, before any validation.
struct RawRecord {
    std::string id;
    std::string proposal_id;
    std::optional<std::string> parent_id;
    std::optional<int> alignment;  // -1 / 0 / 1 when present
    std::string created_at;        // ISO-8601 with zone designator
    std::optional<std::string> body;
};

struct ParseOptions {
    // When set, first-level records without an alignment get Neutral (the
    // platform default) instead of failing; the count ends up in the corpus
    // summary. Strict mode rejects them with MissingAlignment.
    bool lenient_alignment = false;
};

struct AlignmentTally {
    uint64_t count = 0;
    std::optional<double> pct;  // share of first-level comments, 2 decimals, half-up
};

struct CorpusSummary {
    std::string source;
    uint64_t proposals = 0;
    uint64_t comments = 0;
    uint64_t first_level = 0;
    uint64_t replies = 0;
    uint64_t defaulted_alignments = 0;
    AlignmentTally neutral, positive, negative;
};

// Parses a whole corpus document. Every tree passes build_tree; tree errors
// come back annotated with the offending proposal id. Throws SyntaxError on
// malformed input, SchemaError on missing/invalid fields.
Corpus parse_corpus(const std::string& bytes, CorpusFormat format, const ParseOptions& opts = {});

// Canonical output: fixed key order, records sorted by
// (proposal_id, created_at, id), UTF-8, LF line endings. Byte-stable across
// runs and platforms.
std::string serialize_corpus(const Corpus& corpus, CorpusFormat format);

CorpusSummary summarize_corpus(const Corpus& corpus);

std::string summary_to_json(const CorpusSummary& summary);
std::string summary_to_text(const CorpusSummary& summary);

// RFC 4180 field quoting, shared by every CSV writer in the project.
std::string csv_escape(const std::string& field);

} // namespace delib
