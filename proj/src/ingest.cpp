#include "delib/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "delib/errors.hpp"
#include "delib/iso8601.hpp"

namespace delib {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kCsvHeader = "id,proposal_id,proposal_title,parent_id,alignment,created_at,body";

// ---------------------------------------------------------------------------
// shared record handling

Comment record_to_comment(const RawRecord& raw, const ParseOptions& opts,
                          uint64_t& defaulted) {
    Comment c;
    c.id = raw.id;
    c.proposal_id = raw.proposal_id;
    c.parent_id = raw.parent_id;
    if (raw.alignment) c.alignment = alignment_from_int(*raw.alignment);
    if (!c.parent_id && !c.alignment && opts.lenient_alignment) {
        c.alignment = Alignment::Neutral;
        ++defaulted;
    }
    try {
        c.created_at = parse_iso8601(raw.created_at);
    } catch (const Error& e) {
        fail(ErrorCode::SchemaError, "record '" + raw.id + "': " + e.message());
    }
    c.body = raw.body;
    return c;
}

struct ProposalDraft {
    std::string title;
    std::vector<Comment> comments;
};

Corpus assemble(std::map<std::string, ProposalDraft>&& drafts, Timestamp ingested_at,
                std::string source, uint64_t defaulted) {
    std::unordered_set<std::string> comment_ids;
    Corpus corpus;
    corpus.ingested_at = ingested_at;
    corpus.source = std::move(source);
    corpus.defaulted_alignments = defaulted;
    corpus.trees.reserve(drafts.size());
    for (auto& [pid, draft] : drafts) {
        for (const Comment& c : draft.comments) {
            if (!comment_ids.insert(c.id).second)
                fail(ErrorCode::DuplicateId,
                     "comment id '" + c.id + "' appears in more than one record");
        }
        try {
            corpus.trees.push_back(build_tree(pid, std::move(draft.title), std::move(draft.comments)));
        } catch (const Error& e) {
            throw Error(e.code(), "proposal '" + pid + "': " + e.message());
        }
    }
    return corpus;  // std::map iteration keeps trees sorted by proposal_id
}

// ---------------------------------------------------------------------------
// JSON

const ojson& require_key(const ojson& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorCode::SchemaError, ctx + ": missing field '" + key + "'");
    return *it;
}

std::string require_string(const ojson& obj, const char* key, const std::string& ctx) {
    const ojson& v = require_key(obj, key, ctx);
    if (!v.is_string()) fail(ErrorCode::SchemaError, ctx + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

std::optional<std::string> nullable_string(const ojson& obj, const char* key,
                                           const std::string& ctx) {
    const ojson& v = require_key(obj, key, ctx);
    if (v.is_null()) return std::nullopt;
    if (!v.is_string())
        fail(ErrorCode::SchemaError, ctx + ": field '" + key + "' must be a string or null");
    return v.get<std::string>();
}

Corpus parse_json(const std::string& bytes, const ParseOptions& opts) {
    ojson doc;
    try {
        doc = ojson::parse(bytes);
    } catch (const ojson::parse_error& e) {
        fail(ErrorCode::SyntaxError, e.what());
    }
    if (!doc.is_object()) fail(ErrorCode::SchemaError, "top level must be an object");
    const ojson& version = require_key(doc, "schema_version", "corpus");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
        fail(ErrorCode::SchemaError,
             "unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");

    Timestamp ingested_at = 0;
    std::string source;
    if (auto it = doc.find("source"); it != doc.end() && !it->is_null())
        source = it->get<std::string>();
    if (auto it = doc.find("ingested_at"); it != doc.end() && !it->is_null())
        ingested_at = parse_iso8601(it->get<std::string>());

    const ojson& proposals = require_key(doc, "proposals", "corpus");
    if (!proposals.is_array()) fail(ErrorCode::SchemaError, "'proposals' must be an array");

    uint64_t defaulted = 0;
    std::map<std::string, ProposalDraft> drafts;
    for (const ojson& p : proposals) {
        if (!p.is_object()) fail(ErrorCode::SchemaError, "proposal entries must be objects");
        std::string pid = require_string(p, "id", "proposal");
        if (pid.empty()) fail(ErrorCode::SchemaError, "proposal id must be non-empty");
        std::string ctx = "proposal '" + pid + "'";
        if (drafts.count(pid)) fail(ErrorCode::DuplicateId, ctx + " appears twice");
        ProposalDraft draft;
        draft.title = require_string(p, "title", ctx);
        const ojson& comments = require_key(p, "comments", ctx);
        if (!comments.is_array()) fail(ErrorCode::SchemaError, ctx + ": 'comments' must be an array");
        for (const ojson& r : comments) {
            if (!r.is_object()) fail(ErrorCode::SchemaError, ctx + ": records must be objects");
            RawRecord raw;
            raw.id = require_string(r, "id", ctx + " record");
            std::string rctx = "record '" + raw.id + "'";
            raw.proposal_id = require_string(r, "proposal_id", rctx);
            if (raw.proposal_id != pid)
                fail(ErrorCode::SchemaError,
                     rctx + ": proposal_id '" + raw.proposal_id + "' does not match " + ctx);
            raw.parent_id = nullable_string(r, "parent_id", rctx);
            const ojson& alignment = require_key(r, "alignment", rctx);
            if (!alignment.is_null()) {
                if (!alignment.is_number_integer())
                    fail(ErrorCode::SchemaError, rctx + ": field 'alignment' must be an integer or null");
                int a = alignment.get<int>();
                if (a < -1 || a > 1)
                    fail(ErrorCode::SchemaError,
                         rctx + ": field 'alignment' must be -1, 0 or 1, got " + std::to_string(a));
                raw.alignment = a;
            }
            raw.created_at = require_string(r, "created_at", rctx);
            raw.body = nullable_string(r, "body", rctx);
            draft.comments.push_back(record_to_comment(raw, opts, defaulted));
        }
        drafts.emplace(std::move(pid), std::move(draft));
    }
    return assemble(std::move(drafts), ingested_at, std::move(source), defaulted);
}

std::string serialize_json(const Corpus& corpus) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["source"] = corpus.source;
    doc["ingested_at"] = format_iso8601(corpus.ingested_at);
    ojson proposals = ojson::array();

    std::vector<const DiscussionTree*> trees;
    trees.reserve(corpus.trees.size());
    for (const DiscussionTree& t : corpus.trees) trees.push_back(&t);
    std::sort(trees.begin(), trees.end(),
              [](const DiscussionTree* a, const DiscussionTree* b) {
                  return a->proposal_id < b->proposal_id;
              });

    for (const DiscussionTree* tree : trees) {
        ojson p;
        p["id"] = tree->proposal_id;
        p["title"] = tree->title;
        ojson records = ojson::array();
        for (const Comment& c : tree->comments) {  // already sorted (created_at, id)
            ojson r;
            r["id"] = c.id;
            r["proposal_id"] = c.proposal_id;
            r["parent_id"] = c.parent_id ? ojson(*c.parent_id) : ojson(nullptr);
            r["alignment"] = c.alignment ? ojson(alignment_to_int(*c.alignment)) : ojson(nullptr);
            r["created_at"] = format_iso8601(c.created_at);
            r["body"] = c.body ? ojson(*c.body) : ojson(nullptr);
            records.push_back(std::move(r));
        }
        p["comments"] = std::move(records);
        proposals.push_back(std::move(p));
    }
    doc["proposals"] = std::move(proposals);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV

// Splits CSV content into records of fields, RFC 4180 quoting rules,
// tracking line numbers for error messages.
std::vector<std::vector<std::string>> csv_records(const std::string& bytes) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    size_t line = 1;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(fields));
        fields.clear();
    };

    for (size_t i = 0; i < bytes.size(); ++i) {
        char ch = bytes[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                if (field_started && !field.empty())
                    fail(ErrorCode::SyntaxError,
                         "line " + std::to_string(line) + ": quote inside unquoted field");
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;  // swallowed; LF terminates the record
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field += ch;
                field_started = true;
        }
    }
    if (in_quotes) fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": unterminated quote");
    if (field_started || !fields.empty()) end_record();
    return records;
}

Corpus parse_csv(const std::string& bytes, const ParseOptions& opts) {
    auto records = csv_records(bytes);
    if (records.empty()) fail(ErrorCode::SchemaError, "missing CSV header row");

    {
        std::string header;
        for (size_t i = 0; i < records[0].size(); ++i) {
            if (i) header += ',';
            header += records[0][i];
        }
        if (header != kCsvHeader)
            fail(ErrorCode::SchemaError, "bad CSV header, expected '" + std::string(kCsvHeader) + "'");
    }

    uint64_t defaulted = 0;
    std::map<std::string, ProposalDraft> drafts;
    std::unordered_map<std::string, std::string> titles;

    for (size_t n = 1; n < records.size(); ++n) {
        const auto& row = records[n];
        std::string where = "row " + std::to_string(n + 1);
        if (row.size() != 7)
            fail(ErrorCode::SyntaxError, where + ": expected 7 fields, got " + std::to_string(row.size()));

        const std::string& pid = row[1];
        if (pid.empty()) fail(ErrorCode::SchemaError, where + ": proposal_id must be non-empty");
        auto [it, fresh] = titles.emplace(pid, row[2]);
        if (!fresh && it->second != row[2])
            fail(ErrorCode::SchemaError, "proposal '" + pid + "' has conflicting titles");
        ProposalDraft& draft = drafts[pid];
        if (fresh) draft.title = row[2];

        if (row[0].empty()) {
            // Title-only row: declares a proposal with no comment attached.
            if (!row[3].empty() || !row[4].empty() || !row[5].empty() || !row[6].empty())
                fail(ErrorCode::SchemaError, where + ": proposal row must leave comment fields empty");
            continue;
        }

        RawRecord raw;
        raw.id = row[0];
        raw.proposal_id = pid;
        if (!row[3].empty()) raw.parent_id = row[3];
        if (!row[4].empty()) {
            int value = 0;
            auto [ptr, ec] = std::from_chars(row[4].data(), row[4].data() + row[4].size(), value);
            if (ec != std::errc() || ptr != row[4].data() + row[4].size())
                fail(ErrorCode::SchemaError,
                     "record '" + raw.id + "': field 'alignment' must be an integer, got '" + row[4] + "'");
            if (value < -1 || value > 1)
                fail(ErrorCode::SchemaError,
                     "record '" + raw.id + "': field 'alignment' must be -1, 0 or 1, got " + row[4]);
            raw.alignment = value;
        }
        raw.created_at = row[5];
        if (!row[6].empty()) raw.body = row[6];
        draft.comments.push_back(record_to_comment(raw, opts, defaulted));
    }
    return assemble(std::move(drafts), 0, "", defaulted);
}

std::string serialize_csv(const Corpus& corpus) {
    std::vector<const DiscussionTree*> trees;
    trees.reserve(corpus.trees.size());
    for (const DiscussionTree& t : corpus.trees) trees.push_back(&t);
    std::sort(trees.begin(), trees.end(),
              [](const DiscussionTree* a, const DiscussionTree* b) {
                  return a->proposal_id < b->proposal_id;
              });

    std::string out = std::string(kCsvHeader) + "\n";
    for (const DiscussionTree* tree : trees) {
        if (tree->comments.empty()) {
            out += "," + csv_escape(tree->proposal_id) + "," + csv_escape(tree->title) + ",,,,\n";
            continue;
        }
        for (const Comment& c : tree->comments) {
            out += csv_escape(c.id);
            out += ',';
            out += csv_escape(c.proposal_id);
            out += ',';
            out += csv_escape(tree->title);
            out += ',';
            out += c.parent_id ? csv_escape(*c.parent_id) : "";
            out += ',';
            out += c.alignment ? std::to_string(alignment_to_int(*c.alignment)) : "";
            out += ',';
            out += format_iso8601(c.created_at);
            out += ',';
            out += c.body ? csv_escape(*c.body) : "";
            out += '\n';
        }
    }
    return out;
}

double round2_half_up(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }

std::string format_pct(const std::optional<double>& pct) {
    if (!pct) return "-";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), *pct, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr) + "%";
}

} // namespace

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

Corpus parse_corpus(const std::string& bytes, CorpusFormat format, const ParseOptions& opts) {
    return format == CorpusFormat::Json ? parse_json(bytes, opts) : parse_csv(bytes, opts);
}

std::string serialize_corpus(const Corpus& corpus, CorpusFormat format) {
    return format == CorpusFormat::Json ? serialize_json(corpus) : serialize_csv(corpus);
}

CorpusSummary summarize_corpus(const Corpus& corpus) {
    CorpusSummary s;
    s.source = corpus.source;
    s.proposals = corpus.trees.size();
    s.defaulted_alignments = corpus.defaulted_alignments;
    for (const DiscussionTree& tree : corpus.trees) {
        s.comments += tree.comments.size();
        for (const Comment& c : tree.comments) {
            if (!c.is_first_level()) {
                ++s.replies;
                continue;
            }
            ++s.first_level;
            switch (*c.alignment) {
                case Alignment::Neutral: ++s.neutral.count; break;
                case Alignment::Positive: ++s.positive.count; break;
                case Alignment::Negative: ++s.negative.count; break;
            }
        }
    }
    if (s.first_level > 0) {
        auto pct = [&](uint64_t count) {
            return round2_half_up(100.0 * static_cast<double>(count) /
                                  static_cast<double>(s.first_level));
        };
        s.neutral.pct = pct(s.neutral.count);
        s.positive.pct = pct(s.positive.count);
        s.negative.pct = pct(s.negative.count);
    }
    return s;
}

std::string summary_to_json(const CorpusSummary& s) {
    ojson doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "corpus_summary";
    doc["source"] = s.source;
    doc["proposals"] = s.proposals;
    doc["comments"] = s.comments;
    doc["first_level"] = s.first_level;
    doc["replies"] = s.replies;
    doc["defaulted_alignments"] = s.defaulted_alignments;
    ojson alignments;
    auto tally = [](const AlignmentTally& t) {
        ojson o;
        o["count"] = t.count;
        if (t.pct) o["pct"] = *t.pct;
        return o;
    };
    alignments["neutral"] = tally(s.neutral);
    alignments["positive"] = tally(s.positive);
    alignments["negative"] = tally(s.negative);
    doc["alignments"] = std::move(alignments);
    return doc.dump(2) + "\n";
}

std::string summary_to_text(const CorpusSummary& s) {
    std::ostringstream out;
    auto line = [&](const char* label, uint64_t value) {
        out << label << value << "\n";
    };
    if (!s.source.empty()) out << "source:        " << s.source << "\n";
    line("proposals:     ", s.proposals);
    line("comments:      ", s.comments);
    line("  first level: ", s.first_level);
    line("  replies:     ", s.replies);
    if (s.defaulted_alignments > 0)
        line("  defaulted to neutral: ", s.defaulted_alignments);
    out << "first-level alignment:\n";
    auto row = [&](const char* label, const AlignmentTally& t) {
        out << "  " << label << t.count << "  (" << format_pct(t.pct) << ")\n";
    };
    row("neutral:     ", s.neutral);
    row("positive:    ", s.positive);
    row("negative:    ", s.negative);
    return out.str();
}

} // namespace delib
