#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "delib/errors.hpp"

namespace delib {

// Stance of a first-level comment toward its proposal. Wire format is the
// integer 0 / +1 / -1; replies to comments never carry one.
enum class Alignment : int {
    Neutral = 0,
    Positive = 1,
    Negative = -1,
};

inline int alignment_to_int(Alignment a) { return static_cast<int>(a); }

Alignment alignment_from_int(int value);  // throws SchemaError outside {-1, 0, 1}
const char* alignment_name(Alignment a);  // "neutral" / "positive" / "negative"

// Seconds since the Unix epoch, always UTC.
using Timestamp = int64_t;

struct Comment {
    std::string id;
    std::string proposal_id;
    std::optional<std::string> parent_id;  // absent = direct reply to the proposal
    std::optional<Alignment> alignment;    // present exactly when parent_id is absent
    Timestamp created_at = 0;
    std::optional<std::string> body;       // carried through, never analyzed

    bool is_first_level() const { return !parent_id.has_value(); }
    bool operator==(const Comment&) const = default;
};

// A proposal plus its reply tree. Construct through build_tree; all members
// are immutable afterwards and safe to share across threads.
struct DiscussionTree {
    std::string proposal_id;
    std::string title;
    std::vector<Comment> comments;  // sorted by (created_at, id)

    // node id -> ordered child comment ids; the proposal id keys the root.
    std::unordered_map<std::string, std::vector<std::string>> child_index;

    const Comment& comment(const std::string& id) const;
    const std::vector<std::string>& children(const std::string& id) const;
    const std::vector<std::string>& first_level_ids() const { return children(proposal_id); }

    bool operator==(const DiscussionTree& other) const {
        return proposal_id == other.proposal_id && title == other.title &&
               comments == other.comments;
    }

private:
    friend DiscussionTree build_tree(std::string, std::string, std::vector<Comment>);
    std::unordered_map<std::string, size_t> index_of_;
};

// Subtree hanging off one first-level comment; the unit of analysis.
// level_counts[k] is the number of comments at level k+1, with the cascade
// root at level 1, so level_counts.front() == 1 always.
struct Cascade {
    std::string root_comment_id;
    Alignment alignment = Alignment::Neutral;
    std::vector<uint32_t> level_counts;
    std::vector<std::string> node_ids;  // breadth-first from the cascade root

    uint32_t size() const { return static_cast<uint32_t>(node_ids.size()); }
};

struct Corpus {
    std::vector<DiscussionTree> trees;  // sorted by proposal_id
    Timestamp ingested_at = 0;
    std::string source;

    // First-level comments whose missing alignment was defaulted to Neutral
    // by a lenient parse. Ingest bookkeeping only; not serialized.
    uint64_t defaulted_alignments = 0;

    bool operator==(const Corpus& other) const {
        return trees == other.trees && ingested_at == other.ingested_at &&
               source == other.source;
    }
};

// Validates the comment set and assembles the reply tree. Child lists (and
// the comments vector) come out sorted by created_at, ties by id, so the
// result is independent of input order.
//
// Throws: DuplicateId, OrphanComment, CycleDetected, MissingAlignment,
// UnexpectedAlignment; SchemaError when a comment belongs to a different
// proposal.
DiscussionTree build_tree(std::string proposal_id, std::string title,
                          std::vector<Comment> comments);

// One cascade per first-level comment, in root child order. Never fails on
// a tree produced by build_tree.
std::vector<Cascade> extract_cascades(const DiscussionTree& tree);

} // namespace delib
