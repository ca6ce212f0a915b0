#include "delib/thread_model.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace delib {

Alignment alignment_from_int(int value) {
    switch (value) {
        case 0: return Alignment::Neutral;
        case 1: return Alignment::Positive;
        case -1: return Alignment::Negative;
        default:
            fail(ErrorCode::SchemaError,
                 "alignment must be -1, 0 or 1, got " + std::to_string(value));
    }
}

const char* alignment_name(Alignment a) {
    switch (a) {
        case Alignment::Neutral: return "neutral";
        case Alignment::Positive: return "positive";
        case Alignment::Negative: return "negative";
    }
    return "neutral";
}

const Comment& DiscussionTree::comment(const std::string& id) const {
    auto it = index_of_.find(id);
    if (it == index_of_.end()) fail(ErrorCode::NotFound, "no comment with id '" + id + "'");
    return comments[it->second];
}

const std::vector<std::string>& DiscussionTree::children(const std::string& id) const {
    static const std::vector<std::string> kEmpty;
    auto it = child_index.find(id);
    return it == child_index.end() ? kEmpty : it->second;
}

DiscussionTree build_tree(std::string proposal_id, std::string title,
                          std::vector<Comment> comments) {
    DiscussionTree tree;
    tree.proposal_id = std::move(proposal_id);
    tree.title = std::move(title);

    std::sort(comments.begin(), comments.end(), [](const Comment& a, const Comment& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.id < b.id;
    });

    std::unordered_set<std::string> ids;
    ids.reserve(comments.size());
    for (const Comment& c : comments) {
        if (c.proposal_id != tree.proposal_id)
            fail(ErrorCode::SchemaError, "comment '" + c.id + "' belongs to proposal '" +
                                             c.proposal_id + "', expected '" + tree.proposal_id + "'");
        if (c.id == tree.proposal_id)
            fail(ErrorCode::DuplicateId, "comment id '" + c.id + "' collides with the proposal id");
        if (!ids.insert(c.id).second)
            fail(ErrorCode::DuplicateId, "comment id '" + c.id + "' appears twice");
        if (c.parent_id && *c.parent_id == c.id)
            fail(ErrorCode::CycleDetected, "comment '" + c.id + "' is its own parent");
        if (c.is_first_level() && !c.alignment)
            fail(ErrorCode::MissingAlignment, "first-level comment '" + c.id + "' has no alignment");
        if (!c.is_first_level() && c.alignment)
            fail(ErrorCode::UnexpectedAlignment, "reply '" + c.id + "' carries an alignment");
    }

    for (const Comment& c : comments) {
        const std::string& parent = c.parent_id ? *c.parent_id : tree.proposal_id;
        if (c.parent_id && !ids.count(parent))
            fail(ErrorCode::OrphanComment,
                 "comment '" + c.id + "' replies to missing comment '" + parent + "'");
        tree.child_index[parent].push_back(c.id);  // comments already sorted
    }

    tree.comments = std::move(comments);
    tree.index_of_.reserve(tree.comments.size());
    for (size_t i = 0; i < tree.comments.size(); ++i) tree.index_of_[tree.comments[i].id] = i;

    // Every comment must be reachable from the proposal root; anything left
    // over sits on a parent cycle detached from the root.
    size_t reached = 0;
    std::deque<const std::string*> queue;
    queue.push_back(&tree.proposal_id);
    while (!queue.empty()) {
        const std::string* node = queue.front();
        queue.pop_front();
        for (const std::string& child : tree.children(*node)) {
            ++reached;
            queue.push_back(&child);
        }
    }
    if (reached != tree.comments.size()) {
        for (const Comment& c : tree.comments) {
            // Walk the parent chain of an arbitrary unreached comment to name one cycle member.
            std::unordered_set<std::string> seen;
            const Comment* cur = &c;
            while (cur->parent_id) {
                if (!seen.insert(cur->id).second)
                    fail(ErrorCode::CycleDetected,
                         "comment '" + cur->id + "' sits on a reply cycle");
                cur = &tree.comment(*cur->parent_id);
            }
        }
        fail(ErrorCode::CycleDetected, "reply graph is not a tree");
    }
    return tree;
}

std::vector<Cascade> extract_cascades(const DiscussionTree& tree) {
    std::vector<Cascade> cascades;
    cascades.reserve(tree.first_level_ids().size());
    for (const std::string& root_id : tree.first_level_ids()) {
        Cascade cascade;
        cascade.root_comment_id = root_id;
        cascade.alignment = *tree.comment(root_id).alignment;

        std::vector<const std::string*> level{&root_id};
        while (!level.empty()) {
            cascade.level_counts.push_back(static_cast<uint32_t>(level.size()));
            std::vector<const std::string*> next;
            for (const std::string* id : level) {
                cascade.node_ids.push_back(*id);
                for (const std::string& child : tree.children(*id)) next.push_back(&child);
            }
            level = std::move(next);
        }
        cascades.push_back(std::move(cascade));
    }
    return cascades;
}

} // namespace delib
