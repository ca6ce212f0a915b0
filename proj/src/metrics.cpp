#include "delib/metrics.hpp"

#include <algorithm>

#include "delib/ingest.hpp"

namespace delib {

CascadeMetrics compute_metrics(const Cascade& cascade) {
    CascadeMetrics m;
    m.root_comment_id = cascade.root_comment_id;
    m.alignment = cascade.alignment;
    m.depth = static_cast<uint32_t>(cascade.level_counts.size());
    for (uint32_t level = 1; level <= m.depth; ++level) {
        uint32_t count = cascade.level_counts[level - 1];
        m.size += count;
        m.width = std::max(m.width, count);
        if (count >= level) m.h_index = level;
    }
    return m;
}

std::vector<CascadeMetrics> metrics_table(const Corpus& corpus) {
    const auto n = static_cast<int64_t>(corpus.trees.size());

    // One row per first-level comment; offsets are known up front, so every
    // tree fills its own slice and the output layout matches the serial
    // reference without a gather pass.
    std::vector<size_t> offset(corpus.trees.size() + 1, 0);
    for (int64_t i = 0; i < n; ++i)
        offset[i + 1] = offset[i] + corpus.trees[i].first_level_ids().size();
    std::vector<CascadeMetrics> rows(offset[corpus.trees.size()]);

#pragma omp parallel for schedule(dynamic, 32)
    for (int64_t i = 0; i < n; ++i) {
        size_t at = offset[i];
        for (const Cascade& cascade : extract_cascades(corpus.trees[i])) {
            CascadeMetrics m = compute_metrics(cascade);
            m.proposal_id = corpus.trees[i].proposal_id;
            rows[at++] = std::move(m);
        }
    }
    return rows;
}

std::vector<CascadeMetrics> metrics_table_serial(const Corpus& corpus) {
    std::vector<CascadeMetrics> rows;
    for (const DiscussionTree& tree : corpus.trees)
        for (const Cascade& cascade : extract_cascades(tree)) {
            CascadeMetrics m = compute_metrics(cascade);
            m.proposal_id = tree.proposal_id;
            rows.push_back(std::move(m));
        }
    return rows;
}

std::vector<ProposalRank> top_proposals(const Corpus& corpus, size_t n) {
    std::vector<ProposalRank> ranks;
    ranks.reserve(corpus.trees.size());
    for (const DiscussionTree& tree : corpus.trees)
        ranks.push_back({tree.proposal_id, tree.title, tree.comments.size()});
    std::sort(ranks.begin(), ranks.end(), [](const ProposalRank& a, const ProposalRank& b) {
        if (a.comment_count != b.comment_count) return a.comment_count > b.comment_count;
        return a.proposal_id < b.proposal_id;
    });
    if (ranks.size() > n) ranks.resize(n);
    return ranks;
}

std::string metrics_to_csv(const std::vector<CascadeMetrics>& rows) {
    std::string out = "proposal_id,root_comment_id,alignment,size,width,depth,h_index\n";
    for (const CascadeMetrics& m : rows) {
        out += csv_escape(m.proposal_id);
        out += ',';
        out += csv_escape(m.root_comment_id);
        out += ',';
        out += std::to_string(alignment_to_int(m.alignment));
        out += ',';
        out += std::to_string(m.size);
        out += ',';
        out += std::to_string(m.width);
        out += ',';
        out += std::to_string(m.depth);
        out += ',';
        out += std::to_string(m.h_index);
        out += '\n';
    }
    return out;
}

} // namespace delib
