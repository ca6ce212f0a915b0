#pragma once
#include <string>
#include <vector>

#include "delib/thread_model.hpp"

namespace delib {

// The four structural metrics of one cascade. Levels count from 1 at the
// cascade root, so a lone comment scores (1, 1, 1, 1).
struct CascadeMetrics {
    std::string proposal_id;  // filled by metrics_table; empty for bare cascades
    std::string root_comment_id;
    Alignment alignment = Alignment::Neutral;
    uint32_t size = 0;     // nodes in the cascade, root included
    uint32_t width = 0;    // maximum nodes at any level
    uint32_t depth = 0;    // number of levels
    uint32_t h_index = 0;  // maximum level h holding at least h comments

    bool operator==(const CascadeMetrics&) const = default;
};

CascadeMetrics compute_metrics(const Cascade& cascade);

// One row per first-level comment across the corpus, ordered by
// (proposal_id, root child order). The default entry point fans the trees
// out across OpenMP threads; metrics_table_serial is the plain reference
// the tests compare against. Both return identical rows.
std::vector<CascadeMetrics> metrics_table(const Corpus& corpus);
std::vector<CascadeMetrics> metrics_table_serial(const Corpus& corpus);

struct ProposalRank {
    std::string proposal_id;
    std::string title;
    uint64_t comment_count = 0;
};

// Proposals by descending total comment count, ties by proposal_id
// ascending, at most n rows.
std::vector<ProposalRank> top_proposals(const Corpus& corpus, size_t n);

// CSV with header proposal_id,root_comment_id,alignment,size,width,depth,h_index.
std::string metrics_to_csv(const std::vector<CascadeMetrics>& rows);

} // namespace delib
