#pragma once
#include <string>

#include "delib/stats.hpp"
#include "delib/thread_model.hpp"

namespace delib {

// Paper-style palette and geometry defaults; every field can be overridden
// from the CLI. Colors are "#rrggbb".
struct StyleConfig {
    // radial tree
    double ring_spacing = 60.0;   // px between levels
    double node_radius = 3.0;     // px; display radius = node_radius * (1 + replies)
    std::string root_color = "#000000";
    std::string neutral_color = "#9e9e9e";
    std::string positive_color = "#2e7d32";
    std::string negative_color = "#c62828";
    double reply_tint = 0.45;     // how far reply nodes fade toward white
    std::string edge_color = "#c8c8c8";
    double edge_width = 1.0;

    // heatmaps
    double cell_size = 36.0;
    double panel_gap = 34.0;
    double margin = 46.0;
    std::string font_family = "Helvetica, Arial, sans-serif";
    double font_size = 12.0;
};

// Radial layout of a whole discussion tree: the proposal sits at the
// center, each reply level adds one ring, angular spans are allocated by
// subtree leaf count and node sizes grow with the number of direct replies.
// Output is deterministic byte-for-byte for identical inputs.
std::string render_radial_tree(const DiscussionTree& tree, const StyleConfig& style = {});

// One panel per alignment; cell darkness rises with P(alignment | cell).
std::string render_heatmap(const HeatmapGrid& grid, const StyleConfig& style = {});

// Two panels (positive, negative); only defined, significant cells are
// filled, everything else stays blank with the grid still drawn.
std::string render_heatmap(const BootstrapResult& result, const StyleConfig& style = {});

} // namespace delib
