#include "delib/render.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "delib/errors.hpp"

namespace delib {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Coordinates are snapped to 1/100 px before printing, which keeps the
// bytes stable across libm implementations.
std::string fmt2(double v) {
    long long n = std::llround(v * 100.0);
    long long whole = n / 100;
    long long frac = n % 100;
    if (frac < 0) frac = -frac;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", (n < 0 && whole == 0) ? "-" : "", whole, frac);
    return buf;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Rgb {
    int r = 0, g = 0, b = 0;
};

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Rgb parse_color(const std::string& hex) {
    auto bad = [&] { fail(ErrorCode::InvalidConfig, "bad color '" + hex + "', expected #rrggbb"); };
    if (hex.size() != 7 || hex[0] != '#') bad();
    int v[6];
    for (int i = 0; i < 6; ++i) {
        v[i] = hex_nibble(hex[i + 1]);
        if (v[i] < 0) bad();
    }
    return {v[0] * 16 + v[1], v[2] * 16 + v[3], v[4] * 16 + v[5]};
}

std::string to_hex(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

// Linear blend from white (t = 0) to the full color (t = 1); monotone in t.
Rgb toward_color(const Rgb& color, double t) {
    auto ch = [&](int c) { return static_cast<int>(std::llround(255.0 + t * (c - 255.0))); };
    return {ch(color.r), ch(color.g), ch(color.b)};
}

std::string svg_open(double width, double height) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) + "\" height=\"" +
           fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + " " + fmt2(height) + "\">\n";
    out += "<rect width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) + "\" fill=\"#ffffff\"/>\n";
    return out;
}

std::string text_at(double x, double y, const std::string& body, const StyleConfig& style,
                    const char* anchor) {
    return "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" font-family=\"" +
           xml_escape(style.font_family) + "\" font-size=\"" + fmt2(style.font_size) +
           "\" text-anchor=\"" + anchor + "\" fill=\"#333333\">" + xml_escape(body) + "</text>\n";
}

} // namespace

// ---------------------------------------------------------------------------
// radial tree

std::string render_radial_tree(const DiscussionTree& tree, const StyleConfig& style) {
    struct Node {
        std::string id;
        uint32_t level = 0;   // proposal = 0
        double angle = 0.0;   // radians, mid of the subtree span
        double x = 0.0, y = 0.0;
        Rgb base;             // alignment color of the first-level ancestor
        bool is_reply = false;
        uint32_t indegree = 0;
    };

    // Depth-first pass: leaf counts drive the angular span of each subtree,
    // so sibling sectors never overlap regardless of how deep they nest.
    std::unordered_map<std::string, uint32_t> leaves;
    {
        struct Frame {
            const std::string* id;
            size_t next_child = 0;
        };
        std::vector<Frame> stack{{&tree.proposal_id, 0}};
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto& kids = tree.children(*top.id);
            if (top.next_child < kids.size()) {
                stack.push_back({&kids[top.next_child++], 0});
                continue;
            }
            uint32_t total = 0;
            for (const std::string& kid : kids) total += leaves[kid];
            leaves[*top.id] = kids.empty() ? 1 : total;
            stack.pop_back();
        }
    }

    const Rgb root_color = parse_color(style.root_color);
    const Rgb palette[3] = {parse_color(style.neutral_color), parse_color(style.positive_color),
                            parse_color(style.negative_color)};
    auto alignment_color = [&](Alignment a) {
        switch (a) {
            case Alignment::Neutral: return palette[0];
            case Alignment::Positive: return palette[1];
            case Alignment::Negative: return palette[2];
        }
        return palette[0];
    };

    uint32_t max_level = 0;
    uint32_t max_indegree = static_cast<uint32_t>(tree.first_level_ids().size());
    for (const Comment& c : tree.comments)
        max_indegree = std::max(max_indegree, static_cast<uint32_t>(tree.children(c.id).size()));

    // Breadth-first sweep assigning spans and positions.
    std::vector<Node> nodes;
    nodes.reserve(1 + tree.comments.size());
    nodes.push_back({tree.proposal_id, 0, 0.0, 0.0, 0.0, root_color, false,
                     static_cast<uint32_t>(tree.first_level_ids().size())});
    struct Span {
        size_t node;  // index into nodes
        double from, to;
    };
    std::vector<Span> frontier;
    frontier.reserve(nodes.capacity());
    frontier.push_back({0, 0.0, 2.0 * kPi});
    for (size_t i = 0; i < frontier.size(); ++i) {
        const Span span = frontier[i];
        nodes[span.node].angle = (span.from + span.to) / 2.0;
        const uint32_t parent_level = nodes[span.node].level;
        const Rgb parent_base = nodes[span.node].base;
        max_level = std::max(max_level, parent_level);

        const auto& kids = tree.children(nodes[span.node].id);
        double total_leaves = 0.0;
        for (const std::string& kid : kids) total_leaves += leaves[kid];
        double at = span.from;
        for (const std::string& kid : kids) {
            const Comment& c = tree.comment(kid);
            const double width = (span.to - span.from) * (leaves[kid] / total_leaves);
            const Rgb base = c.is_first_level() ? alignment_color(*c.alignment) : parent_base;
            nodes.push_back({kid, parent_level + 1, 0.0, 0.0, 0.0, base, !c.is_first_level(),
                             static_cast<uint32_t>(tree.children(kid).size())});
            frontier.push_back({nodes.size() - 1, at, at + width});
            at += width;
        }
    }

    const double extent = style.ring_spacing * max_level +
                          style.node_radius * (1.0 + max_indegree) + 2.0 * style.ring_spacing / 3.0;
    const double size = 2.0 * extent;
    const double cx = extent, cy = extent;
    for (Node& n : nodes) {
        const double r = style.ring_spacing * n.level;
        n.x = cx + r * std::cos(n.angle);
        n.y = cy + r * std::sin(n.angle);
    }

    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < nodes.size(); ++i) index[nodes[i].id] = i;

    std::string out = svg_open(size, size);
    out += "<title>" + xml_escape(tree.title) + "</title>\n";
    out += "<g stroke=\"" + style.edge_color + "\" stroke-width=\"" + fmt2(style.edge_width) +
           "\">\n";
    for (const Node& n : nodes) {
        if (n.level == 0) continue;
        const Comment& c = tree.comment(n.id);
        const Node& parent = nodes[index[c.parent_id ? *c.parent_id : tree.proposal_id]];
        out += "<line x1=\"" + fmt2(parent.x) + "\" y1=\"" + fmt2(parent.y) + "\" x2=\"" +
               fmt2(n.x) + "\" y2=\"" + fmt2(n.y) + "\"/>\n";
    }
    out += "</g>\n";
    for (const Node& n : nodes) {
        const Rgb fill = n.is_reply ? toward_color(n.base, 1.0 - style.reply_tint) : n.base;
        out += "<circle cx=\"" + fmt2(n.x) + "\" cy=\"" + fmt2(n.y) + "\" r=\"" +
               fmt2(style.node_radius * (1.0 + n.indegree)) + "\" fill=\"" + to_hex(fill) +
               "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------------------
// heatmaps

namespace {

struct PanelCell {
    bool filled = false;
    double intensity = 0.0;  // 0 -> white, 1 -> full panel color
};

struct Panel {
    std::string label;
    Rgb color;
    std::vector<PanelCell> cells;  // row-major over metric bins
};

std::string render_panels(const std::vector<Panel>& panels, const std::vector<std::string>& size_bins,
                          const std::vector<std::string>& metric_bins, const std::string& metric_label,
                          const StyleConfig& style) {
    const size_t n_cols = size_bins.size();
    const size_t n_rows = metric_bins.size();
    const double grid_w = style.cell_size * static_cast<double>(n_cols);
    const double grid_h = style.cell_size * static_cast<double>(n_rows);
    const double panel_stride = grid_w + style.panel_gap;
    const double top = style.margin;
    const double width =
        style.margin * 2.0 + grid_w + panel_stride * static_cast<double>(panels.size() - 1);
    const double height = style.margin * 2.0 + grid_h + style.font_size * 2.0;

    std::string out = svg_open(width, height);
    for (size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double left = style.margin + panel_stride * static_cast<double>(p);

        out += text_at(left + grid_w / 2.0, top - style.font_size, panel.label, style, "middle");
        // Largest metric bin on the top row, per the figure convention.
        for (size_t row = 0; row < n_rows; ++row)
            for (size_t col = 0; col < n_cols; ++col) {
                const PanelCell& cell = panel.cells[row * n_cols + col];
                const double x = left + style.cell_size * static_cast<double>(col);
                const double y = top + style.cell_size * static_cast<double>(n_rows - 1 - row);
                const std::string fill =
                    cell.filled ? to_hex(toward_color(panel.color, cell.intensity)) : "#ffffff";
                out += "<rect x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" width=\"" +
                       fmt2(style.cell_size) + "\" height=\"" + fmt2(style.cell_size) +
                       "\" fill=\"" + fill + "\" stroke=\"#d0d0d0\" stroke-width=\"1\"/>\n";
            }
        for (size_t col = 0; col < n_cols; ++col)
            out += text_at(left + style.cell_size * (static_cast<double>(col) + 0.5),
                           top + grid_h + style.font_size * 1.2, size_bins[col], style, "middle");
        for (size_t row = 0; row < n_rows; ++row)
            out += text_at(left - style.font_size * 0.6,
                           top + style.cell_size * (static_cast<double>(n_rows - 1 - row) + 0.5) +
                               style.font_size * 0.35,
                           metric_bins[row], style, "end");
        out += text_at(left + grid_w / 2.0, top + grid_h + style.font_size * 2.6, "cascade size",
                       style, "middle");
    }
    out += text_at(style.margin - style.font_size * 0.6, top - style.font_size, metric_label,
                   style, "end");
    out += "</svg>\n";
    return out;
}

} // namespace

std::string render_heatmap(const HeatmapGrid& grid, const StyleConfig& style) {
    auto make_panel = [&](const char* label, const std::string& color, auto prob) {
        Panel panel;
        panel.label = label;
        panel.color = parse_color(color);
        panel.cells.resize(grid.cells.size());
        for (uint32_t mb = 1; mb <= grid.metric_cap; ++mb)
            for (uint32_t sb = 1; sb <= grid.size_cap; ++sb) {
                const HeatmapCell& cell = grid.cell(mb, sb);
                PanelCell& out = panel.cells[(mb - 1) * grid.size_cap + (sb - 1)];
                if (cell.count == 0) continue;
                out.filled = true;
                out.intensity = prob(cell);
            }
        return panel;
    };
    std::vector<Panel> panels;
    panels.push_back(make_panel("neutral", style.neutral_color,
                                [](const HeatmapCell& c) { return c.p_neutral; }));
    panels.push_back(make_panel("positive", style.positive_color,
                                [](const HeatmapCell& c) { return c.p_positive; }));
    panels.push_back(make_panel("negative", style.negative_color,
                                [](const HeatmapCell& c) { return c.p_negative; }));
    return render_panels(panels, grid.size_bins, grid.metric_bins, to_string(grid.metric), style);
}

std::string render_heatmap(const BootstrapResult& result, const StyleConfig& style) {
    auto make_panel = [&](const char* label, const std::string& color, bool negative_side) {
        Panel panel;
        panel.label = label;
        panel.color = parse_color(color);
        panel.cells.resize(result.cells.size());
        for (uint32_t mb = 1; mb <= result.metric_cap; ++mb)
            for (uint32_t sb = 1; sb <= result.size_cap; ++sb) {
                const BootstrapCell& cell = result.cell(mb, sb);
                PanelCell& out = panel.cells[(mb - 1) * result.size_cap + (sb - 1)];
                if (!cell.defined || !cell.significant) continue;  // blank
                out.filled = true;
                out.intensity = negative_side ? cell.p_negative : 1.0 - cell.p_negative;
            }
        return panel;
    };
    std::vector<Panel> panels;
    panels.push_back(make_panel("positive", style.positive_color, false));
    panels.push_back(make_panel("negative", style.negative_color, true));
    return render_panels(panels, result.size_bins, result.metric_bins, to_string(result.metric),
                         style);
}

} // namespace delib
