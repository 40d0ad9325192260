#include "roomcraft/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace roomcraft {

namespace {

constexpr double kScale = 100.0;  // px per meter

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v + 0.0);  // normalize -0
    return buf;
}

// World (x up-north) to SVG (y-down) pixel coordinates.
std::string pt(const Vec2& p, double room_depth) {
    return fmt(p.x * kScale) + "," + fmt((room_depth - p.y) * kScale);
}

const char* kPalette[] = {"#9ecae1", "#a1d99b", "#fdae6b", "#bcbddc", "#fc9272",
                          "#c7e9c0", "#fdd0a2", "#dadaeb", "#d9d9d9", "#9edae5"};

std::string fill_for(const PlacedItem& item) {
    static const std::map<std::string, std::string> named = {
        {"red", "#e26a6a"},   {"blue", "#6a8fe2"},  {"green", "#6ae28a"},
        {"white", "#f2f2f2"}, {"black", "#555555"}, {"brown", "#b08968"},
        {"grey", "#bdbdbd"},  {"gray", "#bdbdbd"},  {"yellow", "#e2d06a"},
        {"beige", "#e8dcc8"}, {"orange", "#e2a86a"}};
    if (item.color) {
        const auto it = named.find(*item.color);
        if (it != named.end()) return it->second;
    }
    size_t h = 1469598103934665603ull;
    for (char c : item.category) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return kPalette[h % std::size(kPalette)];
}

// Segment endpoints of an opening on a wall, in world coordinates.
std::pair<Vec2, Vec2> opening_segment(const Room& room, const std::string& wall, double offset,
                                      double width) {
    if (wall == "south") return {{offset, 0.0}, {offset + width, 0.0}};
    if (wall == "north") return {{offset, room.depth}, {offset + width, room.depth}};
    if (wall == "west") return {{0.0, offset}, {0.0, offset + width}};
    return {{room.width, offset}, {room.width, offset + width}};
}

}  // namespace

std::string render_svg(const Layout& layout) {
    const Room& room = layout.room;
    const double w_px = room.width * kScale;
    const double d_px = room.depth * kScale;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w_px + 40)
        << "\" height=\"" << fmt(d_px + 40) << "\" viewBox=\"-20 -20 " << fmt(w_px + 40) << " "
        << fmt(d_px + 40) << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(w_px) << "\" height=\"" << fmt(d_px)
        << "\" fill=\"#fcfcf8\" stroke=\"#222222\" stroke-width=\"3\"/>\n";

    for (const Door& d : room.doors) {
        const auto [a, b] = opening_segment(room, d.wall, d.offset, d.width);
        svg << "  <line x1=\"" << fmt(a.x * kScale) << "\" y1=\"" << fmt((room.depth - a.y) * kScale)
            << "\" x2=\"" << fmt(b.x * kScale) << "\" y2=\"" << fmt((room.depth - b.y) * kScale)
            << "\" stroke=\"#b5651d\" stroke-width=\"6\"/>\n";
    }
    for (const Window& w : room.windows) {
        const auto [a, b] = opening_segment(room, w.wall, w.offset, w.width);
        svg << "  <line x1=\"" << fmt(a.x * kScale) << "\" y1=\"" << fmt((room.depth - a.y) * kScale)
            << "\" x2=\"" << fmt(b.x * kScale) << "\" y2=\"" << fmt((room.depth - b.y) * kScale)
            << "\" stroke=\"#5b9bd5\" stroke-width=\"6\" stroke-dasharray=\"8,4\"/>\n";
    }

    // Draw low items first so stacked items stay visible.
    std::vector<size_t> idx(layout.items.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return layout.items[a].z < layout.items[b].z;
    });

    for (size_t i : idx) {
        const PlacedItem& item = layout.items[i];
        const auto corners = item.footprint().corners();
        svg << "  <polygon points=\"";
        for (size_t k = 0; k < corners.size(); ++k) {
            if (k) svg << " ";
            svg << pt(corners[k], room.depth);
        }
        svg << "\" fill=\"" << fill_for(item) << "\" fill-opacity=\""
            << (item.z > 0.0 ? "0.85" : "0.95")
            << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";

        const Vec2 f = facing_vector(item.yaw);
        const Vec2 tip = item.position + f * (item.depth * 0.5 * 0.9);
        const Vec2 tail = item.position;
        svg << "  <line x1=\"" << fmt(tail.x * kScale) << "\" y1=\""
            << fmt((room.depth - tail.y) * kScale) << "\" x2=\"" << fmt(tip.x * kScale)
            << "\" y2=\"" << fmt((room.depth - tip.y) * kScale)
            << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
        const Vec2 r = right_vector(item.yaw);
        const Vec2 barb_l = tip - f * 0.08 - r * 0.05;
        const Vec2 barb_r = tip - f * 0.08 + r * 0.05;
        svg << "  <polygon points=\"" << pt(tip, room.depth) << " " << pt(barb_l, room.depth)
            << " " << pt(barb_r, room.depth) << "\" fill=\"#333333\"/>\n";

        svg << "  <text x=\"" << fmt(item.position.x * kScale) << "\" y=\""
            << fmt((room.depth - item.position.y) * kScale)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
               "dominant-baseline=\"middle\" fill=\"#111111\">"
            << item.id << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace roomcraft
