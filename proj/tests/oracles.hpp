// Independent test oracles. These deliberately avoid the library's SAT /
// clipping code paths so they can arbitrate them.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "roomcraft/geometry.hpp"
#include "roomcraft/placement.hpp"
#include "roomcraft/scene_graph.hpp"

namespace oracle {

using roomcraft::OrientedRect;
using roomcraft::Vec2;

inline double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * u01(rng);
}

// Point-in-convex-polygon via cross products (strictly inside).
inline bool point_in_rect(const Vec2& p, const OrientedRect& r, double eps = 1e-12) {
    const auto c = r.corners();
    for (int i = 0; i < 4; ++i) {
        const Vec2 a = c[i];
        const Vec2 b = c[(i + 1) % 4];
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cross < eps) return false;  // counterclockwise corners
    }
    return true;
}

inline bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

// Overlap oracle: any corner strictly inside the other rect, or any pair of
// edges properly crossing.
inline bool rects_overlap(const OrientedRect& a, const OrientedRect& b) {
    const auto ca = a.corners();
    const auto cb = b.corners();
    for (const Vec2& p : ca) {
        if (point_in_rect(p, b)) return true;
    }
    for (const Vec2& p : cb) {
        if (point_in_rect(p, a)) return true;
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (segments_cross(ca[i], ca[(i + 1) % 4], cb[j], cb[(j + 1) % 4])) return true;
        }
    }
    return false;
}

// Axis-aligned intersection area by interval arithmetic (yaw multiple of pi).
inline double aa_intersection_area(const OrientedRect& a, const OrientedRect& b) {
    const Vec2 ha = a.aabb_half_extents();
    const Vec2 hb = b.aabb_half_extents();
    const double w = std::min(a.center.x + ha.x, b.center.x + hb.x) -
                     std::max(a.center.x - ha.x, b.center.x - hb.x);
    const double d = std::min(a.center.y + ha.y, b.center.y + hb.y) -
                     std::max(a.center.y - ha.y, b.center.y - hb.y);
    return std::max(0.0, w) * std::max(0.0, d);
}

// Monte-Carlo area estimate for arbitrary orientations.
inline double mc_intersection_area(const OrientedRect& a, const OrientedRect& b,
                                   std::mt19937_64& rng, int samples = 200000) {
    const Vec2 ha = a.aabb_half_extents();
    const double x0 = a.center.x - ha.x, x1 = a.center.x + ha.x;
    const double y0 = a.center.y - ha.y, y1 = a.center.y + ha.y;
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
        const Vec2 p{uniform(rng, x0, x1), uniform(rng, y0, y1)};
        if (point_in_rect(p, a, -1e-12) && point_in_rect(p, b, -1e-12)) ++hits;
    }
    return (x1 - x0) * (y1 - y0) * hits / static_cast<double>(samples);
}

// Brute-force heuristic cost: sum of weights over the raw edge list.
inline double edge_sum(const roomcraft::SpatialGraph& g, const std::string& id) {
    double f = 0.0;
    for (const auto& e : g.edges) {
        if (e.subject == id || e.object == id) f += e.weight;
    }
    return f;
}

// Layout sanity: all footprints in the room and no same-band overlaps,
// using only oracle geometry.
inline bool layout_collision_free(const roomcraft::Layout& layout, double eps = 1e-6) {
    for (const auto& it : layout.items) {
        for (const Vec2& c : it.footprint().corners()) {
            if (c.x < -eps || c.x > layout.room.width + eps || c.y < -eps ||
                c.y > layout.room.depth + eps) {
                return false;
            }
        }
    }
    for (size_t i = 0; i < layout.items.size(); ++i) {
        for (size_t j = i + 1; j < layout.items.size(); ++j) {
            const auto& a = layout.items[i];
            const auto& b = layout.items[j];
            const double zlo = std::max(a.z, b.z);
            const double zhi = std::min(a.z_top(), b.z_top());
            if (zhi - zlo <= 1e-9) continue;
            // Shrink slightly so flush placements do not count as overlap.
            OrientedRect fa = a.footprint();
            OrientedRect fb = b.footprint();
            fa.half_w = std::max(0.0, fa.half_w - 5e-3);
            fa.half_d = std::max(0.0, fa.half_d - 5e-3);
            fb.half_w = std::max(0.0, fb.half_w - 5e-3);
            fb.half_d = std::max(0.0, fb.half_d - 5e-3);
            if (oracle::rects_overlap(fa, fb)) return false;
        }
    }
    return true;
}

}  // namespace oracle
