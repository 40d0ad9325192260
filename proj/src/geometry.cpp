#include "roomcraft/geometry.hpp"

#include <algorithm>
#include <limits>

namespace roomcraft {

double normalize_yaw(double yaw) {
    double r = std::fmod(yaw, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r > kPi) r -= kTwoPi;
    if (r <= -kPi) r += kTwoPi;
    return r;
}

Vec2 facing_vector(double yaw) { return {std::sin(yaw), std::cos(yaw)}; }

Vec2 right_vector(double yaw) { return {std::cos(yaw), -std::sin(yaw)}; }

std::array<Vec2, 4> OrientedRect::corners() const {
    const Vec2 f = facing_vector(yaw);
    const Vec2 r = right_vector(yaw);
    const Vec2 fw = f * half_d;
    const Vec2 rw = r * half_w;
    // Counterclockwise order: back-right, front-right, front-left, back-left.
    return {center + rw - fw, center + rw + fw, center - rw + fw, center - rw - fw};
}

Vec2 OrientedRect::aabb_half_extents() const {
    const double c = std::abs(std::cos(yaw));
    const double s = std::abs(std::sin(yaw));
    return {c * half_w + s * half_d, s * half_w + c * half_d};
}

namespace {

// Project the corners of a rect onto an axis and return [min, max].
std::pair<double, double> project(const std::array<Vec2, 4>& pts, const Vec2& axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec2& p : pts) {
        const double v = p.dot(axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

}  // namespace

bool rects_overlap(const OrientedRect& a, const OrientedRect& b) {
    const auto ca = a.corners();
    const auto cb = b.corners();
    const Vec2 axes[4] = {facing_vector(a.yaw), right_vector(a.yaw), facing_vector(b.yaw),
                          right_vector(b.yaw)};
    for (const Vec2& axis : axes) {
        const auto [alo, ahi] = project(ca, axis);
        const auto [blo, bhi] = project(cb, axis);
        if (ahi <= blo || bhi <= alo) return false;
    }
    return true;
}

std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b) {
    // Inside = left of directed edge a->b (counterclockwise polygon interior).
    std::vector<Vec2> out;
    out.reserve(poly.size() + 1);
    const Vec2 e = b - a;
    auto side = [&](const Vec2& p) { return e.x * (p.y - a.y) - e.y * (p.x - a.x); };
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& cur = poly[i];
        const Vec2& nxt = poly[(i + 1) % n];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0) out.push_back(cur);
        if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + (nxt - cur) * t);
        }
    }
    return out;
}

double polygon_area(const std::vector<Vec2>& poly) {
    if (poly.size() < 3) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return std::abs(s) * 0.5;
}

double intersection_area(const OrientedRect& a, const OrientedRect& b) {
    if (!rects_overlap(a, b)) return 0.0;
    const auto ca = a.corners();
    const auto cb = b.corners();
    std::vector<Vec2> poly(ca.begin(), ca.end());
    for (int i = 0; i < 4 && !poly.empty(); ++i) {
        poly = clip_polygon(poly, cb[i], cb[(i + 1) % 4]);
    }
    return polygon_area(poly);
}

bool rect_inside_room(const OrientedRect& r, double room_w, double room_d, double eps) {
    for (const Vec2& c : r.corners()) {
        if (c.x < -eps || c.x > room_w + eps || c.y < -eps || c.y > room_d + eps) return false;
    }
    return true;
}

double area_outside_room(const OrientedRect& r, double room_w, double room_d) {
    const OrientedRect room{{room_w * 0.5, room_d * 0.5}, room_w * 0.5, room_d * 0.5, 0.0};
    return std::max(0.0, r.area() - intersection_area(r, room));
}

double max_exit_distance(const OrientedRect& r, double room_w, double room_d) {
    double worst = 0.0;
    for (const Vec2& c : r.corners()) {
        const double dx = std::max({0.0, -c.x, c.x - room_w});
        const double dy = std::max({0.0, -c.y, c.y - room_d});
        worst = std::max(worst, std::sqrt(dx * dx + dy * dy));
    }
    return worst;
}

Vec2 min_penetration_axis(const OrientedRect& a, const OrientedRect& b) {
    if (!rects_overlap(a, b)) return {0.0, 0.0};
    const auto ca = a.corners();
    const auto cb = b.corners();
    const Vec2 axes[4] = {facing_vector(a.yaw), right_vector(a.yaw), facing_vector(b.yaw),
                          right_vector(b.yaw)};
    double best = std::numeric_limits<double>::infinity();
    Vec2 best_axis{0.0, 0.0};
    for (const Vec2& axis : axes) {
        const auto [alo, ahi] = project(ca, axis);
        const auto [blo, bhi] = project(cb, axis);
        // Translation needed to clear b along this axis, in either direction.
        const double push_up = bhi - alo;
        const double push_down = ahi - blo;
        const double need = std::min(push_up, push_down);
        if (need < best) {
            best = need;
            best_axis = axis * (push_up <= push_down ? push_up : -push_down);
        }
    }
    return best_axis;
}

bool z_bands_overlap(double z0a, double z1a, double z0b, double z1b, double eps) {
    return std::min(z1a, z1b) - std::max(z0a, z0b) > eps;
}

}  // namespace roomcraft
