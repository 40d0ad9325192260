#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace roomcraft {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

// Normalize an angle into [0, 2*pi).
double normalize_yaw(double yaw);

// Wrap an angle difference into (-pi, pi].
double wrap_angle(double a);

// Facing unit vector for a yaw. yaw 0 faces +y (north), pi/2 faces +x (east).
Vec2 facing_vector(double yaw);

// Right-hand unit vector (facing rotated 90 degrees clockwise).
Vec2 right_vector(double yaw);

// Oriented rectangle on the floor plane: center, half extents, yaw.
// half_w spans the lateral (right) axis, half_d the facing axis.
struct OrientedRect {
    Vec2 center;
    double half_w = 0.0;
    double half_d = 0.0;
    double yaw = 0.0;

    std::array<Vec2, 4> corners() const;
    double area() const { return 4.0 * half_w * half_d; }
    // Axis-aligned half extents of this rect's bounding box.
    Vec2 aabb_half_extents() const;
};

// Separating-axis overlap test for two oriented rectangles (boolean, exact).
bool rects_overlap(const OrientedRect& a, const OrientedRect& b);

// Intersection area of two convex quads via Sutherland-Hodgman clipping.
double intersection_area(const OrientedRect& a, const OrientedRect& b);

// Area of the convex polygon (shoelace); vertices in order.
double polygon_area(const std::vector<Vec2>& poly);

// Clip a convex polygon against the half-plane n.(p - a) >= 0 where the
// half-plane is the inside of edge (a -> b) of a counterclockwise polygon.
std::vector<Vec2> clip_polygon(const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b);

// Axis-aligned room rectangle [0,w] x [0,d] helpers.
bool rect_inside_room(const OrientedRect& r, double room_w, double room_d, double eps = 1e-9);

// Area of the rect footprint lying outside the room rectangle.
double area_outside_room(const OrientedRect& r, double room_w, double room_d);

// Largest distance any corner of the rect lies outside the room rectangle.
double max_exit_distance(const OrientedRect& r, double room_w, double room_d);

// Minimum translation vector pushing rect a out of rect b (zero if disjoint).
Vec2 min_penetration_axis(const OrientedRect& a, const OrientedRect& b);

// Vertical band [z0, z1); bands collide only when they properly overlap.
bool z_bands_overlap(double z0a, double z1a, double z0b, double z1b, double eps = 1e-9);

}  // namespace roomcraft
