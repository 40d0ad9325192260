#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "roomcraft/geometry.hpp"

using namespace roomcraft;

TEST_CASE("angle helpers") {
    CHECK(normalize_yaw(-kPi / 2) == doctest::Approx(1.5 * kPi));
    CHECK(normalize_yaw(2.5 * kTwoPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-0.1) == doctest::Approx(-0.1));
    CHECK(facing_vector(0.0).y == doctest::Approx(1.0));
    CHECK(facing_vector(kPi / 2).x == doctest::Approx(1.0));
    CHECK(right_vector(0.0).x == doctest::Approx(1.0));
}

TEST_CASE("corners honor the facing convention") {
    const OrientedRect r{{2.0, 3.0}, 0.5, 1.0, 0.0};  // faces +y
    const auto c = r.corners();
    double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
    for (const Vec2& p : c) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    CHECK(min_x == doctest::Approx(1.5));
    CHECK(max_x == doctest::Approx(2.5));
    CHECK(min_y == doctest::Approx(2.0));
    CHECK(max_y == doctest::Approx(4.0));
}

TEST_CASE("SAT overlap agrees with the corner/edge oracle") {
    std::mt19937_64 rng(42);
    int overlaps = 0;
    for (int i = 0; i < 2000; ++i) {
        const OrientedRect a{{oracle::uniform(rng, 0, 5), oracle::uniform(rng, 0, 5)},
                             oracle::uniform(rng, 0.1, 1.0),
                             oracle::uniform(rng, 0.1, 1.0),
                             oracle::uniform(rng, 0, kTwoPi)};
        const OrientedRect b{{oracle::uniform(rng, 0, 5), oracle::uniform(rng, 0, 5)},
                             oracle::uniform(rng, 0.1, 1.0),
                             oracle::uniform(rng, 0.1, 1.0),
                             oracle::uniform(rng, 0, kTwoPi)};
        const bool got = rects_overlap(a, b);
        const bool want = oracle::rects_overlap(a, b);
        CHECK(got == want);
        overlaps += got;
    }
    CHECK(overlaps > 100);  // the sample actually exercises both branches
    CHECK(overlaps < 1900);
}

TEST_CASE("intersection area: exact axis-aligned cases") {
    const OrientedRect unit{{0.5, 0.5}, 0.5, 0.5, 0.0};
    CHECK(intersection_area(unit, unit) == doctest::Approx(1.0));
    const OrientedRect shifted{{1.0, 1.0}, 0.5, 0.5, 0.0};
    CHECK(intersection_area(unit, shifted) == doctest::Approx(0.25));
    const OrientedRect apart{{3.0, 0.5}, 0.5, 0.5, 0.0};
    CHECK(intersection_area(unit, apart) == doctest::Approx(0.0));
}

TEST_CASE("intersection area matches interval arithmetic on axis-aligned pairs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const double yaw_a = (rng() % 2) * kPi;      // 0 or pi: axis aligned
        const double yaw_b = (rng() % 2) * kPi;
        const OrientedRect a{{oracle::uniform(rng, 0, 4), oracle::uniform(rng, 0, 4)},
                             oracle::uniform(rng, 0.1, 1.2), oracle::uniform(rng, 0.1, 1.2),
                             yaw_a};
        const OrientedRect b{{oracle::uniform(rng, 0, 4), oracle::uniform(rng, 0, 4)},
                             oracle::uniform(rng, 0.1, 1.2), oracle::uniform(rng, 0.1, 1.2),
                             yaw_b};
        CHECK(intersection_area(a, b) ==
              doctest::Approx(oracle::aa_intersection_area(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("intersection area matches Monte-Carlo on rotated pairs") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 12; ++i) {
        const OrientedRect a{{oracle::uniform(rng, 1, 3), oracle::uniform(rng, 1, 3)},
                             oracle::uniform(rng, 0.3, 1.0), oracle::uniform(rng, 0.3, 1.0),
                             oracle::uniform(rng, 0, kTwoPi)};
        const OrientedRect b{{oracle::uniform(rng, 1, 3), oracle::uniform(rng, 1, 3)},
                             oracle::uniform(rng, 0.3, 1.0), oracle::uniform(rng, 0.3, 1.0),
                             oracle::uniform(rng, 0, kTwoPi)};
        const double exact = intersection_area(a, b);
        const double mc = oracle::mc_intersection_area(a, b, rng);
        CHECK(exact == doctest::Approx(mc).epsilon(0.08).scale(1.0));
    }
}

TEST_CASE("room containment and exit distance") {
    const OrientedRect inside{{2.0, 2.0}, 0.5, 0.5, 0.3};
    CHECK(rect_inside_room(inside, 5, 4));
    const OrientedRect poking{{4.8, 2.0}, 0.5, 0.5, 0.0};
    CHECK_FALSE(rect_inside_room(poking, 5, 4));
    CHECK(max_exit_distance(poking, 5, 4) == doctest::Approx(0.3));
    CHECK(max_exit_distance(inside, 5, 4) == doctest::Approx(0.0));
    // Half outside: area outside = half the footprint.
    const OrientedRect half{{5.0, 2.0}, 0.5, 0.5, 0.0};
    CHECK(area_outside_room(half, 5, 4) == doctest::Approx(0.5));
}

TEST_CASE("minimum penetration axis separates the pair") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const OrientedRect b{{oracle::uniform(rng, 2, 3), oracle::uniform(rng, 2, 3)},
                             oracle::uniform(rng, 0.2, 1.0), oracle::uniform(rng, 0.2, 1.0),
                             oracle::uniform(rng, 0, kTwoPi)};
        OrientedRect a = b;
        a.center = {b.center.x + oracle::uniform(rng, -0.3, 0.3),
                    b.center.y + oracle::uniform(rng, -0.3, 0.3)};
        a.yaw = oracle::uniform(rng, 0, kTwoPi);
        if (!rects_overlap(a, b)) continue;
        const Vec2 mtv = min_penetration_axis(a, b);
        OrientedRect moved = a;
        moved.center = a.center + mtv * 1.0001;
        CHECK_FALSE(rects_overlap(moved, b));
    }
}

TEST_CASE("z bands") {
    CHECK(z_bands_overlap(0.0, 0.75, 0.5, 1.0));
    CHECK_FALSE(z_bands_overlap(0.0, 0.75, 0.75, 1.0));  // stacked: share a plane only
    CHECK_FALSE(z_bands_overlap(0.0, 0.5, 0.6, 1.0));
}
