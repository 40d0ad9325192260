#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "roomcraft/errors.hpp"
#include "roomcraft/placement.hpp"

using namespace roomcraft;

namespace {

FurnitureItem item(const std::string& id, double w, double d, double h,
                   Mount mount = Mount::floor) {
    FurnitureItem f;
    f.id = id;
    f.category = id;
    f.width = w;
    f.depth = d;
    f.height = h;
    f.mount = mount;
    return f;
}

Room simple_room(double w, double d) {
    Room r;
    r.width = w;
    r.depth = d;
    r.wall_height = 2.8;
    return r;
}

PlacedItem placed(const std::string& id, double x, double y, double w, double d, double h,
                  double yaw = 0.0, double z = 0.0) {
    PlacedItem p;
    p.id = id;
    p.category = id;
    p.position = {x, y};
    p.z = z;
    p.yaw = yaw;
    p.width = w;
    p.depth = d;
    p.height = h;
    return p;
}

// Selection oracle: first strictly-better candidate wins, like the solver.
struct Chosen {
    Vec2 position;
    double yaw = 0.0;
    bool ok = false;
};

Chosen argmax_oracle(const FurnitureItem& f, const Room& room, const Layout& layout, double step,
                     const PlacementContext& ctx, double alpha, double beta, double mu) {
    Chosen best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const Candidate& c : generate_candidates(f, room, layout, step, ctx)) {
        const double s =
            score_candidate(c.position, c.yaw, f, room, layout, alpha, beta, mu, ctx);
        if (s > best_score) {
            best_score = s;
            best = {c.position, c.yaw, std::isfinite(s)};
        }
    }
    return best;
}

}  // namespace

TEST_CASE("candidate grid matches the enumeration oracle: 4x3 centers x 4 yaws") {
    const Room room = simple_room(5.0, 4.0);
    Layout layout;
    layout.room = room;
    const auto cands = generate_candidates(item("box", 1.0, 1.0, 1.0), room, layout, 1.0);
    CHECK(cands.size() == 48);

    // Independent enumeration: cell-centered positions in [0.5, L-0.5].
    int count = 0;
    for (int yaw = 0; yaw < 4; ++yaw) {
        for (double x = 1.0; x <= 4.0 + 1e-9; x += 1.0) {
            for (double y = 1.0; y <= 3.0 + 1e-9; y += 1.0) ++count;
        }
    }
    CHECK(count == 48);
    for (const Candidate& c : cands) {
        CHECK(rect_inside_room({c.position, 0.5, 0.5, c.yaw}, 5.0, 4.0));
    }
}

TEST_CASE("item wider than the room yields no candidates") {
    const Room room = simple_room(2.0, 2.0);
    Layout layout;
    layout.room = room;
    CHECK(generate_candidates(item("huge", 3.0, 3.0, 1.0), room, layout, 0.1).empty());
}

TEST_CASE("on_top candidates require a placed support") {
    const Room room = simple_room(5.0, 4.0);
    Layout layout;
    layout.room = room;
    PlacementContext ctx;
    ctx.support_id = "table";
    CHECK_THROWS_AS(
        generate_candidates(item("cup", 0.1, 0.1, 0.12, Mount::on_top), room, layout, 0.1, ctx),
        NoCandidateSurface);

    layout.items.push_back(placed("table", 2.5, 2.0, 1.4, 0.8, 0.75));
    const auto cands =
        generate_candidates(item("cup", 0.1, 0.1, 0.12, Mount::on_top), room, layout, 0.1, ctx);
    CHECK(!cands.empty());
    const PlacedItem& table = layout.items[0];
    for (const Candidate& c : cands) {
        const Vec2 rel = c.position - table.position;
        CHECK(std::abs(rel.dot(right_vector(table.yaw))) <= table.width * 0.5);
        CHECK(std::abs(rel.dot(facing_vector(table.yaw))) <= table.depth * 0.5);
    }
}

TEST_CASE("wall band candidates sit flush with their wall") {
    const Room room = simple_room(5.0, 4.0);
    Layout layout;
    layout.room = room;
    PlacementContext ctx;
    ctx.against_walls = {"north"};
    const FurnitureItem bed = item("bed", 2.0, 1.6, 0.5);
    for (const Candidate& c : generate_candidates(bed, room, layout, 0.1, ctx)) {
        CHECK(c.yaw == doctest::Approx(kPi));  // faces south, back to the north wall
        CHECK(c.position.y == doctest::Approx(4.0 - 0.8));
    }
}

TEST_CASE("l_dist spec examples") {
    const Room room = simple_room(5.0, 4.0);
    CHECK(l_dist({2.5, 0.5}, room, "south") == doctest::Approx(3.5));
    CHECK(l_dist({2.5, 2.0}, room, "west") == doctest::Approx(2.5));
    CHECK(l_dist({2.5, 4.0}, room, "south") == doctest::Approx(0.0));  // on the opposite wall
    // No anchor: nearest wall to (1.0, 2.0) is west, so distance to east.
    CHECK(l_dist({1.0, 2.0}, room) == doctest::Approx(4.0));
}

TEST_CASE("l_obj spec examples and brute-force mean") {
    Layout layout;
    layout.room = simple_room(10.0, 10.0);
    CHECK(l_obj({5.0, 5.0}, layout, 3.0) == doctest::Approx(3.0));  // empty: saturates at mu

    layout.items.push_back(placed("a", 5.0, 6.0, 0.5, 0.5, 1.0));
    CHECK(l_obj({5.0, 5.0}, layout, 3.0) == doctest::Approx(1.0));

    layout.items.push_back(placed("b", 5.0, 7.0, 0.5, 0.5, 1.0));
    layout.items.push_back(placed("c", 5.0, 9.0, 0.5, 0.5, 1.0));  // 4 m away: out of radius
    CHECK(l_obj({5.0, 5.0}, layout, 3.0) == doctest::Approx(1.5));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Vec2 p{oracle::uniform(rng, 0, 10), oracle::uniform(rng, 0, 10)};
        double sum = 0.0;
        int n = 0;
        for (const PlacedItem& q : layout.items) {
            const double dist = (q.position - p).norm();
            if (dist <= 3.0) {
                sum += dist;
                ++n;
            }
        }
        const double want = n ? sum / n : 3.0;
        CHECK(l_obj(p, layout, 3.0) == doctest::Approx(want));
    }
}

TEST_CASE("score_candidate spec examples") {
    const Room room = simple_room(5.0, 4.0);
    Layout layout;
    layout.room = room;
    const FurnitureItem box = item("box", 1.0, 1.0, 1.0);

    // alpha=1: score is exactly the normalized wall distance.
    const Vec2 p{2.5, 1.0};
    const double diag = std::sqrt(5.0 * 5.0 + 4.0 * 4.0);
    CHECK(score_candidate(p, 0.0, box, room, layout, 1.0, 0.0, 3.0) ==
          doctest::Approx(l_dist(p, room) / diag));

    // alpha=0 in an empty layout: saturated object term.
    CHECK(score_candidate(p, 0.0, box, room, layout, 0.0, 1.0, 3.0) == doctest::Approx(1.0));

    // 10% overlap with an existing item is gated to -infinity.
    layout.items.push_back(placed("other", 2.5, 2.0, 1.0, 1.0, 1.0));
    const double s = score_candidate({2.5, 2.9}, 0.0, box, room, layout, 0.5, 0.5, 3.0);
    CHECK(std::isinf(s));
    CHECK(s < 0);
}

TEST_CASE("score_candidate is affine in the two terms") {
    std::mt19937_64 rng(17);
    const Room room = simple_room(6.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        Layout layout;
        layout.room = room;
        const int k = static_cast<int>(rng() % 4);
        for (int j = 0; j < k; ++j) {
            layout.items.push_back(placed("o" + std::to_string(j),
                                          oracle::uniform(rng, 1, 5),
                                          oracle::uniform(rng, 1, 4), 0.4, 0.4, 1.0));
        }
        const Vec2 p{oracle::uniform(rng, 0.5, 5.5), oracle::uniform(rng, 0.5, 4.5)};
        const double alpha = oracle::u01(rng);
        const double mu = 3.0;
        const FurnitureItem dot = item("dot", 0.2, 0.2, 0.5);
        const double got =
            score_candidate(p, 0.0, dot, room, layout, alpha, 1.0 - alpha, mu);
        if (!std::isfinite(got)) continue;
        const double n_dist = l_dist(p, room) / layout.room_diagonal();
        const double n_obj = l_obj(p, layout, mu) / mu;
        CHECK(got == doctest::Approx(alpha * n_dist + (1.0 - alpha) * n_obj).epsilon(1e-12));
    }
}

TEST_CASE("adjust_weights spec examples") {
    auto [a1, b1] = adjust_weights(0.5, ConflictKind::wall_collision, 1.0, 0.1);
    CHECK(a1 == doctest::Approx(0.6));
    CHECK(b1 == doctest::Approx(0.4));

    auto [a2, b2] = adjust_weights(0.95, ConflictKind::wall_collision, 1.0, 0.1);
    CHECK(a2 == doctest::Approx(1.0));
    CHECK(b2 == doctest::Approx(0.0));

    auto [a3, b3] = adjust_weights(0.5, ConflictKind::furniture_collision, 2.0, 0.1);
    CHECK(a3 == doctest::Approx(0.3));
    CHECK(b3 == doctest::Approx(0.7));
}

TEST_CASE("property: weight law holds over 1000 random adjustment sequences") {
    std::mt19937_64 rng(404);
    for (int seq = 0; seq < 1000; ++seq) {
        double alpha = oracle::u01(rng);
        const double k = oracle::uniform(rng, 0.1, 3.0);
        const double da = oracle::uniform(rng, 0.01, 0.5);
        const int steps = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < steps; ++i) {
            const ConflictKind kind =
                rng() % 2 ? ConflictKind::wall_collision : ConflictKind::furniture_collision;
            auto [a, b] = adjust_weights(alpha, kind, k, da);
            CHECK(a >= 0.0);
            CHECK(a <= 1.0);
            CHECK(a + b == doctest::Approx(1.0).epsilon(1e-12));
            alpha = a;
        }
    }
}

TEST_CASE("place_sequence: anchored item lands on its wall, matching the argmax oracle") {
    SceneOrganization org;
    org.room_type = RoomType::bedroom;
    org.furniture.push_back(item("box", 1.0, 1.0, 1.0));
    org.relations.push_back({"box", "wall:north", RelationKind::against_wall, {}});
    const Room room = build_room(RoomType::bedroom, {{5.0, 4.0}});
    const PlacementOrder order = hdfs_order(build_graph(org));
    CapsConfig config;
    const Layout layout = place_sequence(order, org, room, config);

    REQUIRE(layout.items.size() == 1);
    const PlacedItem& box = layout.items[0];
    // Back face flush with the north wall, well within one grid step.
    CHECK(box.position.y == doctest::Approx(4.0 - 0.5));
    CHECK(layout.trace.size() == 1);
    CHECK(layout.trace[0].attempts == 1);

    Layout empty;
    empty.room = room;
    PlacementContext ctx;
    ctx.against_walls = {"north"};
    const Chosen want = argmax_oracle(org.furniture[0], room, empty, config.grid_step, ctx,
                                      config.alpha0, config.beta0, config.mu);
    REQUIRE(want.ok);
    CHECK(box.position.x == want.position.x);
    CHECK(box.position.y == want.position.y);
    CHECK(box.yaw == want.yaw);
}

TEST_CASE("place_sequence: oversized item is reported, never dropped silently") {
    SceneOrganization org;
    org.room_type = RoomType::bathroom;
    org.furniture.push_back(item("monolith", 9.0, 9.0, 2.0));
    const Room room = build_room(RoomType::bathroom, {{3.0, 2.5}});
    const PlacementOrder order = hdfs_order(build_graph(org));
    CHECK_THROWS_AS(place_sequence(order, org, room, CapsConfig{}), ItemUnplaceable);

    const PlaceResult r = try_place_sequence(order, org, room, CapsConfig{});
    REQUIRE(r.unplaced.size() == 1);
    CHECK(r.unplaced[0] == "monolith");
    CHECK(r.layout.items.empty());
    REQUIRE(r.layout.trace.size() == 1);
    CHECK(r.layout.trace[0].attempts == 26);  // initial pass + 25 retries
}

TEST_CASE("place_sequence: 12 items at moderate coverage all place with zero overlaps") {
    SceneOrganization org;
    org.room_type = RoomType::bedroom;
    RoomSpec rs;
    rs.width = 6.0;
    rs.depth = 5.0;
    org.room = rs;
    org.furniture = {
        item("bed", 2.0, 1.6, 0.5),      item("wardrobe", 1.2, 0.6, 2.0),
        item("desk", 1.2, 0.6, 0.75),    item("chair", 0.5, 0.5, 0.9),
        item("dresser", 1.0, 0.5, 0.8),  item("bookshelf", 0.8, 0.3, 1.8),
        item("night1", 0.45, 0.4, 0.5),  item("night2", 0.45, 0.4, 0.5),
        item("plant", 0.4, 0.4, 1.2),    item("lamp", 0.3, 0.3, 1.5),
        item("armchair", 0.8, 0.8, 0.9), item("table", 1.4, 0.8, 0.75),
    };
    org.relations = {{"bed", "wall:north", RelationKind::against_wall, {}},
                     {"wardrobe", "wall:east", RelationKind::against_wall, {}},
                     {"desk", "wall:west", RelationKind::against_wall, {}},
                     {"night1", "bed", RelationKind::near, {}},
                     {"night2", "bed", RelationKind::near, {}},
                     {"chair", "desk", RelationKind::near, {}}};

    double coverage = 0.0;
    for (const FurnitureItem& f : org.furniture) coverage += f.width * f.depth;
    coverage /= 6.0 * 5.0;
    CHECK(coverage <= 0.40);

    CapsConfig config;
    config.seed = 7;
    const Room room = make_room(org);
    const PlacementOrder order = hdfs_order(build_graph(org));
    const Layout layout = place_sequence(order, org, room, config);
    CHECK(layout.items.size() == 12);
    CHECK(detect_collisions(layout).empty());
    CHECK(oracle::layout_collision_free(layout));
}

TEST_CASE("detect_collisions spec examples") {
    Layout layout;
    layout.room = simple_room(5.0, 4.0);
    layout.items.push_back(placed("a", 2.0, 2.0, 1.0, 1.0, 1.0));
    layout.items.push_back(placed("b", 2.0, 2.0, 1.0, 1.0, 1.0));
    auto records = detect_collisions(layout);
    REQUIRE(records.size() == 1);
    CHECK(records[0].type == CollisionRecord::Type::furniture);
    CHECK(records[0].area == doctest::Approx(1.0));

    // Cup resting exactly on the table slab: disjoint z-bands.
    Layout stacked;
    stacked.room = simple_room(5.0, 4.0);
    stacked.items.push_back(placed("table", 2.0, 2.0, 1.4, 0.8, 0.75));
    stacked.items.push_back(placed("cup", 2.0, 2.0, 0.1, 0.1, 0.12, 0.0, 0.75));
    CHECK(detect_collisions(stacked).empty());

    // Square straddling a wall: wall record with the outside area.
    Layout outside;
    outside.room = simple_room(5.0, 4.0);
    outside.items.push_back(placed("x", 5.0, 2.0, 1.0, 1.0, 1.0));
    records = detect_collisions(outside);
    REQUIRE(records.size() == 1);
    CHECK(records[0].type == CollisionRecord::Type::wall);
    CHECK(records[0].area == doctest::Approx(0.5));
}

TEST_CASE("property: single-item placement equals the exhaustive argmax (100 seeds)") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const Room room = simple_room(oracle::uniform(rng, 3.0, 7.0),
                                      oracle::uniform(rng, 2.5, 6.0));
        Layout layout;
        layout.room = room;
        const int obstacles = static_cast<int>(rng() % 4);
        for (int i = 0; i < obstacles; ++i) {
            layout.items.push_back(placed("obs" + std::to_string(i),
                                          oracle::uniform(rng, 0.6, room.width - 0.6),
                                          oracle::uniform(rng, 0.6, room.depth - 0.6), 0.6, 0.6,
                                          1.0));
        }
        FurnitureItem f = item("probe", oracle::uniform(rng, 0.3, 1.2),
                               oracle::uniform(rng, 0.3, 1.2), 1.0);
        PlacementContext ctx;
        if (rng() % 2) {
            const char* walls[] = {"north", "south", "east", "west"};
            ctx.against_walls = {walls[rng() % 4]};
        }
        CapsConfig config;
        config.seed = trial;

        Layout scratch = layout;
        const bool ok = place_single(scratch, f, ctx, config);
        const Chosen want = argmax_oracle(f, room, layout, config.grid_step, ctx, config.alpha0,
                                          config.beta0, config.mu);
        REQUIRE(ok == want.ok);
        if (ok) {
            const PlacedItem& chosen = scratch.items.back();
            CHECK(chosen.position.x == want.position.x);
            CHECK(chosen.position.y == want.position.y);
            CHECK(chosen.yaw == want.yaw);
        }
    }
}

TEST_CASE("determinism: identical inputs give byte-identical layouts") {
    SceneOrganization org;
    org.room_type = RoomType::living_room;
    org.furniture = {item("sofa", 2.0, 0.9, 0.8), item("tv", 1.2, 0.1, 0.7),
                     item("plant", 0.4, 0.4, 1.2)};
    org.relations = {{"sofa", "wall:north", RelationKind::against_wall, {}},
                     {"tv", "wall:south", RelationKind::against_wall, {}}};
    const Room room = build_room(RoomType::living_room);
    const PlacementOrder order = hdfs_order(build_graph(org));
    CapsConfig config;
    config.seed = 99;
    const std::string a = serialize_layout(place_sequence(order, org, room, config));
    const std::string b = serialize_layout(place_sequence(order, org, room, config));
    CHECK(a == b);
}

TEST_CASE("layout JSON round trip preserves geometry") {
    SceneOrganization org;
    org.room_type = RoomType::kitchen;
    org.furniture = {item("table", 1.4, 0.8, 0.75), item("cup", 0.1, 0.1, 0.12, Mount::on_top)};
    org.relations = {{"cup", "table", RelationKind::on_top_of, {}}};
    const Room room = build_room(RoomType::kitchen);
    const PlacementOrder order = hdfs_order(build_graph(org));
    const Layout layout = place_sequence(order, org, room, CapsConfig{});

    const Layout back = parse_layout(serialize_layout(layout));
    REQUIRE(back.items.size() == layout.items.size());
    for (size_t i = 0; i < layout.items.size(); ++i) {
        CHECK(back.items[i].id == layout.items[i].id);
        CHECK(back.items[i].position.x == layout.items[i].position.x);
        CHECK(back.items[i].z == layout.items[i].z);
        CHECK(back.items[i].support == layout.items[i].support);
    }
    // The cup rides on the table's top face.
    const PlacedItem* cup = layout.find("cup");
    const PlacedItem* table = layout.find("table");
    REQUIRE(cup);
    REQUIRE(table);
    CHECK(cup->z == doctest::Approx(table->z_top()));
}

TEST_CASE("mount kinds resolve their vertical band") {
    SceneOrganization org;
    org.room_type = RoomType::living_room;
    org.furniture = {item("lamp", 0.4, 0.4, 0.3, Mount::ceiling),
                     item("mirror", 0.6, 0.05, 1.0, Mount::wall)};
    const Room room = build_room(RoomType::living_room);
    const PlacementOrder order = hdfs_order(build_graph(org));
    const Layout layout = place_sequence(order, org, room, CapsConfig{});
    CHECK(layout.find("lamp")->z == doctest::Approx(2.8 - 0.3));
    CHECK(layout.find("mirror")->z == doctest::Approx(1.0));
}
