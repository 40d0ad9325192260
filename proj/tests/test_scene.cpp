#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "roomcraft/catalog.hpp"
#include "roomcraft/errors.hpp"
#include "roomcraft/scene.hpp"

using namespace roomcraft;

namespace {

std::string golden_path(const std::string& name) {
    return std::string(ROOMCRAFT_SOURCE_DIR) + "/tests/golden/" + name;
}

std::string read_or_update_golden(const std::string& name, const std::string& actual) {
    const std::string path = golden_path(name);
    if (std::getenv("ROOMCRAFT_UPDATE_GOLDEN")) {
        std::ofstream out(path, std::ios::binary);
        out << actual;
    }
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path,
                    " (run with ROOMCRAFT_UPDATE_GOLDEN=1 to create)");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kBedroomSpec = R"json({
  "schema": "roomcraft/1",
  "room_type": "bedroom",
  "furniture": [
    {"id": "bed", "category": "bed"},
    {"id": "tv", "category": "tv"}
  ],
  "relations": [
    {"subject": "bed", "object": "wall:north", "relation": "against_wall"}
  ]
})json";

// Random valid organizations for the round-trip property.
SceneOrganization random_org(std::mt19937_64& rng) {
    static const char* colors[] = {"red", "blue", "green", "white"};
    static const char* materials[] = {"wood", "metal", "fabric"};
    SceneOrganization org;
    org.room_type = static_cast<RoomType>(rng() % 5);
    const int n = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
        FurnitureItem f;
        f.id = "item" + std::to_string(i);
        f.category = default_catalog()[rng() % default_catalog().size()].category;
        f.count = 1 + static_cast<int>(rng() % 3);
        f.width = 0.1 + oracle::u01(rng) * 2.0;
        f.depth = 0.1 + oracle::u01(rng) * 2.0;
        f.height = 0.1 + oracle::u01(rng) * 2.0;
        f.mount = rng() % 4 == 0 ? Mount::wall : Mount::floor;
        if (rng() % 2) f.color = colors[rng() % 4];
        if (rng() % 3 == 0) f.material = materials[rng() % 3];
        org.furniture.push_back(std::move(f));
    }
    static const RelationKind kinds[] = {RelationKind::near, RelationKind::face_to_face,
                                         RelationKind::side_by_side, RelationKind::behind};
    const int m = static_cast<int>(rng() % 4);
    for (int i = 0; i < m; ++i) {
        const size_t a = rng() % org.furniture.size();
        const size_t b = rng() % org.furniture.size();
        if (a == b) continue;
        org.relations.push_back({org.furniture[a].id, org.furniture[b].id, kinds[rng() % 4], {}});
    }
    if (rng() % 2) {
        org.relations.push_back({org.furniture[0].id, "wall:west", RelationKind::against_wall, {}});
    }
    if (rng() % 3 == 0) {
        org.relations.push_back({org.furniture[0].id,
                                 org.furniture.back().id == org.furniture[0].id
                                     ? "wall:east"
                                     : org.furniture.back().id,
                                 RelationKind::distance_range,
                                 {{"min", 0.5}, {"max", 2.5}}});
    }
    if (rng() % 2) {
        RoomSpec rs;
        rs.width = 3.0 + oracle::u01(rng) * 5.0;
        rs.depth = 3.0 + oracle::u01(rng) * 5.0;
        if (rng() % 2) rs.wall_height = 2.5 + oracle::u01(rng);
        org.room = rs;
    }
    return org;
}

// Direct re-implementation of the type invariants, used to cross-check
// validate_organization.
bool invariants_hold(const SceneOrganization& org) {
    std::set<std::string> ids;
    for (const auto& f : org.furniture) {
        if (!ids.insert(f.id).second) return false;
        if (f.width <= 0 || f.depth <= 0 || f.height <= 0 || f.count < 1) return false;
        if (f.yaw < 0 || f.yaw >= kTwoPi) return false;
    }
    for (const auto& e : org.relations) {
        if (!ids.count(e.subject)) return false;
        if (!ids.count(e.object) && !is_architectural_id(e.object)) return false;
        if (e.subject == e.object) return false;
        if (e.relation == RelationKind::distance_range) {
            if (!e.params.count("min") || !e.params.count("max")) return false;
            if (e.params.at("min") < 0 || e.params.at("max") < e.params.at("min")) return false;
        }
        if (e.relation == RelationKind::on_top_of && is_architectural_id(e.object)) return false;
    }
    for (const auto& f : org.furniture) {
        if (f.mount != Mount::on_top) continue;
        int n = 0;
        for (const auto& e : org.relations) {
            if (e.relation == RelationKind::on_top_of && e.subject == f.id) ++n;
        }
        if (n != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("parse maps a minimal bedroom spec") {
    const ParseResult r = parse_scene_spec(kBedroomSpec);
    CHECK(r.org.room_type == RoomType::bedroom);
    CHECK(r.org.furniture.size() == 2);
    CHECK(r.org.relations.size() == 1);
    // Sizes come from the catalog when the spec omits them.
    CHECK(r.org.furniture[0].width == doctest::Approx(2.0));
    CHECK(r.org.furniture[0].depth == doctest::Approx(1.6));
    CHECK(r.warnings.empty());
}

TEST_CASE("parse rejects a dangling reference") {
    const std::string spec = R"({
      "schema": "roomcraft/1", "room_type": "bedroom",
      "furniture": [{"id": "bed", "category": "bed"}],
      "relations": [{"subject": "lamp2", "object": "bed", "relation": "near"}]
    })";
    CHECK_THROWS_AS(parse_scene_spec(spec), DanglingReference);
    try {
        parse_scene_spec(spec);
    } catch (const DanglingReference& e) {
        CHECK(e.id == "lamp2");
    }
}

TEST_CASE("parse retains distance_range bounds") {
    const std::string spec = R"({
      "schema": "roomcraft/1", "room_type": "living_room",
      "furniture": [{"id": "sofa", "category": "sofa"}, {"id": "tv", "category": "tv"}],
      "relations": [{"subject": "sofa", "object": "tv", "relation": "distance_range",
                     "params": {"min": 2.0, "max": 3.5}}]
    })";
    const ParseResult r = parse_scene_spec(spec);
    REQUIRE(r.org.relations.size() == 1);
    CHECK(r.org.relations[0].params.at("min") == doctest::Approx(2.0));
    CHECK(r.org.relations[0].params.at("max") == doctest::Approx(3.5));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_scene_spec("not json"), MalformedDocument);
    CHECK_THROWS_AS(parse_scene_spec("{\"room_type\": \"bedroom\"}"), SchemaViolation);
    CHECK_THROWS_AS(parse_scene_spec(R"({"schema": "roomcraft/1", "room_type": "garage"})"),
                    SchemaViolation);
    CHECK_THROWS_AS(parse_scene_spec(R"({
      "schema": "roomcraft/1", "room_type": "bedroom",
      "furniture": [{"id": "x", "category": "bed"}],
      "relations": [{"subject": "x", "object": "wall:north", "relation": "levitates_above"}]
    })"),
                    SchemaViolation);
}

TEST_CASE("unknown fields produce warnings, not errors") {
    const std::string spec = R"({
      "schema": "roomcraft/1", "room_type": "bedroom", "mood": "cozy",
      "furniture": [{"id": "bed", "category": "bed", "brand": "acme"}]
    })";
    const ParseResult r = parse_scene_spec(spec);
    CHECK(r.warnings.size() == 2);
}

TEST_CASE("parse-serialize round trip is the identity") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const SceneOrganization org = random_org(rng);
        if (!invariants_hold(org)) continue;
        const std::string text = serialize_scene_spec(org);
        const ParseResult r = parse_scene_spec(text);
        CHECK(r.org == org);
    }
}

TEST_CASE("validate_organization matches a direct invariant check") {
    std::mt19937_64 rng(77);
    int invalid_seen = 0;
    for (int i = 0; i < 300; ++i) {
        SceneOrganization org = random_org(rng);
        // Mutate some organizations into invalid ones.
        if (rng() % 3 == 0 && !org.furniture.empty()) {
            switch (rng() % 4) {
                case 0: org.furniture.push_back(org.furniture[0]); break;  // duplicate id
                case 1: org.furniture[0].width = -1.0; break;
                case 2:
                    org.relations.push_back({"ghost", org.furniture[0].id, RelationKind::near, {}});
                    break;
                case 3: org.furniture[0].count = 0; break;
            }
        }
        const bool want_valid = invariants_hold(org);
        bool has_error = false;
        for (const ValidationIssue& issue : validate_organization(org)) {
            has_error |= issue.severity == ValidationIssue::Severity::error;
        }
        CHECK(has_error == !want_valid);
        invalid_seen += !want_valid;
    }
    CHECK(invalid_seen > 20);
}

TEST_CASE("validation pins the spec edge cases") {
    SceneOrganization org;
    org.room_type = RoomType::bedroom;
    FurnitureItem chair;
    chair.id = "chair1";
    chair.category = "chair";
    chair.width = chair.depth = 0.5;
    chair.height = 0.9;
    org.furniture.push_back(chair);
    org.furniture.push_back(chair);  // duplicate
    auto issues = validate_organization(org);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].severity == ValidationIssue::Severity::error);
    CHECK(issues[0].id == "chair1");

    // mount=on_top without an on_top_of relation
    SceneOrganization org2;
    org2.room_type = RoomType::kitchen;
    FurnitureItem cup;
    cup.id = "cup";
    cup.category = "cup";
    cup.width = cup.depth = 0.1;
    cup.height = 0.12;
    cup.mount = Mount::on_top;
    org2.furniture.push_back(cup);
    auto issues2 = validate_organization(org2);
    REQUIRE(issues2.size() == 1);
    CHECK(issues2[0].id == "cup");

    // a valid five-item bedroom validates cleanly
    SceneOrganization org3;
    org3.room_type = RoomType::bedroom;
    for (const char* id : {"bed", "wardrobe", "desk", "chair", "lamp"}) {
        FurnitureItem f;
        f.id = id;
        f.category = id;
        const CatalogEntry& e = catalog_entry(id);
        f.width = e.width;
        f.depth = e.depth;
        f.height = e.height;
        org3.furniture.push_back(std::move(f));
    }
    CHECK(validate_organization(org3).empty());
}

TEST_CASE("count expansion produces indexed clones with fanned-out relations") {
    SceneOrganization org;
    org.room_type = RoomType::dining_room;
    FurnitureItem chair;
    chair.id = "chair";
    chair.category = "chair";
    chair.count = 3;
    chair.width = chair.depth = 0.5;
    chair.height = 0.9;
    FurnitureItem table;
    table.id = "table";
    table.category = "table";
    table.width = 1.4;
    table.depth = 0.8;
    table.height = 0.75;
    org.furniture.push_back(chair);
    org.furniture.push_back(table);
    org.relations.push_back({"chair", "table", RelationKind::near, {}});

    const SceneOrganization ex = expand_counts(org);
    CHECK(ex.furniture.size() == 4);
    CHECK(ex.find("chair#1") != nullptr);
    CHECK(ex.find("chair#3") != nullptr);
    CHECK(ex.find("table") != nullptr);
    CHECK(ex.relations.size() == 3);  // one near edge per clone
    CHECK(expand_counts(ex) == ex);   // idempotent
}

TEST_CASE("on_top_of expansion pairs clones round-robin") {
    SceneOrganization org;
    org.room_type = RoomType::kitchen;
    FurnitureItem cup;
    cup.id = "cup";
    cup.category = "cup";
    cup.count = 2;
    cup.width = cup.depth = 0.1;
    cup.height = 0.12;
    cup.mount = Mount::on_top;
    FurnitureItem table;
    table.id = "table";
    table.category = "table";
    table.width = 1.4;
    table.depth = 0.8;
    table.height = 0.75;
    org.furniture.push_back(cup);
    org.furniture.push_back(table);
    org.relations.push_back({"cup", "table", RelationKind::on_top_of, {}});

    const SceneOrganization ex = expand_counts(org);
    int on_top_edges = 0;
    for (const RelationEdge& e : ex.relations) {
        if (e.relation == RelationKind::on_top_of) {
            ++on_top_edges;
            CHECK(e.object == "table");
        }
    }
    CHECK(on_top_edges == 2);
    CHECK(validate_organization(ex).empty());
}

TEST_CASE("build_room defaults and errors") {
    const Room r = build_room(RoomType::bedroom, {{5.0, 4.0}});
    REQUIRE(r.doors.size() == 1);
    CHECK(r.doors[0].wall == "south");
    CHECK(r.doors[0].width == doctest::Approx(0.9));
    CHECK(r.doors[0].offset == doctest::Approx((5.0 - 0.9) / 2));
    REQUIRE(r.windows.size() == 1);

    CHECK_THROWS_AS(build_room(RoomType::bedroom, {{0.5, 4.0}}), InvalidDimensions);
    CHECK_THROWS_AS(build_room(RoomType::bedroom, {{5.0, 60.0}}), InvalidDimensions);
}

TEST_CASE("build_room is deterministic") {
    for (RoomType t : {RoomType::bedroom, RoomType::kitchen, RoomType::bathroom}) {
        CHECK(serialize_room(build_room(t)) == serialize_room(build_room(t)));
    }
}

TEST_CASE("room defaults are pinned by golden file") {
    nlohmann::json j;
    for (RoomType t : {RoomType::living_room, RoomType::bathroom, RoomType::dining_room,
                       RoomType::kitchen, RoomType::bedroom}) {
        j[to_string(t)] = nlohmann::json::parse(serialize_room(build_room(t)));
    }
    const std::string actual = j.dump(2) + "\n";
    CHECK(actual == read_or_update_golden("room_defaults.json", actual));
}

TEST_CASE("furniture catalog is pinned by golden file") {
    const std::string actual = catalog_json().dump(2) + "\n";
    CHECK(actual == read_or_update_golden("catalog.json", actual));
    // Spot checks from the defaults ledger.
    CHECK(catalog_entry("bed").width == doctest::Approx(2.0));
    CHECK(catalog_entry("sofa").depth == doctest::Approx(0.9));
    CHECK(catalog_entry("tv").height == doctest::Approx(0.7));
    CHECK(catalog_entry("made_up_thing").width == doctest::Approx(0.6));
}

TEST_CASE("make_room applies spec overrides") {
    SceneOrganization org;
    org.room_type = RoomType::bedroom;
    RoomSpec rs;
    rs.width = 6.0;
    rs.depth = 5.0;
    rs.doors.push_back({"east", 1.0, 1.0});
    org.room = rs;
    const Room room = make_room(org);
    CHECK(room.width == doctest::Approx(6.0));
    CHECK(room.depth == doctest::Approx(5.0));
    REQUIRE(room.doors.size() == 1);
    CHECK(room.doors[0].wall == "east");
}
