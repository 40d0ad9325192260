#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roomcraft/catalog.hpp"

namespace roomcraft {

enum class RelationKind {
    against_wall,
    near_wall,
    away_from_wall,
    corner,
    ceiling_mounted,
    on_floor,
    in_front_of,
    behind,
    left_of,
    right_of,
    face_to_face,
    back_to_back,
    side_by_side,
    aligned_with,
    on_top_of,
    touching,
    near,
    far_from,
    distance_range,
};

std::string to_string(RelationKind k);
std::optional<RelationKind> parse_relation_kind(const std::string& s);

// Reserved architectural ids usable as relation objects.
bool is_architectural_id(const std::string& id);
// "wall:north" -> "north"; empty if not a wall id.
std::string wall_of_id(const std::string& id);

struct FurnitureItem {
    std::string id;
    std::string category;
    int count = 1;
    double width = 0.0;   // footprint lateral extent (m)
    double depth = 0.0;   // footprint extent along facing (m)
    double height = 0.0;  // m
    double yaw = 0.0;     // radians in [0, 2*pi)
    std::optional<std::string> color;
    std::optional<std::string> material;
    Mount mount = Mount::floor;

    bool operator==(const FurnitureItem&) const = default;
};

struct RelationEdge {
    std::string subject;
    std::string object;
    RelationKind relation = RelationKind::near;
    std::map<std::string, double> params;

    bool operator==(const RelationEdge&) const = default;
};

struct Door {
    std::string wall;  // north | south | east | west
    double offset = 0.0;
    double width = 0.0;

    bool operator==(const Door&) const = default;
};

struct Window {
    std::string wall;
    double offset = 0.0;
    double width = 0.0;
    double sill = 0.0;

    bool operator==(const Window&) const = default;
};

struct Room {
    double width = 0.0;
    double depth = 0.0;
    double wall_height = 2.8;
    std::vector<Door> doors;
    std::vector<Window> windows;

    bool operator==(const Room&) const = default;
    double wall_length(const std::string& wall) const;
};

// Optional room overrides carried by a scene spec document.
struct RoomSpec {
    std::optional<double> width;
    std::optional<double> depth;
    std::optional<double> wall_height;
    std::vector<Door> doors;
    std::vector<Window> windows;

    bool operator==(const RoomSpec&) const = default;
};

struct SceneOrganization {
    RoomType room_type = RoomType::living_room;
    std::vector<FurnitureItem> furniture;
    std::vector<RelationEdge> relations;
    std::optional<RoomSpec> room;

    bool operator==(const SceneOrganization&) const = default;
    const FurnitureItem* find(const std::string& id) const;
};

struct ValidationIssue {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    std::string id;       // offending furniture/relation id
    std::string message;
};

struct ParseResult {
    SceneOrganization org;
    std::vector<std::string> warnings;  // unknown fields etc.
};

// Parse the roomcraft/1 scene spec format. Throws MalformedDocument,
// SchemaViolation, or DanglingReference.
ParseResult parse_scene_spec(const std::string& text);

std::string serialize_scene_spec(const SceneOrganization& org);

// Total function: empty result iff all type invariants hold.
std::vector<ValidationIssue> validate_organization(const SceneOrganization& org);

// Expand count > 1 items into indexed clones (chair#1, chair#2); relations
// referencing the base id are duplicated per clone. Idempotent.
SceneOrganization expand_counts(const SceneOrganization& org);

// Rectangular shell with the default door (0.9 m, south wall, centered) and
// the room type's default window. Throws InvalidDimensions.
Room build_room(RoomType type, std::optional<std::pair<double, double>> dims = std::nullopt);

// build_room plus overrides from the organization's room block.
Room make_room(const SceneOrganization& org);

std::string serialize_room(const Room& room);

}  // namespace roomcraft
