#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace roomcraft {

enum class RoomType { living_room, bathroom, dining_room, kitchen, bedroom };
enum class Mount { floor, wall, ceiling, on_top };

std::string to_string(RoomType t);
std::string to_string(Mount m);
std::optional<RoomType> parse_room_type(const std::string& s);
std::optional<Mount> parse_mount(const std::string& s);

// Default dimensions for a furniture category, used when a scene spec omits
// sizes. Engineering defaults; the whole table is pinned by a golden file.
struct CatalogEntry {
    std::string category;
    double width = 0.0;   // lateral extent (m)
    double depth = 0.0;   // extent along facing (m)
    double height = 0.0;  // m
    Mount mount = Mount::floor;
};

const std::vector<CatalogEntry>& default_catalog();

// Lookup by category; unknown categories fall back to a generic box entry.
const CatalogEntry& catalog_entry(const std::string& category);
bool catalog_has(const std::string& category);

// Per-room-type shell defaults (size and window geometry). The door default
// is fixed: 0.9 m on the south wall, centered.
struct RoomTypeDefaults {
    double width = 0.0;
    double depth = 0.0;
    double wall_height = 2.8;
    std::string window_wall = "east";
    double window_width = 1.2;
    double window_sill = 0.9;
};

RoomTypeDefaults room_type_defaults(RoomType t);

// Machine-readable dump of the full defaults table (furniture + rooms),
// asserted byte-for-byte against tests/golden/catalog.json.
nlohmann::json catalog_json();

}  // namespace roomcraft
