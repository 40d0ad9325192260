#include "roomcraft/catalog.hpp"

namespace roomcraft {

std::string to_string(RoomType t) {
    switch (t) {
        case RoomType::living_room: return "living_room";
        case RoomType::bathroom: return "bathroom";
        case RoomType::dining_room: return "dining_room";
        case RoomType::kitchen: return "kitchen";
        case RoomType::bedroom: return "bedroom";
    }
    return "living_room";
}

std::string to_string(Mount m) {
    switch (m) {
        case Mount::floor: return "floor";
        case Mount::wall: return "wall";
        case Mount::ceiling: return "ceiling";
        case Mount::on_top: return "on_top";
    }
    return "floor";
}

std::optional<RoomType> parse_room_type(const std::string& s) {
    if (s == "living_room") return RoomType::living_room;
    if (s == "bathroom") return RoomType::bathroom;
    if (s == "dining_room") return RoomType::dining_room;
    if (s == "kitchen") return RoomType::kitchen;
    if (s == "bedroom") return RoomType::bedroom;
    return std::nullopt;
}

std::optional<Mount> parse_mount(const std::string& s) {
    if (s == "floor") return Mount::floor;
    if (s == "wall") return Mount::wall;
    if (s == "ceiling") return Mount::ceiling;
    if (s == "on_top") return Mount::on_top;
    return std::nullopt;
}

const std::vector<CatalogEntry>& default_catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"armchair", 0.80, 0.80, 0.90, Mount::floor},
        {"bathtub", 1.70, 0.80, 0.60, Mount::floor},
        {"bed", 2.00, 1.60, 0.50, Mount::floor},
        {"book", 0.20, 0.15, 0.03, Mount::on_top},
        {"bookshelf", 0.80, 0.30, 1.80, Mount::floor},
        {"cabinet", 0.90, 0.45, 1.00, Mount::floor},
        {"ceiling_lamp", 0.40, 0.40, 0.30, Mount::ceiling},
        {"chair", 0.50, 0.50, 0.90, Mount::floor},
        {"coffee_table", 1.00, 0.60, 0.45, Mount::floor},
        {"counter", 1.80, 0.60, 0.90, Mount::floor},
        {"cup", 0.10, 0.10, 0.12, Mount::on_top},
        {"desk", 1.20, 0.60, 0.75, Mount::floor},
        {"dining_table", 1.80, 1.00, 0.75, Mount::floor},
        {"dresser", 1.00, 0.50, 0.80, Mount::floor},
        {"fridge", 0.70, 0.70, 1.80, Mount::floor},
        {"kitchen_island", 1.50, 0.90, 0.90, Mount::floor},
        {"lamp", 0.30, 0.30, 1.50, Mount::floor},
        {"mirror", 0.60, 0.05, 1.00, Mount::wall},
        {"nightstand", 0.45, 0.40, 0.50, Mount::floor},
        {"painting", 0.80, 0.05, 0.60, Mount::wall},
        {"plant", 0.40, 0.40, 1.20, Mount::floor},
        {"shower", 0.90, 0.90, 2.00, Mount::floor},
        {"sink", 0.50, 0.45, 0.85, Mount::floor},
        {"sofa", 2.00, 0.90, 0.80, Mount::floor},
        {"stove", 0.60, 0.60, 0.90, Mount::floor},
        {"table", 1.40, 0.80, 0.75, Mount::floor},
        {"toilet", 0.60, 0.70, 0.80, Mount::floor},
        {"tv", 1.20, 0.10, 0.70, Mount::floor},
        {"vase", 0.15, 0.15, 0.30, Mount::on_top},
        {"wardrobe", 1.20, 0.60, 2.00, Mount::floor},
    };
    return entries;
}

namespace {
const CatalogEntry kFallback{"unknown", 0.60, 0.60, 0.80, Mount::floor};
}

const CatalogEntry& catalog_entry(const std::string& category) {
    for (const CatalogEntry& e : default_catalog()) {
        if (e.category == category) return e;
    }
    return kFallback;
}

bool catalog_has(const std::string& category) {
    for (const CatalogEntry& e : default_catalog()) {
        if (e.category == category) return true;
    }
    return false;
}

RoomTypeDefaults room_type_defaults(RoomType t) {
    switch (t) {
        case RoomType::living_room: return {6.0, 5.0, 2.8, "east", 1.2, 0.9};
        case RoomType::bathroom: return {3.0, 2.5, 2.8, "east", 0.6, 1.4};
        case RoomType::dining_room: return {5.0, 4.5, 2.8, "east", 1.2, 0.9};
        case RoomType::kitchen: return {4.0, 3.5, 2.8, "north", 1.0, 1.1};
        case RoomType::bedroom: return {5.0, 4.0, 2.8, "east", 1.2, 0.9};
    }
    return {5.0, 4.0, 2.8, "east", 1.2, 0.9};
}

nlohmann::json catalog_json() {
    nlohmann::json j;
    j["furniture"] = nlohmann::json::array();
    for (const CatalogEntry& e : default_catalog()) {
        j["furniture"].push_back({{"category", e.category},
                                  {"w", e.width},
                                  {"d", e.depth},
                                  {"h", e.height},
                                  {"mount", to_string(e.mount)}});
    }
    j["rooms"] = nlohmann::json::object();
    for (RoomType t : {RoomType::living_room, RoomType::bathroom, RoomType::dining_room,
                       RoomType::kitchen, RoomType::bedroom}) {
        const RoomTypeDefaults d = room_type_defaults(t);
        j["rooms"][to_string(t)] = {{"width", d.width},
                                    {"depth", d.depth},
                                    {"wall_height", d.wall_height},
                                    {"window_wall", d.window_wall},
                                    {"window_width", d.window_width},
                                    {"window_sill", d.window_sill}};
    }
    return j;
}

}  // namespace roomcraft
