#include "roomcraft/scene.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

#include "roomcraft/errors.hpp"
#include "roomcraft/geometry.hpp"

namespace roomcraft {

using nlohmann::json;

namespace {

const char* kRelationNames[] = {
    "against_wall", "near_wall",  "away_from_wall", "corner",       "ceiling_mounted",
    "on_floor",     "in_front_of", "behind",        "left_of",      "right_of",
    "face_to_face", "back_to_back", "side_by_side", "aligned_with", "on_top_of",
    "touching",     "near",        "far_from",      "distance_range"};

constexpr double kMinRoomDim = 1.0;
constexpr double kMaxRoomDim = 50.0;

bool is_wall_name(const std::string& w) {
    return w == "north" || w == "south" || w == "east" || w == "west";
}

}  // namespace

std::string to_string(RelationKind k) { return kRelationNames[static_cast<int>(k)]; }

std::optional<RelationKind> parse_relation_kind(const std::string& s) {
    for (int i = 0; i < static_cast<int>(std::size(kRelationNames)); ++i) {
        if (s == kRelationNames[i]) return static_cast<RelationKind>(i);
    }
    return std::nullopt;
}

bool is_architectural_id(const std::string& id) {
    return id == "floor" || id == "ceiling" || !wall_of_id(id).empty();
}

std::string wall_of_id(const std::string& id) {
    if (id.rfind("wall:", 0) == 0) {
        const std::string w = id.substr(5);
        if (is_wall_name(w)) return w;
    }
    return "";
}

double Room::wall_length(const std::string& wall) const {
    return (wall == "north" || wall == "south") ? width : depth;
}

const FurnitureItem* SceneOrganization::find(const std::string& id) const {
    for (const FurnitureItem& f : furniture) {
        if (f.id == id) return &f;
    }
    return nullptr;
}

// ---------------------------------------------------------------- parsing

namespace {

void check_known_keys(const json& obj, const std::set<std::string>& known,
                      const std::string& where, std::vector<std::string>& warnings) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key())) {
            warnings.push_back("unknown field '" + it.key() + "' in " + where + " ignored");
        }
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw SchemaViolation("missing or non-numeric '" + key + "' in " + where);
    }
    return obj[key].get<double>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_string()) {
        throw SchemaViolation("missing or non-string '" + key + "' in " + where);
    }
    return obj[key].get<std::string>();
}

Door parse_door(const json& j, std::vector<std::string>& warnings) {
    check_known_keys(j, {"wall", "offset", "width"}, "door", warnings);
    Door d;
    d.wall = require_string(j, "wall", "door");
    if (!is_wall_name(d.wall)) throw SchemaViolation("invalid wall '" + d.wall + "' in door");
    d.offset = require_number(j, "offset", "door");
    d.width = require_number(j, "width", "door");
    return d;
}

Window parse_window(const json& j, std::vector<std::string>& warnings) {
    check_known_keys(j, {"wall", "offset", "width", "sill"}, "window", warnings);
    Window w;
    w.wall = require_string(j, "wall", "window");
    if (!is_wall_name(w.wall)) throw SchemaViolation("invalid wall '" + w.wall + "' in window");
    w.offset = require_number(j, "offset", "window");
    w.width = require_number(j, "width", "window");
    w.sill = require_number(j, "sill", "window");
    return w;
}

}  // namespace

ParseResult parse_scene_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedDocument(e.what());
    }
    if (!doc.is_object()) throw MalformedDocument("top-level value must be an object");

    ParseResult result;
    check_known_keys(doc, {"schema", "room_type", "room", "furniture", "relations"}, "document",
                     result.warnings);

    if (!doc.contains("schema") || doc["schema"] != "roomcraft/1") {
        throw SchemaViolation("missing or unsupported 'schema' (expected \"roomcraft/1\")");
    }

    const std::string rt = require_string(doc, "room_type", "document");
    const auto room_type = parse_room_type(rt);
    if (!room_type) throw SchemaViolation("unknown room_type '" + rt + "'");
    result.org.room_type = *room_type;

    if (doc.contains("room")) {
        const json& jr = doc["room"];
        if (!jr.is_object()) throw SchemaViolation("'room' must be an object");
        check_known_keys(jr, {"width", "depth", "wall_height", "doors", "windows"}, "room",
                         result.warnings);
        RoomSpec rs;
        if (jr.contains("width")) rs.width = require_number(jr, "width", "room");
        if (jr.contains("depth")) rs.depth = require_number(jr, "depth", "room");
        if (jr.contains("wall_height")) rs.wall_height = require_number(jr, "wall_height", "room");
        for (const auto& [dim, name] : {std::pair{rs.width, "width"}, {rs.depth, "depth"}}) {
            if (dim && (*dim < kMinRoomDim || *dim > kMaxRoomDim)) {
                throw SchemaViolation(std::string("room ") + name + " outside [1.0, 50.0] m");
            }
        }
        if (jr.contains("doors")) {
            for (const json& jd : jr["doors"]) rs.doors.push_back(parse_door(jd, result.warnings));
        }
        if (jr.contains("windows")) {
            for (const json& jw : jr["windows"])
                rs.windows.push_back(parse_window(jw, result.warnings));
        }
        result.org.room = std::move(rs);
    }

    if (doc.contains("furniture")) {
        if (!doc["furniture"].is_array()) throw SchemaViolation("'furniture' must be an array");
        for (const json& jf : doc["furniture"]) {
            if (!jf.is_object()) throw SchemaViolation("furniture entry must be an object");
            check_known_keys(jf, {"id", "category", "count", "size", "color", "material", "mount"},
                             "furniture", result.warnings);
            FurnitureItem item;
            item.id = require_string(jf, "id", "furniture");
            if (item.id.empty()) throw SchemaViolation("furniture id must be non-empty");
            if (is_architectural_id(item.id)) {
                throw SchemaViolation("furniture id '" + item.id + "' is reserved");
            }
            item.category = require_string(jf, "category", "furniture " + item.id);
            if (jf.contains("count")) {
                if (!jf["count"].is_number_integer() || jf["count"].get<int>() < 1) {
                    throw SchemaViolation("count must be a positive integer on " + item.id);
                }
                item.count = jf["count"].get<int>();
            }
            const CatalogEntry& cat = catalog_entry(item.category);
            if (jf.contains("size")) {
                const json& js = jf["size"];
                if (!js.is_object()) throw SchemaViolation("size must be an object on " + item.id);
                check_known_keys(js, {"w", "d", "h"}, "size of " + item.id, result.warnings);
                item.width = require_number(js, "w", "size of " + item.id);
                item.depth = require_number(js, "d", "size of " + item.id);
                item.height = require_number(js, "h", "size of " + item.id);
                if (item.width <= 0 || item.depth <= 0 || item.height <= 0) {
                    throw SchemaViolation("size values must be positive on " + item.id);
                }
            } else {
                item.width = cat.width;
                item.depth = cat.depth;
                item.height = cat.height;
            }
            if (jf.contains("color")) item.color = require_string(jf, "color", item.id);
            if (jf.contains("material")) item.material = require_string(jf, "material", item.id);
            if (jf.contains("mount")) {
                const std::string m = require_string(jf, "mount", item.id);
                const auto mount = parse_mount(m);
                if (!mount) throw SchemaViolation("unknown mount '" + m + "' on " + item.id);
                item.mount = *mount;
            } else {
                item.mount = cat.mount;
            }
            result.org.furniture.push_back(std::move(item));
        }
    }

    if (doc.contains("relations")) {
        if (!doc["relations"].is_array()) throw SchemaViolation("'relations' must be an array");
        for (const json& jr : doc["relations"]) {
            if (!jr.is_object()) throw SchemaViolation("relation entry must be an object");
            check_known_keys(jr, {"subject", "object", "relation", "params"}, "relation",
                             result.warnings);
            RelationEdge edge;
            edge.subject = require_string(jr, "subject", "relation");
            edge.object = require_string(jr, "object", "relation");
            const std::string kind = require_string(jr, "relation", "relation");
            const auto rel = parse_relation_kind(kind);
            if (!rel) throw SchemaViolation("unknown relation kind '" + kind + "'");
            edge.relation = *rel;
            if (jr.contains("params")) {
                const json& jp = jr["params"];
                if (!jp.is_object()) throw SchemaViolation("relation params must be an object");
                for (auto it = jp.begin(); it != jp.end(); ++it) {
                    if (!it.value().is_number()) {
                        throw SchemaViolation("relation param '" + it.key() +
                                              "' must be numeric");
                    }
                    edge.params[it.key()] = it.value().get<double>();
                }
            }
            if (edge.relation == RelationKind::distance_range) {
                if (!edge.params.count("min") || !edge.params.count("max") ||
                    edge.params["min"] < 0 || edge.params["max"] < edge.params["min"]) {
                    throw SchemaViolation("distance_range requires 0 <= params.min <= params.max");
                }
            }
            result.org.relations.push_back(std::move(edge));
        }
    }

    // Reference check: relations must name declared furniture or architecture.
    std::set<std::string> ids;
    for (const FurnitureItem& f : result.org.furniture) ids.insert(f.id);
    for (const RelationEdge& e : result.org.relations) {
        if (!ids.count(e.subject)) throw DanglingReference(e.subject);
        if (!ids.count(e.object) && !is_architectural_id(e.object)) {
            throw DanglingReference(e.object);
        }
    }

    const auto issues = validate_organization(result.org);
    for (const ValidationIssue& issue : issues) {
        if (issue.severity == ValidationIssue::Severity::error) {
            throw SchemaViolation(issue.message);
        }
        result.warnings.push_back(issue.message);
    }
    return result;
}

std::string serialize_scene_spec(const SceneOrganization& org) {
    json doc;
    doc["schema"] = "roomcraft/1";
    doc["room_type"] = to_string(org.room_type);
    if (org.room) {
        json jr = json::object();
        if (org.room->width) jr["width"] = *org.room->width;
        if (org.room->depth) jr["depth"] = *org.room->depth;
        if (org.room->wall_height) jr["wall_height"] = *org.room->wall_height;
        if (!org.room->doors.empty()) {
            jr["doors"] = json::array();
            for (const Door& d : org.room->doors) {
                jr["doors"].push_back({{"wall", d.wall}, {"offset", d.offset}, {"width", d.width}});
            }
        }
        if (!org.room->windows.empty()) {
            jr["windows"] = json::array();
            for (const Window& w : org.room->windows) {
                jr["windows"].push_back(
                    {{"wall", w.wall}, {"offset", w.offset}, {"width", w.width}, {"sill", w.sill}});
            }
        }
        doc["room"] = std::move(jr);
    }
    doc["furniture"] = json::array();
    for (const FurnitureItem& f : org.furniture) {
        json jf;
        jf["id"] = f.id;
        jf["category"] = f.category;
        if (f.count != 1) jf["count"] = f.count;
        jf["size"] = {{"w", f.width}, {"d", f.depth}, {"h", f.height}};
        if (f.color) jf["color"] = *f.color;
        if (f.material) jf["material"] = *f.material;
        jf["mount"] = to_string(f.mount);
        doc["furniture"].push_back(std::move(jf));
    }
    doc["relations"] = json::array();
    for (const RelationEdge& e : org.relations) {
        json je;
        je["subject"] = e.subject;
        je["object"] = e.object;
        je["relation"] = to_string(e.relation);
        if (!e.params.empty()) {
            je["params"] = json::object();
            for (const auto& [k, v] : e.params) je["params"][k] = v;
        }
        doc["relations"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

// ------------------------------------------------------------- validation

namespace {

void check_openings(const std::vector<Door>& doors, const std::vector<Window>& windows,
                    double width, double depth, std::vector<ValidationIssue>& issues) {
    struct Span {
        std::string wall;
        double lo, hi;
        std::string what;
    };
    std::vector<Span> spans;
    auto wall_len = [&](const std::string& w) { return (w == "north" || w == "south") ? width : depth; };
    for (const Door& d : doors) {
        if (d.offset < 0 || d.width <= 0 || d.offset + d.width > wall_len(d.wall) + 1e-9) {
            issues.push_back({ValidationIssue::Severity::error, d.wall,
                              "door on " + d.wall + " wall exceeds wall extent"});
        }
        spans.push_back({d.wall, d.offset, d.offset + d.width, "door"});
    }
    for (const Window& w : windows) {
        if (w.offset < 0 || w.width <= 0 || w.offset + w.width > wall_len(w.wall) + 1e-9) {
            issues.push_back({ValidationIssue::Severity::error, w.wall,
                              "window on " + w.wall + " wall exceeds wall extent"});
        }
        if (w.sill < 0) {
            issues.push_back(
                {ValidationIssue::Severity::error, w.wall, "window sill must be non-negative"});
        }
        spans.push_back({w.wall, w.offset, w.offset + w.width, "window"});
    }
    for (size_t i = 0; i < spans.size(); ++i) {
        for (size_t j = i + 1; j < spans.size(); ++j) {
            if (spans[i].wall != spans[j].wall) continue;
            if (std::min(spans[i].hi, spans[j].hi) - std::max(spans[i].lo, spans[j].lo) > 1e-9) {
                issues.push_back({ValidationIssue::Severity::error, spans[i].wall,
                                  spans[i].what + " and " + spans[j].what + " overlap on " +
                                      spans[i].wall + " wall"});
            }
        }
    }
}

}  // namespace

std::vector<ValidationIssue> validate_organization(const SceneOrganization& org) {
    std::vector<ValidationIssue> issues;
    using Sev = ValidationIssue::Severity;

    std::set<std::string> ids;
    for (const FurnitureItem& f : org.furniture) {
        if (!ids.insert(f.id).second) {
            issues.push_back({Sev::error, f.id, "duplicate furniture id '" + f.id + "'"});
        }
        if (f.id.empty()) issues.push_back({Sev::error, f.id, "empty furniture id"});
        if (f.width <= 0 || f.depth <= 0) {
            issues.push_back({Sev::error, f.id, "footprint dimensions must be > 0 on " + f.id});
        }
        if (f.height <= 0) {
            issues.push_back({Sev::error, f.id, "height must be > 0 on " + f.id});
        }
        if (f.count < 1) issues.push_back({Sev::error, f.id, "count must be >= 1 on " + f.id});
        if (f.yaw < 0.0 || f.yaw >= kTwoPi) {
            issues.push_back({Sev::error, f.id, "yaw outside [0, 2*pi) on " + f.id});
        }
    }

    for (const RelationEdge& e : org.relations) {
        if (!ids.count(e.subject)) {
            issues.push_back({Sev::error, e.subject,
                              "relation subject '" + e.subject + "' is not a furniture id"});
        }
        if (!ids.count(e.object) && !is_architectural_id(e.object)) {
            issues.push_back(
                {Sev::error, e.object, "relation object '" + e.object + "' is undeclared"});
        }
        if (e.subject == e.object) {
            issues.push_back({Sev::error, e.subject, "self-relation on '" + e.subject + "'"});
        }
        if (e.relation == RelationKind::distance_range) {
            const auto mn = e.params.find("min");
            const auto mx = e.params.find("max");
            if (mn == e.params.end() || mx == e.params.end() || mn->second < 0 ||
                mx->second < mn->second) {
                issues.push_back({Sev::error, e.subject,
                                  "distance_range requires 0 <= min <= max between '" + e.subject +
                                      "' and '" + e.object + "'"});
            }
        }
        if (e.relation == RelationKind::on_top_of && is_architectural_id(e.object)) {
            issues.push_back({Sev::error, e.subject,
                              "on_top_of object must be a furniture item, got '" + e.object + "'"});
        }
    }

    // mount=on_top items must be the subject of exactly one on_top_of edge.
    for (const FurnitureItem& f : org.furniture) {
        if (f.mount != Mount::on_top) continue;
        int n = 0;
        for (const RelationEdge& e : org.relations) {
            if (e.relation == RelationKind::on_top_of && e.subject == f.id) ++n;
        }
        if (n != 1) {
            issues.push_back({Sev::error, f.id,
                              "on_top item '" + f.id + "' must have exactly one on_top_of relation, has " +
                                  std::to_string(n)});
        }
    }

    if (org.room) {
        const RoomTypeDefaults defaults = room_type_defaults(org.room_type);
        const double w = org.room->width.value_or(defaults.width);
        const double d = org.room->depth.value_or(defaults.depth);
        if (w < kMinRoomDim || w > kMaxRoomDim || d < kMinRoomDim || d > kMaxRoomDim) {
            issues.push_back({Sev::error, "room", "room dimensions outside [1.0, 50.0] m"});
        } else {
            check_openings(org.room->doors, org.room->windows, w, d, issues);
        }
    }
    return issues;
}

SceneOrganization expand_counts(const SceneOrganization& org) {
    SceneOrganization out;
    out.room_type = org.room_type;
    out.room = org.room;

    std::map<std::string, std::vector<std::string>> clones;
    for (const FurnitureItem& f : org.furniture) {
        if (f.count <= 1) {
            clones[f.id] = {f.id};
            out.furniture.push_back(f);
            out.furniture.back().count = 1;
            continue;
        }
        std::vector<std::string> names;
        for (int i = 1; i <= f.count; ++i) {
            FurnitureItem clone = f;
            clone.id = f.id + "#" + std::to_string(i);
            clone.count = 1;
            names.push_back(clone.id);
            out.furniture.push_back(std::move(clone));
        }
        clones[f.id] = std::move(names);
    }

    auto ids_for = [&](const std::string& id) -> std::vector<std::string> {
        const auto it = clones.find(id);
        if (it != clones.end()) return it->second;
        return {id};  // architectural ids pass through
    };

    for (const RelationEdge& e : org.relations) {
        const auto subjects = ids_for(e.subject);
        const auto objects = ids_for(e.object);
        if (e.relation == RelationKind::on_top_of && objects.size() >= 1) {
            // Pair clones round-robin so each child keeps a single support.
            for (size_t i = 0; i < subjects.size(); ++i) {
                RelationEdge edge = e;
                edge.subject = subjects[i];
                edge.object = objects[i % objects.size()];
                out.relations.push_back(std::move(edge));
            }
            continue;
        }
        for (size_t i = 0; i < subjects.size(); ++i) {
            for (size_t j = 0; j < objects.size(); ++j) {
                if (e.subject == e.object && j <= i) continue;  // same-base pairs: i < j once
                if (subjects[i] == objects[j]) continue;
                RelationEdge edge = e;
                edge.subject = subjects[i];
                edge.object = objects[j];
                out.relations.push_back(std::move(edge));
            }
        }
    }
    return out;
}

Room build_room(RoomType type, std::optional<std::pair<double, double>> dims) {
    const RoomTypeDefaults defaults = room_type_defaults(type);
    const double w = dims ? dims->first : defaults.width;
    const double d = dims ? dims->second : defaults.depth;
    if (w < kMinRoomDim || w > kMaxRoomDim || d < kMinRoomDim || d > kMaxRoomDim) {
        throw InvalidDimensions("room dimensions must lie in [1.0, 50.0] m");
    }
    Room room;
    room.width = w;
    room.depth = d;
    room.wall_height = defaults.wall_height;

    auto fit_width = [](double want, double wall) {
        // Shrink an opening that would not fit its wall, keeping 0.05 m margins.
        return want + 0.1 <= wall ? want : std::max(0.1, wall - 0.1);
    };
    const double door_w = fit_width(0.9, w);
    room.doors.push_back({"south", (w - door_w) / 2.0, door_w});

    const double win_wall_len = (defaults.window_wall == "north" || defaults.window_wall == "south")
                                    ? w
                                    : d;
    const double win_w = fit_width(defaults.window_width, win_wall_len);
    room.windows.push_back(
        {defaults.window_wall, (win_wall_len - win_w) / 2.0, win_w, defaults.window_sill});
    return room;
}

Room make_room(const SceneOrganization& org) {
    std::optional<std::pair<double, double>> dims;
    const RoomTypeDefaults defaults = room_type_defaults(org.room_type);
    if (org.room && (org.room->width || org.room->depth)) {
        dims = {org.room->width.value_or(defaults.width),
                org.room->depth.value_or(defaults.depth)};
    }
    Room room = build_room(org.room_type, dims);
    if (org.room) {
        if (org.room->wall_height) room.wall_height = *org.room->wall_height;
        if (!org.room->doors.empty()) room.doors = org.room->doors;
        if (!org.room->windows.empty()) room.windows = org.room->windows;
    }
    return room;
}

std::string serialize_room(const Room& room) {
    json j;
    j["width"] = room.width;
    j["depth"] = room.depth;
    j["wall_height"] = room.wall_height;
    j["doors"] = json::array();
    for (const Door& d : room.doors) {
        j["doors"].push_back({{"wall", d.wall}, {"offset", d.offset}, {"width", d.width}});
    }
    j["windows"] = json::array();
    for (const Window& w : room.windows) {
        j["windows"].push_back(
            {{"wall", w.wall}, {"offset", w.offset}, {"width", w.width}, {"sill", w.sill}});
    }
    return j.dump(2) + "\n";
}

}  // namespace roomcraft
