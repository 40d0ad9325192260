#include "roomcraft/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "roomcraft/errors.hpp"

namespace roomcraft {

using nlohmann::json;

namespace {

constexpr double kAgainstWallGap = 0.1;
constexpr double kAgainstWallAngle = kPi / 4.0;
constexpr double kNearWallGap = 0.5;
constexpr double kAwayWallGap = 1.0;
constexpr double kCornerGap = 0.15;
constexpr double kNearDistance = 1.5;
constexpr double kFarDistance = 2.5;
constexpr double kTouchSlack = 0.05;
constexpr double kZContactTol = 1e-3;
constexpr double kSizeTol = 1e-3;

double inward_yaw(const std::string& wall) {
    if (wall == "south") return 0.0;
    if (wall == "east") return kPi * 1.5;
    if (wall == "north") return kPi;
    return kPi * 0.5;
}

// Distance from the footprint's nearest corner to a wall, clamped at 0.
double wall_gap(const PlacedItem& item, const Room& room, const std::string& wall) {
    double gap = std::numeric_limits<double>::infinity();
    for (const Vec2& c : item.footprint().corners()) {
        double d;
        if (wall == "south") d = c.y;
        else if (wall == "north") d = room.depth - c.y;
        else if (wall == "west") d = c.x;
        else d = room.width - c.x;
        gap = std::min(gap, d);
    }
    return std::max(0.0, gap);
}

// Minimum distance between two oriented rect boundaries (0 when overlapping).
double surface_distance(const OrientedRect& a, const OrientedRect& b) {
    if (rects_overlap(a, b)) return 0.0;
    const auto ca = a.corners();
    const auto cb = b.corners();
    auto seg_dist = [](const Vec2& p, const Vec2& s0, const Vec2& s1) {
        const Vec2 d = s1 - s0;
        const double len2 = d.dot(d);
        double t = len2 > 0 ? (p - s0).dot(d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const Vec2 proj = s0 + d * t;
        return (p - proj).norm();
    };
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            best = std::min(best, seg_dist(ca[i], cb[j], cb[(j + 1) % 4]));
            best = std::min(best, seg_dist(cb[i], ca[j], ca[(j + 1) % 4]));
        }
    }
    return best;
}

ViolationCategory category_of(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::size:
        case ConstraintKind::color:
        case ConstraintKind::material:
            return ViolationCategory::attribute;
        case ConstraintKind::count:
            return ViolationCategory::count;
        default:
            return ViolationCategory::spatial;
    }
}

const PlacedItem& require_placed(const Layout& layout, const std::string& id) {
    const PlacedItem* it = layout.find(id);
    if (!it) throw UnplacedReference(id);
    return *it;
}

double half_span(const FurnitureItem& f) { return 0.5 * std::max(f.width, f.depth); }

}  // namespace

std::string to_string(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::distance: return "distance";
        case ConstraintKind::overlap_free: return "overlap_free";
        case ConstraintKind::orientation: return "orientation";
        case ConstraintKind::position: return "position";
        case ConstraintKind::alignment: return "alignment";
        case ConstraintKind::on_top_of: return "on_top_of";
        case ConstraintKind::size: return "size";
        case ConstraintKind::color: return "color";
        case ConstraintKind::material: return "material";
        case ConstraintKind::count: return "count";
    }
    return "overlap_free";
}

std::vector<ConstraintTuple> compile_constraints(const SceneOrganization& org) {
    std::vector<ConstraintTuple> out;
    for (const RelationEdge& e : org.relations) {
        ConstraintTuple c;
        c.objects = {e.subject, e.object};
        const auto weight_param = e.params.find("weight");
        c.weight = weight_param != e.params.end() ? weight_param->second : 1.0;

        switch (e.relation) {
            case RelationKind::distance_range:
                c.ctype = ConstraintKind::distance;
                c.relation = ComparatorKind::range;
                c.params["min"] = e.params.at("min");
                c.params["max"] = e.params.at("max");
                break;
            case RelationKind::near:
                c.ctype = ConstraintKind::distance;
                c.relation = ComparatorKind::range;
                c.params["min"] = 0.0;
                c.params["max"] = kNearDistance;
                break;
            case RelationKind::far_from:
                c.ctype = ConstraintKind::distance;
                c.relation = ComparatorKind::range;
                c.params["min"] = kFarDistance;
                break;
            case RelationKind::touching: {
                c.ctype = ConstraintKind::distance;
                c.relation = ComparatorKind::range;
                const FurnitureItem* a = org.find(e.subject);
                const FurnitureItem* b = org.find(e.object);
                double reach = kTouchSlack;
                if (a) reach += half_span(*a);
                if (b) reach += half_span(*b);
                c.params["min"] = 0.0;
                c.params["max"] = reach;
                break;
            }
            case RelationKind::face_to_face:
            case RelationKind::back_to_back:
                c.ctype = ConstraintKind::orientation;
                c.relation = ComparatorKind::predicate;
                c.text_params["predicate"] = to_string(e.relation);
                break;
            case RelationKind::in_front_of:
            case RelationKind::behind:
            case RelationKind::left_of:
            case RelationKind::right_of:
                c.ctype = ConstraintKind::position;
                c.relation = ComparatorKind::predicate;
                c.text_params["predicate"] = to_string(e.relation);
                break;
            case RelationKind::against_wall:
            case RelationKind::near_wall:
            case RelationKind::away_from_wall:
                c.ctype = ConstraintKind::position;
                c.relation = ComparatorKind::predicate;
                c.text_params["predicate"] = to_string(e.relation);
                c.text_params["wall"] = wall_of_id(e.object);
                c.objects = {e.subject};
                break;
            case RelationKind::corner:
            case RelationKind::on_floor:
            case RelationKind::ceiling_mounted:
                c.ctype = ConstraintKind::position;
                c.relation = ComparatorKind::predicate;
                c.text_params["predicate"] = to_string(e.relation);
                c.objects = {e.subject};
                break;
            case RelationKind::side_by_side:
            case RelationKind::aligned_with:
                c.ctype = ConstraintKind::alignment;
                c.relation = ComparatorKind::predicate;
                c.text_params["predicate"] = to_string(e.relation);
                break;
            case RelationKind::on_top_of:
                c.ctype = ConstraintKind::on_top_of;
                c.relation = ComparatorKind::predicate;
                c.essential = true;
                break;
        }
        out.push_back(std::move(c));
    }

    ConstraintTuple overlap;
    overlap.ctype = ConstraintKind::overlap_free;
    overlap.relation = ComparatorKind::predicate;
    overlap.essential = true;
    overlap.weight = 1.0;
    out.push_back(std::move(overlap));
    return out;
}

ViolationReport evaluate_constraint(const ConstraintTuple& c, const Layout& layout,
                                    const EvalConfig& cfg) {
    ViolationReport report;
    report.constraint = c;
    report.category = category_of(c.ctype);
    std::ostringstream detail;

    switch (c.ctype) {
        case ConstraintKind::distance: {
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            const PlacedItem& b = require_placed(layout, c.objects.at(1));
            const double d = cfg.surface_distance
                                 ? surface_distance(a.footprint(), b.footprint())
                                 : (a.position - b.position).norm();
            const double lo = c.params.count("min") ? c.params.at("min") : 0.0;
            const double hi = c.params.count("max") ? c.params.at("max")
                                                    : std::numeric_limits<double>::infinity();
            report.magnitude = std::max({0.0, lo - d, d - hi});
            detail << "distance(" << a.id << ", " << b.id << ") = " << d;
            break;
        }
        case ConstraintKind::overlap_free: {
            double total = 0.0;
            if (c.objects.size() == 2) {
                const PlacedItem& a = require_placed(layout, c.objects[0]);
                const PlacedItem& b = require_placed(layout, c.objects[1]);
                if (z_bands_overlap(a.z, a.z_top(), b.z, b.z_top())) {
                    total = intersection_area(a.footprint(), b.footprint());
                }
            } else {
                for (const CollisionRecord& r : detect_collisions(layout)) {
                    if (r.type == CollisionRecord::Type::furniture) total += r.area;
                }
            }
            report.magnitude = total;
            detail << "total pairwise intersection area " << total << " m^2";
            break;
        }
        case ConstraintKind::orientation: {
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            const PlacedItem& b = require_placed(layout, c.objects.at(1));
            const double err = std::abs(wrap_angle(a.yaw - b.yaw - kPi));
            const std::string& pred = c.text_params.at("predicate");
            if (err > cfg.orientation_tol) {
                report.magnitude = err;
            } else {
                const double toward = facing_vector(a.yaw).dot(b.position - a.position);
                const bool ok = pred == "face_to_face" ? toward > 0.0 : toward < 0.0;
                report.magnitude = ok ? 0.0 : kPi;
            }
            detail << pred << "(" << a.id << ", " << b.id << ") angular error " << err;
            break;
        }
        case ConstraintKind::position: {
            const std::string& pred = c.text_params.at("predicate");
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            if (pred == "against_wall" || pred == "near_wall" || pred == "away_from_wall") {
                const std::string wall = c.text_params.at("wall");
                const double gap = wall_gap(a, layout.room, wall);
                if (pred == "against_wall") {
                    const double ang = std::abs(wrap_angle(a.yaw - inward_yaw(wall)));
                    report.magnitude = std::max(0.0, gap - kAgainstWallGap) +
                                       std::max(0.0, ang - kAgainstWallAngle);
                } else if (pred == "near_wall") {
                    report.magnitude = std::max(0.0, gap - kNearWallGap);
                } else {
                    report.magnitude = std::max(0.0, kAwayWallGap - gap);
                }
                detail << pred << "(" << a.id << ", wall:" << wall << ") gap " << gap;
            } else if (pred == "corner") {
                const double gx = std::min(wall_gap(a, layout.room, "west"),
                                           wall_gap(a, layout.room, "east"));
                const double gy = std::min(wall_gap(a, layout.room, "south"),
                                           wall_gap(a, layout.room, "north"));
                report.magnitude =
                    std::max(0.0, gx - kCornerGap) + std::max(0.0, gy - kCornerGap);
                detail << "corner(" << a.id << ") gaps " << gx << ", " << gy;
            } else if (pred == "on_floor") {
                report.magnitude = std::abs(a.z);
                detail << "on_floor(" << a.id << ") z = " << a.z;
            } else if (pred == "ceiling_mounted") {
                report.magnitude =
                    std::max(0.0, std::abs(a.z_top() - layout.room.wall_height) - 0.05);
                detail << "ceiling_mounted(" << a.id << ") top " << a.z_top();
            } else {
                // Directional half-plane predicates in the reference frame.
                const PlacedItem& b = require_placed(layout, c.objects.at(1));
                const Vec2 rel = a.position - b.position;
                const double along = rel.dot(facing_vector(b.yaw));
                const double lateral = rel.dot(right_vector(b.yaw));
                bool ok = false;
                if (pred == "in_front_of") {
                    ok = along > 0.0 && std::abs(lateral) <= b.width * 0.5;
                } else if (pred == "behind") {
                    ok = along < 0.0 && std::abs(lateral) <= b.width * 0.5;
                } else if (pred == "left_of") {
                    ok = lateral < 0.0 && std::abs(along) <= b.depth * 0.5;
                } else if (pred == "right_of") {
                    ok = lateral > 0.0 && std::abs(along) <= b.depth * 0.5;
                }
                report.magnitude = ok ? 0.0 : 1.0;
                detail << pred << "(" << a.id << ", " << b.id << ")";
            }
            break;
        }
        case ConstraintKind::alignment: {
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            const PlacedItem& b = require_placed(layout, c.objects.at(1));
            const Vec2 rel = a.position - b.position;
            const std::string& pred = c.text_params.at("predicate");
            const double off = pred == "side_by_side" ? std::abs(rel.dot(facing_vector(b.yaw)))
                                                      : std::abs(rel.dot(right_vector(b.yaw)));
            report.magnitude = off > cfg.alignment_tol ? off : 0.0;
            detail << pred << "(" << a.id << ", " << b.id << ") offset " << off;
            break;
        }
        case ConstraintKind::on_top_of: {
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            const PlacedItem& b = require_placed(layout, c.objects.at(1));
            const bool z_ok = std::abs(a.z - b.z_top()) <= kZContactTol;
            const Vec2 rel = a.position - b.position;
            const bool inside =
                std::abs(rel.dot(right_vector(b.yaw))) <= b.width * 0.5 + 1e-9 &&
                std::abs(rel.dot(facing_vector(b.yaw))) <= b.depth * 0.5 + 1e-9;
            report.magnitude = (z_ok && inside) ? 0.0 : 1.0;
            detail << "on_top_of(" << a.id << ", " << b.id << ")";
            break;
        }
        case ConstraintKind::size: {
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            const bool ok = std::abs(a.width - c.params.at("w")) <= kSizeTol &&
                            std::abs(a.depth - c.params.at("d")) <= kSizeTol &&
                            std::abs(a.height - c.params.at("h")) <= kSizeTol;
            report.magnitude = ok ? 0.0 : 1.0;
            detail << "size(" << a.id << ")";
            break;
        }
        case ConstraintKind::color:
        case ConstraintKind::material: {
            const PlacedItem& a = require_placed(layout, c.objects.at(0));
            const std::string& want = c.text_params.at("value");
            const auto& have = c.ctype == ConstraintKind::color ? a.color : a.material;
            report.magnitude = (have && *have == want) ? 0.0 : 1.0;
            detail << to_string(c.ctype) << "(" << a.id << ") wants " << want;
            break;
        }
        case ConstraintKind::count: {
            const std::string& cat = c.objects.at(0);
            const int want = static_cast<int>(c.params.at("n"));
            int have = 0;
            for (const PlacedItem& it : layout.items) {
                if (it.category == cat) ++have;
            }
            report.magnitude = std::abs(have - want);
            detail << "count(" << cat << ") = " << have << ", wants " << want;
            break;
        }
    }
    report.detail = detail.str();
    return report;
}

namespace {

bool evaluable(const ConstraintTuple& c, const Layout& layout) {
    if (c.ctype == ConstraintKind::count) return true;  // category-based
    for (const std::string& id : c.objects) {
        if (!layout.find(id)) return false;
    }
    return true;
}

}  // namespace

std::vector<ViolationReport> detect_violations(const Layout& layout,
                                               const std::vector<ConstraintTuple>& constraints,
                                               const EvalConfig& cfg) {
    std::vector<ViolationReport> reports;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (!evaluable(constraints[i], layout)) continue;
        ViolationReport r = evaluate_constraint(constraints[i], layout, cfg);
        r.constraint_index = i;
        if (r.magnitude > 0.0) reports.push_back(std::move(r));
    }
    std::stable_sort(reports.begin(), reports.end(),
                     [](const ViolationReport& a, const ViolationReport& b) {
                         if (a.constraint.essential != b.constraint.essential) {
                             return a.constraint.essential;
                         }
                         if (a.constraint.weight != b.constraint.weight) {
                             return a.constraint.weight > b.constraint.weight;
                         }
                         if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
                         return a.constraint_index < b.constraint_index;
                     });
    return reports;
}

double total_weighted_magnitude(const Layout& layout,
                                const std::vector<ConstraintTuple>& constraints,
                                const EvalConfig& cfg) {
    double total = 0.0;
    for (const ConstraintTuple& c : constraints) {
        if (!evaluable(c, layout)) continue;
        total += c.weight * evaluate_constraint(c, layout, cfg).magnitude;
    }
    return total;
}

nlohmann::json taxonomy_json() {
    json t = json::object();
    auto entry = [](const char* ctype, const char* comparator, bool essential, json params) {
        return json{{"ctype", ctype},
                    {"comparator", comparator},
                    {"essential", essential},
                    {"params", std::move(params)}};
    };
    t["against_wall"] = entry("position", "predicate", false,
                              {{"max_gap", kAgainstWallGap}, {"max_angle_rad", kAgainstWallAngle}});
    t["near_wall"] = entry("position", "predicate", false, {{"max_gap", kNearWallGap}});
    t["away_from_wall"] = entry("position", "predicate", false, {{"min_gap", kAwayWallGap}});
    t["corner"] = entry("position", "predicate", false, {{"max_gap", kCornerGap}});
    t["ceiling_mounted"] = entry("position", "predicate", false, {{"tol", 0.05}});
    t["on_floor"] = entry("position", "predicate", false, json::object());
    t["in_front_of"] = entry("position", "predicate", false, json::object());
    t["behind"] = entry("position", "predicate", false, json::object());
    t["left_of"] = entry("position", "predicate", false, json::object());
    t["right_of"] = entry("position", "predicate", false, json::object());
    t["face_to_face"] = entry("orientation", "predicate", false, json::object());
    t["back_to_back"] = entry("orientation", "predicate", false, json::object());
    t["side_by_side"] = entry("alignment", "predicate", false, json::object());
    t["aligned_with"] = entry("alignment", "predicate", false, json::object());
    t["on_top_of"] = entry("on_top_of", "predicate", true, json::object());
    t["touching"] = entry("distance", "range", false,
                          {{"min", 0.0}, {"max", "half_span(a) + half_span(b) + 0.05"}});
    t["near"] = entry("distance", "range", false, {{"min", 0.0}, {"max", kNearDistance}});
    t["far_from"] = entry("distance", "range", false, {{"min", kFarDistance}});
    t["distance_range"] = entry("distance", "range", false, {{"min", "params.min"}, {"max", "params.max"}});
    t["_implicit_overlap_free"] =
        entry("overlap_free", "predicate", true, {{"tolerance", kOverlapTolerance}});
    return t;
}

}  // namespace roomcraft
