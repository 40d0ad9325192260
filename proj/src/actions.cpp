#include "roomcraft/actions.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "roomcraft/errors.hpp"

namespace roomcraft {

using nlohmann::json;

namespace {

constexpr double kRepairMargin = 0.01;

double inward_yaw(const std::string& wall) {
    if (wall == "south") return 0.0;
    if (wall == "east") return kPi * 1.5;
    if (wall == "north") return kPi;
    return kPi * 0.5;
}

Vec2 wall_inward_normal(const std::string& wall) {
    if (wall == "south") return {0.0, 1.0};
    if (wall == "north") return {0.0, -1.0};
    if (wall == "west") return {1.0, 0.0};
    return {-1.0, 0.0};
}

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

Action make_translate(const std::string& id, const Vec2& delta) {
    Action a;
    a.kind = ActionKind::translate;
    a.targets = {id};
    a.params["dx"] = delta.x;
    a.params["dy"] = delta.y;
    return a;
}

Action make_rotate(const std::string& id, double angle) {
    Action a;
    a.kind = ActionKind::rotate;
    a.targets = {id};
    a.params["angle"] = angle;
    return a;
}

// Extent of item a's footprint along a world direction.
double extent_along(const PlacedItem& a, const Vec2& dir) {
    const double cf = std::abs(dir.dot(facing_vector(a.yaw)));
    const double cr = std::abs(dir.dot(right_vector(a.yaw)));
    return cf * a.depth * 0.5 + cr * a.width * 0.5;
}

// Ids of items resting (transitively) on `id`.
std::vector<std::string> stacked_on(const Layout& layout, const std::string& id) {
    std::vector<std::string> out;
    std::vector<std::string> frontier{id};
    while (!frontier.empty()) {
        const std::string cur = frontier.back();
        frontier.pop_back();
        for (const PlacedItem& it : layout.items) {
            if (it.support == cur) {
                out.push_back(it.id);
                frontier.push_back(it.id);
            }
        }
    }
    return out;
}

// Candidate repair actions for one violation, in deterministic rule order.
std::vector<Action> candidate_actions(const ViolationReport& v, const Layout& layout) {
    std::vector<Action> cands;
    const ConstraintTuple& c = v.constraint;

    switch (c.ctype) {
        case ConstraintKind::distance: {
            const PlacedItem& a = *layout.find(c.objects.at(0));
            const PlacedItem& b = *layout.find(c.objects.at(1));
            const Vec2 diff = a.position - b.position;
            const double d = diff.norm();
            const Vec2 u = d > 1e-12 ? diff * (1.0 / d) : Vec2{1.0, 0.0};
            const double lo = c.params.count("min") ? c.params.at("min") : 0.0;
            const double hi = c.params.count("max") ? c.params.at("max")
                                                    : std::numeric_limits<double>::infinity();
            // Move one endpoint along the connecting line by the shortfall.
            const double shift = d > hi ? d - hi : -(lo - d);
            cands.push_back(make_translate(b.id, u * shift));
            cands.push_back(make_translate(a.id, u * (-shift)));
            break;
        }
        case ConstraintKind::overlap_free: {
            // Resolve the worst colliding pair; push the later-placed item
            // out along the minimum-penetration axis.
            std::string first = c.objects.size() == 2 ? c.objects[0] : "";
            std::string second = c.objects.size() == 2 ? c.objects[1] : "";
            if (first.empty()) {
                double worst = 0.0;
                for (const CollisionRecord& r : detect_collisions(layout)) {
                    if (r.type == CollisionRecord::Type::furniture && r.area > worst) {
                        worst = r.area;
                        first = r.a;
                        second = r.b;
                    }
                }
            }
            if (first.empty()) break;
            // detect_collisions reports pairs in layout order: second is later.
            const PlacedItem& early = *layout.find(first);
            const PlacedItem& late = *layout.find(second);
            const Vec2 mtv = min_penetration_axis(late.footprint(), early.footprint());
            const double len = mtv.norm();
            if (len > 1e-12) {
                const Vec2 push = mtv * ((len + kRepairMargin) / len);
                cands.push_back(make_translate(late.id, push));
                cands.push_back(make_translate(early.id, push * -1.0));
            }
            break;
        }
        case ConstraintKind::orientation: {
            const PlacedItem& a = *layout.find(c.objects.at(0));
            const PlacedItem& b = *layout.find(c.objects.at(1));
            auto fix = [](const PlacedItem& x, const PlacedItem& y) {
                double delta = wrap_angle(y.yaw + kPi - x.yaw);
                if (std::abs(delta) < 1e-9) delta = kPi;  // anti-parallel, wrong side
                return delta;
            };
            cands.push_back(make_rotate(a.id, fix(a, b)));
            cands.push_back(make_rotate(b.id, fix(b, a)));
            break;
        }
        case ConstraintKind::position: {
            const std::string& pred = c.text_params.at("predicate");
            const PlacedItem& a = *layout.find(c.objects.at(0));
            if (pred == "against_wall" || pred == "near_wall" || pred == "away_from_wall") {
                const std::string& wall = c.text_params.at("wall");
                const double gap = wall_gap(a, layout.room, wall);
                const Vec2 n = wall_inward_normal(wall);
                if (pred == "away_from_wall") {
                    cands.push_back(make_translate(a.id, n * (1.0 - gap + kRepairMargin)));
                } else {
                    cands.push_back(make_translate(a.id, n * (-gap)));
                    if (pred == "against_wall") {
                        const double delta = wrap_angle(inward_yaw(wall) - a.yaw);
                        if (std::abs(delta) > 1e-9) cands.push_back(make_rotate(a.id, delta));
                    }
                }
            } else if (pred == "corner") {
                const Room& room = layout.room;
                const double gw = wall_gap(a, room, "west");
                const double ge = wall_gap(a, room, "east");
                const double gs = wall_gap(a, room, "south");
                const double gn = wall_gap(a, room, "north");
                const Vec2 delta{gw <= ge ? -gw : ge, gs <= gn ? -gs : gn};
                cands.push_back(make_translate(a.id, delta));
            } else if (pred == "in_front_of" || pred == "behind" || pred == "left_of" ||
                       pred == "right_of") {
                const PlacedItem& b = *layout.find(c.objects.at(1));
                Vec2 dir;
                double clear;
                if (pred == "in_front_of" || pred == "behind") {
                    dir = facing_vector(b.yaw) * (pred == "in_front_of" ? 1.0 : -1.0);
                    clear = b.depth * 0.5;
                } else {
                    dir = right_vector(b.yaw) * (pred == "right_of" ? 1.0 : -1.0);
                    clear = b.width * 0.5;
                }
                const Vec2 target =
                    b.position + dir * (clear + extent_along(a, dir) + kRepairMargin);
                cands.push_back(make_translate(a.id, target - a.position));
                Action swap;
                swap.kind = ActionKind::swap_positions;
                swap.targets = {a.id, b.id};
                cands.push_back(std::move(swap));
            }
            break;
        }
        case ConstraintKind::alignment: {
            const PlacedItem& a = *layout.find(c.objects.at(0));
            const PlacedItem& b = *layout.find(c.objects.at(1));
            const Vec2 rel = a.position - b.position;
            const Vec2 axis = c.text_params.at("predicate") == "side_by_side"
                                  ? facing_vector(b.yaw)
                                  : right_vector(b.yaw);
            const double off = rel.dot(axis);
            cands.push_back(make_translate(a.id, axis * (-off)));
            cands.push_back(make_translate(b.id, axis * off));
            break;
        }
        case ConstraintKind::on_top_of: {
            const PlacedItem& a = *layout.find(c.objects.at(0));
            const PlacedItem& b = *layout.find(c.objects.at(1));
            cands.push_back(make_translate(a.id, b.position - a.position));
            break;
        }
        case ConstraintKind::size: {
            const PlacedItem& a = *layout.find(c.objects.at(0));
            Action act;
            act.kind = ActionKind::resize;
            act.targets = {a.id};
            act.params["sw"] = c.params.at("w") / a.width;
            act.params["sd"] = c.params.at("d") / a.depth;
            act.params["sh"] = c.params.at("h") / a.height;
            cands.push_back(std::move(act));
            break;
        }
        case ConstraintKind::color:
        case ConstraintKind::material: {
            Action act;
            act.kind = c.ctype == ConstraintKind::color ? ActionKind::set_color
                                                        : ActionKind::set_material;
            act.targets = {c.objects.at(0)};
            act.text_params["value"] = c.text_params.at("value");
            cands.push_back(std::move(act));
            break;
        }
        case ConstraintKind::count: {
            const std::string& cat = c.objects.at(0);
            const int want = static_cast<int>(c.params.at("n"));
            std::vector<std::string> present;
            for (const PlacedItem& it : layout.items) {
                if (it.category == cat) present.push_back(it.id);
            }
            if (static_cast<int>(present.size()) < want) {
                Action act;
                act.kind = ActionKind::add_item;
                act.text_params["category"] = cat;
                cands.push_back(std::move(act));
            } else if (static_cast<int>(present.size()) > want) {
                // remove_item is allowed only here, never for overlap repair.
                std::sort(present.begin(), present.end());
                Action act;
                act.kind = ActionKind::remove_item;
                act.targets = {present.back()};
                cands.push_back(std::move(act));
            }
            break;
        }
    }
    for (Action& a : cands) a.priority = v.magnitude * c.weight;
    return cands;
}

void check_inside(const PlacedItem& item, const Layout& layout) {
    if (!item.support.empty()) {
        const PlacedItem* sup = layout.find(item.support);
        if (sup) return;  // containment handled as an on_top_of violation
    }
    if (!rect_inside_room(item.footprint(), layout.room.width, layout.room.depth, 1e-6)) {
        throw ActionInfeasible("footprint of '" + item.id + "' would leave the room");
    }
}

std::string fresh_id(const Layout& layout, const std::string& category) {
    int k = 1;
    while (true) {
        const std::string id = category + "#a" + std::to_string(k);
        if (!layout.find(id)) return id;
        ++k;
    }
}

}  // namespace

std::string to_string(ActionKind k) {
    switch (k) {
        case ActionKind::translate: return "translate";
        case ActionKind::rotate: return "rotate";
        case ActionKind::resize: return "resize";
        case ActionKind::set_color: return "set_color";
        case ActionKind::set_material: return "set_material";
        case ActionKind::add_item: return "add_item";
        case ActionKind::remove_item: return "remove_item";
        case ActionKind::swap_positions: return "swap_positions";
    }
    return "translate";
}

Layout apply_action(const Layout& layout, const Action& action, const CapsConfig& caps) {
    Layout out = layout;
    auto require = [&](const std::string& id) -> PlacedItem& {
        PlacedItem* it = out.find(id);
        if (!it) throw UnknownTarget(id);
        return *it;
    };

    switch (action.kind) {
        case ActionKind::translate: {
            PlacedItem& item = require(action.targets.at(0));
            const Vec2 delta{action.params.at("dx"), action.params.at("dy")};
            if (!std::isfinite(delta.x) || !std::isfinite(delta.y)) {
                throw ActionInfeasible("translate delta must be finite");
            }
            item.position = item.position + delta;
            check_inside(item, out);
            for (const std::string& child : stacked_on(out, item.id)) {
                PlacedItem& c = *out.find(child);
                c.position = c.position + delta;
            }
            break;
        }
        case ActionKind::rotate: {
            PlacedItem& item = require(action.targets.at(0));
            const double angle = action.params.at("angle");
            if (!std::isfinite(angle)) throw ActionInfeasible("rotate angle must be finite");
            item.yaw = normalize_yaw(item.yaw + angle);
            check_inside(item, out);
            break;
        }
        case ActionKind::resize: {
            PlacedItem& item = require(action.targets.at(0));
            const double sw = action.params.at("sw");
            const double sd = action.params.at("sd");
            const double sh = action.params.at("sh");
            if (sw <= 0 || sd <= 0 || sh <= 0) {
                throw ActionInfeasible("resize scale factors must be > 0");
            }
            item.width *= sw;
            item.depth *= sd;
            item.height *= sh;
            check_inside(item, out);
            // Re-seat anything stacked on the resized item.
            for (const std::string& child : stacked_on(out, item.id)) {
                PlacedItem& c = *out.find(child);
                c.z = out.find(c.support)->z_top();
            }
            break;
        }
        case ActionKind::set_color:
            require(action.targets.at(0)).color = action.text_params.at("value");
            break;
        case ActionKind::set_material:
            require(action.targets.at(0)).material = action.text_params.at("value");
            break;
        case ActionKind::add_item: {
            const std::string& category = action.text_params.at("category");
            const CatalogEntry& e = catalog_entry(category);
            FurnitureItem item;
            item.id = fresh_id(out, category);
            item.category = category;
            item.width = e.width;
            item.depth = e.depth;
            item.height = e.height;
            item.mount = e.mount == Mount::on_top ? Mount::floor : e.mount;
            if (!place_single(out, item, {}, caps)) {
                throw ActionInfeasible("no feasible position for added '" + category + "'");
            }
            break;
        }
        case ActionKind::remove_item: {
            const std::string& id = action.targets.at(0);
            require(id);
            std::set<std::string> doomed{id};
            for (const std::string& child : stacked_on(out, id)) doomed.insert(child);
            std::erase_if(out.items, [&](const PlacedItem& it) { return doomed.count(it.id); });
            break;
        }
        case ActionKind::swap_positions: {
            PlacedItem& a = require(action.targets.at(0));
            PlacedItem& b = require(action.targets.at(1));
            std::swap(a.position, b.position);
            std::swap(a.yaw, b.yaw);
            check_inside(a, out);
            check_inside(b, out);
            break;
        }
    }
    return out;
}

std::vector<Action> plan_corrections(const std::vector<ViolationReport>& violations,
                                     const Layout& layout,
                                     const std::vector<ConstraintTuple>& constraints,
                                     const EvalConfig& eval, const CapsConfig& caps) {
    std::vector<Action> plan;
    if (violations.empty()) return plan;
    const double current = total_weighted_magnitude(layout, constraints, eval);

    for (const ViolationReport& v : violations) {
        const Action* chosen = nullptr;
        Action chosen_storage;
        double best = current - 1e-12;
        for (const Action& cand : candidate_actions(v, layout)) {
            try {
                const Layout sim = apply_action(layout, cand, caps);
                const double total = total_weighted_magnitude(sim, constraints, eval);
                if (total < best) {
                    best = total;
                    chosen_storage = cand;
                    chosen = &chosen_storage;
                }
            } catch (const Error&) {
                // Candidate infeasible; try the next one.
            }
        }
        if (chosen) plan.push_back(chosen_storage);
    }
    if (plan.empty()) {
        throw NoRepairFound("no candidate action reduces the total violation magnitude");
    }
    return plan;
}

OptimizeResult optimize_layout(const Layout& layout,
                               const std::vector<ConstraintTuple>& constraints, int budget,
                               const EvalConfig& eval, const CapsConfig& caps) {
    if (budget < 1) throw Error("InvalidArgument", "budget must be >= 1");
    OptimizeResult result;
    result.layout = layout;

    for (int round = 0; round < budget; ++round) {
        auto reports = detect_violations(result.layout, constraints, eval);
        if (reports.empty()) {
            result.residual.clear();
            return result;
        }
        CorrectionRound rec;
        rec.violations = reports;
        rec.total_before = total_weighted_magnitude(result.layout, constraints, eval);

        std::vector<Action> plan;
        try {
            plan = plan_corrections(reports, result.layout, constraints, eval, caps);
        } catch (const NoRepairFound&) {
            // Stuck: success iff nothing essential remains.
            result.residual = reports;
            result.exhausted = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
                return r.constraint.essential;
            });
            return result;
        }

        Layout next = apply_action(result.layout, plan.front(), caps);
        rec.total_after = total_weighted_magnitude(next, constraints, eval);
        if (rec.total_after > rec.total_before + 1e-9) {
            // Monotonicity guard; the lookahead should make this unreachable.
            result.residual = reports;
            result.exhausted = true;
            return result;
        }
        rec.action = plan.front();
        rec.acted = true;
        result.trace.push_back(std::move(rec));
        result.layout = std::move(next);
    }

    result.residual = detect_violations(result.layout, constraints, eval);
    result.exhausted = !result.residual.empty();
    return result;
}

std::string serialize_correction_trace(const OptimizeResult& result) {
    json j;
    j["schema"] = "roomcraft-trace/1";
    j["exhausted"] = result.exhausted;
    j["rounds"] = json::array();
    for (const CorrectionRound& r : result.trace) {
        json jr;
        jr["total_before"] = r.total_before;
        jr["total_after"] = r.total_after;
        jr["violations"] = json::array();
        for (const ViolationReport& v : r.violations) {
            jr["violations"].push_back({{"ctype", to_string(v.constraint.ctype)},
                                        {"magnitude", v.magnitude},
                                        {"detail", v.detail}});
        }
        if (r.acted) {
            json ja;
            ja["kind"] = to_string(r.action.kind);
            ja["targets"] = r.action.targets;
            for (const auto& [k, v] : r.action.params) ja["params"][k] = v;
            for (const auto& [k, v] : r.action.text_params) ja["params"][k] = v;
            jr["action"] = std::move(ja);
        }
        j["rounds"].push_back(std::move(jr));
    }
    j["residual"] = json::array();
    for (const ViolationReport& v : result.residual) {
        j["residual"].push_back({{"ctype", to_string(v.constraint.ctype)},
                                 {"magnitude", v.magnitude},
                                 {"detail", v.detail}});
    }
    return j.dump(2) + "\n";
}

}  // namespace roomcraft
