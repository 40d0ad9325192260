#include "roomcraft/placement.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "roomcraft/errors.hpp"

namespace roomcraft {

using nlohmann::json;

namespace {

constexpr double kEps = 1e-9;
constexpr double kMinGridStep = 0.025;
constexpr double kNearWallBand = 0.5;
const double kYaws[4] = {0.0, kPi * 0.5, kPi, kPi * 1.5};

// Cell-centered positions along one axis: centers of step-sized cells fitted
// symmetrically into [inset, length - inset]; single centered position when
// the usable span is smaller than one cell but the item still fits.
std::vector<double> axis_positions(double length, double inset, double step) {
    std::vector<double> out;
    const double usable = length - 2.0 * inset;
    if (usable < -kEps) return out;
    const int n = static_cast<int>(std::floor(usable / step + kEps));
    if (n < 1) {
        out.push_back(length * 0.5);
        return out;
    }
    const double start = inset + (usable - n * step) * 0.5 + step * 0.5;
    out.reserve(n);
    for (int k = 0; k < n; ++k) out.push_back(start + k * step);
    return out;
}

double inward_yaw(const std::string& wall) {
    if (wall == "south") return 0.0;
    if (wall == "east") return kPi * 1.5;
    if (wall == "north") return kPi;
    return kPi * 0.5;  // west
}

struct GateResult {
    double raw = 0.0;
    bool wall_reject = false;
    bool furniture_reject = false;
    bool feasible() const { return !wall_reject && !furniture_reject; }
};

bool inside_support(const OrientedRect& fp, const PlacedItem& support) {
    const Vec2 r = right_vector(support.yaw);
    const Vec2 f = facing_vector(support.yaw);
    const double hw = support.width * 0.5 + kEps;
    const double hd = support.depth * 0.5 + kEps;
    for (const Vec2& c : fp.corners()) {
        const Vec2 d = c - support.position;
        if (std::abs(d.dot(r)) > hw || std::abs(d.dot(f)) > hd) return false;
    }
    return true;
}

std::string anchor_for_scoring(const PlacementContext& ctx) {
    if (!ctx.against_walls.empty()) return ctx.against_walls.front();
    if (!ctx.near_walls.empty()) return ctx.near_walls.front();
    return "";
}

GateResult evaluate_candidate(const Vec2& p, double yaw, const FurnitureItem& item,
                              const Room& room, const Layout& layout, double alpha, double beta,
                              double mu, const PlacementContext& ctx, double overlap_tol) {
    GateResult res;
    const double z = resolve_z(item, ctx, layout);
    const OrientedRect fp{p, item.width * 0.5, item.depth * 0.5, yaw};

    if (!ctx.support_id.empty()) {
        const PlacedItem* sup = layout.find(ctx.support_id);
        if (!sup || !inside_support(fp, *sup)) res.wall_reject = true;
    } else if (!rect_inside_room(fp, room.width, room.depth, 1e-6)) {
        res.wall_reject = true;
    }

    const double z_top = z + item.height;
    for (const PlacedItem& q : layout.items) {
        if (!z_bands_overlap(z, z_top, q.z, q.z_top())) continue;
        if (intersection_area(fp, q.footprint()) > overlap_tol) {
            res.furniture_reject = true;
            break;
        }
    }

    res.raw = score_candidate_raw(p, room, layout, alpha, beta, mu, ctx);
    return res;
}

}  // namespace

const PlacedItem* Layout::find(const std::string& id) const {
    for (const PlacedItem& it : items) {
        if (it.id == id) return &it;
    }
    return nullptr;
}

PlacedItem* Layout::find(const std::string& id) {
    for (PlacedItem& it : items) {
        if (it.id == id) return &it;
    }
    return nullptr;
}

PlacementContext placement_context(const std::string& id, const SpatialGraph& graph) {
    PlacementContext ctx;
    for (const ConstraintEdge& e : graph.edges) {
        if (e.subject != id) continue;
        const std::string wall = wall_of_id(e.object);
        switch (e.relation) {
            case RelationKind::against_wall:
                if (!wall.empty()) ctx.against_walls.push_back(wall);
                break;
            case RelationKind::near_wall:
                if (!wall.empty()) ctx.near_walls.push_back(wall);
                break;
            case RelationKind::corner:
                ctx.corner = true;
                break;
            case RelationKind::on_top_of:
                ctx.support_id = e.object;
                break;
            default:
                break;
        }
    }
    return ctx;
}

double resolve_z(const FurnitureItem& item, const PlacementContext& ctx, const Layout& layout) {
    if (!ctx.support_id.empty() || item.mount == Mount::on_top) {
        if (ctx.support_id.empty()) {
            throw NoCandidateSurface("on_top item '" + item.id + "' has no support relation");
        }
        const PlacedItem* sup = layout.find(ctx.support_id);
        if (!sup) {
            throw NoCandidateSurface("support '" + ctx.support_id + "' of '" + item.id +
                                     "' is not placed");
        }
        return sup->z_top();
    }
    switch (item.mount) {
        case Mount::ceiling:
            return std::max(0.0, layout.room.wall_height - item.height);
        case Mount::wall:
            return std::clamp(kWallMountZ, 0.0, std::max(0.0, layout.room.wall_height - item.height));
        default:
            return 0.0;
    }
}

std::vector<Candidate> generate_candidates(const FurnitureItem& item, const Room& room,
                                           const Layout& layout, double grid_step,
                                           const PlacementContext& ctx) {
    if (grid_step <= 0.0) throw Error("InvalidArgument", "grid_step must be > 0");
    std::vector<Candidate> out;
    const double hw = item.width * 0.5;
    const double hd = item.depth * 0.5;

    if (!ctx.support_id.empty() || item.mount == Mount::on_top) {
        if (ctx.support_id.empty()) {
            throw NoCandidateSurface("on_top item '" + item.id + "' has no support relation");
        }
        const PlacedItem* sup = layout.find(ctx.support_id);
        if (!sup) {
            throw NoCandidateSurface("support '" + ctx.support_id + "' of '" + item.id +
                                     "' is not placed");
        }
        const Vec2 r = right_vector(sup->yaw);
        const Vec2 f = facing_vector(sup->yaw);
        for (double yaw : kYaws) {
            const double rel = yaw - sup->yaw;
            const double hu = std::abs(std::cos(rel)) * hw + std::abs(std::sin(rel)) * hd;
            const double hv = std::abs(std::sin(rel)) * hw + std::abs(std::cos(rel)) * hd;
            for (double u : axis_positions(sup->width, hu, grid_step)) {
                for (double v : axis_positions(sup->depth, hv, grid_step)) {
                    const Vec2 p = sup->position + r * (u - sup->width * 0.5) +
                                   f * (v - sup->depth * 0.5);
                    out.push_back({p, normalize_yaw(yaw)});
                }
            }
        }
        return out;
    }

    auto emit_band = [&](const std::string& wall, const std::vector<double>& gaps) {
        const double yaw = inward_yaw(wall);
        const double len = room.wall_length(wall);
        for (double g : gaps) {
            for (double t : axis_positions(len, hw, grid_step)) {
                Vec2 p;
                if (wall == "south") p = {t, hd + g};
                else if (wall == "north") p = {t, room.depth - hd - g};
                else if (wall == "west") p = {hd + g, t};
                else p = {room.width - hd - g, t};
                out.push_back({p, yaw});
            }
        }
    };

    const bool anchored = !ctx.against_walls.empty() || !ctx.near_walls.empty() || ctx.corner;
    if (anchored) {
        for (const std::string& w : ctx.against_walls) emit_band(w, {0.0});
        if (!ctx.near_walls.empty()) {
            std::vector<double> gaps;
            for (double g = 0.0; g <= kNearWallBand + kEps; g += grid_step) gaps.push_back(g);
            for (const std::string& w : ctx.near_walls) emit_band(w, gaps);
        }
        if (ctx.corner) {
            struct CornerSpec {
                double cx, cy;      // 0 = low wall, 1 = high wall
                double yaws[2];
            };
            const CornerSpec corners[4] = {
                {0, 0, {0.0, kPi * 0.5}},        // SW: face north or east
                {1, 0, {0.0, kPi * 1.5}},        // SE
                {1, 1, {kPi, kPi * 1.5}},        // NE
                {0, 1, {kPi, kPi * 0.5}},        // NW
            };
            for (const CornerSpec& c : corners) {
                for (double yaw : c.yaws) {
                    const OrientedRect probe{{0, 0}, hw, hd, yaw};
                    const Vec2 he = probe.aabb_half_extents();
                    const double x = c.cx == 0 ? he.x : room.width - he.x;
                    const double y = c.cy == 0 ? he.y : room.depth - he.y;
                    out.push_back({{x, y}, yaw});
                }
            }
        }
        return out;
    }

    if (item.mount == Mount::wall) {
        for (const char* w : {"south", "east", "north", "west"}) emit_band(w, {0.0});
        return out;
    }

    // Floor (and ceiling) grid over the room interior, inset per yaw.
    for (double yaw : kYaws) {
        const OrientedRect probe{{0, 0}, hw, hd, yaw};
        const Vec2 he = probe.aabb_half_extents();
        for (double x : axis_positions(room.width, he.x, grid_step)) {
            for (double y : axis_positions(room.depth, he.y, grid_step)) {
                out.push_back({{x, y}, yaw});
            }
        }
    }
    return out;
}

double l_dist(const Vec2& p, const Room& room, const std::string& anchor_wall) {
    std::string anchor = anchor_wall;
    if (anchor.empty()) {
        const double ds = p.y, dn = room.depth - p.y, dw = p.x, de = room.width - p.x;
        anchor = "south";
        double best = ds;
        if (dn < best) { best = dn; anchor = "north"; }
        if (dw < best) { best = dw; anchor = "west"; }
        if (de < best) { best = de; anchor = "east"; }
    }
    if (anchor == "south") return room.depth - p.y;  // distance to north
    if (anchor == "north") return p.y;
    if (anchor == "west") return room.width - p.x;
    return p.x;  // anchor east -> distance to west wall
}

double l_obj(const Vec2& p, const Layout& layout, double mu) {
    double sum = 0.0;
    int n = 0;
    for (const PlacedItem& q : layout.items) {
        const double d = (q.position - p).norm();
        if (d <= mu) {
            sum += d;
            ++n;
        }
    }
    return n == 0 ? mu : sum / n;
}

double score_candidate(const Vec2& p, double yaw, const FurnitureItem& item, const Room& room,
                       const Layout& layout, double alpha, double beta, double mu,
                       const PlacementContext& ctx, double overlap_tol) {
    const GateResult r =
        evaluate_candidate(p, yaw, item, room, layout, alpha, beta, mu, ctx, overlap_tol);
    return r.feasible() ? r.raw : -std::numeric_limits<double>::infinity();
}

double score_candidate_raw(const Vec2& p, const Room& room, const Layout& layout, double alpha,
                           double beta, double mu, const PlacementContext& ctx) {
    const double n_dist = l_dist(p, room, anchor_for_scoring(ctx)) / layout.room_diagonal();
    const double n_obj = l_obj(p, layout, mu) / mu;
    return alpha * n_dist + beta * n_obj;
}

std::pair<double, double> adjust_weights(double alpha, ConflictKind conflict, double k,
                                         double delta_alpha) {
    const double sign = conflict == ConflictKind::wall_collision ? 1.0 : -1.0;
    const double a = std::clamp(alpha + sign * k * delta_alpha, 0.0, 1.0);
    return {a, 1.0 - a};
}

namespace {

struct SingleResult {
    bool placed = false;
    int attempts = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

SingleResult place_item(Layout& layout, const FurnitureItem& item, const PlacementContext& ctx,
                        const CapsConfig& config) {
    SingleResult res;
    res.alpha = config.alpha0;
    res.beta = config.beta0;

    for (int retry = 0; retry <= config.max_retries; ++retry) {
        ++res.attempts;
        const double step =
            std::max(kMinGridStep, config.grid_step / std::pow(2.0, retry / 5));
        const auto candidates = generate_candidates(item, layout.room, layout, step, ctx);

        double best_score = -std::numeric_limits<double>::infinity();
        const Candidate* best = nullptr;
        double best_infeasible = -std::numeric_limits<double>::infinity();
        bool infeasible_wall = false;
        bool any_infeasible = false;
        for (const Candidate& c : candidates) {
            const GateResult g = evaluate_candidate(c.position, c.yaw, item, layout.room, layout,
                                                    res.alpha, res.beta, config.mu, ctx,
                                                    kOverlapTolerance);
            if (g.feasible()) {
                if (g.raw > best_score) {
                    best_score = g.raw;
                    best = &c;
                }
            } else if (g.raw > best_infeasible || !any_infeasible) {
                best_infeasible = g.raw;
                infeasible_wall = g.wall_reject;
                any_infeasible = true;
            }
        }

        if (best) {
            PlacedItem placed;
            placed.id = item.id;
            placed.category = item.category;
            placed.position = best->position;
            placed.z = resolve_z(item, ctx, layout);
            placed.yaw = best->yaw;
            placed.width = item.width;
            placed.depth = item.depth;
            placed.height = item.height;
            placed.color = item.color;
            placed.material = item.material;
            placed.mount = item.mount;
            placed.support = ctx.support_id;
            layout.items.push_back(std::move(placed));
            res.placed = true;
            return res;
        }

        // All candidates rejected: diagnose which gate blocked the best one
        // and shift the weight balance before retrying.
        const ConflictKind conflict = (!any_infeasible || infeasible_wall)
                                          ? ConflictKind::wall_collision
                                          : ConflictKind::furniture_collision;
        std::tie(res.alpha, res.beta) =
            adjust_weights(res.alpha, conflict, config.k, config.delta_alpha);
    }
    return res;
}

std::string config_fingerprint(const CapsConfig& c) {
    json j = {{"alpha0", c.alpha0},     {"beta0", c.beta0},
              {"k", c.k},               {"delta_alpha", c.delta_alpha},
              {"mu", c.mu},             {"grid_step", c.grid_step},
              {"max_retries", c.max_retries}};
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

PlaceResult try_place_sequence(const PlacementOrder& order, const SceneOrganization& org,
                               const Room& room, const CapsConfig& config) {
    const SceneOrganization expanded = expand_counts(org);
    const SpatialGraph graph = build_graph(expanded);

    PlaceResult result;
    result.layout.room = room;
    result.layout.seed = config.seed;
    result.layout.config_hash = config_fingerprint(config);

    for (const std::string& id : order.items) {
        const FurnitureItem* item = expanded.find(id);
        if (!item) throw UnknownItem(id);
        const PlacementContext ctx = placement_context(id, graph);
        const SingleResult r = place_item(result.layout, *item, ctx, config);
        result.layout.trace.push_back({id, r.attempts, r.alpha, r.beta});
        if (!r.placed) result.unplaced.push_back(id);
    }
    return result;
}

Layout place_sequence(const PlacementOrder& order, const SceneOrganization& org, const Room& room,
                      const CapsConfig& config) {
    PlaceResult r = try_place_sequence(order, org, room, config);
    if (!r.unplaced.empty()) {
        int attempts = 0;
        for (const ItemTrace& t : r.layout.trace) {
            if (t.id == r.unplaced.front()) attempts = t.attempts;
        }
        throw ItemUnplaceable(r.unplaced.front(), attempts);
    }
    return std::move(r.layout);
}

bool place_single(Layout& layout, const FurnitureItem& item, const PlacementContext& ctx,
                  const CapsConfig& config) {
    const SingleResult r = place_item(layout, item, ctx, config);
    layout.trace.push_back({item.id, r.attempts, r.alpha, r.beta});
    return r.placed;
}

std::vector<CollisionRecord> detect_collisions(const Layout& layout, double tolerance) {
    std::vector<CollisionRecord> records;
    const auto& items = layout.items;
    for (size_t i = 0; i < items.size(); ++i) {
        for (size_t j = i + 1; j < items.size(); ++j) {
            if (!z_bands_overlap(items[i].z, items[i].z_top(), items[j].z, items[j].z_top())) {
                continue;
            }
            const double area = intersection_area(items[i].footprint(), items[j].footprint());
            if (area > tolerance) {
                records.push_back(
                    {items[i].id, items[j].id, area, CollisionRecord::Type::furniture});
            }
        }
        const double outside =
            area_outside_room(items[i].footprint(), layout.room.width, layout.room.depth);
        if (outside > tolerance) {
            records.push_back({items[i].id, "", outside, CollisionRecord::Type::wall});
        }
    }
    return records;
}

std::string serialize_layout(const Layout& layout) {
    json j;
    j["schema"] = "roomcraft-layout/1";
    j["room"] = json::parse(serialize_room(layout.room));
    j["items"] = json::array();
    for (const PlacedItem& it : layout.items) {
        json ji;
        ji["id"] = it.id;
        ji["category"] = it.category;
        ji["x"] = it.position.x;
        ji["y"] = it.position.y;
        ji["z"] = it.z;
        ji["yaw"] = it.yaw;
        ji["w"] = it.width;
        ji["d"] = it.depth;
        ji["h"] = it.height;
        ji["color"] = it.color ? json(*it.color) : json();
        ji["material"] = it.material ? json(*it.material) : json();
        ji["mount"] = to_string(it.mount);
        if (!it.support.empty()) ji["support"] = it.support;
        j["items"].push_back(std::move(ji));
    }
    j["provenance"] = {{"seed", layout.seed}, {"config_hash", layout.config_hash}};
    json jt = json::array();
    for (const ItemTrace& t : layout.trace) {
        jt.push_back({{"id", t.id},
                      {"attempts", t.attempts},
                      {"final_alpha", t.final_alpha},
                      {"final_beta", t.final_beta}});
    }
    j["trace"] = {{"items", std::move(jt)}};
    return j.dump(2) + "\n";
}

Layout parse_layout(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedDocument(e.what());
    }
    if (!j.is_object() || j.value("schema", "") != "roomcraft-layout/1") {
        throw SchemaViolation("expected layout schema \"roomcraft-layout/1\"");
    }
    Layout layout;
    const json& jr = j.at("room");
    layout.room.width = jr.at("width").get<double>();
    layout.room.depth = jr.at("depth").get<double>();
    layout.room.wall_height = jr.at("wall_height").get<double>();
    for (const json& jd : jr.value("doors", json::array())) {
        layout.room.doors.push_back({jd.at("wall").get<std::string>(),
                                     jd.at("offset").get<double>(),
                                     jd.at("width").get<double>()});
    }
    for (const json& jw : jr.value("windows", json::array())) {
        layout.room.windows.push_back(
            {jw.at("wall").get<std::string>(), jw.at("offset").get<double>(),
             jw.at("width").get<double>(), jw.at("sill").get<double>()});
    }
    for (const json& ji : j.value("items", json::array())) {
        PlacedItem it;
        it.id = ji.at("id").get<std::string>();
        it.category = ji.value("category", it.id);
        it.position = {ji.at("x").get<double>(), ji.at("y").get<double>()};
        it.z = ji.at("z").get<double>();
        it.yaw = ji.at("yaw").get<double>();
        it.width = ji.at("w").get<double>();
        it.depth = ji.at("d").get<double>();
        it.height = ji.at("h").get<double>();
        if (ji.contains("color") && ji["color"].is_string()) it.color = ji["color"];
        if (ji.contains("material") && ji["material"].is_string()) it.material = ji["material"];
        if (ji.contains("mount")) {
            it.mount = parse_mount(ji["mount"].get<std::string>()).value_or(Mount::floor);
        }
        it.support = ji.value("support", "");
        layout.items.push_back(std::move(it));
    }
    if (j.contains("provenance")) {
        layout.seed = j["provenance"].value("seed", 0ull);
        layout.config_hash = j["provenance"].value("config_hash", "");
    }
    if (j.contains("trace")) {
        for (const json& jt : j["trace"].value("items", json::array())) {
            layout.trace.push_back({jt.at("id").get<std::string>(), jt.at("attempts").get<int>(),
                                    jt.at("final_alpha").get<double>(),
                                    jt.at("final_beta").get<double>()});
        }
    }
    return layout;
}

}  // namespace roomcraft
