#include "roomcraft/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "roomcraft/errors.hpp"
#include "roomcraft/metrics.hpp"

namespace roomcraft {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

struct TplItem {
    const char* id;
    const char* category;
};

struct TplRel {
    const char* subject;
    const char* object;
    RelationKind relation;
};

struct RoomTemplate {
    std::vector<TplItem> items;       // priority order; a prefix is taken
    std::vector<TplRel> relations;    // applied when both endpoints selected
};

const RoomTemplate& room_template(RoomType type) {
    static const std::map<RoomType, RoomTemplate> templates = {
        {RoomType::bedroom,
         {{{"bed", "bed"},
           {"wardrobe", "wardrobe"},
           {"nightstand1", "nightstand"},
           {"desk", "desk"},
           {"dresser", "dresser"},
           {"chair1", "chair"},
           {"nightstand2", "nightstand"},
           {"bookshelf", "bookshelf"},
           {"armchair", "armchair"},
           {"plant", "plant"},
           {"lamp", "lamp"},
           {"cup", "cup"}},
          {{"bed", "wall:north", RelationKind::against_wall},
           {"wardrobe", "wall:east", RelationKind::against_wall},
           {"desk", "wall:west", RelationKind::against_wall},
           {"dresser", "wall:west", RelationKind::against_wall},
           {"bookshelf", "wall:east", RelationKind::against_wall},
           {"nightstand1", "bed", RelationKind::near},
           {"nightstand2", "bed", RelationKind::near},
           {"chair1", "desk", RelationKind::near},
           {"armchair", "wall:south", RelationKind::near_wall},
           {"plant", "floor", RelationKind::corner},
           {"lamp", "bed", RelationKind::near},
           {"cup", "desk", RelationKind::on_top_of}}}},
        {RoomType::living_room,
         {{{"sofa", "sofa"},
           {"tv", "tv"},
           {"coffee_table", "coffee_table"},
           {"bookshelf", "bookshelf"},
           {"armchair1", "armchair"},
           {"cabinet", "cabinet"},
           {"plant1", "plant"},
           {"armchair2", "armchair"},
           {"lamp", "lamp"},
           {"plant2", "plant"},
           {"vase", "vase"},
           {"chair1", "chair"}},
          {{"sofa", "wall:north", RelationKind::against_wall},
           {"tv", "wall:south", RelationKind::against_wall},
           {"tv", "sofa", RelationKind::face_to_face},
           {"coffee_table", "sofa", RelationKind::near},
           {"bookshelf", "wall:west", RelationKind::against_wall},
           {"cabinet", "wall:east", RelationKind::against_wall},
           {"armchair1", "wall:west", RelationKind::near_wall},
           {"armchair2", "wall:east", RelationKind::near_wall},
           {"plant1", "floor", RelationKind::corner},
           {"lamp", "sofa", RelationKind::near},
           {"vase", "coffee_table", RelationKind::on_top_of},
           {"chair1", "coffee_table", RelationKind::near}}}},
        {RoomType::dining_room,
         {{{"dining_table", "dining_table"},
           {"chair1", "chair"},
           {"chair2", "chair"},
           {"cabinet", "cabinet"},
           {"chair3", "chair"},
           {"chair4", "chair"},
           {"dresser", "dresser"},
           {"plant", "plant"},
           {"bookshelf", "bookshelf"},
           {"lamp", "lamp"},
           {"vase", "vase"},
           {"armchair", "armchair"}},
          {{"chair1", "dining_table", RelationKind::near},
           {"chair2", "dining_table", RelationKind::near},
           {"chair3", "dining_table", RelationKind::near},
           {"chair4", "dining_table", RelationKind::near},
           {"cabinet", "wall:north", RelationKind::against_wall},
           {"dresser", "wall:west", RelationKind::against_wall},
           {"bookshelf", "wall:east", RelationKind::against_wall},
           {"plant", "floor", RelationKind::corner},
           {"lamp", "wall:south", RelationKind::near_wall},
           {"vase", "dining_table", RelationKind::on_top_of},
           {"armchair", "wall:east", RelationKind::near_wall}}}},
        {RoomType::kitchen,
         {{{"fridge", "fridge"},
           {"stove", "stove"},
           {"counter1", "counter"},
           {"sink", "sink"},
           {"table", "table"},
           {"counter2", "counter"},
           {"chair1", "chair"},
           {"chair2", "chair"},
           {"kitchen_island", "kitchen_island"},
           {"cabinet", "cabinet"},
           {"plant", "plant"},
           {"cup", "cup"}},
          {{"fridge", "wall:north", RelationKind::against_wall},
           {"stove", "wall:north", RelationKind::against_wall},
           {"counter1", "wall:west", RelationKind::against_wall},
           {"counter2", "wall:east", RelationKind::against_wall},
           {"sink", "wall:west", RelationKind::against_wall},
           {"cabinet", "wall:east", RelationKind::against_wall},
           {"table", "kitchen_island", RelationKind::far_from},
           {"chair1", "table", RelationKind::near},
           {"chair2", "table", RelationKind::near},
           {"plant", "floor", RelationKind::corner},
           {"cup", "table", RelationKind::on_top_of}}}},
        {RoomType::bathroom,
         {{{"toilet", "toilet"},
           {"sink", "sink"},
           {"bathtub", "bathtub"},
           {"cabinet", "cabinet"},
           {"mirror", "mirror"},
           {"shower", "shower"},
           {"plant", "plant"},
           {"lamp", "lamp"}},
          {{"toilet", "wall:west", RelationKind::against_wall},
           {"sink", "wall:north", RelationKind::against_wall},
           {"bathtub", "wall:east", RelationKind::against_wall},
           {"cabinet", "wall:south", RelationKind::near_wall},
           {"mirror", "wall:north", RelationKind::against_wall},
           {"shower", "floor", RelationKind::corner},
           {"plant", "floor", RelationKind::corner},
           {"lamp", "sink", RelationKind::near}}}},
    };
    return templates.at(type);
}

const RoomType kBenchTypes[5] = {RoomType::bedroom, RoomType::living_room, RoomType::dining_room,
                                 RoomType::kitchen, RoomType::bathroom};

std::string fmt_csv(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::uint64_t bench_scene_seed(std::uint64_t base, int density_index, int scene_index) {
    return splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(density_index) * 1000003ull +
                                        static_cast<std::uint64_t>(scene_index)));
}

SceneOrganization generate_bench_spec(RoomType type, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const RoomTemplate& tpl = room_template(type);

    const int max_items = static_cast<int>(tpl.items.size());
    const int n = 4 + static_cast<int>(rng() % std::uint64_t(std::min(9, max_items - 3)));

    SceneOrganization org;
    org.room_type = type;
    double floor_area_sum = 0.0;
    double max_extent = 0.0;
    for (int i = 0; i < n && i < max_items; ++i) {
        const TplItem& t = tpl.items[i];
        const CatalogEntry& e = catalog_entry(t.category);
        FurnitureItem item;
        item.id = t.id;
        item.category = t.category;
        item.width = e.width;
        item.depth = e.depth;
        item.height = e.height;
        item.mount = e.mount;
        if (item.mount == Mount::floor) {
            floor_area_sum += item.width * item.depth;
            max_extent = std::max({max_extent, item.width, item.depth});
        }
        org.furniture.push_back(std::move(item));
    }

    // Size the room so floor coverage hits the requested density.
    const double area = std::max(floor_area_sum / std::max(density, 1e-3), 4.0);
    const double aspect = 0.55 + 0.35 * u01(rng);  // depth / width
    double width = std::sqrt(area / aspect);
    double depth = width * aspect;
    const double min_dim = std::min(std::max(2.0, max_extent + 0.5), 50.0);
    width = std::clamp(width, min_dim, 50.0);
    depth = std::clamp(depth, min_dim, 50.0);
    RoomSpec rs;
    rs.width = std::round(width * 100.0) / 100.0;
    rs.depth = std::round(depth * 100.0) / 100.0;
    org.room = rs;

    // Wire template relations between selected endpoints; keep wall anchors
    // only while the wall still has room for them.
    std::map<std::string, double> wall_load;
    for (const TplRel& r : tpl.relations) {
        const FurnitureItem* subject = org.find(r.subject);
        if (!subject) continue;
        if (!is_architectural_id(r.object) && !org.find(r.object)) continue;
        if (r.relation == RelationKind::against_wall) {
            const std::string wall = wall_of_id(r.object);
            const double len = (wall == "north" || wall == "south") ? *rs.width : *rs.depth;
            double& load = wall_load[wall];
            if (load + subject->width + 0.2 > len) continue;  // anchor will not fit
            load += subject->width + 0.1;
        }
        org.relations.push_back({r.subject, r.object, r.relation, {}});
    }
    return org;
}

BenchScene make_bench_scene(RoomType type, double density, std::uint64_t seed) {
    BenchScene scene;
    scene.density = density;
    scene.seed = seed;
    scene.org = generate_bench_spec(type, density, seed);
    scene.expanded = expand_counts(scene.org);
    scene.room = make_room(scene.org);
    scene.order = hdfs_order(build_graph(scene.expanded));
    scene.constraints = compile_constraints(scene.expanded);
    return scene;
}

std::vector<BenchScene> bench_population(int n, const std::vector<double>& densities,
                                         std::uint64_t seed) {
    std::vector<BenchScene> scenes;
    scenes.reserve(densities.size() * n);
    for (int di = 0; di < static_cast<int>(densities.size()); ++di) {
        for (int si = 0; si < n; ++si) {
            const RoomType type = kBenchTypes[si % 5];
            scenes.push_back(
                make_bench_scene(type, densities[di], bench_scene_seed(seed, di, si)));
        }
    }
    return scenes;
}

Layout place_no_caps(const BenchScene& scene, const CapsConfig& config) {
    const SpatialGraph graph = build_graph(scene.expanded);
    Layout layout;
    layout.room = scene.room;
    layout.seed = scene.seed;
    for (const std::string& id : scene.order.items) {
        const FurnitureItem* item = scene.expanded.find(id);
        const PlacementContext ctx = placement_context(id, graph);
        const auto candidates =
            generate_candidates(*item, scene.room, layout, config.grid_step, ctx);
        if (candidates.empty()) continue;  // unplaced, counted as incompleteness
        // Frozen weights, single pass, no conflict gating: pure argmax of the
        // placement objective.
        double best = -std::numeric_limits<double>::infinity();
        const Candidate* pick = nullptr;
        for (const Candidate& c : candidates) {
            const double s = score_candidate_raw(c.position, scene.room, layout, config.alpha0,
                                                 config.beta0, config.mu, ctx);
            if (s > best) {
                best = s;
                pick = &c;
            }
        }
        PlacedItem placed;
        placed.id = item->id;
        placed.category = item->category;
        placed.position = pick->position;
        placed.z = resolve_z(*item, ctx, layout);
        placed.yaw = pick->yaw;
        placed.width = item->width;
        placed.depth = item->depth;
        placed.height = item->height;
        placed.color = item->color;
        placed.material = item->material;
        placed.mount = item->mount;
        placed.support = ctx.support_id;
        layout.items.push_back(std::move(placed));
        layout.trace.push_back({id, 1, config.alpha0, config.beta0});
    }
    return layout;
}

Layout place_random(const BenchScene& scene, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed ^ 0xabcdef1234567890ull));
    const SpatialGraph graph = build_graph(scene.expanded);
    Layout layout;
    layout.room = scene.room;
    layout.seed = seed;
    for (const std::string& id : scene.order.items) {
        const FurnitureItem* item = scene.expanded.find(id);
        const PlacementContext ctx = placement_context(id, graph);
        const double yaw = kPi * 0.5 * static_cast<double>(rng() % 4);
        const OrientedRect probe{{0, 0}, item->width * 0.5, item->depth * 0.5, yaw};
        const Vec2 he = probe.aabb_half_extents();

        PlacedItem placed;
        placed.id = item->id;
        placed.category = item->category;
        placed.yaw = yaw;
        placed.width = item->width;
        placed.depth = item->depth;
        placed.height = item->height;
        placed.color = item->color;
        placed.material = item->material;
        placed.mount = item->mount;
        placed.support = ctx.support_id;
        placed.z = resolve_z(*item, ctx, layout);

        if (!ctx.support_id.empty()) {
            const PlacedItem* sup = layout.find(ctx.support_id);
            const double hu = std::max(0.0, sup->width * 0.5 - he.x);
            const double hv = std::max(0.0, sup->depth * 0.5 - he.y);
            placed.position = sup->position +
                              right_vector(sup->yaw) * ((2.0 * u01(rng) - 1.0) * hu) +
                              facing_vector(sup->yaw) * ((2.0 * u01(rng) - 1.0) * hv);
        } else {
            const double lo_x = std::min(he.x, scene.room.width * 0.5);
            const double lo_y = std::min(he.y, scene.room.depth * 0.5);
            placed.position = {lo_x + u01(rng) * (scene.room.width - 2.0 * lo_x),
                               lo_y + u01(rng) * (scene.room.depth - 2.0 * lo_y)};
        }
        layout.items.push_back(std::move(placed));
        layout.trace.push_back({id, 1, 0.0, 0.0});
    }
    return layout;
}

namespace {

struct StrategyStats {
    int scenes = 0;
    int flagged = 0;
    double ori_sum = 0.0;
    double coherence_sum = 0.0;
    long placed = 0;
    long total = 0;

    void add(const Layout& layout, const BenchScene& scene, const EngineConfig& cfg) {
        ++scenes;
        if (oob_flag(layout, cfg.metrics).flagged) ++flagged;
        ori_sum += orientation_correctness(layout, scene.constraints, cfg.eval, cfg.metrics);
        coherence_sum += coherence_score(layout, scene.constraints, cfg.eval);
        placed += static_cast<long>(layout.items.size());
        total += static_cast<long>(scene.expanded.furniture.size());
    }

    BenchRow row(const std::string& density, const std::string& strategy) const {
        BenchRow r;
        r.density = density;
        r.strategy = strategy;
        r.scenes = scenes;
        r.oob = scenes ? 100.0 * flagged / scenes : 0.0;
        r.ori = scenes ? ori_sum / scenes : 0.0;
        r.completeness = total ? 100.0 * placed / static_cast<double>(total) : 0.0;
        r.coherence = scenes ? coherence_sum / scenes : 0.0;
        return r;
    }
};

}  // namespace

std::string BenchResult::to_csv() const {
    std::ostringstream os;
    os << "density,strategy,scenes,oob,ori,completeness,coherence\n";
    for (const BenchRow& r : rows) {
        os << r.density << "," << r.strategy << "," << r.scenes << "," << fmt_csv(r.oob) << ","
           << fmt_csv(r.ori) << "," << fmt_csv(r.completeness) << "," << fmt_csv(r.coherence)
           << "\n";
    }
    return os.str();
}

const BenchRow* BenchResult::aggregate(const std::string& strategy) const {
    for (const BenchRow& r : rows) {
        if (r.density == "all" && r.strategy == strategy) return &r;
    }
    return nullptr;
}

BenchResult run_bench(int n, const std::vector<double>& densities, const EngineConfig& cfg,
                      bool caps_only) {
    if (n < 1) throw Error("InvalidArgument", "bench needs n >= 1");
    const std::vector<std::string> strategies =
        caps_only ? std::vector<std::string>{"caps"}
                  : std::vector<std::string>{"caps", "no_caps", "random"};

    std::map<std::string, std::map<std::string, StrategyStats>> stats;  // density -> strategy
    std::map<std::string, StrategyStats> aggregate;

    for (int di = 0; di < static_cast<int>(densities.size()); ++di) {
        char dkey[16];
        std::snprintf(dkey, sizeof(dkey), "%.2f", densities[di]);
        for (int si = 0; si < n; ++si) {
            const RoomType type = kBenchTypes[si % 5];
            const std::uint64_t seed = bench_scene_seed(cfg.caps.seed, di, si);
            const BenchScene scene = make_bench_scene(type, densities[di], seed);

            for (const std::string& strategy : strategies) {
                Layout layout;
                if (strategy == "caps") {
                    CapsConfig caps = cfg.caps;
                    caps.seed = seed;
                    layout = try_place_sequence(scene.order, scene.expanded, scene.room, caps)
                                 .layout;
                } else if (strategy == "no_caps") {
                    layout = place_no_caps(scene, cfg.caps);
                } else {
                    layout = place_random(scene, seed);
                }
                stats[dkey][strategy].add(layout, scene, cfg);
                aggregate[strategy].add(layout, scene, cfg);
            }
        }
    }

    BenchResult result;
    for (const auto& [dkey, per_strategy] : stats) {
        for (const std::string& strategy : strategies) {
            result.rows.push_back(per_strategy.at(strategy).row(dkey, strategy));
        }
    }
    for (const std::string& strategy : strategies) {
        result.rows.push_back(aggregate.at(strategy).row("all", strategy));
    }
    return result;
}

std::string SweepResult::to_csv() const {
    std::ostringstream os;
    os << "ratio,alpha,beta,coherence,oob,ori,completeness\n";
    for (const SweepRow& r : rows) {
        os << fmt_csv(r.ratio) << "," << fmt_csv(r.alpha) << "," << fmt_csv(r.beta) << ","
           << fmt_csv(r.coherence) << "," << fmt_csv(r.oob) << "," << fmt_csv(r.ori) << ","
           << fmt_csv(r.completeness) << "\n";
    }
    return os.str();
}

SweepResult run_sweep(const std::vector<double>& ratios, int n, const EngineConfig& cfg) {
    SweepResult result;
    for (double ratio : ratios) {
        if (ratio <= 0.0) throw Error("InvalidArgument", "sweep ratios must be positive");
        EngineConfig swept = cfg;
        swept.caps.alpha0 = ratio / (1.0 + ratio);
        swept.caps.beta0 = 1.0 - swept.caps.alpha0;
        const BenchResult bench = run_bench(n, {0.15, 0.25, 0.35}, swept, /*caps_only=*/true);
        const BenchRow* agg = bench.aggregate("caps");
        SweepRow row;
        row.ratio = ratio;
        row.alpha = swept.caps.alpha0;
        row.beta = swept.caps.beta0;
        row.coherence = agg->coherence;
        row.oob = agg->oob;
        row.ori = agg->ori;
        row.completeness = agg->completeness;
        result.rows.push_back(row);
    }
    return result;
}

}  // namespace roomcraft
