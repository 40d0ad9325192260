#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roomcraft/geometry.hpp"
#include "roomcraft/scene.hpp"
#include "roomcraft/scene_graph.hpp"

namespace roomcraft {

inline constexpr double kOverlapTolerance = 1e-4;  // m^2
inline constexpr double kWallMountZ = 1.0;         // hang height for wall items

struct PlacedItem {
    std::string id;
    std::string category;
    Vec2 position;       // footprint center
    double z = 0.0;      // bottom of the item's vertical band
    double yaw = 0.0;
    double width = 0.0;
    double depth = 0.0;
    double height = 0.0;
    std::optional<std::string> color;
    std::optional<std::string> material;
    Mount mount = Mount::floor;
    std::string support;  // id of supporting item for on_top, else empty

    OrientedRect footprint() const { return {position, width * 0.5, depth * 0.5, yaw}; }
    double z_top() const { return z + height; }
};

struct ItemTrace {
    std::string id;
    int attempts = 0;
    double final_alpha = 0.0;
    double final_beta = 0.0;
};

struct Layout {
    Room room;
    std::vector<PlacedItem> items;
    std::uint64_t seed = 0;
    std::string config_hash;  // hex of the config that produced this layout
    std::vector<ItemTrace> trace;

    const PlacedItem* find(const std::string& id) const;
    PlacedItem* find(const std::string& id);
    double room_diagonal() const { return std::sqrt(room.width * room.width + room.depth * room.depth); }
};

struct CapsConfig {
    double alpha0 = 0.5;
    double beta0 = 0.5;
    double k = 1.0;
    double delta_alpha = 0.05;
    double mu = 3.0;          // neighbor radius (m)
    double grid_step = 0.1;   // m
    int max_retries = 25;
    std::uint64_t seed = 0;
};

enum class ConflictKind { wall_collision, furniture_collision };

struct Candidate {
    Vec2 position;
    double yaw = 0.0;
};

// Wall anchors and support derived from an item's relations.
struct PlacementContext {
    std::vector<std::string> against_walls;
    std::vector<std::string> near_walls;
    bool corner = false;
    std::string support_id;  // on_top_of target
};

PlacementContext placement_context(const std::string& id, const SpatialGraph& graph);

// Bottom z for an item given its mount and (for on_top) its placed support.
// Throws NoCandidateSurface when the support is missing from the layout.
double resolve_z(const FurnitureItem& item, const PlacementContext& ctx, const Layout& layout);

// Candidate poses for one item: floor/ceiling grid, wall-adjacent bands for
// anchored items, or a grid over the support's top face. Deterministic order.
std::vector<Candidate> generate_candidates(const FurnitureItem& item, const Room& room,
                                           const Layout& layout, double grid_step,
                                           const PlacementContext& ctx = {});

// Perpendicular distance from p to the wall opposite anchor_wall; with an
// empty anchor the nearest wall to p is used.
double l_dist(const Vec2& p, const Room& room, const std::string& anchor_wall = "");

// Mean center distance to placed items within radius mu; mu when none.
double l_obj(const Vec2& p, const Layout& layout, double mu);

// alpha * (l_dist / room diagonal) + beta * (l_obj / mu); higher is better.
// Candidates that leave their surface or overlap a placed footprint by more
// than overlap_tol score -infinity.
double score_candidate(const Vec2& p, double yaw, const FurnitureItem& item, const Room& room,
                       const Layout& layout, double alpha, double beta, double mu,
                       const PlacementContext& ctx = {},
                       double overlap_tol = kOverlapTolerance);

// The objective value alone, with no feasibility gates applied.
double score_candidate_raw(const Vec2& p, const Room& room, const Layout& layout, double alpha,
                           double beta, double mu, const PlacementContext& ctx = {});

// Eq-style weight update: wall conflicts raise alpha, furniture conflicts
// lower it; beta = 1 - alpha always, alpha clamped to [0,1].
std::pair<double, double> adjust_weights(double alpha, ConflictKind conflict, double k,
                                         double delta_alpha);

struct PlaceResult {
    Layout layout;
    std::vector<std::string> unplaced;  // empty on success
};

// Sequential Addition placement in the given order. Weights reset to
// (alpha0, beta0) per item; on an all-infeasible round the conflict type is
// diagnosed from the best-scoring rejected candidate, weights adjusted, and
// the grid refined (step halves every 5 retries, floor 0.025 m).
PlaceResult try_place_sequence(const PlacementOrder& order, const SceneOrganization& org,
                               const Room& room, const CapsConfig& config);

// Same, but throws ItemUnplaceable on the first failed item.
Layout place_sequence(const PlacementOrder& order, const SceneOrganization& org, const Room& room,
                      const CapsConfig& config);

// Place one extra item into an existing layout (used by add_item actions).
bool place_single(Layout& layout, const FurnitureItem& item, const PlacementContext& ctx,
                  const CapsConfig& config);

struct CollisionRecord {
    enum class Type { furniture, wall };
    std::string a;
    std::string b;  // empty for wall records
    double area = 0.0;
    Type type = Type::furniture;
};

// Pairwise oriented-rectangle intersections at matching z-bands plus
// footprint area outside the room; reported iff area > tolerance.
std::vector<CollisionRecord> detect_collisions(const Layout& layout,
                                               double tolerance = kOverlapTolerance);

std::string serialize_layout(const Layout& layout);
Layout parse_layout(const std::string& text);

}  // namespace roomcraft
