#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roomcraft/config.hpp"
#include "roomcraft/constraints.hpp"
#include "roomcraft/placement.hpp"
#include "roomcraft/scene_graph.hpp"

namespace roomcraft {

// One procedurally generated benchmark scene, ready to solve.
struct BenchScene {
    SceneOrganization org;
    SceneOrganization expanded;
    Room room;
    PlacementOrder order;
    std::vector<ConstraintTuple> constraints;
    double density = 0.0;
    std::uint64_t seed = 0;
};

// Deterministic spec generator: draws a furniture prefix from the room
// type's template, sizes the room so floor coverage matches the requested
// density, and wires the template's wall anchors and pair relations.
SceneOrganization generate_bench_spec(RoomType type, double density, std::uint64_t seed);

BenchScene make_bench_scene(RoomType type, double density, std::uint64_t seed);

// n scenes per density, room types cycling through the five catalog types.
std::vector<BenchScene> bench_population(int n, const std::vector<double>& densities,
                                         std::uint64_t seed);

// Ablation strategies. CAPS itself is try_place_sequence. no-CAPS scores
// with frozen weights and no conflict gating or retries; random draws
// uniform in-room poses.
Layout place_no_caps(const BenchScene& scene, const CapsConfig& config);
Layout place_random(const BenchScene& scene, std::uint64_t seed);

struct BenchRow {
    std::string density;   // "0.15" ... or "all"
    std::string strategy;  // caps | no_caps | random
    int scenes = 0;
    double oob = 0.0;
    double ori = 0.0;
    double completeness = 0.0;
    double coherence = 0.0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::string to_csv() const;
    const BenchRow* aggregate(const std::string& strategy) const;
};

BenchResult run_bench(int n, const std::vector<double>& densities, const EngineConfig& cfg,
                      bool caps_only = false);

struct SweepRow {
    double ratio = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double coherence = 0.0;
    double oob = 0.0;
    double ori = 0.0;
    double completeness = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string to_csv() const;
};

// For each ratio r: alpha = r/(1+r), beta = 1/(1+r), then a CAPS-only bench.
SweepResult run_sweep(const std::vector<double>& ratios, int n, const EngineConfig& cfg);

// Deterministic per-scene seed derivation (splitmix64 over the base seed).
std::uint64_t bench_scene_seed(std::uint64_t base, int density_index, int scene_index);

}  // namespace roomcraft
