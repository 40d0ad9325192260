#pragma once

#include <string>
#include <vector>

#include "roomcraft/constraints.hpp"
#include "roomcraft/placement.hpp"

namespace roomcraft {

struct MetricConfig {
    double oob_exit_tol = 0.01;      // m a footprint may poke past a wall
    double oob_overlap_frac = 0.01;  // fraction of the smaller footprint
    double clearance_depth = 0.6;    // m of free floor required in front
};

struct OobResult {
    bool flagged = false;
    std::string detail;
};

// True iff any footprint exits the room by more than the exit tolerance or
// any pairwise intersection exceeds the given fraction of the smaller
// footprint's area.
OobResult oob_flag(const Layout& layout, const MetricConfig& cfg = {});

// 100 * flagged / total. Throws EmptySet.
double oob_rate(const std::vector<Layout>& layouts, const MetricConfig& cfg = {});

// An item counts as correctly oriented iff its frontal clearance zone stays
// inside the room and intersects no other footprint in its vertical band,
// and every orientation constraint involving it is satisfied.
double orientation_correctness(const Layout& layout,
                               const std::vector<ConstraintTuple>& constraints,
                               const EvalConfig& eval = {}, const MetricConfig& cfg = {});

// 1 - normalized total weighted violation magnitude, clipped to [0, 1].
// Per-constraint magnitudes are capped at 1 and normalized by total weight.
double coherence_score(const Layout& layout, const std::vector<ConstraintTuple>& constraints,
                       const EvalConfig& eval = {});

}  // namespace roomcraft
