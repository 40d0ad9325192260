#pragma once

#include <string>

#include "roomcraft/actions.hpp"
#include "roomcraft/config.hpp"
#include "roomcraft/scene_graph.hpp"

namespace roomcraft {

struct PipelineResult {
    ParseResult parsed;
    SceneOrganization expanded;
    SpatialGraph graph;
    PlacementOrder order;
    Room room;
    Layout placed;  // layout straight out of place_sequence
    std::vector<ConstraintTuple> constraints;
    OptimizeResult optimized;
};

// parse -> build_graph -> hdfs_order -> build_room -> place_sequence ->
// compile_constraints -> optimize_layout. Throws module errors.
PipelineResult run_generate(const std::string& spec_text, const EngineConfig& cfg);

}  // namespace roomcraft
