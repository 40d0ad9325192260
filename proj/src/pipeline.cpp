#include "roomcraft/pipeline.hpp"

namespace roomcraft {

PipelineResult run_generate(const std::string& spec_text, const EngineConfig& cfg) {
    PipelineResult r;
    r.parsed = parse_scene_spec(spec_text);
    r.expanded = expand_counts(r.parsed.org);
    r.graph = build_graph(r.expanded);
    r.order = hdfs_order(r.graph);
    r.room = make_room(r.parsed.org);
    r.placed = place_sequence(r.order, r.expanded, r.room, cfg.caps);
    r.placed.config_hash = config_hash(cfg);
    r.constraints = compile_constraints(r.expanded);
    r.optimized = optimize_layout(r.placed, r.constraints, cfg.optimize_budget, cfg.eval, cfg.caps);
    return r;
}

}  // namespace roomcraft
