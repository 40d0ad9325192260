#pragma once

#include <string>
#include <vector>

#include "roomcraft/scene.hpp"

namespace roomcraft {

// One relation lifted into the spatial graph. Architectural endpoints appear
// as pseudo-nodes; weight defaults to 1.0 unless the spec provides one.
struct ConstraintEdge {
    std::string subject;
    std::string object;
    RelationKind relation;
    std::map<std::string, double> params;
    double weight = 1.0;
};

struct SpatialGraph {
    std::vector<FurnitureItem> nodes;        // furniture only, post count-expansion
    std::vector<std::string> pseudo_nodes;   // wall:* / floor / ceiling anchors
    std::vector<ConstraintEdge> edges;

    const FurnitureItem* find(const std::string& id) const;
    bool has_node(const std::string& id) const;
};

struct PlacementOrder {
    std::vector<std::string> items;  // permutation of furniture node ids
    std::vector<double> costs;       // heuristic value per item, same order
};

// Lift an organization into the spatial graph. Expands counts internally.
// Throws CyclicSupport when on_top_of edges form a cycle.
SpatialGraph build_graph(const SceneOrganization& org);

// f(V_i) = sum of incident edge weights (architectural edges count).
// Throws UnknownItem.
double heuristic_cost(const std::string& item, const SpatialGraph& graph);

// Descending-f order, lexicographic tie-break, then a depth-first pass that
// moves every on_top_of support ahead of its children. Deterministic.
PlacementOrder hdfs_order(const SpatialGraph& graph);

// DOT rendering of the graph for inspection.
std::string graph_to_dot(const SpatialGraph& graph);

}  // namespace roomcraft
