#include "roomcraft/scene_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "roomcraft/errors.hpp"

namespace roomcraft {

const FurnitureItem* SpatialGraph::find(const std::string& id) const {
    for (const FurnitureItem& f : nodes) {
        if (f.id == id) return &f;
    }
    return nullptr;
}

bool SpatialGraph::has_node(const std::string& id) const {
    if (find(id)) return true;
    return std::find(pseudo_nodes.begin(), pseudo_nodes.end(), id) != pseudo_nodes.end();
}

namespace {

// Map child -> support from on_top_of edges; throws on cycles or multi-parent.
std::map<std::string, std::string> support_map(const std::vector<ConstraintEdge>& edges) {
    std::map<std::string, std::string> parent;
    for (const ConstraintEdge& e : edges) {
        if (e.relation != RelationKind::on_top_of) continue;
        const auto [it, inserted] = parent.emplace(e.subject, e.object);
        if (!inserted && it->second != e.object) {
            throw CyclicSupport("item '" + e.subject + "' has multiple supports");
        }
    }
    // Walk each chain; a chain longer than the map has a cycle.
    for (const auto& [child, _] : parent) {
        std::set<std::string> seen{child};
        std::string cur = child;
        while (parent.count(cur)) {
            cur = parent.at(cur);
            if (!seen.insert(cur).second) {
                throw CyclicSupport("on_top_of cycle through '" + cur + "'");
            }
        }
    }
    return parent;
}

}  // namespace

SpatialGraph build_graph(const SceneOrganization& org) {
    const SceneOrganization expanded = expand_counts(org);
    SpatialGraph g;
    g.nodes = expanded.furniture;

    std::set<std::string> pseudo;
    for (const RelationEdge& e : expanded.relations) {
        ConstraintEdge edge;
        edge.subject = e.subject;
        edge.object = e.object;
        edge.relation = e.relation;
        edge.params = e.params;
        const auto w = e.params.find("weight");
        edge.weight = w != e.params.end() ? w->second : 1.0;
        if (is_architectural_id(e.object)) pseudo.insert(e.object);
        g.edges.push_back(std::move(edge));
    }
    g.pseudo_nodes.assign(pseudo.begin(), pseudo.end());
    support_map(g.edges);  // validates the support forest
    return g;
}

double heuristic_cost(const std::string& item, const SpatialGraph& graph) {
    if (!graph.find(item)) throw UnknownItem(item);
    double f = 0.0;
    for (const ConstraintEdge& e : graph.edges) {
        if (e.subject == item || e.object == item) f += e.weight;
    }
    return f;
}

PlacementOrder hdfs_order(const SpatialGraph& graph) {
    const auto parent = support_map(graph.edges);

    std::vector<std::pair<std::string, double>> ranked;
    ranked.reserve(graph.nodes.size());
    for (const FurnitureItem& f : graph.nodes) {
        ranked.emplace_back(f.id, heuristic_cost(f.id, graph));
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    std::map<std::string, double> cost;
    for (const auto& [id, f] : ranked) cost[id] = f;

    // Support-repair pass: emit each item's support chain first, preserving
    // the sorted relative order otherwise.
    PlacementOrder order;
    std::set<std::string> emitted;
    auto emit = [&](const std::string& id, auto&& self) -> void {
        if (emitted.count(id)) return;
        const auto p = parent.find(id);
        if (p != parent.end() && cost.count(p->second)) self(p->second, self);
        emitted.insert(id);
        order.items.push_back(id);
        order.costs.push_back(cost.at(id));
    };
    for (const auto& [id, _] : ranked) emit(id, emit);
    return order;
}

std::string graph_to_dot(const SpatialGraph& graph) {
    std::ostringstream os;
    os << "digraph scene {\n";
    for (const FurnitureItem& f : graph.nodes) {
        os << "  \"" << f.id << "\" [shape=box];\n";
    }
    for (const std::string& p : graph.pseudo_nodes) {
        os << "  \"" << p << "\" [shape=plaintext];\n";
    }
    for (const ConstraintEdge& e : graph.edges) {
        os << "  \"" << e.subject << "\" -> \"" << e.object << "\" [label=\""
           << to_string(e.relation);
        if (e.weight != 1.0) os << " w=" << e.weight;
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace roomcraft
