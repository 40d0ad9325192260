#pragma once

#include <nlohmann/json.hpp>
#include <map>
#include <string>
#include <vector>

#include "roomcraft/placement.hpp"
#include "roomcraft/scene.hpp"

namespace roomcraft {

enum class ConstraintKind {
    distance,
    overlap_free,
    orientation,
    position,
    alignment,
    on_top_of,
    size,
    color,
    material,
    count,
};

std::string to_string(ConstraintKind k);

enum class ComparatorKind { range, equals, predicate };

// Unified 5-tuple: type, objects, parameters, relationship, weight.
struct ConstraintTuple {
    ConstraintKind ctype = ConstraintKind::overlap_free;
    std::vector<std::string> objects;  // 1-2 ids; a category for count; empty = all items
    std::map<std::string, double> params;
    std::map<std::string, std::string> text_params;  // predicate / wall / attribute values
    ComparatorKind relation = ComparatorKind::predicate;
    double weight = 1.0;
    bool essential = false;
};

enum class ViolationCategory { spatial, attribute, count };

struct ViolationReport {
    ConstraintTuple constraint;
    std::size_t constraint_index = 0;  // position in the compiled list (tie-break)
    double magnitude = 0.0;            // 0 = satisfied
    ViolationCategory category = ViolationCategory::spatial;
    std::string detail;
};

struct EvalConfig {
    double orientation_tol = 15.0 * kPi / 180.0;
    double alignment_tol = 0.05;
    bool surface_distance = false;  // distance constraints: surface instead of center
};

// Map every relation edge through the taxonomy table and append the implicit
// essential overlap_free constraint over all item pairs.
std::vector<ConstraintTuple> compile_constraints(const SceneOrganization& org);

// Magnitude of one constraint against a layout. Throws UnplacedReference.
ViolationReport evaluate_constraint(const ConstraintTuple& c, const Layout& layout,
                                    const EvalConfig& cfg = {});

// Violated constraints only, sorted essential first, then weight descending,
// then magnitude descending; ties broken by constraint index. Constraints
// whose references are not in the layout are skipped.
std::vector<ViolationReport> detect_violations(const Layout& layout,
                                               const std::vector<ConstraintTuple>& constraints,
                                               const EvalConfig& cfg = {});

// Sum of weight * magnitude over all evaluable constraints.
double total_weighted_magnitude(const Layout& layout,
                                const std::vector<ConstraintTuple>& constraints,
                                const EvalConfig& cfg = {});

// The machine-readable relation -> constraint taxonomy (pinned by a test
// against docs/relation_taxonomy.json).
nlohmann::json taxonomy_json();

}  // namespace roomcraft
