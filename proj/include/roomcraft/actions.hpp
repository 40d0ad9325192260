#pragma once

#include <map>
#include <string>
#include <vector>

#include "roomcraft/constraints.hpp"
#include "roomcraft/placement.hpp"

namespace roomcraft {

enum class ActionKind {
    translate,
    rotate,
    resize,
    set_color,
    set_material,
    add_item,
    remove_item,
    swap_positions,
};

std::string to_string(ActionKind k);

struct Action {
    ActionKind kind = ActionKind::translate;
    std::vector<std::string> targets;
    std::map<std::string, double> params;       // dx/dy, angle, sw/sd/sh, ...
    std::map<std::string, std::string> text_params;  // color/material/category
    double priority = 0.0;
};

// Rule-table repair planning: for each violation, simulate the candidate
// actions and keep the one that most reduces the total weighted magnitude
// (one-step lookahead, at most one action per violation). Throws
// NoRepairFound when no candidate for any violation decreases the total.
std::vector<Action> plan_corrections(const std::vector<ViolationReport>& violations,
                                     const Layout& layout,
                                     const std::vector<ConstraintTuple>& constraints,
                                     const EvalConfig& eval = {}, const CapsConfig& caps = {});

// Apply one action to a copy of the layout. translate/rotate re-run boundary
// checks (ActionInfeasible on exit); translating a support carries its
// stacked items along; add_item runs single-item CAPS placement.
Layout apply_action(const Layout& layout, const Action& action, const CapsConfig& caps = {});

struct CorrectionRound {
    std::vector<ViolationReport> violations;
    Action action;
    bool acted = false;
    double total_before = 0.0;
    double total_after = 0.0;
};

struct OptimizeResult {
    Layout layout;
    std::vector<CorrectionRound> trace;
    std::vector<ViolationReport> residual;
    bool exhausted = false;  // budget ran out or essentials remain unrepairable
};

// detect -> plan -> apply loop; terminates when no essential violations
// remain and the total weighted magnitude stops decreasing, or on budget
// exhaustion. The total is non-increasing across rounds by construction.
OptimizeResult optimize_layout(const Layout& layout,
                               const std::vector<ConstraintTuple>& constraints, int budget,
                               const EvalConfig& eval = {}, const CapsConfig& caps = {});

std::string serialize_correction_trace(const OptimizeResult& result);

}  // namespace roomcraft
