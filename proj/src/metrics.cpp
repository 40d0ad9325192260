#include "roomcraft/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "roomcraft/errors.hpp"

namespace roomcraft {

OobResult oob_flag(const Layout& layout, const MetricConfig& cfg) {
    OobResult res;
    std::ostringstream detail;
    for (const PlacedItem& it : layout.items) {
        const double exit =
            max_exit_distance(it.footprint(), layout.room.width, layout.room.depth);
        if (exit > cfg.oob_exit_tol) {
            res.flagged = true;
            detail << it.id << " exits the room by " << exit << " m; ";
        }
    }
    for (size_t i = 0; i < layout.items.size(); ++i) {
        for (size_t j = i + 1; j < layout.items.size(); ++j) {
            const PlacedItem& a = layout.items[i];
            const PlacedItem& b = layout.items[j];
            if (!z_bands_overlap(a.z, a.z_top(), b.z, b.z_top())) continue;
            const double area = intersection_area(a.footprint(), b.footprint());
            const double smaller = std::min(a.footprint().area(), b.footprint().area());
            if (smaller > 0 && area > cfg.oob_overlap_frac * smaller) {
                res.flagged = true;
                detail << a.id << " intersects " << b.id << " by " << area << " m^2; ";
            }
        }
    }
    res.detail = detail.str();
    return res;
}

double oob_rate(const std::vector<Layout>& layouts, const MetricConfig& cfg) {
    if (layouts.empty()) throw EmptySet("oob_rate needs at least one layout");
    int flagged = 0;
    for (const Layout& l : layouts) {
        if (oob_flag(l, cfg).flagged) ++flagged;
    }
    return 100.0 * flagged / static_cast<double>(layouts.size());
}

double orientation_correctness(const Layout& layout,
                               const std::vector<ConstraintTuple>& constraints,
                               const EvalConfig& eval, const MetricConfig& cfg) {
    if (layout.items.empty()) return 100.0;
    int correct = 0;
    for (const PlacedItem& it : layout.items) {
        const Vec2 f = facing_vector(it.yaw);
        const OrientedRect zone{it.position + f * (it.depth * 0.5 + cfg.clearance_depth * 0.5),
                                it.width * 0.5, cfg.clearance_depth * 0.5, it.yaw};
        bool ok = rect_inside_room(zone, layout.room.width, layout.room.depth, 1e-6);
        if (ok) {
            for (const PlacedItem& other : layout.items) {
                if (other.id == it.id) continue;
                if (!z_bands_overlap(it.z, it.z_top(), other.z, other.z_top())) continue;
                if (intersection_area(zone, other.footprint()) > kOverlapTolerance) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            for (const ConstraintTuple& c : constraints) {
                if (c.ctype != ConstraintKind::orientation) continue;
                if (std::find(c.objects.begin(), c.objects.end(), it.id) == c.objects.end()) {
                    continue;
                }
                bool evaluable = true;
                for (const std::string& id : c.objects) {
                    if (!layout.find(id)) evaluable = false;
                }
                if (evaluable && evaluate_constraint(c, layout, eval).magnitude > 0.0) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) ++correct;
    }
    return 100.0 * correct / static_cast<double>(layout.items.size());
}

double coherence_score(const Layout& layout, const std::vector<ConstraintTuple>& constraints,
                       const EvalConfig& eval) {
    double weight_sum = 0.0;
    double penalty = 0.0;
    for (const ConstraintTuple& c : constraints) {
        bool evaluable = c.ctype == ConstraintKind::count;
        if (!evaluable) {
            evaluable = true;
            for (const std::string& id : c.objects) {
                if (!layout.find(id)) evaluable = false;
            }
        }
        if (!evaluable) continue;
        weight_sum += c.weight;
        const double m = evaluate_constraint(c, layout, eval).magnitude;
        penalty += c.weight * std::min(1.0, m);
    }
    if (weight_sum <= 0.0) return 1.0;
    return 1.0 - std::min(1.0, penalty / weight_sum);
}

}  // namespace roomcraft
