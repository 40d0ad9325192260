#pragma once

#include <string>
#include <vector>

#include "roomcraft/constraints.hpp"
#include "roomcraft/metrics.hpp"
#include "roomcraft/placement.hpp"

namespace roomcraft {

// Effective engine configuration: CAPS parameters plus evaluation and metric
// thresholds. Loaded from a key = value config file; CLI flags override file
// values; env vars configure only the extraction provider.
struct EngineConfig {
    CapsConfig caps;
    EvalConfig eval;
    MetricConfig metrics;
    int optimize_budget = 20;

    bool operator==(const EngineConfig&) const = default;
};

struct ConfigResult {
    EngineConfig config;
    std::vector<std::string> warnings;  // unknown keys
};

// Flat TOML-style `key = value` lines, '#' comments. Keys: alpha0, beta0, k,
// delta_alpha, mu, grid_step, max_retries, seed, orientation_tol_deg,
// alignment_tol, distance_mode (center|surface), oob_exit_tol,
// oob_overlap_frac, clearance_depth, optimize_budget.
// Throws SchemaViolation on malformed lines or invariant violations.
ConfigResult parse_config(const std::string& text);

ConfigResult load_config_file(const std::string& path);

// FNV-1a hex fingerprint of every config field except the seed.
std::string config_hash(const EngineConfig& cfg);

}  // namespace roomcraft
