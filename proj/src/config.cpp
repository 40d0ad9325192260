#include "roomcraft/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "roomcraft/errors.hpp"

namespace roomcraft {

namespace {

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw SchemaViolation("config key '" + key + "' needs a numeric value, got '" + value +
                              "'");
    }
}

}  // namespace

ConfigResult parse_config(const std::string& text) {
    ConfigResult result;
    EngineConfig& cfg = result.config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw SchemaViolation("config line " + std::to_string(lineno) +
                                  " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "alpha0") cfg.caps.alpha0 = to_number(key, value);
        else if (key == "beta0") cfg.caps.beta0 = to_number(key, value);
        else if (key == "k") cfg.caps.k = to_number(key, value);
        else if (key == "delta_alpha") cfg.caps.delta_alpha = to_number(key, value);
        else if (key == "mu") cfg.caps.mu = to_number(key, value);
        else if (key == "grid_step") cfg.caps.grid_step = to_number(key, value);
        else if (key == "max_retries") cfg.caps.max_retries = static_cast<int>(to_number(key, value));
        else if (key == "seed") cfg.caps.seed = static_cast<std::uint64_t>(to_number(key, value));
        else if (key == "orientation_tol_deg") cfg.eval.orientation_tol = to_number(key, value) * kPi / 180.0;
        else if (key == "alignment_tol") cfg.eval.alignment_tol = to_number(key, value);
        else if (key == "distance_mode") {
            if (value != "center" && value != "surface") {
                throw SchemaViolation("distance_mode must be center or surface");
            }
            cfg.eval.surface_distance = value == "surface";
        } else if (key == "oob_exit_tol") cfg.metrics.oob_exit_tol = to_number(key, value);
        else if (key == "oob_overlap_frac") cfg.metrics.oob_overlap_frac = to_number(key, value);
        else if (key == "clearance_depth") cfg.metrics.clearance_depth = to_number(key, value);
        else if (key == "optimize_budget") cfg.optimize_budget = static_cast<int>(to_number(key, value));
        else result.warnings.push_back("unknown config key '" + key + "' ignored");
    }

    const CapsConfig& c = cfg.caps;
    if (c.alpha0 < 0 || c.alpha0 > 1 || c.beta0 < 0 || c.beta0 > 1 ||
        std::abs(c.alpha0 + c.beta0 - 1.0) > 1e-9) {
        throw SchemaViolation("alpha0 and beta0 must lie in [0,1] and sum to 1");
    }
    if (c.k <= 0 || c.delta_alpha <= 0 || c.mu <= 0 || c.grid_step <= 0 || c.max_retries < 0) {
        throw SchemaViolation("k, delta_alpha, mu, grid_step must be > 0; max_retries >= 0");
    }
    if (cfg.optimize_budget < 1) throw SchemaViolation("optimize_budget must be >= 1");
    return result;
}

ConfigResult load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileError", "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_hash(const EngineConfig& cfg) {
    nlohmann::json j = {{"alpha0", cfg.caps.alpha0},
                        {"beta0", cfg.caps.beta0},
                        {"k", cfg.caps.k},
                        {"delta_alpha", cfg.caps.delta_alpha},
                        {"mu", cfg.caps.mu},
                        {"grid_step", cfg.caps.grid_step},
                        {"max_retries", cfg.caps.max_retries},
                        {"orientation_tol", cfg.eval.orientation_tol},
                        {"alignment_tol", cfg.eval.alignment_tol},
                        {"surface_distance", cfg.eval.surface_distance},
                        {"oob_exit_tol", cfg.metrics.oob_exit_tol},
                        {"oob_overlap_frac", cfg.metrics.oob_overlap_frac},
                        {"clearance_depth", cfg.metrics.clearance_depth},
                        {"optimize_budget", cfg.optimize_budget}};
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace roomcraft
