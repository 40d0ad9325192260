// roomcraft CLI: constraint-driven indoor layout generation and analysis.
//
// Exit codes:
//   0  success
//   1  usage or file I/O error
//   2  scene spec error (malformed document, schema or reference problem)
//   3  placement infeasible (ItemUnplaceable)
//   4  correction loop exhausted its budget with violations remaining
//   5  extraction provider error
// Diagnostics go to stderr as one JSON object per line.

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "roomcraft/bench.hpp"
#include "roomcraft/errors.hpp"
#include "roomcraft/extraction.hpp"
#include "roomcraft/metrics.hpp"
#include "roomcraft/pipeline.hpp"
#include "roomcraft/render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roomcraft;

namespace {

void emit_warning(const std::string& message) {
    std::cerr << json{{"warning", message}}.dump() << "\n";
}

void emit_error(const std::string& code, const std::string& detail) {
    std::cerr << json{{"error", code}, {"detail", detail}}.dump() << "\n";
}

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "MalformedDocument" || c == "SchemaViolation" || c == "DanglingReference" ||
        c == "InvalidDimensions" || c == "CyclicSupport" || c == "UnknownItem") {
        return 2;
    }
    if (c == "ItemUnplaceable" || c == "NoCandidateSurface") return 3;
    if (c == "ExtractionFailed" || c == "ProviderUnavailable") return 5;
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("FileError", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("FileError", "cannot write " + path);
    out << content;
}

struct CommonOpts {
    std::string spec_path;
    std::string config_path;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool trace = false;
    std::string format;
};

EngineConfig effective_config(const CommonOpts& opts) {
    EngineConfig cfg;
    if (!opts.config_path.empty()) {
        ConfigResult loaded = load_config_file(opts.config_path);
        for (const std::string& w : loaded.warnings) emit_warning(w);
        cfg = loaded.config;
    }
    if (opts.seed_set) cfg.caps.seed = opts.seed;  // flags override file values
    return cfg;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

int cmd_generate(const CommonOpts& opts) {
    const EngineConfig cfg = effective_config(opts);
    const PipelineResult r = run_generate(read_file(opts.spec_path), cfg);
    for (const std::string& w : r.parsed.warnings) emit_warning(w);

    const fs::path out_dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
    fs::create_directories(out_dir);
    write_file((out_dir / "layout.json").string(), serialize_layout(r.optimized.layout));
    write_file((out_dir / "layout.svg").string(), render_svg(r.optimized.layout));
    if (opts.trace) {
        write_file((out_dir / "trace.json").string(), serialize_correction_trace(r.optimized));
    }
    if (r.optimized.exhausted) {
        for (const ViolationReport& v : r.optimized.residual) {
            emit_error("BudgetExhausted", v.detail);
        }
        return 4;
    }
    return 0;
}

int cmd_extract(const std::string& text, const std::string& input_path,
                const std::string& out_path) {
    std::string input = text;
    if (input.empty() && !input_path.empty()) input = read_file(input_path);
    if (input.empty()) throw Error("UsageError", "extract needs --text or --input");
    auto provider = provider_from_env();
    const ParseResult result = extract(*provider, input);
    for (const std::string& w : result.warnings) emit_warning(w);
    const std::string doc = serialize_scene_spec(result.org);
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        write_file(out_path, doc);
    }
    return 0;
}

int cmd_validate(const std::string& spec_path) {
    // Parse structurally first; validation issues print as JSON lines.
    const std::string text = read_file(spec_path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw MalformedDocument(e.what());
    }
    ParseResult parsed;
    try {
        parsed = parse_scene_spec(text);
    } catch (const Error& e) {
        std::cout << json{{"severity", "error"}, {"code", e.code()}, {"message", e.detail()}}.dump()
                  << "\n";
        return 2;
    }
    for (const std::string& w : parsed.warnings) {
        std::cout << json{{"severity", "warning"}, {"message", w}}.dump() << "\n";
    }
    const auto issues = validate_organization(parsed.org);
    bool errors = false;
    for (const ValidationIssue& issue : issues) {
        const bool is_error = issue.severity == ValidationIssue::Severity::error;
        errors |= is_error;
        std::cout << json{{"severity", is_error ? "error" : "warning"},
                          {"id", issue.id},
                          {"message", issue.message}}
                         .dump()
                  << "\n";
    }
    return errors ? 2 : 0;
}

int cmd_optimize(const CommonOpts& opts, const std::string& layout_path, int budget) {
    const EngineConfig cfg = effective_config(opts);
    const Layout layout = parse_layout(read_file(layout_path));
    const ParseResult parsed = parse_scene_spec(read_file(opts.spec_path));
    const auto constraints = compile_constraints(expand_counts(parsed.org));
    const OptimizeResult result = optimize_layout(
        layout, constraints, budget > 0 ? budget : cfg.optimize_budget, cfg.eval, cfg.caps);

    const fs::path out_dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
    fs::create_directories(out_dir);
    write_file((out_dir / "layout.json").string(), serialize_layout(result.layout));
    if (opts.trace) {
        write_file((out_dir / "trace.json").string(), serialize_correction_trace(result));
    }
    if (result.exhausted) {
        for (const ViolationReport& v : result.residual) emit_error("BudgetExhausted", v.detail);
        return 4;
    }
    return 0;
}

int cmd_metrics(const CommonOpts& opts, const std::vector<std::string>& layout_paths) {
    const EngineConfig cfg = effective_config(opts);
    const ParseResult parsed = parse_scene_spec(read_file(opts.spec_path));
    const auto constraints = compile_constraints(expand_counts(parsed.org));

    std::ostringstream csv;
    csv << "layout,oob,ori,coherence\n";
    std::vector<Layout> layouts;
    for (const std::string& path : layout_paths) {
        layouts.push_back(parse_layout(read_file(path)));
        const Layout& l = layouts.back();
        csv << fs::path(path).filename().string() << ","
            << (oob_flag(l, cfg.metrics).flagged ? 1 : 0) << ","
            << orientation_correctness(l, constraints, cfg.eval, cfg.metrics) << ","
            << coherence_score(l, constraints, cfg.eval) << "\n";
    }
    double ori_sum = 0.0, coh_sum = 0.0;
    for (const Layout& l : layouts) {
        ori_sum += orientation_correctness(l, constraints, cfg.eval, cfg.metrics);
        coh_sum += coherence_score(l, constraints, cfg.eval);
    }
    csv << "all," << oob_rate(layouts, cfg.metrics) << "," << ori_sum / layouts.size() << ","
        << coh_sum / layouts.size() << "\n";

    if (opts.out.empty()) {
        std::cout << csv.str();
    } else {
        write_file(opts.out, csv.str());
    }
    return 0;
}

int cmd_render(const std::string& layout_path, const std::string& out_path,
               const std::string& format) {
    const Layout layout = parse_layout(read_file(layout_path));
    const std::string payload =
        format == "json" ? serialize_layout(layout) : render_svg(layout);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        write_file(out_path, payload);
    }
    return 0;
}

int cmd_graph(const std::string& spec_path, const std::string& out_path) {
    const ParseResult parsed = parse_scene_spec(read_file(spec_path));
    const SpatialGraph graph = build_graph(parsed.org);
    const std::string dot = graph_to_dot(graph);
    if (out_path.empty()) {
        std::cout << dot;
    } else {
        write_file(out_path, dot);
    }
    return 0;
}

int cmd_bench(const CommonOpts& opts, int n, const std::string& densities_csv) {
    const EngineConfig cfg = effective_config(opts);
    const std::vector<double> densities =
        densities_csv.empty() ? std::vector<double>{0.15, 0.25, 0.35} : parse_list(densities_csv);
    const BenchResult result = run_bench(n, densities, cfg);
    if (opts.out.empty()) {
        std::cout << result.to_csv();
    } else {
        write_file(opts.out, result.to_csv());
    }
    return 0;
}

int cmd_sweep(const CommonOpts& opts, int n, const std::string& ratios_csv) {
    const EngineConfig cfg = effective_config(opts);
    const std::vector<double> ratios = ratios_csv.empty()
                                           ? std::vector<double>{0.2, 0.5, 1.0, 2.0, 5.0}
                                           : parse_list(ratios_csv);
    const SweepResult result = run_sweep(ratios, n, cfg);
    if (opts.out.empty()) {
        std::cout << result.to_csv();
    } else {
        write_file(opts.out, result.to_csv());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"roomcraft: constraint-driven indoor layout engine"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string text, input_path, layout_path, densities_csv, ratios_csv;
    std::vector<std::string> layout_paths;
    int n = 50;
    int sweep_n = 20;
    int budget = 0;

    auto add_common = [&](CLI::App* cmd, bool with_spec) {
        if (with_spec) cmd->add_option("--spec", opts.spec_path, "scene spec file")->required();
        cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
        cmd->add_option("--out", opts.out, "output file or directory");
        cmd->add_option("--seed", opts.seed, "seed override")
            ->each([&](const std::string&) { opts.seed_set = true; });
        cmd->add_flag("--trace", opts.trace, "emit the correction trace");
        cmd->add_option("--format", opts.format, "output format (json|svg|csv)");
    };

    CLI::App* generate = app.add_subcommand("generate", "spec -> layout + SVG");
    add_common(generate, true);

    CLI::App* extract_cmd = app.add_subcommand("extract", "text -> scene spec via provider");
    extract_cmd->add_option("--text", text, "scene description text");
    extract_cmd->add_option("--input", input_path, "file with the scene description");
    extract_cmd->add_option("--out", opts.out, "output spec path (default stdout)");

    CLI::App* validate = app.add_subcommand("validate", "check a scene spec");
    validate->add_option("--spec", opts.spec_path, "scene spec file")->required();

    CLI::App* optimize = app.add_subcommand("optimize", "layout + spec -> corrected layout");
    add_common(optimize, true);
    optimize->add_option("--layout", layout_path, "layout JSON file")->required();
    optimize->add_option("--budget", budget, "max correction rounds");

    CLI::App* metrics = app.add_subcommand("metrics", "layout quality CSV");
    add_common(metrics, true);
    metrics->add_option("--layout", layout_paths, "layout JSON files")->required();

    CLI::App* render = app.add_subcommand("render", "layout -> SVG");
    render->add_option("--layout", layout_path, "layout JSON file")->required();
    render->add_option("--out", opts.out, "output path (default stdout)");
    render->add_option("--format", opts.format, "svg (default) or json");

    CLI::App* graph = app.add_subcommand("graph", "spec -> spatial graph DOT");
    graph->add_option("--spec", opts.spec_path, "scene spec file")->required();
    graph->add_option("--out", opts.out, "output path (default stdout)");
    graph->add_flag("--dot", "emit DOT (the only format)");

    CLI::App* bench = app.add_subcommand("bench", "CAPS / no-CAPS / random ablation CSV");
    add_common(bench, false);
    bench->add_option("--n", n, "scenes per density (default 50)");
    bench->add_option("--densities", densities_csv, "comma list (default 0.15,0.25,0.35)");

    CLI::App* sweep = app.add_subcommand("sweep", "alpha/beta ratio sweep CSV");
    add_common(sweep, false);
    sweep->add_option("--n", sweep_n, "scenes per density per ratio (default 20)");
    sweep->add_option("--ratios", ratios_csv, "comma list (default 0.2,0.5,1.0,2.0,5.0)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return cmd_generate(opts);
        if (extract_cmd->parsed()) return cmd_extract(text, input_path, opts.out);
        if (validate->parsed()) return cmd_validate(opts.spec_path);
        if (optimize->parsed()) return cmd_optimize(opts, layout_path, budget);
        if (metrics->parsed()) return cmd_metrics(opts, layout_paths);
        if (render->parsed()) return cmd_render(layout_path, opts.out, opts.format);
        if (graph->parsed()) return cmd_graph(opts.spec_path, opts.out);
        if (bench->parsed()) return cmd_bench(opts, n, densities_csv);
        if (sweep->parsed()) return cmd_sweep(opts, sweep_n, ratios_csv);
    } catch (const Error& e) {
        emit_error(e.code(), e.detail());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        emit_error("InternalError", e.what());
        return 1;
    }
    return 1;
}
