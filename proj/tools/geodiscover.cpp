// geodiscover: batch discovery of geometric theorems in planar constructions.
//
// Reads a construction file, runs discovery for each `discover` directive,
// and prints a text or JSON report; optionally writes an SVG figure.
//
// Exit codes: 0 success, 2 parse error, 3 discovery aborted on an
// undecidable identity, 4 numeric degeneracy.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "geodiscover/engine.hpp"
#include "geodiscover/parser.hpp"
#include "geodiscover/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Discover and prove theorems about a planar construction"};

    std::string input_path, format = "text", svg_path;
    long timeout_ms = 5000;
    bool show_trivial = false, normalize = false;
    std::uint64_t seed = 0;
    double epsilon = 1e-8;
    int instances = 3, workers = 1;

    app.add_option("input", input_path, "construction file")->required();
    app.add_option("--timeout-ms", timeout_ms, "per-check symbolic timeout in milliseconds");
    app.add_flag("--show-trivial", show_trivial, "also print trivial findings");
    app.add_option("--seed", seed, "base seed for the numeric instances");
    app.add_option("--epsilon", epsilon, "relative tolerance of the numeric filter");
    app.add_option("--instances", instances, "number of numeric instances");
    app.add_flag("--normalize", normalize, "pin the first two free points to (0,0) and (1,0)");
    app.add_option("--workers", workers, "worker count (reserved)");
    app.add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--svg", svg_path, "write an SVG figure to this path");

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(input_path);
    if (!in.good()) {
        std::cerr << "error: cannot read " << input_path << "\n";
        return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();

    auto parsed = gd::parse(ss.str());
    if (const auto* errs = std::get_if<std::vector<gd::SourceError>>(&parsed)) {
        for (const auto& e : *errs)
            std::cerr << input_path << ":" << e.line << ":" << e.column << ": " << e.message
                      << "\n";
        return 2;
    }
    const auto& construction = std::get<gd::Construction>(parsed);
    if (construction.targets.empty()) {
        std::cerr << "error: no discover directive in " << input_path << "\n";
        return 2;
    }

    gd::Options opts;
    opts.per_check_timeout = std::chrono::milliseconds(timeout_ms);
    opts.numeric.epsilon_rel = epsilon;
    opts.numeric.instance_count = instances;
    opts.normalize_coordinates = normalize;
    opts.parallel_workers = workers;
    opts.base_seed = seed;
    // construction-file options are defaults; command-line flags win
    for (const auto& [key, value] : construction.options) {
        if (key == "timeout_ms" && app.count("--timeout-ms") == 0)
            opts.per_check_timeout = std::chrono::milliseconds(std::stol(value));
        else if (key == "normalize" && app.count("--normalize") == 0)
            opts.normalize_coordinates = (value == "true" || value == "1");
        else if (key == "epsilon" && app.count("--epsilon") == 0)
            opts.numeric.epsilon_rel = std::stod(value);
        else if (key == "instances" && app.count("--instances") == 0)
            opts.numeric.instance_count = std::stoi(value);
        else if (key == "seed" && app.count("--seed") == 0)
            opts.base_seed = std::stoull(value);
    }

    int exit_code = 0;
    for (const auto& target : construction.targets) {
        gd::DiscoveryReport report;
        try {
            report = gd::discover(construction, target, opts);
        } catch (const gd::DegenerateInstance& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 4;
        }

        if (format == "json")
            std::cout << gd::render_json(report) << "\n";
        else
            std::cout << "Discover(" << target << "):\n"
                      << gd::render_text(report, show_trivial);

        if (report.aborted) exit_code = 3;

        if (!svg_path.empty() && !report.aborted) {
            std::ofstream out(svg_path);
            out << gd::render_svg(construction, gd::instantiate(construction, opts.base_seed),
                                  report);
        }
    }
    return exit_code;
}
