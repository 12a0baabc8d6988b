// disorder-lab: run a named experiment from a flat key=value config and emit
// a CSV or JSON report.
//
// Exit codes: 0 all checks passed, 1 a quantitative check failed,
// 2 usage/config error, 3 runtime integrity error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "disorderlab/errors.hpp"
#include "disorderlab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"disorder-lab: numerical experiments on log zeta, prime sums, "
                 "the total disorder process, and CUE counting statistics"};

    std::string experiment;
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 20061201;
    int threads = 1;
    std::int64_t guard_bits = 64;

    std::string registry;
    for (const auto& n : dlab::experiment_registry())
        registry += (registry.empty() ? "" : ", ") + n;

    app.add_option("experiment", experiment, "experiment name (" + registry + ")")->required();
    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--seed", seed, "master seed (default 20061201)");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads for grid evaluation");
    app.add_option("--phase-guard-bits", guard_bits, "guard bits for phase reduction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    dlab::RunConfig cfg;
    cfg.experiment = experiment;
    cfg.seed = seed;
    cfg.output_path = out_path;
    cfg.format = format == "csv" ? dlab::ReportFormat::csv : dlab::ReportFormat::json;
    cfg.threads = threads;
    cfg.phase_guard_bits = guard_bits;

    try {
        if (!config_path.empty()) cfg.parameters = dlab::parse_config_file(config_path);
        const dlab::ExperimentReport report = dlab::run_experiment(cfg);
        const std::string body = dlab::emit_report(report, cfg.format);
        if (out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream os(out_path, std::ios::binary);
            if (!os) {
                std::cerr << "error: cannot open output path " << out_path << "\n";
                return 3;
            }
            os << body;
            if (!os) {
                std::cerr << "error: write failed for " << out_path << "\n";
                return 3;
            }
        }
        if (!report.all_pass()) {
            std::cerr << "one or more quantitative checks failed\n";
            return 1;
        }
        return 0;
    } catch (const dlab::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const dlab::schema_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
