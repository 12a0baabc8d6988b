#pragma once

// Experiment orchestration: flat key=value configs with per-experiment
// schemas, a named-experiment registry, seed substream management, and
// machine-readable reports.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "disorderlab/report.hpp"
#include "disorderlab/rmt.hpp"

namespace dlab {

struct RunConfig {
    std::string experiment;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 20061201;
    std::string output_path; // empty: stdout only
    ReportFormat format = ReportFormat::json;
    int threads = 1;
    std::int64_t phase_guard_bits = 64;
};

// Lines of "key = value"; '#' starts a comment; lists are comma-separated.
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::vector<std::string> experiment_registry();

// Dispatches to the named experiment. usage_error for unknown names,
// schema_error for missing/malformed/unknown parameters; determinism is
// seed-driven throughout.
ExperimentReport run_experiment(const RunConfig& config);

// The HKO record set over an existing sample set; shared between the hko
// experiment and suites that reuse samples from a wieand run.
ExperimentReport hko_records(const std::vector<EigenangleSample>& samples,
                             const std::vector<double>& separations,
                             std::map<std::string, std::string> config_echo = {});

} // namespace dlab
