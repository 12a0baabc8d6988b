#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dlab {

inline constexpr const char* kCodeVersion = "disorderlab 0.1.0";

struct QuantityRecord {
    std::string label;
    double estimate = 0.0;
    double std_error = 0.0;
    double target = 0.0;  // NaN when the quantity has no pinned target
    double z_score = 0.0; // NaN when no target/SE applies
    bool pass = true;
};

// Pass under the default |z| <= 3 rule.
QuantityRecord make_record(std::string label, double estimate, double std_error, double target);

// Pass under a fixed absolute tolerance |estimate - target| <= tol.
QuantityRecord make_record_abs(std::string label, double estimate, double std_error,
                               double target, double tol);

struct ExperimentReport {
    std::string experiment;
    std::map<std::string, std::string> config; // full echo, including defaults
    std::uint64_t seed = 0;
    std::string code_version = kCodeVersion;
    std::string sampler_metadata;
    std::vector<QuantityRecord> records;
    std::vector<std::string> integrity_warnings;
    double runtime_seconds = 0.0; // excluded from the determinism contract

    bool all_pass() const;
};

enum class ReportFormat { csv, json };

// CSV: header (label, estimate, std_error, target, z_score, pass) plus one
// line per record. JSON: a single document mirroring the report. Numbers
// carry 17 significant digits.
std::string emit_report(const ExperimentReport& report, ReportFormat format);

// Inverse of the JSON emitter (used by round-trip checks and tooling).
ExperimentReport parse_report_json(const std::string& text);

} // namespace dlab
