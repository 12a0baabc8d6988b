#include "disorderlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace dlab {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using ordered_json = nlohmann::ordered_json;

} // namespace

QuantityRecord make_record(std::string label, double estimate, double std_error, double target) {
    QuantityRecord r;
    r.label = std::move(label);
    r.estimate = estimate;
    r.std_error = std_error;
    r.target = target;
    if (std::isfinite(target) && std_error > 0.0) {
        r.z_score = (estimate - target) / std_error;
        r.pass = std::abs(r.z_score) <= 3.0;
    } else {
        r.z_score = std::numeric_limits<double>::quiet_NaN();
        r.pass = true;
    }
    return r;
}

QuantityRecord make_record_abs(std::string label, double estimate, double std_error,
                               double target, double tol) {
    QuantityRecord r;
    r.label = std::move(label);
    r.estimate = estimate;
    r.std_error = std_error;
    r.target = target;
    r.z_score = std_error > 0.0 ? (estimate - target) / std_error
                                : std::numeric_limits<double>::quiet_NaN();
    r.pass = std::abs(estimate - target) <= tol;
    return r;
}

bool ExperimentReport::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = "label,estimate,std_error,target,z_score,pass\n";
        for (const auto& r : report.records) {
            out += r.label + ',' + num17(r.estimate) + ',' + num17(r.std_error) + ',' +
                   num17(r.target) + ',' + num17(r.z_score) + ',' + (r.pass ? "true" : "false") +
                   '\n';
        }
        return out;
    }

    ordered_json j;
    j["experiment"] = report.experiment;
    j["seed"] = report.seed;
    j["code_version"] = report.code_version;
    j["sampler_metadata"] = report.sampler_metadata;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : report.config) cfg[k] = v;
    j["config"] = cfg;
    ordered_json recs = ordered_json::array();
    for (const auto& r : report.records) {
        ordered_json rec;
        rec["label"] = r.label;
        rec["estimate"] = r.estimate;
        rec["std_error"] = r.std_error;
        rec["target"] = r.target;
        rec["z_score"] = r.z_score;
        rec["pass"] = r.pass;
        recs.push_back(rec);
    }
    j["records"] = recs;
    j["integrity_warnings"] = report.integrity_warnings;
    j["runtime_seconds"] = report.runtime_seconds;
    return j.dump(2) + "\n";
}

ExperimentReport parse_report_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.code_version = j.at("code_version").get<std::string>();
    r.sampler_metadata = j.at("sampler_metadata").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) r.config[k] = v.get<std::string>();
    for (const auto& rec : j.at("records")) {
        QuantityRecord q;
        q.label = rec.at("label").get<std::string>();
        q.estimate = rec.at("estimate").get<double>();
        q.std_error = rec.at("std_error").get<double>();
        q.target = rec.at("target").is_number() ? rec.at("target").get<double>()
                                                : std::numeric_limits<double>::quiet_NaN();
        q.z_score = rec.at("z_score").is_number() ? rec.at("z_score").get<double>()
                                                  : std::numeric_limits<double>::quiet_NaN();
        q.pass = rec.at("pass").get<bool>();
        r.records.push_back(std::move(q));
    }
    for (const auto& w : j.at("integrity_warnings")) r.integrity_warnings.push_back(w.get<std::string>());
    r.runtime_seconds = j.at("runtime_seconds").get<double>();
    return r;
}

} // namespace dlab
