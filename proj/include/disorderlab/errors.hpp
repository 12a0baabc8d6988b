#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// A requested computation exceeds a configured resource cap (memory,
// enumeration budget, exponent size). The message names the cap.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// An input carries fewer bits than the computation needs.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested at a pole/zero where the quantity is undefined.
class singularity_error : public std::runtime_error {
public:
    explicit singularity_error(const std::string& what) : std::runtime_error(what) {}
};

// Sequences that must share a grid or length do not.
class alignment_error : public std::invalid_argument {
public:
    explicit alignment_error(const std::string& what) : std::invalid_argument(what) {}
};

// Bad experiment name / malformed config.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Config key missing or of the wrong type for the experiment schema.
class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

// Sampler failed to reach its calibration window.
class calibration_error : public std::runtime_error {
public:
    explicit calibration_error(const std::string& what) : std::runtime_error(what) {}
};

// A run-level consistency check failed (e.g. too many excluded draws).
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dlab
