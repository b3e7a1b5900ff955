#pragma once

#include <stdexcept>
#include <string>

namespace amlab {

/// Malformed or unsupported input data (netlist streams, tech profiles,
/// table files). Distinct from IoError so callers can map it to the
/// "bad input" exit class.
struct ImportError : std::runtime_error {
    explicit ImportError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem-level failure (cannot open, cannot write).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace amlab
