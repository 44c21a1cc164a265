#pragma once

#include <stdexcept>
#include <string>

namespace qgs {

/// Bad configuration or misuse of an operation contract (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: blow-up, NaN/Inf in a spectrum (CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qgs
