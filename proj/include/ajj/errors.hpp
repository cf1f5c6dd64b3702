#pragma once

#include <stdexcept>
#include <string>

namespace ajj {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid user-supplied configuration or arguments (CLI exit code 2).
class config_error : public error {
public:
    explicit config_error(const std::string& what) : error(what) {}
};

/// Numerical failure: non-convergence, hermiticity violation, step-size
/// collapse (CLI exit code 3).
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& what) : error(what) {}
};

/// Requested problem exceeds the configured state-count limit (CLI exit
/// code 4). Raised before any large allocation happens.
class capacity_error : public error {
public:
    explicit capacity_error(const std::string& what) : error(what) {}
};

} // namespace ajj
