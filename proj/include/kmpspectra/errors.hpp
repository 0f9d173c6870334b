#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kmpspectra {

/// Thrown when a requested computation would exceed the configured
/// dimension/size guards (overridable via KMP_SPECTRA_MAX_DIM).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when an internal invariant is violated (e.g. two independent
/// computation routes disagree). Maps to CLI exit code 3.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

/// Thrown on malformed input files.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Upper bound on the dimension of any dense operator we are willing to
/// materialize. Default 20000, overridable through the environment.
inline long max_operator_dimension() {
    if (const char* env = std::getenv("KMP_SPECTRA_MAX_DIM")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 20000;
}

inline void check_dimension_guard(long dim, const std::string& what) {
    long limit = max_operator_dimension();
    if (dim > limit)
        throw resource_error(what + ": dimension " + std::to_string(dim) +
                             " exceeds guard " + std::to_string(limit));
}

} // namespace kmpspectra
