#pragma once
#include <stdexcept>
#include <string>

namespace flep {

// Bad input: violated precondition, malformed config, domain error.
// CLI maps this to exit code 1.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A solver or check failed at runtime (non-convergence, divergence,
// corrupted data). CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

inline void check_numeric(bool cond, const std::string& msg) {
    if (!cond) throw NumericalError(msg);
}

}  // namespace flep
