#pragma once

#include "dps/quadrature.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dps {

/// Shared run configuration: defaults < config file < command-line flags.
struct RunConfig {
    double quad_tolerance = 1e-10;
    int max_nodes = 512;
    int truncation_nmax = 256;
    std::string output_format = "csv"; // csv | json
    std::uint64_t seed = 12345;

    QuadratureConfig quadrature() const
    {
        return QuadratureConfig{quad_tolerance, max_nodes, truncation_nmax};
    }
};

/// Raised by load_config with a message carrying the offending line number.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a flat `key = value` file ('#' comments). Unknown keys are errors,
/// as are values violating the config invariants. An absent path yields the
/// defaults.
RunConfig load_config(const std::string& path);

/// Validate invariants (quad_tolerance > 0, max_nodes >= 16, format known).
void validate(const RunConfig& cfg);

} // namespace dps
