#ifndef PDISCO_ERRORS_HPP
#define PDISCO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdisco {

// Thrown for malformed configs, unknown presets, bad option values.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown for hard numerical failures (non-finite loss, divergent start state).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown for file-system failures; message carries the offending path.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal to the HMC integrator: a non-finite gradient or state was hit
// mid-trajectory. Caught by the sampler, which rejects the proposal.
struct trajectory_divergence : std::runtime_error {
    trajectory_divergence() : std::runtime_error("leapfrog trajectory diverged") {}
};

}  // namespace pdisco

#endif
