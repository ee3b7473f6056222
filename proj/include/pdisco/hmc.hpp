#ifndef PDISCO_HMC_HPP
#define PDISCO_HMC_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace pdisco {

struct HmcConfig {
    double step_size = 5e-4;  // leapfrog time step
    int leapfrog_steps = 30;
    int n_samples = 6000;
    int burn_in = 200;
    std::uint64_t seed = 0;
    double init_scale = 0.1;  // chain starts at init_scale * N(0, I) unless a start state is given

    void validate() const;
};

// One chain: post-burn states plus run metadata.
struct PosteriorSamples {
    std::vector<std::vector<double>> samples;  // n_samples - burn_in rows
    double acceptance_rate = 0.0;
    bool low_acceptance_warning = false;  // acceptance < 0.05 over the run
    HmcConfig config;
};

using LogDensityFn = std::function<double(std::span<const double>)>;
using GradFn = std::function<std::vector<double>(std::span<const double>)>;

// Standard leapfrog for H = V(q) + |p|^2 / 2: half-step momentum, L
// position/momentum sweeps, closing half-step momentum. grad_V is the
// gradient of the potential. Throws trajectory_divergence if a non-finite
// gradient or state appears mid-trajectory.
std::pair<std::vector<double>, std::vector<double>> leapfrog(std::vector<double> position,
                                                             std::vector<double> momentum,
                                                             const GradFn& grad_V, int steps,
                                                             double step_size);

// Hamiltonian Monte-Carlo with identity mass matrix and Metropolis
// accept/reject on the total-energy change. Deterministic given the seed.
// `initial` overrides the prior start draw when non-empty (used to resume).
PosteriorSamples sample_posterior(const LogDensityFn& log_p, const GradFn& grad_log_p, int dim,
                                  const HmcConfig& config, std::vector<double> initial = {});

}  // namespace pdisco

#endif
