#include "pdisco/hmc.hpp"

#include <cmath>
#include <stdexcept>

#include "pdisco/errors.hpp"
#include "pdisco/rng.hpp"

namespace pdisco {

void HmcConfig::validate() const {
    if (!(step_size > 0.0)) throw config_error("hmc step_size must be positive");
    if (leapfrog_steps < 1) throw config_error("hmc leapfrog_steps must be >= 1");
    if (n_samples < 1) throw config_error("hmc n_samples must be >= 1");
    if (burn_in < 0 || burn_in >= n_samples)
        throw config_error("hmc burn_in must satisfy 0 <= burn_in < n_samples");
    if (!(init_scale >= 0.0)) throw config_error("hmc init_scale must be >= 0");
}

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double kinetic(const std::vector<double>& p) {
    double k = 0.0;
    for (double v : p) k += v * v;
    return 0.5 * k;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> leapfrog(std::vector<double> position,
                                                             std::vector<double> momentum,
                                                             const GradFn& grad_V, int steps,
                                                             double step_size) {
    if (position.size() != momentum.size())
        throw std::invalid_argument("leapfrog position/momentum size mismatch");
    const std::size_t dim = position.size();

    auto momentum_kick = [&](double scale) {
        std::vector<double> g = grad_V(position);
        if (g.size() != dim) throw std::invalid_argument("grad_V dimension mismatch");
        if (!all_finite(g)) throw trajectory_divergence();
        for (std::size_t i = 0; i < dim; ++i) momentum[i] -= scale * g[i];
    };

    momentum_kick(0.5 * step_size);
    for (int l = 0; l < steps; ++l) {
        for (std::size_t i = 0; i < dim; ++i) position[i] += step_size * momentum[i];
        if (!all_finite(position)) throw trajectory_divergence();
        momentum_kick(l == steps - 1 ? 0.5 * step_size : step_size);
    }
    return {std::move(position), std::move(momentum)};
}

PosteriorSamples sample_posterior(const LogDensityFn& log_p, const GradFn& grad_log_p, int dim,
                                  const HmcConfig& config, std::vector<double> initial) {
    config.validate();
    if (dim < 1) throw std::invalid_argument("sample_posterior requires dim >= 1");
    if (!initial.empty() && initial.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("initial state dimension mismatch");

    Rng rng(config.seed);
    std::vector<double> q = std::move(initial);
    if (q.empty()) {
        q.resize(dim);
        for (double& v : q) v = config.init_scale * rng.normal();
    }

    GradFn grad_V = [&grad_log_p](std::span<const double> x) {
        std::vector<double> g = grad_log_p(x);
        for (double& v : g) v = -v;
        return g;
    };

    double V_current = -log_p(q);
    if (!std::isfinite(V_current)) throw numeric_error("hmc start state has non-finite density");

    PosteriorSamples out;
    out.config = config;
    out.samples.reserve(config.n_samples - config.burn_in);

    std::vector<double> p(dim);
    long accepted = 0;
    for (int s = 0; s < config.n_samples; ++s) {
        for (double& v : p) v = rng.normal();
        const double H0 = V_current + kinetic(p);
        const double u = rng.uniform();  // drawn unconditionally to keep the stream aligned
        try {
            auto [q_new, p_new] = leapfrog(q, p, grad_V, config.leapfrog_steps, config.step_size);
            const double V_new = -log_p(q_new);
            const double H1 = V_new + kinetic(p_new);
            if (std::isfinite(H1) && u < std::exp(H0 - H1)) {
                q = std::move(q_new);
                V_current = V_new;
                ++accepted;
            }
        } catch (const trajectory_divergence&) {
            // keep current state
        }
        if (s >= config.burn_in) out.samples.push_back(q);
    }

    out.acceptance_rate = static_cast<double>(accepted) / config.n_samples;
    out.low_acceptance_warning = out.acceptance_rate < 0.05;
    return out;
}

}  // namespace pdisco
