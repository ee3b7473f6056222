#include "pdisco/adam.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "pdisco/errors.hpp"
#include "pdisco/rng.hpp"

namespace pdisco {

void AdamConfig::validate() const {
    if (!(learning_rate > 0.0)) throw config_error("adam learning_rate must be positive");
    if (iterations < 0) throw config_error("adam iterations must be >= 0");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0))
        throw config_error("adam betas must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw config_error("adam epsilon must be positive");
}

WeightVector init_weights(const Architecture& arch, std::uint64_t seed) {
    arch.validate();
    WeightVector w = WeightVector::zeros(arch);
    Rng rng(seed);
    for (int l = 0; l < arch.total_layers(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(arch.layer_in(l)));
        const std::size_t w_off = arch.layer_weight_offset(l);
        const std::size_t w_n = static_cast<std::size_t>(arch.layer_out(l)) * arch.layer_in(l);
        for (std::size_t i = 0; i < w_n; ++i) w.values[w_off + i] = rng.uniform(-bound, bound);
        if (arch.includes_bias) {
            const std::size_t b_off = arch.layer_bias_offset(l);
            for (int i = 0; i < arch.layer_out(l); ++i)
                w.values[b_off + i] = rng.uniform(-bound, bound);
        }
    }
    return w;
}

TrainResult train_dnn(const MeasurementDataset& data, const Architecture& arch,
                      const AdamConfig& cfg, int threads) {
    cfg.validate();
    data.validate();
    if (data.size() == 0) throw std::domain_error("train_dnn requires a non-empty dataset");

    TrainResult res;
    res.weights = init_weights(arch, cfg.seed);
    const std::size_t P = arch.param_count();

    std::vector<double> m(P, 0.0), v(P, 0.0);
    for (int it = 1; it <= cfg.iterations; ++it) {
        GradResult gr = objective_grad(arch, res.weights.values, data, 1.0, Objective::mse, threads);
        if (!std::isfinite(gr.value))
            throw numeric_error("train_dnn: loss became non-finite at iteration " +
                                std::to_string(it - 1) + " (learning rate too large?)");
        res.loss_trace.emplace_back(it - 1, gr.value);
        const double bc1 = 1.0 - std::pow(cfg.beta1, it);
        const double bc2 = 1.0 - std::pow(cfg.beta2, it);
        for (std::size_t p = 0; p < P; ++p) {
            m[p] = cfg.beta1 * m[p] + (1.0 - cfg.beta1) * gr.grad[p];
            v[p] = cfg.beta2 * v[p] + (1.0 - cfg.beta2) * gr.grad[p] * gr.grad[p];
            const double m_hat = m[p] / bc1;
            const double v_hat = v[p] / bc2;
            res.weights.values[p] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
        }
    }
    res.final_mse = mse(arch, res.weights.values, data, threads);
    if (!std::isfinite(res.final_mse))
        throw numeric_error("train_dnn: final loss is non-finite");
    res.loss_trace.emplace_back(cfg.iterations, res.final_mse);
    return res;
}

void save_loss_trace_csv(const std::string& path,
                         const std::vector<std::pair<int, double>>& trace) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "iteration,mse\n";
    char buf[32];
    for (const auto& [it, loss] : trace) {
        std::snprintf(buf, sizeof(buf), "%.17g", loss);
        out << it << ',' << buf << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace pdisco
