#ifndef PDISCO_ADAM_HPP
#define PDISCO_ADAM_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdisco/surrogate.hpp"

namespace pdisco {

struct AdamConfig {
    double learning_rate = 2e-4;
    int iterations = 30000;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainResult {
    WeightVector weights;
    std::vector<std::pair<int, double>> loss_trace;  // (iteration, mse), iteration 0 = initial
    double final_mse = 0.0;
};

// Seeded uniform fan-in initialization: every weight and bias of a layer is
// drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
WeightVector init_weights(const Architecture& arch, std::uint64_t seed);

// Full-batch Adam on mean-squared error. Deterministic given the seed.
// Throws numeric_error if the loss goes non-finite.
TrainResult train_dnn(const MeasurementDataset& data, const Architecture& arch,
                      const AdamConfig& cfg, int threads = 1);

void save_loss_trace_csv(const std::string& path,
                         const std::vector<std::pair<int, double>>& trace);

}  // namespace pdisco

#endif
