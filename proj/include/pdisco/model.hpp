#ifndef PDISCO_MODEL_HPP
#define PDISCO_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdisco/hmc.hpp"
#include "pdisco/surrogate.hpp"

namespace pdisco {

enum class ModelKind : std::uint32_t { point_estimate = 0, hmc_chain = 1 };

// A trained surrogate: architecture, the input/output normalization it was
// trained under, and one (DNN) or many (posterior chain) weight vectors.
struct SurrogateModel {
    Architecture arch;
    Scaling scaling;
    ModelKind kind = ModelKind::point_estimate;
    std::vector<std::vector<double>> samples;  // each of length arch.param_count()
    double acceptance_rate = -1.0;             // chains only
    HmcConfig hmc;                             // chains only
    double sigma = 0.01;                       // likelihood noise std used in training
    std::uint64_t config_hash = 0;
    std::uint64_t chain_steps = 0;  // post-burn steps taken so far (resume bookkeeping)

    std::size_t n_samples() const { return samples.size(); }
    void validate() const;

    // Physical-space prediction from one weight sample.
    double predict_one(std::size_t sample_idx, double t, double x) const;

    // Physical-space jet from one weight sample (chain rule through scaling).
    DerivativeJet jet_physical(std::size_t sample_idx, double t, double x,
                               int max_x_order = 4) const;
};

// Per-point mean and population standard deviation of the physical
// prediction over all weight samples. Deterministic reduction order.
struct PredictStats {
    std::vector<double> mean;
    std::vector<double> std;
};
PredictStats predict_stats(const SurrogateModel& model,
                           std::span<const std::array<double, 2>> points, int threads = 1);

// Checkpoint file: "PDCK" magic, version, architecture, scaling, kind,
// run metadata, then every weight sample as a standard weight record.
void save_checkpoint(const std::string& path, const SurrogateModel& model);
SurrogateModel load_checkpoint(const std::string& path);

}  // namespace pdisco

#endif
