#ifndef PDISCO_SURROGATE_HPP
#define PDISCO_SURROGATE_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pdisco {

// Rectangular space-time domain [t_min, t_max] x [x_min, x_max].
struct Domain {
    double t_min = 0.0;
    double t_max = 1.0;
    double x_min = 0.0;
    double x_max = 1.0;

    bool contains(double t, double x, double slack = 1e-9) const;
    void validate() const;
};

// Fully connected tanh network: n_inputs -> n_units x n_layers -> 1.
// Parameters pack per layer as row-major weights [out][in] followed by the
// bias [out] when present; layers in order input->hidden...->output.
struct Architecture {
    int n_inputs = 2;
    int n_layers = 4;  // hidden layers
    int n_units = 50;  // units per hidden layer
    bool includes_bias = true;

    void validate() const;
    int total_layers() const { return n_layers + 1; }
    int layer_in(int l) const;
    int layer_out(int l) const;
    std::size_t layer_weight_offset(int l) const;
    std::size_t layer_bias_offset(int l) const;  // valid only when includes_bias
    std::size_t param_count() const;

    bool operator==(const Architecture&) const = default;
};

// Flattened network parameters in the Architecture packing order.
struct WeightVector {
    Architecture arch;
    std::vector<double> values;

    static WeightVector zeros(const Architecture& a);
    void validate() const;  // length matches arch, entries finite
};

// Sensor records {(t_i, x_i), y_i} on a rectangular domain.
struct MeasurementDataset {
    std::vector<std::array<double, 2>> points;  // (t, x)
    std::vector<double> targets;
    Domain domain;

    std::size_t size() const { return points.size(); }
    void validate() const;
};

// Affine input/output normalization: inputs map onto [-1, 1]^2 and targets
// onto roughly [-1, 1] before training. unit(t) = (t - t_shift) / t_scale.
// Jets computed in unit space are mapped back through the chain rule.
struct Scaling {
    double t_shift = 0.0, t_scale = 1.0;
    double x_shift = 0.0, x_scale = 1.0;
    double y_shift = 0.0, y_scale = 1.0;

    static Scaling identity() { return {}; }
    static Scaling fit(const MeasurementDataset& data);

    double unit_t(double t) const { return (t - t_shift) / t_scale; }
    double unit_x(double x) const { return (x - x_shift) / x_scale; }
    double unit_y(double y) const { return (y - y_shift) / y_scale; }
    double physical_y(double yu) const { return y_shift + y_scale * yu; }

    // Dataset with unit-space points/targets (domain becomes [-1,1]^2).
    MeasurementDataset to_unit(const MeasurementDataset& data) const;
};

// Value and exact input derivatives of the network at one point:
// time order 1, spatial orders 1..4.
struct DerivativeJet {
    double f = 0.0;
    double f_t = 0.0;
    double f_x = 0.0;
    double f_xx = 0.0;
    double f_xxx = 0.0;
    double f_xxxx = 0.0;

    double spatial(int order) const;  // order 0 -> f
};

// --- core network operations (network coordinate space) ---

double forward(const Architecture& arch, std::span<const double> w, double t, double x);

// Batched forward over many points; identical results at any thread count.
std::vector<double> forward_batch(const Architecture& arch, std::span<const double> w,
                                  std::span<const std::array<double, 2>> points, int threads = 1);

// Exact derivatives via nested first-order forward duals: one pass with
// max_x_order nesting levels seeded on x, one single-level pass seeded on t.
DerivativeJet jet(const Architecture& arch, std::span<const double> w, double t, double x,
                  int max_x_order = 4);

// Standard-normal prior over every parameter.
double log_prior(const WeightVector& w);
double log_prior(std::span<const double> values);

double log_likelihood(const Architecture& arch, std::span<const double> w,
                      const MeasurementDataset& data, double sigma, int threads = 1);

double log_posterior_unnorm(const Architecture& arch, std::span<const double> w,
                            const MeasurementDataset& data, double sigma, int threads = 1);

enum class Objective { log_posterior, mse };

// Exact reverse-accumulation gradient of the selected objective.
// mse ignores sigma and the prior.
std::vector<double> grad_wrt_weights(const Architecture& arch, std::span<const double> w,
                                     const MeasurementDataset& data, double sigma,
                                     Objective objective, int threads = 1);

// Gradient plus the objective value from the same forward pass.
struct GradResult {
    std::vector<double> grad;
    double value = 0.0;
};
GradResult objective_grad(const Architecture& arch, std::span<const double> w,
                          const MeasurementDataset& data, double sigma, Objective objective,
                          int threads = 1);

double mse(const Architecture& arch, std::span<const double> w, const MeasurementDataset& data,
           int threads = 1);

// --- weight-vector serialization (flat binary record + CSV) ---
//
// Binary record: "PDWV" magic, u32 version, u32 n_inputs, u32 n_layers,
// u32 n_units, u32 includes_bias, u64 count, count little-endian f64 values.

void save_weight_record(std::ostream& out, const Architecture& arch, std::span<const double> values);
WeightVector load_weight_record(std::istream& in);
void save_weight_file(const std::string& path, const WeightVector& w);
WeightVector load_weight_file(const std::string& path);

// CSV: one sample per row, full precision, no header.
void save_weights_csv(const std::string& path, const std::vector<std::vector<double>>& samples);

}  // namespace pdisco

#endif
