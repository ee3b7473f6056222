#include "pdisco/surrogate.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pdisco/errors.hpp"
#include "pdisco/jet.hpp"
#include "pdisco/parallel.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary weight records are defined little-endian");

namespace pdisco {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
constexpr std::size_t kBatchGrain = 256;           // rows per reduction chunk

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapW = Eigen::Map<const RowMat>;
using MapGrad = Eigen::Map<RowMat>;

}  // namespace

// ---------------------------------------------------------------------------
// Domain / Architecture / WeightVector / MeasurementDataset
// ---------------------------------------------------------------------------

bool Domain::contains(double t, double x, double slack) const {
    return t >= t_min - slack && t <= t_max + slack && x >= x_min - slack && x <= x_max + slack;
}

void Domain::validate() const {
    if (!(t_min < t_max) || !(x_min < x_max))
        throw std::domain_error("degenerate domain rectangle");
}

void Architecture::validate() const {
    if (n_inputs != 2) throw config_error("architecture requires exactly 2 inputs (t, x)");
    if (n_layers < 1) throw config_error("architecture requires n_layers >= 1");
    if (n_units < 1) throw config_error("architecture requires n_units >= 1");
}

int Architecture::layer_in(int l) const { return l == 0 ? n_inputs : n_units; }
int Architecture::layer_out(int l) const { return l == n_layers ? 1 : n_units; }

std::size_t Architecture::layer_weight_offset(int l) const {
    std::size_t off = 0;
    for (int k = 0; k < l; ++k) {
        off += static_cast<std::size_t>(layer_out(k)) * layer_in(k);
        if (includes_bias) off += layer_out(k);
    }
    return off;
}

std::size_t Architecture::layer_bias_offset(int l) const {
    return layer_weight_offset(l) + static_cast<std::size_t>(layer_out(l)) * layer_in(l);
}

std::size_t Architecture::param_count() const {
    return layer_weight_offset(total_layers());
}

WeightVector WeightVector::zeros(const Architecture& a) {
    return {a, std::vector<double>(a.param_count(), 0.0)};
}

void WeightVector::validate() const {
    if (values.size() != arch.param_count())
        throw std::invalid_argument("weight vector length does not match architecture");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("weight vector has non-finite entry");
}

void MeasurementDataset::validate() const {
    if (points.size() != targets.size())
        throw std::invalid_argument("dataset points/targets size mismatch");
    domain.validate();
    for (const auto& p : points)
        if (!domain.contains(p[0], p[1]))
            throw std::domain_error("dataset point outside its domain");
}

// ---------------------------------------------------------------------------
// Scaling
// ---------------------------------------------------------------------------

Scaling Scaling::fit(const MeasurementDataset& data) {
    data.domain.validate();
    Scaling s;
    s.t_shift = 0.5 * (data.domain.t_min + data.domain.t_max);
    s.t_scale = 0.5 * (data.domain.t_max - data.domain.t_min);
    s.x_shift = 0.5 * (data.domain.x_min + data.domain.x_max);
    s.x_scale = 0.5 * (data.domain.x_max - data.domain.x_min);
    if (!data.targets.empty()) {
        double lo = data.targets[0], hi = data.targets[0];
        for (double y : data.targets) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        s.y_shift = 0.5 * (lo + hi);
        s.y_scale = 0.5 * (hi - lo);
    }
    if (s.y_scale < 1e-12) s.y_scale = 1.0;  // constant targets
    return s;
}

MeasurementDataset Scaling::to_unit(const MeasurementDataset& data) const {
    MeasurementDataset u;
    u.points.reserve(data.points.size());
    u.targets.reserve(data.targets.size());
    for (const auto& p : data.points) u.points.push_back({unit_t(p[0]), unit_x(p[1])});
    for (double y : data.targets) u.targets.push_back(unit_y(y));
    u.domain = {unit_t(data.domain.t_min), unit_t(data.domain.t_max),
                unit_x(data.domain.x_min), unit_x(data.domain.x_max)};
    return u;
}

double DerivativeJet::spatial(int order) const {
    switch (order) {
        case 0: return f;
        case 1: return f_x;
        case 2: return f_xx;
        case 3: return f_xxx;
        case 4: return f_xxxx;
        default: throw std::invalid_argument("spatial derivative order out of range");
    }
}

// ---------------------------------------------------------------------------
// Scalar / jet network evaluation
// ---------------------------------------------------------------------------

namespace {

template <class T>
T eval_net(const Architecture& a, const double* w, const T& t, const T& x) {
    std::vector<T> act(static_cast<std::size_t>(a.n_units));
    std::vector<T> next(static_cast<std::size_t>(a.n_units));

    // input layer: 2 -> n_units
    {
        const double* W = w + a.layer_weight_offset(0);
        const double* b = a.includes_bias ? w + a.layer_bias_offset(0) : nullptr;
        for (int o = 0; o < a.n_units; ++o) {
            T s = W[2 * o] * t + W[2 * o + 1] * x;
            if (b) s += b[o];
            act[o] = tanh_v(s);
        }
    }
    // hidden layers: n_units -> n_units
    for (int l = 1; l < a.n_layers; ++l) {
        const double* W = w + a.layer_weight_offset(l);
        const double* b = a.includes_bias ? w + a.layer_bias_offset(l) : nullptr;
        for (int o = 0; o < a.n_units; ++o) {
            T s = W[a.n_units * o] * act[0];
            for (int i = 1; i < a.n_units; ++i) s += W[a.n_units * o + i] * act[i];
            if (b) s += b[o];
            next[o] = tanh_v(s);
        }
        act.swap(next);
    }
    // output layer: n_units -> 1, linear
    const double* W = w + a.layer_weight_offset(a.n_layers);
    T out = W[0] * act[0];
    for (int i = 1; i < a.n_units; ++i) out += W[i] * act[i];
    if (a.includes_bias) out += w[a.layer_bias_offset(a.n_layers)];
    return out;
}

void check_weights(const Architecture& a, std::span<const double> w) {
    if (w.size() != a.param_count())
        throw std::invalid_argument("weight span length does not match architecture");
}

template <class JetT>
void fill_spatial(const Architecture& a, const double* w, double t, double x, int order,
                  DerivativeJet& out) {
    const JetT res = eval_net(a, w, make_constant<JetT>(t), make_seeded<JetT>(x));
    out.f = derivative_order(res, 0);
    if (order >= 1) out.f_x = derivative_order(res, 1);
    if (order >= 2) out.f_xx = derivative_order(res, 2);
    if (order >= 3) out.f_xxx = derivative_order(res, 3);
    if (order >= 4) out.f_xxxx = derivative_order(res, 4);
}

}  // namespace

double forward(const Architecture& arch, std::span<const double> w, double t, double x) {
    arch.validate();
    check_weights(arch, w);
    return eval_net(arch, w.data(), t, x);
}

DerivativeJet jet(const Architecture& arch, std::span<const double> w, double t, double x,
                  int max_x_order) {
    arch.validate();
    check_weights(arch, w);
    if (max_x_order < 1 || max_x_order > 4)
        throw std::invalid_argument("max_x_order must be in [1, 4]");

    DerivativeJet out;
    switch (max_x_order) {
        case 1: fill_spatial<Jet1>(arch, w.data(), t, x, 1, out); break;
        case 2: fill_spatial<Jet2>(arch, w.data(), t, x, 2, out); break;
        case 3: fill_spatial<Jet3>(arch, w.data(), t, x, 3, out); break;
        case 4: fill_spatial<Jet4>(arch, w.data(), t, x, 4, out); break;
    }
    const Jet1 rt = eval_net(arch, w.data(), Jet1{t, 1.0}, Jet1{x, 0.0});
    out.f_t = rt.d;
    return out;
}

// ---------------------------------------------------------------------------
// Batched evaluation (Eigen), chunked for thread-count-independent results
// ---------------------------------------------------------------------------

namespace {

// Forward pass over a row chunk; returns predictions, optionally retaining
// per-layer activations (inputs + hidden outputs) for the backward pass.
Eigen::VectorXd chunk_forward(const Architecture& a, const double* w,
                              const std::array<double, 2>* pts, std::size_t n,
                              std::vector<RowMat>* activations) {
    RowMat Z(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        Z(i, 0) = pts[i][0];
        Z(i, 1) = pts[i][1];
    }
    if (activations) activations->push_back(Z);
    for (int l = 0; l < a.n_layers; ++l) {
        MapW W(w + a.layer_weight_offset(l), a.layer_out(l), a.layer_in(l));
        RowMat S = Z * W.transpose();
        if (a.includes_bias) {
            Eigen::Map<const Eigen::VectorXd> b(w + a.layer_bias_offset(l), a.layer_out(l));
            S.rowwise() += b.transpose();
        }
        Z = S.array().tanh();
        if (activations) activations->push_back(Z);
    }
    MapW W(w + a.layer_weight_offset(a.n_layers), 1, a.n_units);
    Eigen::VectorXd f = Z * W.transpose();
    if (a.includes_bias) f.array() += w[a.layer_bias_offset(a.n_layers)];
    return f;
}

// Backward pass for one chunk: dL/df in `dldf`, accumulates into `grad`.
void chunk_backward(const Architecture& a, const double* w, const std::vector<RowMat>& acts,
                    const Eigen::VectorXd& dldf, double* grad) {
    const int L = a.n_layers;
    // output layer
    {
        MapGrad G(grad + a.layer_weight_offset(L), 1, a.n_units);
        G.noalias() += dldf.transpose() * acts[L];
        if (a.includes_bias) grad[a.layer_bias_offset(L)] += dldf.sum();
    }
    MapW Wl(w + a.layer_weight_offset(L), 1, a.n_units);
    RowMat D = dldf * Wl;                       // n x n_units
    D.array() *= 1.0 - acts[L].array().square();  // through tanh
    for (int l = L - 1; l >= 0; --l) {
        MapGrad G(grad + a.layer_weight_offset(l), a.layer_out(l), a.layer_in(l));
        G.noalias() += D.transpose() * acts[l];
        if (a.includes_bias) {
            Eigen::Map<Eigen::VectorXd> gb(grad + a.layer_bias_offset(l), a.layer_out(l));
            gb.noalias() += D.colwise().sum().transpose();
        }
        if (l > 0) {
            MapW W(w + a.layer_weight_offset(l), a.layer_out(l), a.layer_in(l));
            RowMat Dn = D * W;
            Dn.array() *= 1.0 - acts[l].array().square();
            D.swap(Dn);
        }
    }
}

}  // namespace

std::vector<double> forward_batch(const Architecture& arch, std::span<const double> w,
                                  std::span<const std::array<double, 2>> points, int threads) {
    arch.validate();
    check_weights(arch, w);
    std::vector<double> out(points.size());
    parallel_for_chunks(points.size(), kBatchGrain, threads,
                        [&](std::size_t begin, std::size_t end, std::size_t) {
                            Eigen::VectorXd f = chunk_forward(arch, w.data(), points.data() + begin,
                                                              end - begin, nullptr);
                            for (std::size_t i = begin; i < end; ++i) out[i] = f(i - begin);
                        });
    return out;
}

double log_prior(std::span<const double> values) {
    double sq = 0.0;
    for (double v : values) sq += v * v;
    return -0.5 * sq - 0.5 * static_cast<double>(values.size()) * kLog2Pi;
}

double log_prior(const WeightVector& w) { return log_prior(std::span<const double>(w.values)); }

double log_likelihood(const Architecture& arch, std::span<const double> w,
                      const MeasurementDataset& data, double sigma, int threads) {
    if (!(sigma > 0.0)) throw std::domain_error("likelihood sigma must be positive");
    arch.validate();
    check_weights(arch, w);
    const std::size_t n = data.size();
    if (n == 0) return 0.0;

    std::vector<double> partial(chunk_count(n, kBatchGrain), 0.0);
    parallel_for_chunks(n, kBatchGrain, threads,
                        [&](std::size_t begin, std::size_t end, std::size_t c) {
                            Eigen::VectorXd f = chunk_forward(arch, w.data(), data.points.data() + begin,
                                                              end - begin, nullptr);
                            double sq = 0.0;
                            for (std::size_t i = begin; i < end; ++i) {
                                const double r = data.targets[i] - f(i - begin);
                                sq += r * r;
                            }
                            partial[c] = sq;
                        });
    double sq = 0.0;
    for (double p : partial) sq += p;
    const double log_norm = std::log(sigma) + 0.5 * kLog2Pi;
    return -static_cast<double>(n) * log_norm - 0.5 * sq / (sigma * sigma);
}

double log_posterior_unnorm(const Architecture& arch, std::span<const double> w,
                            const MeasurementDataset& data, double sigma, int threads) {
    return log_likelihood(arch, w, data, sigma, threads) + log_prior(w);
}

double mse(const Architecture& arch, std::span<const double> w, const MeasurementDataset& data,
           int threads) {
    const std::size_t n = data.size();
    if (n == 0) return 0.0;
    std::vector<double> f = forward_batch(arch, w, data.points, threads);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = f[i] - data.targets[i];
        sq += r * r;
    }
    return sq / static_cast<double>(n);
}

GradResult objective_grad(const Architecture& arch, std::span<const double> w,
                          const MeasurementDataset& data, double sigma, Objective objective,
                          int threads) {
    arch.validate();
    check_weights(arch, w);
    if (objective == Objective::log_posterior && !(sigma > 0.0))
        throw std::domain_error("likelihood sigma must be positive");
    data.validate();

    const std::size_t n = data.size();
    const std::size_t P = arch.param_count();
    const std::size_t n_chunks = chunk_count(n, kBatchGrain);
    std::vector<std::vector<double>> partial(n_chunks, std::vector<double>(P, 0.0));
    std::vector<double> partial_sq(n_chunks, 0.0);

    parallel_for_chunks(n, kBatchGrain, threads,
                        [&](std::size_t begin, std::size_t end, std::size_t c) {
                            const std::size_t m = end - begin;
                            std::vector<RowMat> acts;
                            acts.reserve(arch.n_layers + 1);
                            Eigen::VectorXd f = chunk_forward(arch, w.data(), data.points.data() + begin,
                                                              m, &acts);
                            Eigen::VectorXd dldf(m);
                            double sq = 0.0;
                            for (std::size_t i = 0; i < m; ++i) {
                                const double r = f(i) - data.targets[begin + i];
                                sq += r * r;
                                dldf(i) = objective == Objective::log_posterior
                                              ? -r / (sigma * sigma)
                                              : 2.0 * r / static_cast<double>(n);
                            }
                            partial_sq[c] = sq;
                            chunk_backward(arch, w.data(), acts, dldf, partial[c].data());
                        });

    GradResult res;
    res.grad.assign(P, 0.0);
    for (const auto& part : partial)
        for (std::size_t p = 0; p < P; ++p) res.grad[p] += part[p];
    double sq = 0.0;
    for (double s : partial_sq) sq += s;

    if (objective == Objective::log_posterior) {
        for (std::size_t p = 0; p < P; ++p) res.grad[p] -= w[p];  // prior: d(-1/2 ||w||^2)
        const double log_norm = std::log(sigma) + 0.5 * kLog2Pi;
        res.value = -static_cast<double>(n) * log_norm - 0.5 * sq / (sigma * sigma) + log_prior(w);
    } else {
        res.value = n == 0 ? 0.0 : sq / static_cast<double>(n);
    }
    return res;
}

std::vector<double> grad_wrt_weights(const Architecture& arch, std::span<const double> w,
                                     const MeasurementDataset& data, double sigma,
                                     Objective objective, int threads) {
    return objective_grad(arch, w, data, sigma, objective, threads).grad;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void put_u32(std::ostream& out, std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

constexpr char kWeightMagic[4] = {'P', 'D', 'W', 'V'};

}  // namespace

void save_weight_record(std::ostream& out, const Architecture& arch,
                        std::span<const double> values) {
    out.write(kWeightMagic, 4);
    put_u32(out, 1);
    put_u32(out, static_cast<std::uint32_t>(arch.n_inputs));
    put_u32(out, static_cast<std::uint32_t>(arch.n_layers));
    put_u32(out, static_cast<std::uint32_t>(arch.n_units));
    put_u32(out, arch.includes_bias ? 1 : 0);
    put_u64(out, values.size());
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

WeightVector load_weight_record(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kWeightMagic, 4) != 0)
        throw io_error("not a weight record (bad magic)");
    if (get_u32(in) != 1) throw io_error("unsupported weight record version");
    Architecture a;
    a.n_inputs = static_cast<int>(get_u32(in));
    a.n_layers = static_cast<int>(get_u32(in));
    a.n_units = static_cast<int>(get_u32(in));
    a.includes_bias = get_u32(in) != 0;
    const std::uint64_t count = get_u64(in);
    if (count != a.param_count()) throw io_error("weight record count does not match architecture");
    WeightVector w{a, std::vector<double>(count)};
    in.read(reinterpret_cast<char*>(w.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw io_error("truncated weight record");
    return w;
}

void save_weight_file(const std::string& path, const WeightVector& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    save_weight_record(out, w.arch, w.values);
    if (!out) throw io_error("write failed: " + path);
}

WeightVector load_weight_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    return load_weight_record(in);
}

void save_weights_csv(const std::string& path, const std::vector<std::vector<double>>& samples) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    char buf[32];
    for (const auto& row : samples) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            if (i) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace pdisco
