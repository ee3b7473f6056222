#include "pdisco/model.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "pdisco/errors.hpp"
#include "pdisco/parallel.hpp"

namespace pdisco {

void SurrogateModel::validate() const {
    arch.validate();
    if (samples.empty()) throw std::domain_error("surrogate model holds no weight samples");
    const std::size_t P = arch.param_count();
    for (const auto& s : samples)
        if (s.size() != P) throw std::invalid_argument("weight sample length mismatch");
}

double SurrogateModel::predict_one(std::size_t sample_idx, double t, double x) const {
    const auto& w = samples.at(sample_idx);
    const double f = forward(arch, w, scaling.unit_t(t), scaling.unit_x(x));
    return scaling.physical_y(f);
}

DerivativeJet SurrogateModel::jet_physical(std::size_t sample_idx, double t, double x,
                                           int max_x_order) const {
    const auto& w = samples.at(sample_idx);
    const DerivativeJet ju = jet(arch, w, scaling.unit_t(t), scaling.unit_x(x), max_x_order);
    const double ys = scaling.y_scale;
    const double xs = scaling.x_scale;
    DerivativeJet out;
    out.f = scaling.physical_y(ju.f);
    out.f_t = ys / scaling.t_scale * ju.f_t;
    out.f_x = ys / xs * ju.f_x;
    out.f_xx = ys / (xs * xs) * ju.f_xx;
    out.f_xxx = ys / (xs * xs * xs) * ju.f_xxx;
    out.f_xxxx = ys / (xs * xs * xs * xs) * ju.f_xxxx;
    return out;
}

PredictStats predict_stats(const SurrogateModel& model,
                           std::span<const std::array<double, 2>> points, int threads) {
    model.validate();
    const std::size_t n_pts = points.size();
    const std::size_t n_s = model.samples.size();

    std::vector<std::array<double, 2>> unit(n_pts);
    for (std::size_t i = 0; i < n_pts; ++i)
        unit[i] = {model.scaling.unit_t(points[i][0]), model.scaling.unit_x(points[i][1])};

    // per-sample predictions, then two fixed-order passes for mean/variance
    std::vector<std::vector<double>> preds(n_s);
    parallel_for_chunks(n_s, 1, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t s = begin; s < end; ++s) {
            preds[s] = forward_batch(model.arch, model.samples[s], unit, 1);
            for (double& v : preds[s]) v = model.scaling.physical_y(v);
        }
    });

    PredictStats out;
    out.mean.assign(n_pts, 0.0);
    out.std.assign(n_pts, 0.0);
    for (std::size_t s = 0; s < n_s; ++s)
        for (std::size_t i = 0; i < n_pts; ++i) out.mean[i] += preds[s][i];
    for (double& m : out.mean) m /= static_cast<double>(n_s);
    for (std::size_t s = 0; s < n_s; ++s)
        for (std::size_t i = 0; i < n_pts; ++i) {
            const double d = preds[s][i] - out.mean[i];
            out.std[i] += d * d;
        }
    for (double& v : out.std) v = std::sqrt(v / static_cast<double>(n_s));
    return out;
}

// ---------------------------------------------------------------------------
// Checkpoint I/O
// ---------------------------------------------------------------------------

namespace {

constexpr char kCheckpointMagic[4] = {'P', 'D', 'C', 'K'};

void put_u32(std::ostream& o, std::uint32_t v) { o.write(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::ostream& o, std::uint64_t v) { o.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& o, double v) { o.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(std::istream& i) {
    std::uint32_t v = 0;
    i.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
std::uint64_t get_u64(std::istream& i) {
    std::uint64_t v = 0;
    i.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
double get_f64(std::istream& i) {
    double v = 0;
    i.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const SurrogateModel& model) {
    model.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);

    out.write(kCheckpointMagic, 4);
    put_u32(out, 1);  // version
    put_u32(out, static_cast<std::uint32_t>(model.arch.n_inputs));
    put_u32(out, static_cast<std::uint32_t>(model.arch.n_layers));
    put_u32(out, static_cast<std::uint32_t>(model.arch.n_units));
    put_u32(out, model.arch.includes_bias ? 1 : 0);
    put_f64(out, model.scaling.t_shift);
    put_f64(out, model.scaling.t_scale);
    put_f64(out, model.scaling.x_shift);
    put_f64(out, model.scaling.x_scale);
    put_f64(out, model.scaling.y_shift);
    put_f64(out, model.scaling.y_scale);
    put_u32(out, static_cast<std::uint32_t>(model.kind));
    put_u32(out, 0);  // reserved
    put_f64(out, model.acceptance_rate);
    put_f64(out, model.sigma);
    put_u64(out, model.config_hash);
    put_f64(out, model.hmc.step_size);
    put_u32(out, static_cast<std::uint32_t>(model.hmc.leapfrog_steps));
    put_u32(out, static_cast<std::uint32_t>(model.hmc.n_samples));
    put_u32(out, static_cast<std::uint32_t>(model.hmc.burn_in));
    put_u32(out, 0);  // reserved
    put_u64(out, model.hmc.seed);
    put_f64(out, model.hmc.init_scale);
    put_u64(out, model.chain_steps);
    put_u64(out, model.samples.size());
    for (const auto& s : model.samples) save_weight_record(out, model.arch, s);
    if (!out) throw io_error("write failed: " + path);
}

SurrogateModel load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);

    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kCheckpointMagic, 4) != 0)
        throw io_error("not a checkpoint file (bad magic): " + path);
    if (get_u32(in) != 1) throw io_error("unsupported checkpoint version: " + path);

    SurrogateModel m;
    m.arch.n_inputs = static_cast<int>(get_u32(in));
    m.arch.n_layers = static_cast<int>(get_u32(in));
    m.arch.n_units = static_cast<int>(get_u32(in));
    m.arch.includes_bias = get_u32(in) != 0;
    m.scaling.t_shift = get_f64(in);
    m.scaling.t_scale = get_f64(in);
    m.scaling.x_shift = get_f64(in);
    m.scaling.x_scale = get_f64(in);
    m.scaling.y_shift = get_f64(in);
    m.scaling.y_scale = get_f64(in);
    m.kind = static_cast<ModelKind>(get_u32(in));
    get_u32(in);
    m.acceptance_rate = get_f64(in);
    m.sigma = get_f64(in);
    m.config_hash = get_u64(in);
    m.hmc.step_size = get_f64(in);
    m.hmc.leapfrog_steps = static_cast<int>(get_u32(in));
    m.hmc.n_samples = static_cast<int>(get_u32(in));
    m.hmc.burn_in = static_cast<int>(get_u32(in));
    get_u32(in);
    m.hmc.seed = get_u64(in);
    m.hmc.init_scale = get_f64(in);
    m.chain_steps = get_u64(in);
    const std::uint64_t n_records = get_u64(in);
    if (!in) throw io_error("truncated checkpoint header: " + path);

    m.samples.reserve(n_records);
    for (std::uint64_t r = 0; r < n_records; ++r) {
        WeightVector w = load_weight_record(in);
        if (!(w.arch == m.arch)) throw io_error("checkpoint record architecture mismatch: " + path);
        m.samples.push_back(std::move(w.values));
    }
    m.validate();
    return m;
}

}  // namespace pdisco
