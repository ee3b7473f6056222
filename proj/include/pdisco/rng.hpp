#ifndef PDISCO_RNG_HPP
#define PDISCO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace pdisco {

// Seeded random stream. Normal/uniform draws are generated from explicit
// mt19937_64 bit streams, so a given seed reproduces the same sequence on
// any platform independent of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller. Two uniforms per draw, no cached spare,
    // so the stream position is a pure function of the number of calls.
    double normal() {
        const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    double normal(double mean, double std) { return mean + std * normal(); }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// Derives stage-specific seeds from one master seed (splitmix64 step),
// so independent pipeline stages never share a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stage_tag) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stage_tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace pdisco

#endif
