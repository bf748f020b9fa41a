#include "rfskit/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rfskit {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(splitmix64(seed ^ splitmix64(stream_id)));
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Box-Muller; u must be strictly positive for the log.
    double u = 0.0;
    do {
        u = uniform01();
    } while (u <= 0.0);
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * std::numbers::pi * v;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

int Rng::poisson(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("poisson rate must be > 0");
    // Sequential CDF inversion. exp(-rate) underflows around rate ~ 745;
    // callers in this library stay far below that.
    const double u = uniform01();
    double p = std::exp(-rate);
    double cum = p;
    int k = 0;
    // cum saturates below 1 in floating point; cap guards the u ~ 1 edge.
    const int cap = static_cast<int>(rate + 40.0 * std::sqrt(rate) + 100.0);
    while (u > cum && k < cap) {
        ++k;
        p *= rate / k;
        cum += p;
    }
    return k;
}

int Rng::uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1ULL;
    // Largest multiple of range representable in 64 bits; reject above it.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = 0;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<int>(x % range);
}

} // namespace rfskit
