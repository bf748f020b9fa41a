#pragma once

#include <cstdint>
#include <random>

namespace rfskit {

/// Seeded random stream: mt19937_64 core with fixed, documented transforms
/// so that identical seeds give identical draws on every platform.
///   uniform01  : (x >> 11) * 2^-53, in [0, 1)
///   normal     : Box-Muller (pairs, one cached)
///   poisson    : CDF inversion by sequential search (valid for rate < ~700)
///   uniform_int: unbiased bounded draw by rejection
/// Independent substreams come from splitmix64-mixing the base seed with a
/// stream id; never share one Rng across logically independent streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derived generator for substream `stream_id` of `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

    double uniform01();
    double normal();
    int poisson(double rate);
    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi);

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace rfskit
