#pragma once

#include <cstdint>

namespace ambinv {

// xoshiro256++ seeded through splitmix64, with per-path substreams derived
// from (seed, stream). Entirely self-contained so that identical seeds give
// bit-identical output on every platform; std::normal_distribution is
// deliberately avoided for that reason.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform on (0,1), 53-bit resolution, never exactly 0.
    double uniform();

    // Standard normal via Box-Muller; the paired deviate is cached.
    double normal();

private:
    std::uint64_t s_[4];
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace ambinv
