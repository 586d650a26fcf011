#pragma once

#include <cstdint>

namespace koiso {

/// Counter-based deterministic generator (splitmix64 core): the i-th output
/// is mix(state0 + i * golden), so a stream is fully determined by
/// (seed, stream index) and independent of call-site interleaving. Distinct
/// stream indices give decorrelated sequences for per-partition use.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    /// uniform in [0, 1) with 53 random bits
    double next_uniform();

    /// uniform in (0, 1]
    double next_uniform_open();

    /// standard normal via Box-Muller (pair cached)
    double next_normal();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace koiso
