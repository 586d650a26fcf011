#pragma once

#include "koiso/point.hpp"
#include "koiso/rng.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace koiso {

/// Draw a chart point distributed by the normalized Fubini-Study volume
/// measure: z uniform on the unit sphere of C^{n+1} (2(n+1) normals,
/// normalized), then w_i = z_i / z_0. Resamples on the measure-zero chart
/// boundary |z_0|^2 < 1e-12.
Point sample_fs_point(int n, RngStream& rng);

/// Seeded random chart point for pointwise checks: direction uniform on the
/// sphere, radius log-uniform in [r_min, r_max], exercising both the
/// near-origin and decaying-tail regimes.
Point sample_chart_point(int n, RngStream& rng, double r_min = 1e-2, double r_max = 10.0);

struct MCEstimate {
    double mean = 0.0;       // estimate of int F dV
    double std_error = 0.0;  // Vol * sample std / sqrt(samples), unbiased variance
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct MCConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int partitions = 1;
    /// 0 = one worker thread per hardware core (capped by partitions). The
    /// result is bit-identical for any thread count: partition sub-sums are
    /// accumulated serially within each partition and combined in partition
    /// order.
    int threads = 0;
};

/// Estimate int_{CP^n} F dV_g as Vol(CP^n) times the sample mean of F at
/// FS-distributed points. Deterministic given (seed, samples, partitions).
/// Throws std::runtime_error naming the offending point if F returns a
/// non-finite value, std::invalid_argument on zero samples.
MCEstimate mc_integrate(const std::function<double(const Point&)>& integrand, int n,
                        const MCConfig& config);

/// Several integrands over one shared sample stream (the integrand fills
/// `out` with `components` values per point). Useful when the per-point
/// evaluation dominates, e.g. one derivative stack feeding several pairings.
std::vector<MCEstimate> mc_integrate_multi(
    const std::function<void(const Point&, std::span<double>)>& integrand, int components, int n,
    const MCConfig& config);

}  // namespace koiso
