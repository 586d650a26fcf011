#include "koiso/monte_carlo.hpp"

#include "koiso/integrals.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace koiso {

Point sample_fs_point(int n, RngStream& rng) {
    for (;;) {
        std::vector<Complex> z(static_cast<std::size_t>(n) + 1);
        double norm = 0.0;
        for (auto& zi : z) {
            zi = Complex(rng.next_normal(), rng.next_normal());
            norm += std::norm(zi);
        }
        if (norm == 0.0) continue;
        if (std::norm(z[0]) / norm < 1e-12) continue;  // chart boundary, measure zero
        std::vector<Complex> w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i) + 1] / z[0];
        return Point(std::move(w));
    }
}

Point sample_chart_point(int n, RngStream& rng, double r_min, double r_max) {
    std::vector<Complex> dir(static_cast<std::size_t>(n));
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& d : dir) {
            d = Complex(rng.next_normal(), rng.next_normal());
            norm += std::norm(d);
        }
    } while (norm == 0.0);
    const double r =
        std::exp(std::log(r_min) + rng.next_uniform() * (std::log(r_max) - std::log(r_min)));
    const double scale = r / std::sqrt(norm);
    for (auto& d : dir) d *= scale;
    return Point(std::move(dir));
}

namespace {

struct PartitionSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

PartitionSums run_partition(const std::function<double(const Point&)>& integrand, int n,
                            std::uint64_t seed, std::uint64_t partition, std::uint64_t count) {
    RngStream rng(seed, partition);
    PartitionSums acc;
    for (std::uint64_t i = 0; i < count; ++i) {
        const Point p = sample_fs_point(n, rng);
        const double v = integrand(p);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "mc_integrate: non-finite integrand value at w = (";
            for (int k = 0; k < n; ++k) {
                if (k) msg << ", ";
                msg << p.w[static_cast<std::size_t>(k)].real() << "+"
                    << p.w[static_cast<std::size_t>(k)].imag() << "i";
            }
            msg << ")";
            throw std::runtime_error(msg.str());
        }
        acc.sum += v;
        acc.sum_sq += v * v;
    }
    return acc;
}

}  // namespace

std::vector<MCEstimate> mc_integrate_multi(
    const std::function<void(const Point&, std::span<double>)>& integrand, int components, int n,
    const MCConfig& config) {
    if (config.samples == 0) throw std::invalid_argument("mc_integrate_multi: zero samples");
    if (components < 1) throw std::invalid_argument("mc_integrate_multi: components >= 1 required");
    if (config.partitions < 1)
        throw std::invalid_argument("mc_integrate_multi: partitions >= 1 required");

    const std::uint64_t parts = static_cast<std::uint64_t>(config.partitions);
    const std::uint64_t base = config.samples / parts;
    const std::uint64_t rem = config.samples % parts;

    std::vector<double> sum(static_cast<std::size_t>(components), 0.0);
    std::vector<double> sum_sq(static_cast<std::size_t>(components), 0.0);
    std::vector<double> vals(static_cast<std::size_t>(components), 0.0);

    for (std::uint64_t pi = 0; pi < parts; ++pi) {
        RngStream rng(config.seed, pi);
        const std::uint64_t count = base + (pi < rem ? 1 : 0);
        for (std::uint64_t i = 0; i < count; ++i) {
            const Point p = sample_fs_point(n, rng);
            integrand(p, vals);
            for (int c = 0; c < components; ++c) {
                const double v = vals[static_cast<std::size_t>(c)];
                if (!std::isfinite(v))
                    throw std::runtime_error("mc_integrate_multi: non-finite integrand component " +
                                             std::to_string(c));
                sum[static_cast<std::size_t>(c)] += v;
                sum_sq[static_cast<std::size_t>(c)] += v * v;
            }
        }
    }

    const double vol = volume_cpn(n).to_double();
    const double count = static_cast<double>(config.samples);
    std::vector<MCEstimate> out(static_cast<std::size_t>(components));
    for (int c = 0; c < components; ++c) {
        const double mean = sum[static_cast<std::size_t>(c)] / count;
        double var = 0.0;
        if (config.samples > 1)
            var = std::max(0.0, (sum_sq[static_cast<std::size_t>(c)] - count * mean * mean) /
                                    (count - 1.0));
        out[static_cast<std::size_t>(c)] = MCEstimate{vol * mean, vol * std::sqrt(var / count),
                                                      config.samples, config.seed};
    }
    return out;
}

MCEstimate mc_integrate(const std::function<double(const Point&)>& integrand, int n,
                        const MCConfig& config) {
    if (config.samples == 0) throw std::invalid_argument("mc_integrate: zero samples");
    if (config.partitions < 1) throw std::invalid_argument("mc_integrate: partitions >= 1 required");
    if (n < 1) throw std::invalid_argument("mc_integrate: n >= 1 required");

    const std::uint64_t parts = static_cast<std::uint64_t>(config.partitions);
    const std::uint64_t base = config.samples / parts;
    const std::uint64_t rem = config.samples % parts;
    auto partition_count = [&](std::uint64_t pi) { return base + (pi < rem ? 1 : 0); };

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(parts));

    std::vector<PartitionSums> results(parts);
    if (workers <= 1) {
        for (std::uint64_t pi = 0; pi < parts; ++pi)
            results[pi] = run_partition(integrand, n, config.seed, pi, partition_count(pi));
    } else {
        // batches of `workers` futures; sub-sums land in partition order
        for (std::uint64_t start = 0; start < parts; start += workers) {
            const std::uint64_t end = std::min<std::uint64_t>(parts, start + workers);
            std::vector<std::future<PartitionSums>> batch;
            batch.reserve(end - start);
            for (std::uint64_t pi = start; pi < end; ++pi)
                batch.push_back(std::async(std::launch::async, [&, pi]() {
                    return run_partition(integrand, n, config.seed, pi, partition_count(pi));
                }));
            for (std::uint64_t pi = start; pi < end; ++pi)
                results[pi] = batch[pi - start].get();
        }
    }

    double sum = 0.0, sum_sq = 0.0;
    for (const PartitionSums& ps : results) {
        sum += ps.sum;
        sum_sq += ps.sum_sq;
    }

    const double vol = volume_cpn(n).to_double();
    const double count = static_cast<double>(config.samples);
    const double mean = sum / count;
    double var = 0.0;
    if (config.samples > 1) var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));

    MCEstimate est;
    est.mean = vol * mean;
    est.std_error = vol * std::sqrt(var / count);
    est.samples = config.samples;
    est.seed = config.seed;
    return est;
}

}  // namespace koiso
