#pragma once

#include "koiso/tensor.hpp"

#include <cmath>
#include <vector>

namespace koiso {

/// A point w in the dense affine chart of CP^n, with the Hermitian norm
/// sum |w_i|^2 cached alongside.
struct Point {
    int n = 0;
    std::vector<Complex> w;
    double norm_sq = 0.0;

    Point() = default;
    explicit Point(std::vector<Complex> coords);

    static Point origin(int n) { return Point(std::vector<Complex>(static_cast<std::size_t>(n))); }

    double recompute_norm_sq() const;

    /// 1 + |w|  -- the natural length scale for finite-difference steps.
    double fd_scale() const { return 1.0 + std::sqrt(norm_sq); }
};

/// Copy of p with w[coord] displaced by dx + i*dy (norm cache refreshed).
Point shifted(const Point& p, int coord, double dx, double dy);

}  // namespace koiso
