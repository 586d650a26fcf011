#pragma once

#include "koiso/point.hpp"
#include "koiso/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace koiso {

/// Traceless Hermitian (n+1)x(n+1) matrix eta. We store su(n+1) elements in
/// the Hermitian picture (eta <-> i*eta) so that the first-eigenvalue
/// eigenfunction f_eta below is real-valued with no stray factors of i;
/// Diag(-n, 1, ..., 1) is then literally an element of the space.
class TracelessHermitian {
public:
    explicit TracelessHermitian(Eigen::MatrixXcd m);

    /// Diag(-n, 1, ..., 1), size n+1.
    static TracelessHermitian gamma(int n);

    /// Deterministic seeded draw: standard normal real/imaginary parts off
    /// the diagonal (Hermitian-symmetrized), standard normal real diagonal,
    /// trace projected out.
    static TracelessHermitian random(int n, std::uint64_t seed);

    int size() const { return static_cast<int>(m_.rows()); }
    /// chart dimension n (= size - 1)
    int chart_dim() const { return size() - 1; }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    /// tr(eta^3): real, the generator of the invariant cubic polynomials.
    double trace_cubed() const;

    bool is_gamma() const;

private:
    Eigen::MatrixXcd m_;
};

/// f_eta(w) = Wbar eta W^t / (1+|w|^2) with W = (1, w_1, ..., w_n).
/// Real-valued because eta is Hermitian. The Laplace eigenvalue is 2(n+1).
double eigenfunction_at(const TracelessHermitian& eta, const Point& p);

/// Holomorphic Wirtinger derivative (d f_eta)_k, rank-1 (lower holo).
/// For eta = gamma this reduces to (n+1) wbar_k / (1+|w|^2)^2.
ComplexTensor gradient_holo_at(const TracelessHermitian& eta, const Point& p);

/// Same components as a dense vector for contraction-heavy callers.
Eigen::VectorXcd gradient_holo_vec(const TracelessHermitian& eta, const Point& p);

struct Eigenfunction {
    TracelessHermitian eta;
    int n;

    Eigenfunction(TracelessHermitian e)
        : eta(std::move(e)), n(eta.chart_dim()) {}

    double operator()(const Point& p) const { return eigenfunction_at(eta, p); }
};

}  // namespace koiso
