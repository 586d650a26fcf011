#include "koiso/lie_eigen.hpp"

#include "koiso/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace koiso {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Eigen::VectorXcd homogeneous_lift(const Point& p) {
    Eigen::VectorXcd W(p.n + 1);
    W(0) = Complex(1.0, 0.0);
    for (int i = 0; i < p.n; ++i) W(i + 1) = p.w[static_cast<std::size_t>(i)];
    return W;
}

void check_sizes(const TracelessHermitian& eta, const Point& p) {
    if (eta.chart_dim() != p.n)
        throw std::invalid_argument("eigenfunction: eta is " + std::to_string(eta.size()) +
                                    "x" + std::to_string(eta.size()) + " but point has dimension " +
                                    std::to_string(p.n));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix64(seed ^ 0xD1B54A32D192ED03ull);
    state_ ^= (stream + 1) * kGolden;
    state_ = mix64(state_);
}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform_open() { return 1.0 - next_uniform(); }

double RngStream::next_normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double u1 = next_uniform_open();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
}

TracelessHermitian::TracelessHermitian(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2)
        throw std::invalid_argument("TracelessHermitian: square matrix of size >= 2 required");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-13 * scale)
        throw std::invalid_argument("TracelessHermitian: matrix is not Hermitian");
    if (std::abs(m_.trace()) > 1e-13 * scale * static_cast<double>(m_.rows()))
        throw std::invalid_argument("TracelessHermitian: matrix is not traceless");
}

TracelessHermitian TracelessHermitian::gamma(int n) {
    if (n < 1) throw std::invalid_argument("gamma: n >= 1 required");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n + 1, n + 1);
    m(0, 0) = Complex(-static_cast<double>(n), 0.0);
    return TracelessHermitian(std::move(m));
}

TracelessHermitian TracelessHermitian::random(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random: n >= 1 required");
    RngStream rng(seed, 0);
    const int d = n + 1;
    Eigen::MatrixXcd m(d, d);
    for (int j = 0; j < d; ++j) m(j, j) = Complex(rng.next_normal(), 0.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            const Complex z(rng.next_normal(), rng.next_normal());
            m(j, k) = z;
            m(k, j) = std::conj(z);
        }
    const Complex mean_diag = m.trace() / static_cast<double>(d);
    for (int j = 0; j < d; ++j) m(j, j) -= mean_diag;
    return TracelessHermitian(std::move(m));
}

double TracelessHermitian::trace_cubed() const {
    return (m_ * m_ * m_).trace().real();
}

bool TracelessHermitian::is_gamma() const {
    const int n = chart_dim();
    const Eigen::MatrixXcd g = gamma(n).matrix();
    return (m_ - g).cwiseAbs().maxCoeff() == 0.0;
}

double eigenfunction_at(const TracelessHermitian& eta, const Point& p) {
    check_sizes(eta, p);
    const Eigen::VectorXcd W = homogeneous_lift(p);
    const Complex num = (W.adjoint() * eta.matrix() * W)(0, 0);
    return num.real() / (1.0 + p.norm_sq);
}

Eigen::VectorXcd gradient_holo_vec(const TracelessHermitian& eta, const Point& p) {
    check_sizes(eta, p);
    const double u = 1.0 + p.norm_sq;
    const Eigen::VectorXcd W = homogeneous_lift(p);
    const Eigen::VectorXcd etaW = eta.matrix() * W;
    const double num = (W.adjoint() * etaW)(0, 0).real();
    Eigen::VectorXcd grad(p.n);
    for (int k = 0; k < p.n; ++k) {
        // d/dw_k of (Wbar eta W^t): Wbar is constant in w, so only the
        // column-k entry survives; conj(etaW) supplies Wbar eta
        const Complex col_k = std::conj(etaW(k + 1));
        grad(k) = col_k / u - num * std::conj(p.w[static_cast<std::size_t>(k)]) / (u * u);
    }
    return grad;
}

ComplexTensor gradient_holo_at(const TracelessHermitian& eta, const Point& p) {
    const Eigen::VectorXcd v = gradient_holo_vec(eta, p);
    ComplexTensor out(p.n, IndexSignature{kLowerHolo});
    for (int k = 0; k < p.n; ++k) out(k) = v(k);
    return out;
}

}  // namespace koiso
