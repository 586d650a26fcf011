#include "koiso/fubini_study.hpp"

#include "koiso/finite_diff.hpp"

#include <cmath>
#include <stdexcept>

namespace koiso {

Point::Point(std::vector<Complex> coords) : n(static_cast<int>(coords.size())), w(std::move(coords)) {
    norm_sq = recompute_norm_sq();
}

double Point::recompute_norm_sq() const {
    double s = 0.0;
    for (const Complex& z : w) s += std::norm(z);
    return s;
}

Point shifted(const Point& p, int coord, double dx, double dy) {
    Point q = p;
    q.w[static_cast<std::size_t>(coord)] += Complex(dx, dy);
    q.norm_sq = q.recompute_norm_sq();
    return q;
}

ComplexTensor metric_at(const Point& p) {
    const int n = p.n;
    const double u = 1.0 + p.norm_sq;
    ComplexTensor g(n, sig_metric());
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Complex v = -std::conj(p.w[static_cast<std::size_t>(k)]) * p.w[static_cast<std::size_t>(l)] / u;
            if (k == l) v += 1.0;
            g(k, l) = v / u;
        }
    return g;
}

ComplexTensor inverse_metric_at(const Point& p) {
    const int n = p.n;
    const double u = 1.0 + p.norm_sq;
    ComplexTensor gi(n, sig_inverse_metric());
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Complex v = p.w[static_cast<std::size_t>(k)] * std::conj(p.w[static_cast<std::size_t>(l)]);
            if (k == l) v += 1.0;
            gi(k, l) = u * v;
        }
    return gi;
}

double volume_density_at(const Point& p) {
    return std::pow(1.0 + p.norm_sq, -(p.n + 1));
}

ComplexTensor christoffel_at(const Point& p) {
    const int n = p.n;
    const double u = 1.0 + p.norm_sq;
    ComplexTensor gamma(n, IndexSignature{kUpperHolo, kLowerHolo, kLowerHolo});
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex v(0.0, 0.0);
                if (j == k) v += std::conj(p.w[static_cast<std::size_t>(i)]);
                if (i == k) v += std::conj(p.w[static_cast<std::size_t>(j)]);
                gamma(k, i, j) = -v / u;
            }
    return gamma;
}

ComplexTensor curvature_closed_form(int n) {
    if (n < 1) throw std::invalid_argument("curvature_closed_form: n >= 1 required");
    ComplexTensor rm(n, IndexSignature{kLowerHolo, kUpperHolo, kLowerHolo, kUpperHolo});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double v = 0.0;
                    if (i == j && k == l) v += 1.0;
                    if (i == l && k == j) v += 1.0;
                    rm(i, j, k, l) = v;
                }
    return rm;
}

namespace {

// d_i g_{k lbar} (holo) and dbar_j g_{k lbar} (anti) by 4th-order stencils
ComplexTensor metric_first_derivative(const Point& p, SlotType type, double h) {
    const int n = p.n;
    ComplexTensor out(n, IndexSignature{type == SlotType::Holomorphic ? kLowerHolo : kLowerAnti,
                                        kLowerHolo, kLowerAnti});
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            ScalarField comp = [k, l](const Point& q) { return metric_at(q)(k, l); };
            for (int d = 0; d < n; ++d) out(d, k, l) = wirtinger_derivative(comp, p, d, type, h);
        }
    return out;
}

}  // namespace

ComplexTensor curvature_from_metric(const Point& p) {
    const int n = p.n;
    const double h1 = 1e-4 * p.fd_scale();
    const double h2 = 4e-3 * p.fd_scale();

    const ComplexTensor dg = metric_first_derivative(p, SlotType::Holomorphic, h1);
    const ComplexTensor dbar_g = metric_first_derivative(p, SlotType::Antiholomorphic, h1);
    const ComplexTensor gi = inverse_metric_at(p);

    // second derivatives d_i dbar_j g_{k lbar}: outer stencil over the inner
    // first-derivative field, with a larger outer step so inner noise stays
    // below outer truncation
    ComplexTensor ddg(n, IndexSignature{kLowerHolo, kLowerAnti, kLowerHolo, kLowerAnti});
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                ScalarField comp = [j, k, l](const Point& q) {
                    ScalarField g_kl = [k, l](const Point& r) { return metric_at(r)(k, l); };
                    return wirtinger_derivative(g_kl, q, j, SlotType::Antiholomorphic,
                                                1e-4 * q.fd_scale());
                };
                for (int i = 0; i < n; ++i)
                    ddg(i, j, k, l) = wirtinger_derivative(comp, p, i, SlotType::Holomorphic, h2);
            }

    ComplexTensor rm(n, IndexSignature{kLowerHolo, kLowerAnti, kLowerHolo, kLowerAnti});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Complex gamma_term(0.0, 0.0);
                    for (int pq = 0; pq < n; ++pq)
                        for (int q = 0; q < n; ++q)
                            gamma_term += gi(pq, q) * dg(i, k, q) * dbar_g(j, pq, l);
                    rm(i, j, k, l) = -ddg(i, j, k, l) + gamma_term;
                }
    return rm;
}

ComplexTensor ricci_at(const Point& p) {
    ComplexTensor g = metric_at(p);
    return Complex(static_cast<double>(p.n + 1), 0.0) * g;
}

ComplexTensor ricci_from_curvature(const Point& p) {
    const ComplexTensor rm = curvature_from_metric(p);
    const ComplexTensor g = metric_at(p);
    const ComplexTensor gi = inverse_metric_at(p);
    // contract the (i, jbar) derivative pair with g^{-1}
    return trace_pair(rm, 0, 1, g, gi);
}

MetricBundle bundle_at(const Point& p) {
    return MetricBundle{metric_at(p), inverse_metric_at(p), volume_density_at(p),
                        christoffel_at(p), p};
}

MatrixXc metric_matrix(const Point& p) {
    const ComplexTensor g = metric_at(p);
    return MatrixXc(g.matrix());
}

MatrixXc inverse_metric_matrix(const Point& p) {
    const ComplexTensor gi = inverse_metric_at(p);
    return MatrixXc(gi.matrix());
}

}  // namespace koiso
