#include "koiso/covariant.hpp"

#include "koiso/finite_diff.hpp"

#include <cmath>
#include <stdexcept>

namespace koiso {

namespace {

constexpr double kTailCutoff = 1e3;

void check_chart_interior(const Point& p) {
    if (std::sqrt(p.norm_sq) > kTailCutoff)
        throw std::invalid_argument(
            "covariant engine: |w| > 1e3 rejected (quantities underflow in the tail)");
}

// 4th-order central stencil weights at offsets {+1,-1,+2,-2} * h
ComplexTensor stencil_combine(const ComplexTensor& f1, const ComplexTensor& fm1,
                              const ComplexTensor& f2, const ComplexTensor& fm2, double h) {
    ComplexTensor out = f1 - fm1;
    ComplexTensor wide = f2 - fm2;
    const Complex a(8.0 / (12.0 * h), 0.0);
    const Complex b(-1.0 / (12.0 * h), 0.0);
    return a * out + b * wide;
}

}  // namespace

double engine_step(int level, const Point& p) {
    // inner level 1e-3, growing by ~3.2x per outer layer: the optimum for
    // 4th-order stencils where each layer's input noise is the layer below's
    // output error
    double h = 1e-3;
    for (int i = 1; i < level; ++i) h *= 3.2;
    return h * p.fd_scale();
}

ComplexTensor covariant_derivative_generic(const TensorField& field, const Point& p,
                                           SlotType new_slot, double step) {
    check_chart_interior(p);
    check_step(step, p);

    const ComplexTensor center = field(p);
    const int n = center.n();
    const int rank = center.rank();

    std::vector<Slot> out_slots;
    out_slots.reserve(static_cast<std::size_t>(rank) + 1);
    out_slots.push_back(Slot{Variance::Lower, new_slot});
    for (const Slot& s : center.signature().slots()) out_slots.push_back(s);
    ComplexTensor out(n, IndexSignature(std::move(out_slots)));

    const ComplexTensor gamma = christoffel_at(p);
    const Complex i_unit(0.0, 1.0);
    const bool holo = new_slot == SlotType::Holomorphic;

    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    std::vector<int> src(static_cast<std::size_t>(rank), 0);
    std::vector<int> out_idx(static_cast<std::size_t>(rank) + 1, 0);

    for (int a = 0; a < n; ++a) {
        auto eval = [&](double dx, double dy) { return field(shifted(p, a, dx, dy)); };
        const ComplexTensor ddx = stencil_combine(eval(step, 0.0), eval(-step, 0.0),
                                                  eval(2.0 * step, 0.0), eval(-2.0 * step, 0.0),
                                                  step);
        const ComplexTensor ddy = stencil_combine(eval(0.0, step), eval(0.0, -step),
                                                  eval(0.0, 2.0 * step), eval(0.0, -2.0 * step),
                                                  step);
        for (const Complex& v : ddx.data())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::runtime_error("covariant engine: non-finite field value on stencil");

        // Wirtinger combination
        const Complex half(0.5, 0.0);
        ComplexTensor dd = holo ? half * (ddx - i_unit * ddy) : half * (ddx + i_unit * ddy);

        // Christoffel corrections at the center point. Lower slots of the
        // derivative's type get -Gamma, upper slots +Gamma; the opposite type
        // uses the conjugate symbols.
        std::fill(idx.begin(), idx.end(), 0);
        bool more = rank > 0;
        do {
            Complex corr(0.0, 0.0);
            for (int s = 0; s < rank; ++s) {
                const Slot& slot = center.signature().slot(s);
                if (slot.type != new_slot) continue;
                const int is = idx[static_cast<std::size_t>(s)];
                src = idx;
                for (int m = 0; m < n; ++m) {
                    src[static_cast<std::size_t>(s)] = m;
                    Complex gval = (slot.variance == Variance::Lower) ? gamma(m, a, is)
                                                                      : gamma(is, a, m);
                    if (!holo) gval = std::conj(gval);
                    const Complex sign = (slot.variance == Variance::Lower) ? Complex(-1.0, 0.0)
                                                                            : Complex(1.0, 0.0);
                    corr += sign * gval * center.at(src);
                }
            }
            out_idx[0] = a;
            for (int s = 0; s < rank; ++s) out_idx[static_cast<std::size_t>(s) + 1] = idx[static_cast<std::size_t>(s)];
            out.at(out_idx) = dd.at(idx) + corr;
            if (rank == 0) break;
            // odometer
            more = false;
            for (int d = rank - 1; d >= 0; --d) {
                if (++idx[static_cast<std::size_t>(d)] < n) {
                    more = true;
                    break;
                }
                idx[static_cast<std::size_t>(d)] = 0;
            }
        } while (more);
    }
    return out;
}

std::pair<ComplexTensor, ComplexTensor> hessian_closed_gamma(const Point& p) {
    const int n = p.n;
    const double u = 1.0 + p.norm_sq;
    const double c = static_cast<double>(n + 1) / (u * u);
    ComplexTensor mixed(n, IndexSignature{kLowerHolo, kLowerAnti});
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Complex v = -2.0 * std::conj(p.w[static_cast<std::size_t>(k)]) *
                        p.w[static_cast<std::size_t>(l)] / u;
            if (k == l) v += 1.0;
            mixed(k, l) = c * v;
        }
    ComplexTensor pure(n, IndexSignature{kLowerHolo, kLowerHolo});
    return {std::move(mixed), std::move(pure)};
}

ComplexTensor third_derivative_closed_gamma(const Point& p) {
    const int n = p.n;
    const ComplexTensor g = metric_at(p);
    const ComplexTensor grad = gradient_holo_at(TracelessHermitian::gamma(n), p);
    ComplexTensor out(n, IndexSignature{kLowerAnti, kLowerHolo, kLowerAnti});
    for (int q = 0; q < n; ++q)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                out(q, k, l) = -(g(k, l) * std::conj(grad(q)) + g(k, q) * std::conj(grad(l)));
    return out;
}

ComplexTensor fourth_derivative_closed_gamma(const Point& p) {
    const int n = p.n;
    const ComplexTensor g = metric_at(p);
    const auto [hess, pure] = hessian_closed_gamma(p);
    (void)pure;
    ComplexTensor out(n, IndexSignature{kLowerHolo, kLowerAnti, kLowerHolo, kLowerAnti});
    for (int pp = 0; pp < n; ++pp)
        for (int q = 0; q < n; ++q)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    out(pp, q, k, l) = -(g(k, l) * hess(pp, q) + g(k, q) * hess(pp, l));
    return out;
}

DerivativeStack::DerivativeStack(int n, const Point& p)
    : at(p),
      grad(n, IndexSignature{kLowerHolo}),
      grad_anti(n, IndexSignature{kLowerAnti}),
      hess_mixed(n, IndexSignature{kLowerHolo, kLowerAnti}),
      hess_pure(n, IndexSignature{kLowerHolo, kLowerHolo}),
      third(n, IndexSignature{kLowerAnti, kLowerHolo, kLowerAnti}),
      fourth(n, IndexSignature{kLowerHolo, kLowerAnti, kLowerHolo, kLowerAnti}) {}

namespace {

ComplexTensor grad_anti_from_holo(const ComplexTensor& grad) {
    ComplexTensor out(grad.n(), IndexSignature{kLowerAnti});
    for (int k = 0; k < grad.n(); ++k) out(k) = std::conj(grad(k));
    return out;
}

}  // namespace

DerivativeStack build_stack(const TracelessHermitian& eta, const Point& p, StackMethod method,
                            int max_order) {
    const int n = p.n;
    DerivativeStack stack(n, p);
    stack.f = eigenfunction_at(eta, p);
    stack.grad = gradient_holo_at(eta, p);
    stack.grad_anti = grad_anti_from_holo(stack.grad);
    if (max_order < 2) return stack;

    if (method == StackMethod::ClosedGamma) {
        if (!eta.is_gamma())
            throw std::invalid_argument("build_stack: closed forms exist only for eta = gamma");
        auto [mixed, pure] = hessian_closed_gamma(p);
        stack.hess_mixed = std::move(mixed);
        stack.hess_pure = std::move(pure);
        if (max_order >= 3) stack.third = third_derivative_closed_gamma(p);
        if (max_order >= 4) stack.fourth = fourth_derivative_closed_gamma(p);
        return stack;
    }

    check_chart_interior(p);

    // level 1: differentiate the analytic gradient
    TensorField grad_anti_field = [&eta](const Point& q) {
        return grad_anti_from_holo(gradient_holo_at(eta, q));
    };
    TensorField grad_field = [&eta](const Point& q) { return gradient_holo_at(eta, q); };

    stack.hess_mixed =
        covariant_derivative_generic(grad_anti_field, p, SlotType::Holomorphic, engine_step(1, p));
    stack.hess_pure =
        covariant_derivative_generic(grad_field, p, SlotType::Holomorphic, engine_step(1, p));
    if (max_order < 3) return stack;

    // level 2: differentiate the level-1 Hessian field
    TensorField hess_field = [&grad_anti_field](const Point& q) {
        return covariant_derivative_generic(grad_anti_field, q, SlotType::Holomorphic,
                                            engine_step(1, q));
    };
    stack.third = covariant_derivative_generic(hess_field, p, SlotType::Antiholomorphic,
                                               engine_step(2, p));
    if (max_order < 4) return stack;

    // level 3: differentiate the level-2 third-derivative field
    TensorField third_field = [&hess_field](const Point& q) {
        return covariant_derivative_generic(hess_field, q, SlotType::Antiholomorphic,
                                            engine_step(2, q));
    };
    stack.fourth = covariant_derivative_generic(third_field, p, SlotType::Holomorphic,
                                                engine_step(3, p));
    return stack;
}

ComplexTensor rough_laplacian_hessian(const TracelessHermitian& eta, const Point& p,
                                      StackMethod method) {
    const DerivativeStack stack = build_stack(eta, p, method, 4);
    const ComplexTensor gi = inverse_metric_at(p);
    const int n = p.n;
    ComplexTensor out(n, IndexSignature{kLowerHolo, kLowerAnti});
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Complex acc(0.0, 0.0);
            for (int pp = 0; pp < n; ++pp)
                for (int q = 0; q < n; ++q) acc += gi(pp, q) * stack.fourth(pp, q, k, l);
            out(k, l) = -2.0 * acc;
        }
    return out;
}

double laplacian_scalar(const DerivativeStack& stack) {
    const ComplexTensor gi = inverse_metric_at(stack.at);
    Complex acc(0.0, 0.0);
    for (int k = 0; k < stack.at.n; ++k)
        for (int l = 0; l < stack.at.n; ++l) acc += gi(k, l) * stack.hess_mixed(k, l);
    return -2.0 * acc.real();
}

}  // namespace koiso
