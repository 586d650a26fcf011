#include "koiso/obstruction.hpp"

#include "koiso/gamma_forms.hpp"
#include "koiso/integrals.hpp"

#include "stack_algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace koiso {

int conversion_factor(ObstructionTerm term) {
    switch (term) {
        case ObstructionTerm::Cubic: return 2;
        case ObstructionTerm::Outer: return 4;
        default: return 2;
    }
}

namespace {

// Complex-coordinate integrands of the three pairings for eta = gamma.
// The phi block is algebraic: a full trace over CP^1 contributes 2.
struct GammaIntegrands {
    RadialIntegrand cubic;
    RadialIntegrand outer;
    RadialIntegrand crossed;
};

GammaIntegrands gamma_integrands(int n) {
    const GammaForms gf = gamma_forms(n);
    const Rational lam = gf.lambda;
    const Rational nn(n);
    const Rational one_minus_n = 1 - nn;

    GammaIntegrands gi;
    // tr((h#)^3): CP^n block 2 tr(Psi^3) plus the CP^1 block 2((1-n)lam f)^3
    gi.cubic = Rational(2) * gf.tr_Psi3 +
               (2 * one_minus_n * one_minus_n * one_minus_n * lam * lam * lam) * gf.f3;

    // outer: 4 Re[(D_k D_lbar psi_{r sbar}) psi^{k lbar} psi^{r sbar}]
    //        + phi piece 4 (1-n)^2 lam^2 f tr(H Psi);
    // with the closed fourth derivative the psi-psi part reduces to
    // n tr(H Psi) tr(Psi) - tr(Psi^2 H)
    const RadialIntegrand c_a = nn * (gf.tr_HPsi * gf.tr_Psi) - gf.tr_Psi2H;
    gi.outer = Rational(4) * c_a +
               (4 * one_minus_n * one_minus_n * lam * lam) * (gf.f * gf.tr_HPsi);

    // crossed: 2 Re[(D_k D_rbar psi_{s lbar}) psi^{k lbar} psi^{s rbar}]
    //        = 2 (n tr(Psi^2 H) - tr(H Psi) tr(Psi))
    const RadialIntegrand c_x = nn * gf.tr_Psi2H - Rational(1) * (gf.tr_HPsi * gf.tr_Psi);
    gi.crossed = Rational(2) * c_x;
    return gi;
}

// term-level coefficient formulas (coefficient of int f^3)
Rational cubic_coefficient(int n) {
    const Rational nn(n);
    const Rational lam3 = Rational((n + 1)) * (n + 1) * (n + 1);
    return -(2 * nn * nn * nn - 6 * nn * nn + 4 * nn + 3) * lam3;
}

Rational outer_coefficient(int n) {
    const Rational nn(n);
    const Rational lam3 = Rational((n + 1)) * (n + 1) * (n + 1);
    return -2 * lam3 * (2 * nn * nn * nn - 4 * nn + 1);
}

Rational crossed_coefficient(int n) {
    const Rational lam(n + 1);
    return lam * lam * lam * lam - 3 * lam * lam * lam;
}

Rational total_coefficient(int n) {
    const Rational nn(n);
    Rational lam5(n + 1);
    lam5 = lam5 * lam5 * lam5 * lam5 * lam5;
    return -4 * nn * (nn - 1) * lam5;
}

ExactValue closed_term(int n, ObstructionTerm term) {
    const GammaIntegrands gi = gamma_integrands(n);
    const ExactValue F = closed_form_f3_integral(n);

    RadialIntegrand integrand = gi.cubic;
    Rational coeff = cubic_coefficient(n);
    if (term == ObstructionTerm::Outer) {
        integrand = gi.outer;
        coeff = outer_coefficient(n);
    } else if (term == ObstructionTerm::Crossed) {
        integrand = gi.crossed;
        coeff = crossed_coefficient(n);
    }

    const ExactValue reduction = integrate_radial(integrand, n);
    const ExactValue formula = coeff * F;
    if (reduction != formula)
        throw std::logic_error("obstruction closed term: integrand reduction disagrees with the "
                               "coefficient formula");
    return formula;
}

// pointwise stack-based integrands (generic eta); out = {cubic, outer, crossed, total}
void stack_obstruction_integrands(const detail::StackAlgebra& a, std::span<double> out) {
    const double lam = a.lambda;
    const double n = static_cast<double>(a.n);
    const double f = a.f;

    const double cubic = 2.0 * detail::tr_real(a.Psi * a.Psi * a.Psi) +
                         2.0 * std::pow((1.0 - n) * lam * f, 3);

    // outer, psi part: Re[(F4 + lam Hess (x) g)_{k lbar r sbar} psi^{k lbar} psi^{r sbar}]
    double c_a = detail::contract_f4(a.stack->fourth, a.psi_up, a.psi_up);
    {
        Complex acc(0.0, 0.0);
        const int nn = a.n;
        // lam Hess_{k lbar} g_{r sbar} psi^{k lbar} psi^{r sbar}
        Complex s1(0.0, 0.0), s2(0.0, 0.0);
        for (int k = 0; k < nn; ++k)
            for (int l = 0; l < nn; ++l) s1 += a.hess(k, l) * a.psi_up(k, l);
        for (int r = 0; r < nn; ++r)
            for (int s = 0; s < nn; ++s) s2 += a.g(r, s) * a.psi_up(r, s);
        acc = s1 * s2;
        c_a += lam * acc.real();
    }
    const double phi_piece =
        4.0 * (1.0 - n) * (1.0 - n) * lam * lam * f * detail::tr_real(a.H * a.Psi);
    const double outer = 4.0 * c_a + phi_piece;

    // crossed: Re[(F4' + lam Hess_{k rbar} g_{s lbar}) psi^{k lbar} psi^{s rbar}]
    double c_x = detail::contract_f4_crossed(a.stack->fourth, a.psi_up, a.psi_up);
    {
        Complex acc(0.0, 0.0);
        const int nn = a.n;
        for (int k = 0; k < nn; ++k)
            for (int r = 0; r < nn; ++r)
                for (int s = 0; s < nn; ++s)
                    for (int l = 0; l < nn; ++l)
                        acc += a.hess(k, r) * a.g(s, l) * a.psi_up(k, l) * a.psi_up(s, r);
        c_x += lam * acc.real();
    }
    const double crossed = 2.0 * c_x;

    out[0] = cubic;
    out[1] = outer;
    out[2] = crossed;
    out[3] = 2.0 * (n + 1.0) * cubic + 3.0 * outer - 6.0 * crossed;
}

}  // namespace

std::array<double, 4> obstruction_integrands(const DerivativeStack& stack) {
    std::array<double, 4> out{};
    stack_obstruction_integrands(detail::make_algebra(stack), out);
    return out;
}

ExactValue zeroth_order_closed(int n) { return closed_term(n, ObstructionTerm::Cubic); }

ExactValue second_order_outer_closed(int n) { return closed_term(n, ObstructionTerm::Outer); }

ExactValue second_order_crossed_closed(int n) { return closed_term(n, ObstructionTerm::Crossed); }

ObstructionMC obstruction_mc(const DeformationSpec& spec, const MCConfig& config) {
    const int n = spec.n;
    if (spec.eta.chart_dim() != n)
        throw std::invalid_argument("obstruction_mc: eta size does not match n");

    std::vector<MCEstimate> est;
    if (spec.eta.is_gamma()) {
        const GammaIntegrands gi = gamma_integrands(n);
        const double lam = static_cast<double>(n + 1);
        est = mc_integrate_multi(
            [&gi, lam](const Point& p, std::span<double> out) {
                const double t = p.norm_sq;
                out[0] = gi.cubic.eval_t(t);
                out[1] = gi.outer.eval_t(t);
                out[2] = gi.crossed.eval_t(t);
                out[3] = 2.0 * lam * out[0] + 3.0 * out[1] - 6.0 * out[2];
            },
            4, n, config);
    } else {
        const TracelessHermitian& eta = spec.eta;
        est = mc_integrate_multi(
            [&eta](const Point& p, std::span<double> out) {
                const DerivativeStack stack = build_stack(eta, p, StackMethod::NumericEngine, 4);
                stack_obstruction_integrands(detail::make_algebra(stack), out);
            },
            4, n, config);
    }
    return ObstructionMC{est[0], est[1], est[2], est[3]};
}

ObstructionResult koiso_obstruction_closed(int n) {
    if (n < 1) throw std::invalid_argument("koiso_obstruction_closed: n >= 1 required");
    const ExactValue F = closed_form_f3_integral(n);
    const ExactValue cubic = zeroth_order_closed(n);
    const ExactValue outer = second_order_outer_closed(n);
    const ExactValue crossed = second_order_crossed_closed(n);

    const Rational lam(n + 1);
    ExactValue total = (2 * lam) * cubic + Rational(3) * outer + Rational(-6) * crossed;
    const ExactValue closed_total = total_coefficient(n) * F;
    if (total != closed_total)
        throw std::logic_error("koiso_obstruction_closed: term recombination disagrees with the "
                               "final closed form");

    ObstructionResult res;
    res.n = n;
    res.eta_label = "gamma";
    res.method = CheckMethod::Closed;
    res.term_cubic = cubic.to_double();
    res.term_outer = outer.to_double();
    res.term_crossed = crossed.to_double();
    res.total = total.to_double();
    res.exact_cubic = cubic;
    res.exact_outer = outer;
    res.exact_crossed = crossed;
    res.exact_total = total;
    res.closed_total = closed_total;
    res.pass = true;
    if (n == 1) res.note = "unobstructed at second order (n=1)";
    return res;
}

ObstructionResult koiso_obstruction_mc(const DeformationSpec& spec, const MCConfig& config,
                                       double sigma_tol) {
    const int n = spec.n;
    const ObstructionMC mc = obstruction_mc(spec, config);
    const ExactValue closed_total = total_coefficient(n) * closed_form_f3_integral(n);

    double target = closed_total.to_double();
    if (!spec.eta.is_gamma()) {
        const double tr_gamma3 = static_cast<double>(n) * (1.0 - static_cast<double>(n) * n);
        target *= spec.eta.trace_cubed() / tr_gamma3;
    }

    ObstructionResult res;
    res.n = n;
    res.eta_label = spec.eta.is_gamma() ? "gamma" : "random";
    res.method = CheckMethod::MonteCarlo;
    res.term_cubic = mc.cubic.mean;
    res.term_outer = mc.outer.mean;
    res.term_crossed = mc.crossed.mean;
    res.total = mc.total.mean;
    res.sigma_total = mc.total.std_error;
    res.closed_total = closed_total;
    res.pass = std::abs(mc.total.mean - target) <= sigma_tol * mc.total.std_error;
    if (n == 1) res.note = "unobstructed at second order (n=1)";
    std::ostringstream det;
    if (!spec.eta.is_gamma()) {
        det << "target scaled by tr(eta^3)/tr(gamma^3)";
        res.note = det.str();
    }
    return res;
}

RemarkCheck koiso_remark_crosscheck(int n) {
    if (n < 1) throw std::invalid_argument("koiso_remark_crosscheck: n >= 1 required");
    RemarkCheck rc;
    rc.ours = ExactValue(Rational(1, 2) * total_coefficient(n), 0);
    const Rational n1(2 * n), n2(2), lam(n + 1);
    const Rational classical =
        -(n1 - 2) * (n1 + n2 - 2) * (n1 + 2 * n2 - 2) / (n2 * n2) * lam * lam * lam * lam;
    rc.koiso = ExactValue(classical, 0);
    rc.equal = rc.ours == rc.koiso;
    return rc;
}

}  // namespace koiso
