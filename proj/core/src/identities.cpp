#include "koiso/identities.hpp"

#include "koiso/fubini_study.hpp"
#include "koiso/gamma_forms.hpp"
#include "koiso/integrals.hpp"

#include "stack_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace koiso {

namespace {

constexpr std::array<IdentityInfo, 10> kTable = {{
    {IdentityId::trace_free, "trace_free", IdentityKind::Pointwise, 0,
     "tr_g(h) = 0 for h = Hess f + (n+1) f g1 + (1-n)(n+1) f g0"},
    {IdentityId::codifferential_free, "codifferential_free", IdentityKind::Pointwise, 0,
     "g^{p qbar} D_qbar D_p D_lbar f + (n+1) (df)_lbar = 0 (divergence of the CP^n block)"},
    {IdentityId::hess_f_ip, "hess_f_ip", IdentityKind::Integral, 2,
     "<|Hess f|^2, f>_L2 = 0"},
    {IdentityId::hess_cube, "hess_cube", IdentityKind::Integral, 2,
     "<D_iD_jf D^jD_kf, D_iD_kf>_L2 = (n+1)^3 int f^3"},
    {IdentityId::koi_hess_id, "koi_hess_id", IdentityKind::Pointwise, 0,
     "Delta Hess f = 2(Hess f - (n+1) f g)"},
    {IdentityId::rough_laplacian_hess, "rough_laplacian_hess", IdentityKind::Integral, 2,
     "<Delta(Hess f + (n+1) f g), f Hess f>_L2 = -4n(n+1)^2 int f^3"},
    {IdentityId::dhess_1, "dhess_1", IdentityKind::Integral, 4,
     "<DDDDf, DDf DDf>_L2 (outer pattern) = -2(n+1)^3 int f^3"},
    {IdentityId::dhess_2, "dhess_2", IdentityKind::Integral, 2,
     "<DDDDf, DDf DDf>_L2 (crossed pattern) = -(n+1)^3 int f^3"},
    {IdentityId::notkoi_4d, "notkoi_4d", IdentityKind::Integral, 2,
     "<D_iD_lD_kD_jf, f g_ij D_kD_lf>_L2 = -2(n+1)^2 int f^3"},
    {IdentityId::f3_closed, "f3_closed", IdentityKind::Exact, 1,
     "int f_gamma^3 dV = 2n(1-n^2) pi^n / (n+3)!"},
}};

const IdentityInfo& info_of(IdentityId id) {
    return kTable[static_cast<std::size_t>(id)];
}

// ----- closed exact route: complex-coordinate integrand reduction ---------

struct ClosedSides {
    RadialIntegrand complex_integrand;  // per-point complex pairing
    ExactValue rhs;                     // the identity's stated value
};

ClosedSides closed_sides(IdentityId id, int n) {
    const GammaForms gf = gamma_forms(n);
    const Rational lam = gf.lambda;
    const Rational nn(n);
    const ExactValue F = closed_form_f3_integral(n);
    const Rational lam2 = lam * lam;
    const Rational lam3 = lam2 * lam;

    switch (id) {
        case IdentityId::hess_f_ip:
            return {gf.f * gf.tr_H2, ExactValue::zero()};
        case IdentityId::hess_cube:
            return {gf.tr_H3, lam3 * F};
        case IdentityId::rough_laplacian_hess:
            // <Delta psi, f Hess f>_c with Delta psi = 2 Hess + 2 n lam f g
            return {Rational(2) * (gf.f * gf.tr_H2) + (2 * nn * lam) * (gf.f2 * gf.tr_H),
                    (-4 * nn * lam2) * F};
        case IdentityId::dhess_1:
            return {lam * (gf.f * gf.tr_H2) - gf.tr_H3, (-2 * lam3) * F};
        case IdentityId::dhess_2:
            return {lam * (gf.f * gf.tr_H2) - gf.tr_H3, -lam3 * F};
        case IdentityId::notkoi_4d:
            return {Rational(-1) * (gf.f * gf.tr_H2) - lam2 * gf.f3, (-2 * lam2) * F};
        case IdentityId::f3_closed:
            return {gf.f3, F};
        default:
            throw std::invalid_argument("closed_sides: not an integral identity");
    }
}

// ----- generic-eta Monte Carlo integrands via the derivative stack --------

int stack_order_for(IdentityId id) {
    switch (id) {
        case IdentityId::f3_closed: return 1;
        case IdentityId::hess_f_ip:
        case IdentityId::hess_cube: return 2;
        default: return 4;
    }
}

// complex-coordinate value only; the Riemannian conversion factor is
// applied by the caller
double stack_integrand(IdentityId id, const detail::StackAlgebra& a) {
    const double lam = a.lambda;
    switch (id) {
        case IdentityId::f3_closed:
            return a.f * a.f * a.f;
        case IdentityId::hess_f_ip:
            return a.f * detail::tr_real(a.H * a.H);
        case IdentityId::hess_cube:
            return detail::tr_real(a.H * a.H * a.H);
        case IdentityId::rough_laplacian_hess: {
            const int n = a.n;
            MatrixXc rough = MatrixXc::Zero(n, n);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Complex acc(0.0, 0.0);
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q)
                            acc += a.gi(p, q) * a.stack->fourth(p, q, k, l);
                    rough(k, l) = -2.0 * acc;
                }
            const MatrixXc delta_psi = rough + Complex(lam * detail::laplacian_f(a), 0.0) * a.g;
            return a.f * detail::pair_c(a, delta_psi, a.hess);
        }
        case IdentityId::dhess_1:
            return detail::contract_f4(a.stack->fourth, a.Hup, a.Hup);
        case IdentityId::dhess_2:
            return detail::contract_f4_crossed(a.stack->fourth, a.Hup, a.Hup);
        case IdentityId::notkoi_4d: {
            const int n = a.n;
            Complex acc(0.0, 0.0);
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l)
                    for (int k = 0; k < n; ++k)
                        for (int j = 0; j < n; ++j)
                            acc += a.stack->fourth(i, l, k, j) * a.gi(i, j) * a.Hup(k, l);
            return a.f * acc.real();
        }
        default:
            throw std::invalid_argument("stack_integrand: not an integral identity");
    }
}

// ----- pointwise identities ------------------------------------------------

struct PointwiseEval {
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double abs_err = 0.0;
    double scaled_err = 0.0;
};

PointwiseEval eval_pointwise(IdentityId id, const DerivativeStack& stack) {
    const detail::StackAlgebra a = detail::make_algebra(stack);
    const double lam = a.lambda;
    const int n = a.n;
    constexpr double kTiny = 1e-300;
    PointwiseEval ev;

    switch (id) {
        case IdentityId::trace_free: {
            const double tr_cpn = 2.0 * detail::tr_real(a.Psi);
            const double tr_cp1 = 2.0 * (1.0 - n) * lam * a.f;
            const double lhs = tr_cpn + tr_cp1;
            const double scale = 2.0 * std::abs(detail::tr_real(a.H)) +
                                 2.0 * n * lam * std::abs(a.f) +
                                 2.0 * std::abs(1.0 - n) * lam * std::abs(a.f) + kTiny;
            ev.lhs_norm = std::abs(lhs);
            ev.rhs_norm = 0.0;
            ev.abs_err = std::abs(lhs);
            ev.scaled_err = std::abs(lhs) / scale;
            return ev;
        }
        case IdentityId::codifferential_free: {
            double worst = 0.0, scale = kTiny, lhs_norm = 0.0;
            for (int l = 0; l < n; ++l) {
                Complex div(0.0, 0.0);
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) div += a.gi(p, q) * stack.third(q, p, l);
                const Complex grad_term = lam * std::conj(stack.grad(l));
                const Complex total = div + grad_term;
                worst = std::max(worst, std::abs(total));
                lhs_norm = std::max(lhs_norm, std::abs(total));
                scale = std::max(scale, std::abs(div) + std::abs(grad_term));
            }
            ev.lhs_norm = lhs_norm;
            ev.rhs_norm = 0.0;
            ev.abs_err = worst;
            ev.scaled_err = worst / scale;
            return ev;
        }
        case IdentityId::koi_hess_id: {
            double diff = 0.0, lhs_norm = 0.0, rhs_norm = 0.0;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Complex acc(0.0, 0.0);
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q)
                            acc += a.gi(p, q) * stack.fourth(p, q, k, l);
                    const Complex lhs = -2.0 * acc;
                    const Complex rhs = 2.0 * (a.hess(k, l) - lam * a.f * a.g(k, l));
                    diff = std::max(diff, std::abs(lhs - rhs));
                    lhs_norm = std::max(lhs_norm, std::abs(lhs));
                    rhs_norm = std::max(rhs_norm, std::abs(rhs));
                }
            ev.lhs_norm = lhs_norm;
            ev.rhs_norm = rhs_norm;
            ev.abs_err = diff;
            ev.scaled_err = diff / (rhs_norm + kTiny);
            return ev;
        }
        default:
            throw std::invalid_argument("eval_pointwise: not a pointwise identity");
    }
}

TracelessHermitian choose_eta(int n, const CheckConfig& config) {
    return config.eta_random ? TracelessHermitian::random(n, config.eta_seed)
                             : TracelessHermitian::gamma(n);
}

}  // namespace

double identity_integrand(IdentityId id, const DerivativeStack& stack) {
    const IdentityInfo& info = info_of(id);
    if (info.kind == IdentityKind::Pointwise)
        throw std::invalid_argument("identity_integrand: not an integral identity");
    return static_cast<double>(info.riem_factor) *
           stack_integrand(id, detail::make_algebra(stack));
}

int identity_stack_order(IdentityId id) { return stack_order_for(id); }

std::span<const IdentityInfo> identity_table() { return kTable; }

const IdentityInfo& identity_info(IdentityId id) { return info_of(id); }

std::optional<IdentityId> identity_from_name(std::string_view name) {
    for (const IdentityInfo& info : kTable)
        if (info.name == name) return info.id;
    return std::nullopt;
}

std::string_view method_name(CheckMethod m) {
    switch (m) {
        case CheckMethod::Closed: return "closed";
        case CheckMethod::MonteCarlo: return "mc";
        default: return "pointwise";
    }
}

CheckValue CheckValue::from_exact(ExactValue v) {
    CheckValue out;
    out.value = v.to_double();
    out.exact = std::move(v);
    return out;
}

std::pair<CheckValue, CheckValue> evaluate_identity_sides(IdentityId id, int n,
                                                          const TracelessHermitian& eta,
                                                          CheckMethod method,
                                                          const CheckConfig& config) {
    const IdentityInfo& info = info_of(id);
    if (n < 1) throw std::invalid_argument("evaluate_identity_sides: n >= 1 required");
    if (eta.chart_dim() != n)
        throw std::invalid_argument("evaluate_identity_sides: eta size does not match n");

    if (info.kind == IdentityKind::Pointwise)
        throw std::invalid_argument(
            "evaluate_identity_sides: pointwise identities are evaluated via check_identity");

    if (method == CheckMethod::Closed) {
        if (!eta.is_gamma())
            throw std::invalid_argument("closed method requires eta = gamma");
        const ClosedSides cs = closed_sides(id, n);
        const Rational factor(info.riem_factor);
        ExactValue lhs = factor * integrate_radial(cs.complex_integrand, n);
        return {CheckValue::from_exact(std::move(lhs)), CheckValue::from_exact(cs.rhs)};
    }

    if (method != CheckMethod::MonteCarlo)
        throw std::invalid_argument("integral identities support closed and mc methods");

    const ClosedSides cs = closed_sides(id, n);
    MCConfig mc;
    mc.samples = config.samples;
    mc.seed = config.seed;
    mc.partitions = config.partitions;
    mc.threads = config.threads;

    MCEstimate est;
    if (eta.is_gamma()) {
        const double factor = static_cast<double>(info.riem_factor);
        const RadialIntegrand poly = cs.complex_integrand;
        est = mc_integrate(
            [&poly, factor](const Point& p) { return factor * poly.eval_t(p.norm_sq); }, n, mc);
    } else {
        const int order = stack_order_for(id);
        const double factor = static_cast<double>(info.riem_factor);
        est = mc_integrate(
            [&eta, id, order, factor](const Point& p) {
                const DerivativeStack stack =
                    build_stack(eta, p, StackMethod::NumericEngine, order);
                return factor * stack_integrand(id, detail::make_algebra(stack));
            },
            n, mc);
    }

    CheckValue lhs = CheckValue::from_double(est.mean);
    CheckValue rhs;
    if (eta.is_gamma()) {
        rhs = CheckValue::from_exact(cs.rhs);
    } else {
        // for generic eta every identity value scales by tr(eta^3)/tr(gamma^3)
        const double ratio = eta.trace_cubed() /
                             (static_cast<double>(n) * (1.0 - static_cast<double>(n) * n));
        rhs = CheckValue::from_double(cs.rhs.to_double() * ratio);
    }
    return {lhs, rhs};
}

namespace {

CheckReport make_mc_report(IdentityId id, int n, const CheckConfig& config,
                           const TracelessHermitian& eta) {
    const IdentityInfo& info = info_of(id);
    MCConfig mc{config.samples, config.seed, config.partitions, config.threads};

    const ClosedSides cs = closed_sides(id, n);
    MCEstimate est;
    if (eta.is_gamma()) {
        const double factor = static_cast<double>(info.riem_factor);
        const RadialIntegrand poly = cs.complex_integrand;
        est = mc_integrate(
            [&poly, factor](const Point& p) { return factor * poly.eval_t(p.norm_sq); }, n, mc);
    } else {
        const int order = stack_order_for(id);
        const double factor = static_cast<double>(info.riem_factor);
        est = mc_integrate(
            [&eta, id, order, factor](const Point& p) {
                const DerivativeStack stack =
                    build_stack(eta, p, StackMethod::NumericEngine, order);
                return factor * stack_integrand(id, detail::make_algebra(stack));
            },
            n, mc);
    }

    double rhs_value = cs.rhs.to_double();
    std::string eta_label = "gamma";
    if (!eta.is_gamma()) {
        const double ratio = eta.trace_cubed() /
                             (static_cast<double>(n) * (1.0 - static_cast<double>(n) * n));
        rhs_value *= ratio;
        eta_label = "random";
    }

    CheckReport rep;
    rep.id = id;
    rep.n = n;
    rep.method = CheckMethod::MonteCarlo;
    rep.lhs = CheckValue::from_double(est.mean);
    rep.rhs = eta.is_gamma() ? CheckValue::from_exact(cs.rhs) : CheckValue::from_double(rhs_value);
    rep.abs_err = std::abs(est.mean - rhs_value);
    rep.sigma = est.std_error;
    bool ok = rep.abs_err <= config.mc_sigma * est.std_error;
    if (rhs_value != 0.0) {
        rep.rel_err = rep.abs_err / std::abs(rhs_value);
        ok = ok && *rep.rel_err <= config.mc_rel;
    }
    rep.pass = ok;
    std::ostringstream det;
    det << "eta=" << eta_label << ", samples=" << est.samples << ", seed=" << est.seed;
    rep.detail = det.str();
    return rep;
}

CheckReport make_closed_integral_report(IdentityId id, int n) {
    const IdentityInfo& info = info_of(id);
    const ClosedSides cs = closed_sides(id, n);
    ExactValue lhs = Rational(info.riem_factor) * integrate_radial(cs.complex_integrand, n);

    CheckReport rep;
    rep.id = id;
    rep.n = n;
    rep.method = CheckMethod::Closed;
    rep.lhs = CheckValue::from_exact(lhs);
    rep.rhs = CheckValue::from_exact(cs.rhs);
    rep.pass = lhs == cs.rhs;
    rep.abs_err = rep.pass ? 0.0 : std::abs(lhs.to_double() - cs.rhs.to_double());
    rep.rel_err = rep.pass ? std::optional<double>(0.0) : std::nullopt;
    rep.detail = "exact rational comparison";
    return rep;
}

CheckReport make_pointwise_report(IdentityId id, int n, const CheckConfig& config,
                                  StackMethod stack_method) {
    const bool engine = stack_method == StackMethod::NumericEngine;
    const TracelessHermitian eta =
        engine ? choose_eta(n, config) : TracelessHermitian::gamma(n);
    const double tol = engine ? config.pointwise_rel : config.closed_pointwise_rel;
    // koi_hess_id needs the fourth derivative, codifferential the third
    const int order = id == IdentityId::trace_free ? 2 : (id == IdentityId::koi_hess_id ? 4 : 3);

    RngStream rng(config.seed, 0xB0B0);
    PointwiseEval worst;
    double worst_radius = 0.0;
    for (int i = 0; i < config.pointwise_points; ++i) {
        const Point p = sample_chart_point(n, rng);
        const DerivativeStack stack = build_stack(eta, p, stack_method, order);
        const PointwiseEval ev = eval_pointwise(id, stack);
        if (ev.scaled_err >= worst.scaled_err) {
            worst = ev;
            worst_radius = std::sqrt(p.norm_sq);
        }
    }

    CheckReport rep;
    rep.id = id;
    rep.n = n;
    rep.method = engine ? CheckMethod::Pointwise : CheckMethod::Closed;
    rep.lhs = CheckValue::from_double(worst.lhs_norm);
    rep.rhs = CheckValue::from_double(worst.rhs_norm);
    rep.abs_err = worst.abs_err;
    rep.rel_err = worst.scaled_err;
    rep.pass = worst.scaled_err <= tol;
    std::ostringstream det;
    det << (engine ? "numeric engine" : "closed forms") << ", eta="
        << (eta.is_gamma() ? "gamma" : "random") << ", " << config.pointwise_points
        << " points, worst at |w|=" << worst_radius << ", tol=" << tol;
    rep.detail = det.str();
    return rep;
}

}  // namespace

CheckReport check_identity(IdentityId id, int n, CheckMethod method, const CheckConfig& config) {
    const IdentityInfo& info = info_of(id);
    if (n < 1) throw std::invalid_argument("check_identity: n >= 1 required");

    if (info.kind == IdentityKind::Pointwise) {
        switch (method) {
            case CheckMethod::Closed:
                return make_pointwise_report(id, n, config, StackMethod::ClosedGamma);
            case CheckMethod::Pointwise:
                return make_pointwise_report(id, n, config, StackMethod::NumericEngine);
            default:
                throw std::invalid_argument(
                    "pointwise identities have no Monte Carlo method; use pointwise");
        }
    }

    switch (method) {
        case CheckMethod::Closed:
            return make_closed_integral_report(id, n);
        case CheckMethod::MonteCarlo:
            return make_mc_report(id, n, config, choose_eta(n, config));
        default:
            throw std::invalid_argument("integral identities support closed and mc methods");
    }
}

std::vector<CheckReport> run_suite(std::span<const int> n_list, const CheckConfig& config) {
    if (n_list.empty()) throw std::invalid_argument("run_suite: nonempty n_list required");
    std::vector<int> ns(n_list.begin(), n_list.end());
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.front() < 1) throw std::invalid_argument("run_suite: all n >= 1 required");

    std::vector<CheckReport> out;
    for (const IdentityInfo& info : kTable) {
        for (int n : ns) {
            if (info.kind == IdentityKind::Pointwise) {
                out.push_back(check_identity(info.id, n, CheckMethod::Closed, config));
                if (config.samples > 0)
                    out.push_back(check_identity(info.id, n, CheckMethod::Pointwise, config));
            } else {
                out.push_back(check_identity(info.id, n, CheckMethod::Closed, config));
                if (config.samples > 0)
                    out.push_back(check_identity(info.id, n, CheckMethod::MonteCarlo, config));
            }
        }
    }
    return out;
}

}  // namespace koiso
