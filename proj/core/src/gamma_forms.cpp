#include "koiso/gamma_forms.hpp"

#include "koiso/integrals.hpp"

#include <cmath>
#include <stdexcept>

namespace koiso {

void TPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

TPoly& TPoly::operator+=(const TPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return TPoly{};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return TPoly(std::move(out));
}

TPoly operator*(const Rational& s, TPoly p) {
    for (Rational& c : p.c_) c *= s;
    p.trim();
    return p;
}

double TPoly::eval(double t) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i].convert_to<double>();
    return acc;
}

double RadialIntegrand::eval_t(double t) const {
    return num.eval(t) / std::pow(1.0 + t, u_power);
}

RadialIntegrand operator+(const RadialIntegrand& a, const RadialIntegrand& b) {
    if (a.u_power != b.u_power)
        throw std::invalid_argument("RadialIntegrand: sum needs matching powers of (1+t)");
    return {a.num + b.num, a.u_power};
}

RadialIntegrand operator-(const RadialIntegrand& a, const RadialIntegrand& b) {
    if (a.u_power != b.u_power)
        throw std::invalid_argument("RadialIntegrand: difference needs matching powers of (1+t)");
    return {a.num - b.num, a.u_power};
}

ExactValue integrate_radial(const RadialIntegrand& f, int n) {
    if (f.u_power != 3)
        throw std::invalid_argument("integrate_radial: only P(t)/(1+t)^3 integrands occur here");
    if (f.num.degree() > 3)
        throw std::invalid_argument("integrate_radial: polynomial degree exceeds the radial table");
    ExactValue acc;
    for (int r = 0; r <= std::max(0, f.num.degree()); ++r)
        acc += f.num.coeff(r) * closed_form_I(n, r);
    return acc;
}

GammaForms gamma_forms(int n) {
    if (n < 1) throw std::invalid_argument("gamma_forms: n >= 1 required");
    GammaForms gf;
    gf.n = n;
    gf.lambda = Rational(n + 1);
    const Rational lam = gf.lambda;
    const Rational nn(n);

    // eigenvalue branches (numerators over one power of u each)
    const RadialIntegrand h_w{TPoly{lam, -lam}, 1};        // lam (1 - t) / u
    const RadialIntegrand h_perp{TPoly{lam}, 1};           // lam / u
    const RadialIntegrand psi_w{TPoly{lam * (1 - nn)}, 1}; // lam (1 - n) / u
    const RadialIntegrand psi_perp{TPoly{lam * (1 - nn), lam}, 1};  // lam (1 + t - n) / u

    const Rational mult(n - 1);
    auto trace2 = [&](const RadialIntegrand& aw, const RadialIntegrand& bw,
                      const RadialIntegrand& ap, const RadialIntegrand& bp) {
        return aw * bw + mult * (ap * bp);
    };
    auto trace3 = [&](const RadialIntegrand& aw, const RadialIntegrand& bw,
                      const RadialIntegrand& cw, const RadialIntegrand& ap,
                      const RadialIntegrand& bp, const RadialIntegrand& cp) {
        return aw * bw * cw + mult * (ap * bp * cp);
    };

    gf.f = RadialIntegrand{TPoly{-nn, 1}, 1};
    gf.f2 = gf.f * gf.f;
    gf.f3 = gf.f2 * gf.f;
    gf.tr_H = h_w + mult * h_perp;
    gf.tr_H2 = trace2(h_w, h_w, h_perp, h_perp);
    gf.tr_H3 = trace3(h_w, h_w, h_w, h_perp, h_perp, h_perp);
    gf.tr_Psi = psi_w + mult * psi_perp;
    gf.tr_HPsi = trace2(h_w, psi_w, h_perp, psi_perp);
    gf.tr_Psi2H = trace3(psi_w, psi_w, h_w, psi_perp, psi_perp, h_perp);
    gf.tr_Psi3 = trace3(psi_w, psi_w, psi_w, psi_perp, psi_perp, psi_perp);
    return gf;
}

}  // namespace koiso
