#pragma once

#include "koiso/rational.hpp"

#include <initializer_list>
#include <vector>

namespace koiso {

/// Polynomial in t = |w|^2 with exact rational coefficients.
class TPoly {
public:
    TPoly() = default;
    TPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    explicit TPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static TPoly constant(Rational v) { return TPoly({std::move(v)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)]
                                                           : Rational(0);
    }

    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    friend TPoly operator*(const Rational& s, TPoly p);

    double eval(double t) const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// P(t) / (1+t)^{u_power}, a pointwise quantity whose integral against dV
/// reduces to the standard radial integrals.
struct RadialIntegrand {
    TPoly num;
    int u_power = 0;

    double eval_t(double t) const;

    friend RadialIntegrand operator*(const RadialIntegrand& a, const RadialIntegrand& b) {
        return {a.num * b.num, a.u_power + b.u_power};
    }
    friend RadialIntegrand operator*(const Rational& s, RadialIntegrand r) {
        r.num = s * r.num;
        return r;
    }
    friend RadialIntegrand operator+(const RadialIntegrand& a, const RadialIntegrand& b);
    friend RadialIntegrand operator-(const RadialIntegrand& a, const RadialIntegrand& b);
};

/// Exact integral of P(t)/(1+t)^3 against dV over CP^n, i.e. the
/// coefficient combination sum_r c_r I_n^r. Only u_power == 3 and
/// degree <= 3 occur in this artifact; anything else throws.
ExactValue integrate_radial(const RadialIntegrand& f, int n);

/// Pointwise closed-form quantities attached to f_gamma, all derived from
/// the joint eigenstructure of H = endo(Hess f) and Psi = endo(Hess f +
/// (n+1) f g): both are diagonal in the w-direction/orthogonal split with
///   H:   lam(1-t)/u  and  lam/u   (multiplicity n-1),
///   Psi: lam(1-n)/u  and  lam(1+t-n)/u,
/// where lam = n+1 and u = 1+t.
struct GammaForms {
    int n = 0;
    Rational lambda;

    RadialIntegrand f;         // (t-n)/u
    RadialIntegrand f2;        // f^2
    RadialIntegrand f3;        // f^3
    RadialIntegrand tr_H;      // = -lam f
    RadialIntegrand tr_H2;
    RadialIntegrand tr_H3;
    RadialIntegrand tr_Psi;
    RadialIntegrand tr_HPsi;
    RadialIntegrand tr_Psi2H;
    RadialIntegrand tr_Psi3;
};

GammaForms gamma_forms(int n);

}  // namespace koiso
