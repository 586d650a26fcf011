#pragma once

// Internal: pointwise complex-coordinate pairings built from a derivative
// stack. Matrix conventions: rank-2 mixed tensors T_{k lbar} are row-major
// [holo][anti] matrices; endo(T) = g^{-1} T^t carries T^k_l; up(T) carries
// T^{k lbar} with both indices raised.

#include "koiso/covariant.hpp"
#include "koiso/fubini_study.hpp"
#include "koiso/tensor.hpp"

namespace koiso::detail {

struct StackAlgebra {
    int n = 0;
    double lambda = 0.0;
    double f = 0.0;
    MatrixXc g;
    MatrixXc gi;
    MatrixXc hess;   // Hess_{k lbar}
    MatrixXc H;      // endo(Hess)
    MatrixXc Hup;    // Hess with both indices raised
    MatrixXc psi;    // Hess + lambda f g
    MatrixXc Psi;    // endo(psi) = H + lambda f Id
    MatrixXc psi_up;
    const DerivativeStack* stack = nullptr;
};

inline StackAlgebra make_algebra(const DerivativeStack& s) {
    StackAlgebra a;
    a.n = s.at.n;
    a.lambda = static_cast<double>(s.at.n + 1);
    a.f = s.f;
    a.g = metric_matrix(s.at);
    a.gi = inverse_metric_matrix(s.at);
    a.hess = MatrixXc(s.hess_mixed.matrix());
    a.H = a.gi * a.hess.transpose();
    a.Hup = a.H * a.gi;
    a.psi = a.hess + Complex(a.lambda * a.f, 0.0) * a.g;
    a.Psi = a.gi * a.psi.transpose();
    a.psi_up = a.Psi * a.gi;
    a.stack = &s;
    return a;
}

inline double tr_real(const MatrixXc& m) { return m.trace().real(); }

/// Complex pointwise pairing of mixed rank-2 tensors, <A, B>_c = A_{k lbar} B^{k lbar}.
inline double pair_c(const StackAlgebra& a, const MatrixXc& A, const MatrixXc& B) {
    return (a.gi * A.transpose() * a.gi * B.transpose()).trace().real();
}

/// sum F4[p][q][k][l] X[p][q] Y[k][l] over all indices (raised arguments).
inline double contract_f4(const ComplexTensor& f4, const MatrixXc& X, const MatrixXc& Y) {
    const int n = X.rows();
    Complex acc(0.0, 0.0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) acc += f4(p, q, k, l) * X(p, q) * Y(k, l);
    return acc.real();
}

/// sum F4[p][k][l][q] X[p][q] Y[l][k] (the crossed-slot pattern).
inline double contract_f4_crossed(const ComplexTensor& f4, const MatrixXc& X, const MatrixXc& Y) {
    const int n = X.rows();
    Complex acc(0.0, 0.0);
    for (int p = 0; p < n; ++p)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int q = 0; q < n; ++q) acc += f4(p, k, l, q) * X(p, q) * Y(l, k);
    return acc.real();
}

/// Function Laplacian from the algebra: Delta f = -2 g^{k lbar} Hess_{k lbar} = -2 tr(H).
inline double laplacian_f(const StackAlgebra& a) { return -2.0 * tr_real(a.H); }

}  // namespace koiso::detail
