#pragma once

#include "koiso/fubini_study.hpp"
#include "koiso/lie_eigen.hpp"
#include "koiso/point.hpp"
#include "koiso/tensor.hpp"

#include <functional>
#include <optional>

namespace koiso {

using TensorField = std::function<ComplexTensor(const Point&)>;

/// One covariant derivative of a tensor field, by fourth-order Wirtinger
/// stencils on the components plus Christoffel corrections at the center
/// point. The new lower slot of `new_slot` type is PREPENDED to the field's
/// signature. Mixed-type Christoffel symbols vanish on a Kaehler manifold,
/// so corrections touch only slots matching the derivative type.
///
/// Points with |w| > 1e3 are rejected: all f_eta quantities underflow in the
/// decaying tail and stencils there measure nothing but rounding noise.
ComplexTensor covariant_derivative_generic(const TensorField& field, const Point& p,
                                           SlotType new_slot, double step);

// Closed forms for f_gamma -------------------------------------------------

/// mixed: (n+1)/(1+|w|^2)^2 (delta_{kl} - 2 wbar_k w_l/(1+|w|^2)); pure: 0.
std::pair<ComplexTensor, ComplexTensor> hessian_closed_gamma(const Point& p);

/// nabla_qbar nabla_k nabla_lbar f = -(g_{k lbar} (df)_qbar + g_{k qbar} (df)_lbar),
/// slots (anti, holo, anti).
ComplexTensor third_derivative_closed_gamma(const Point& p);

/// nabla_p nabla_qbar nabla_k nabla_lbar f =
///   -(g_{k lbar} Hess_{p qbar} + g_{k qbar} Hess_{p lbar}),
/// slots (holo, anti, holo, anti).
ComplexTensor fourth_derivative_closed_gamma(const Point& p);

// Derivative stack ----------------------------------------------------------

enum class StackMethod { ClosedGamma, NumericEngine };

/// All covariant derivatives of f_eta at one point, up to the requested
/// order. ClosedGamma uses the explicit formulas (eta must be gamma);
/// NumericEngine differentiates the analytic gradient with nested stencils,
/// steps growing outward so each level's rounding noise stays below the next
/// level's truncation error.
struct DerivativeStack {
    Point at;
    double f = 0.0;
    ComplexTensor grad;        // (holo)
    ComplexTensor grad_anti;   // (anti), conjugate components
    ComplexTensor hess_mixed;  // (holo, anti), Hermitian
    ComplexTensor hess_pure;   // (holo, holo), symmetric; zero on E_1
    ComplexTensor third;       // (anti, holo, anti)
    ComplexTensor fourth;      // (holo, anti, holo, anti)

    DerivativeStack(int n, const Point& p);
};

DerivativeStack build_stack(const TracelessHermitian& eta, const Point& p, StackMethod method,
                            int max_order = 4);

/// Rough tensor Laplacian of the Hessian: -2 g^{p qbar} nabla_p nabla_qbar Hess f.
/// For f_gamma this equals 2(Hess f - (n+1) f g).
ComplexTensor rough_laplacian_hessian(const TracelessHermitian& eta, const Point& p,
                                      StackMethod method);

/// Positive function Laplacian from a stack: -2 g^{k lbar} nabla_k nabla_lbar f.
/// Satisfies Delta f_eta = 2(n+1) f_eta.
double laplacian_scalar(const DerivativeStack& stack);

/// Step schedule for nested differentiation: `level` counts stencil layers
/// between this derivative and analytically evaluable data (level 1 sits
/// directly on an analytic field).
double engine_step(int level, const Point& p);

}  // namespace koiso
