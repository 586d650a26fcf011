#pragma once

#include "koiso/point.hpp"
#include "koiso/tensor.hpp"

namespace koiso {

// Closed-form evaluators for the Fubini-Study metric on the affine chart of
// CP^n, scaled so that Ric = (n+1) g. All formulas are smooth on the whole
// chart; the evaluators are pure and thread-safe.

/// g_{k lbar} = (delta_{kl} - wbar_k w_l / (1+|w|^2)) / (1+|w|^2)
ComplexTensor metric_at(const Point& p);

/// g^{k lbar} = (1+|w|^2)(delta_{kl} + w_k wbar_l)
ComplexTensor inverse_metric_at(const Point& p);

/// Density of dV_g relative to the coordinate volume element
/// prod (i/2) dw ^ dwbar, i.e. (1+|w|^2)^{-(n+1)}. Equals det g_{k lbar}.
double volume_density_at(const Point& p);

/// Gamma^k_{ij} = -(delta_{jk} wbar_i + delta_{ik} wbar_j) / (1+|w|^2),
/// slots (upper holo, lower holo, lower holo). Mixed-type symbols vanish.
ComplexTensor christoffel_at(const Point& p);

/// The constant mixed-index curvature Rm_i^j_k^l = d_i^j d_k^l + d_i^l d_k^j,
/// slots (lower holo, upper holo, lower holo, upper holo).
ComplexTensor curvature_closed_form(int n);

/// Fully lowered curvature R_{i jbar k lbar} computed from the metric by
/// finite differences:
///   R = -d_i dbar_j g_{k lbar} + g^{p qbar} (d_i g_{k qbar})(dbar_j g_{p lbar}).
/// Cross-check path for curvature_closed_form; throws on step underflow.
ComplexTensor curvature_from_metric(const Point& p);

/// Ric_{k lbar} = (n+1) g_{k lbar}
ComplexTensor ricci_at(const Point& p);

/// Ricci obtained by tracing curvature_from_metric with g^{-1}; agrees with
/// ricci_at to finite-difference accuracy.
ComplexTensor ricci_from_curvature(const Point& p);

/// Everything needed at one point, bundled.
struct MetricBundle {
    ComplexTensor g;
    ComplexTensor g_inv;
    double vol_density;
    ComplexTensor christoffel;
    Point at;
};

MetricBundle bundle_at(const Point& p);

// Dense matrix views of the rank-2 objects for contraction-heavy callers.
MatrixXc metric_matrix(const Point& p);
MatrixXc inverse_metric_matrix(const Point& p);

}  // namespace koiso
