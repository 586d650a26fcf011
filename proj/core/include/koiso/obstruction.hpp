#pragma once

#include "koiso/covariant.hpp"
#include "koiso/identities.hpp"
#include "koiso/lie_eigen.hpp"
#include "koiso/monte_carlo.hpp"
#include "koiso/rational.hpp"

#include <optional>
#include <string>

namespace koiso {

/// The deformation h = psi + phi on CP^n x CP^1 attached to eta, with
///   psi = Hess f_eta + (n+1) f_eta g_1   (CP^n block),
///   phi = (1-n)(n+1) f_eta g_0           (CP^1 block),
/// and Einstein constant lambda = n+1. CP^1 never needs coordinates: every
/// integrand is constant along it and its traces contribute the real
/// dimension 2. All L^2 pairings are per unit CP^1 volume.
struct DeformationSpec {
    int n;
    TracelessHermitian eta;

    int lambda() const { return n + 1; }
};

enum class ObstructionTerm { Cubic, Outer, Crossed };

/// Complex-to-real conversion factor for each obstruction pairing:
/// cubic 2, outer 4, crossed 2.
int conversion_factor(ObstructionTerm term);

// Closed values (eta = gamma). Each routine evaluates two independent exact
// routes -- the term-level coefficient formula and the complex-coordinate
// integrand reduction to the radial table -- and throws std::logic_error if
// they ever disagree.

/// <h_ik h^k_j, h_ij>_L2 = -(2n^3 - 6n^2 + 4n + 3)(n+1)^3 int f^3
ExactValue zeroth_order_closed(int n);
/// <D_iD_j h_kl, h_ij h_kl>_L2 = -2(n+1)^3 (2n^3 - 4n + 1) int f^3
ExactValue second_order_outer_closed(int n);
/// <D_iD_l h_kj, h_ij h_kl>_L2 = ((n+1)^4 - 3(n+1)^3) int f^3
ExactValue second_order_crossed_closed(int n);

struct ObstructionMC {
    MCEstimate cubic;
    MCEstimate outer;
    MCEstimate crossed;
    MCEstimate total;  // 2(n+1) cubic + 3 outer - 6 crossed, same sample stream
};

/// Monte Carlo evaluation of all three terms (and their combination) over a
/// shared sample stream. For eta = gamma the integrands are closed-form
/// polynomials in |w|^2; otherwise each sample builds a numeric derivative
/// stack through fourth order.
ObstructionMC obstruction_mc(const DeformationSpec& spec, const MCConfig& config);

/// Pointwise integrands {cubic, outer, crossed, total} built from a
/// derivative stack, conversion factors and the algebraic CP^1 block
/// included; the Monte Carlo path integrates exactly these. For closed
/// gamma stacks they agree with the closed-form polynomials to rounding.
std::array<double, 4> obstruction_integrands(const DerivativeStack& stack);

struct ObstructionResult {
    int n = 0;
    std::string eta_label;
    CheckMethod method{};
    double term_cubic = 0.0;
    double term_outer = 0.0;
    double term_crossed = 0.0;
    double total = 0.0;
    std::optional<double> sigma_total;
    std::optional<ExactValue> exact_cubic, exact_outer, exact_crossed, exact_total;
    ExactValue closed_total;  // -4n(n-1)(n+1)^5 int f^3
    bool pass = false;
    std::string note;
};

/// Closed evaluation: the three terms recombine exactly into
/// -4n(n-1)(n+1)^5 int f^3 (verified as rationals, not floats).
ObstructionResult koiso_obstruction_closed(int n);

/// Stochastic evaluation against the closed total; pass means agreement
/// within sigma_tol standard errors.
ObstructionResult koiso_obstruction_mc(const DeformationSpec& spec, const MCConfig& config,
                                       double sigma_tol = 3.0);

struct RemarkCheck {
    ExactValue ours;   // (1/2) * (-4n(n-1)(n+1)^5), coefficient of int f^3
    ExactValue koiso;  // -(2n-2)(2n)(2n+2)/4 * (n+1)^4, the classical constant
    bool equal = false;
};

/// Exact comparison of this computation against the classical obstruction
/// constant for the product metric.
RemarkCheck koiso_remark_crosscheck(int n);

}  // namespace koiso
