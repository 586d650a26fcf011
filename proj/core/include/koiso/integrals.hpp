#pragma once

#include "koiso/rational.hpp"

namespace koiso {

// Exact rational values of the radial integrals over the chart,
//   I_n^r = int_{C^n} |w|^{2r} / (1+|w|^2)^{n+4}  d(Leb),
// as rational multiples of pi^n.

/// Beta-function reduction: I_n^r = pi^n/(n-1)! * B(n+r, 4-r).
ExactValue closed_form_I_beta(int n, int r);

/// The combinatorial table form: 6, 2n, 2n+2C(n,2), 6n+12C(n,2)+6C(n,3),
/// all over (n+3)!.
ExactValue closed_form_I_table(int n, int r);

/// Both routes, checked for exact agreement; throws std::invalid_argument
/// for n < 1 or r outside 0..3, std::logic_error if the routes disagree.
ExactValue closed_form_I(int n, int r);

/// int f_gamma^3 dV = I^3 - 3n I^2 + 3n^2 I^1 - n^3 I^0
///                  = 2n(1-n^2) pi^n / (n+3)!,
/// both routes computed and compared exactly.
ExactValue closed_form_f3_integral(int n);

/// Vol(CP^n) = pi^n / n! under this volume normalization.
ExactValue volume_cpn(int n);

/// int f_eta^3 dV = c_n tr(eta^3) with c_n = 2 pi^n / (n+3)!; the constant
/// is fixed by evaluating at eta = gamma, where tr(gamma^3) = n(1-n^2).
ExactValue cubic_eigenfunction_constant(int n);

}  // namespace koiso
