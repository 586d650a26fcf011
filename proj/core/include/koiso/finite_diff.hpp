#pragma once

#include "koiso/point.hpp"

#include <functional>

namespace koiso {

// Fourth-order central-difference Wirtinger derivatives on the chart:
//   d/dw    = (d/dx - i d/dy) / 2,    d/dwbar = (d/dx + i d/dy) / 2.

using ScalarField = std::function<Complex(const Point&)>;

/// Fourth-order central stencil for a real-direction derivative of f along
/// x (dy=false) or y (dy=true) of coordinate `coord`.
Complex central_derivative(const ScalarField& f, const Point& p, int coord, bool dy, double h);

/// Wirtinger derivative of f at p with respect to w_coord (Holomorphic) or
/// wbar_coord (Antiholomorphic). Throws std::invalid_argument when the step
/// underflows double resolution at this point.
Complex wirtinger_derivative(const ScalarField& f, const Point& p, int coord, SlotType type,
                             double h);

/// Checks the step against double resolution at this point scale; throws
/// std::invalid_argument naming the offending value instead of clamping.
void check_step(double h, const Point& p);

}  // namespace koiso
