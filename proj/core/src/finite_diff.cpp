#include "koiso/finite_diff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace koiso {

void check_step(double h, const Point& p) {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * p.fd_scale();
    if (!(h > floor))
        throw std::invalid_argument("finite difference step underflow: h = " + std::to_string(h) +
                                    " at point scale " + std::to_string(p.fd_scale()));
}

Complex central_derivative(const ScalarField& f, const Point& p, int coord, bool dy, double h) {
    check_step(h, p);
    auto eval = [&](double s) {
        return dy ? f(shifted(p, coord, 0.0, s)) : f(shifted(p, coord, s, 0.0));
    };
    const Complex f1 = eval(h), fm1 = eval(-h), f2 = eval(2.0 * h), fm2 = eval(-2.0 * h);
    return (8.0 * (f1 - fm1) - (f2 - fm2)) / (12.0 * h);
}

Complex wirtinger_derivative(const ScalarField& f, const Point& p, int coord, SlotType type,
                             double h) {
    const Complex dx = central_derivative(f, p, coord, /*dy=*/false, h);
    const Complex dyv = central_derivative(f, p, coord, /*dy=*/true, h);
    const Complex i(0.0, 1.0);
    return type == SlotType::Holomorphic ? 0.5 * (dx - i * dyv) : 0.5 * (dx + i * dyv);
}

}  // namespace koiso
