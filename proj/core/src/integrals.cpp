#include "koiso/integrals.hpp"

#include <stdexcept>

namespace koiso {

namespace {

void check_args(int n, int r) {
    if (n < 1) throw std::invalid_argument("closed_form_I: n >= 1 required");
    if (r < 0 || r > 3) throw std::invalid_argument("closed_form_I: r in 0..3 required");
}

}  // namespace

ExactValue closed_form_I_beta(int n, int r) {
    check_args(n, r);
    const unsigned un = static_cast<unsigned>(n);
    const unsigned ur = static_cast<unsigned>(r);
    // B(n+r, 4-r) = (n+r-1)! (3-r)! / (n+3)!
    Rational coeff(factorial(un + ur - 1) * factorial(3 - ur),
                   factorial(un - 1) * factorial(un + 3));
    return ExactValue(coeff, un);
}

ExactValue closed_form_I_table(int n, int r) {
    check_args(n, r);
    const unsigned un = static_cast<unsigned>(n);
    BigInt numer;
    switch (r) {
        case 0: numer = 6; break;
        case 1: numer = 2 * BigInt(n); break;
        case 2: numer = 2 * BigInt(n) + 2 * binomial(un, 2); break;
        default: numer = 6 * BigInt(n) + 12 * binomial(un, 2) + 6 * binomial(un, 3); break;
    }
    return ExactValue(Rational(numer, factorial(un + 3)), un);
}

ExactValue closed_form_I(int n, int r) {
    ExactValue beta = closed_form_I_beta(n, r);
    ExactValue table = closed_form_I_table(n, r);
    if (beta != table)
        throw std::logic_error("closed_form_I: Beta reduction and table form disagree");
    return beta;
}

ExactValue closed_form_f3_integral(int n) {
    if (n < 1) throw std::invalid_argument("closed_form_f3_integral: n >= 1 required");
    const Rational nn(n);
    ExactValue combo = closed_form_I(n, 3) - 3 * nn * closed_form_I(n, 2) +
                       3 * nn * nn * closed_form_I(n, 1) - nn * nn * nn * closed_form_I(n, 0);
    ExactValue direct(Rational(2 * BigInt(n) * (1 - BigInt(n) * BigInt(n)),
                               factorial(static_cast<unsigned>(n) + 3)),
                      static_cast<unsigned>(n));
    if (combo != direct)
        throw std::logic_error("closed_form_f3_integral: alternating combination disagrees with closed form");
    return direct;
}

ExactValue volume_cpn(int n) {
    if (n < 1) throw std::invalid_argument("volume_cpn: n >= 1 required");
    return ExactValue(Rational(1, factorial(static_cast<unsigned>(n))), static_cast<unsigned>(n));
}

ExactValue cubic_eigenfunction_constant(int n) {
    if (n < 1) throw std::invalid_argument("cubic_eigenfunction_constant: n >= 1 required");
    return ExactValue(Rational(2, factorial(static_cast<unsigned>(n) + 3)),
                      static_cast<unsigned>(n));
}

}  // namespace koiso
