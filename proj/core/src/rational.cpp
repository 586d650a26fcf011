#include "koiso/rational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace koiso {

BigInt factorial(unsigned k) {
    BigInt out = 1;
    for (unsigned i = 2; i <= k; ++i) out *= i;
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (unsigned i = 0; i < k; ++i) {
        out *= (n - i);
        out /= (i + 1);  // exact at every step: product of j consecutive integers is divisible by j!
    }
    return out;
}

ExactValue::ExactValue(Rational coeff, unsigned pi_power)
    : coeff_(std::move(coeff)), pi_pow_(pi_power) {
    normalize();
}

void ExactValue::normalize() {
    if (coeff_ == 0) pi_pow_ = 0;
}

ExactValue& ExactValue::operator+=(const ExactValue& other) {
    if (other.coeff_ == 0) return *this;
    if (coeff_ == 0) {
        *this = other;
        return *this;
    }
    if (pi_pow_ != other.pi_pow_)
        throw std::invalid_argument("ExactValue: sum of different pi powers is not representable");
    coeff_ += other.coeff_;
    normalize();
    return *this;
}

ExactValue& ExactValue::operator-=(const ExactValue& other) { return *this += -other; }

ExactValue& ExactValue::operator*=(const ExactValue& other) {
    coeff_ *= other.coeff_;
    pi_pow_ += other.pi_pow_;
    normalize();
    return *this;
}

double ExactValue::to_double() const {
    return coeff_.convert_to<double>() * std::pow(std::numbers::pi, static_cast<double>(pi_pow_));
}

std::string ExactValue::coeff_string() const {
    const BigInt num = boost::multiprecision::numerator(coeff_);
    const BigInt den = boost::multiprecision::denominator(coeff_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string ExactValue::to_string() const {
    if (pi_pow_ == 0) return coeff_string();
    std::string s = coeff_string() + " * pi";
    if (pi_pow_ > 1) s += "^" + std::to_string(pi_pow_);
    return s;
}

ExactValue ExactValue::parse(const std::string& coeff, unsigned pi_power) {
    try {
        return ExactValue(Rational(coeff), pi_power);
    } catch (const std::exception&) {
        throw std::invalid_argument("ExactValue: cannot parse rational '" + coeff + "'");
    }
}

}  // namespace koiso
