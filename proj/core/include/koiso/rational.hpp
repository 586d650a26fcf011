#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace koiso {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned k);

/// Binomial coefficient; zero when k > n, so small-n edge cases in the
/// integral tables fall out automatically.
BigInt binomial(unsigned n, unsigned k);

/// An exact number of the form q * pi^p with q rational and p >= 0.
///
/// Arithmetic never leaves the exact domain: sums require matching pi
/// powers (a zero value is compatible with any power), products add the
/// powers. Conversion to double happens only at reporting boundaries.
class ExactValue {
public:
    ExactValue() : coeff_(0), pi_pow_(0) {}
    ExactValue(Rational coeff, unsigned pi_power);

    static ExactValue zero() { return ExactValue(); }

    const Rational& coeff() const { return coeff_; }
    unsigned pi_power() const { return pi_pow_; }
    bool is_zero() const { return coeff_ == 0; }

    ExactValue& operator+=(const ExactValue& other);
    ExactValue& operator-=(const ExactValue& other);
    ExactValue& operator*=(const ExactValue& other);

    friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
    friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
    friend ExactValue operator*(ExactValue a, const ExactValue& b) { return a *= b; }
    friend ExactValue operator*(const Rational& s, ExactValue v) {
        v.coeff_ *= s;
        v.normalize();
        return v;
    }
    friend ExactValue operator-(ExactValue v) {
        v.coeff_ = -v.coeff_;
        return v;
    }

    friend bool operator==(const ExactValue& a, const ExactValue& b) {
        return a.coeff_ == b.coeff_ && a.pi_pow_ == b.pi_pow_;
    }
    friend bool operator!=(const ExactValue& a, const ExactValue& b) { return !(a == b); }

    double to_double() const;

    /// "p/q" (or plain "p" for integers), suitable for lossless archival.
    std::string coeff_string() const;
    /// Human-readable rendering, e.g. "-1/10 * pi^2".
    std::string to_string() const;

    /// Inverse of coeff_string/pi_power; throws std::invalid_argument on
    /// malformed input.
    static ExactValue parse(const std::string& coeff, unsigned pi_power);

private:
    void normalize();

    Rational coeff_;
    unsigned pi_pow_;  // forced to 0 when coeff_ == 0
};

}  // namespace koiso
