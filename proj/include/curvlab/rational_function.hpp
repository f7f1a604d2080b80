#pragma once

#include "curvlab/polynomial.hpp"

#include <string>

namespace curvlab {

/// Exact quotient num/den of polynomials in U, always stored reduced
/// (gcd(num, den) constant) with a monic denominator, so two rational
/// functions are equal iff their representations match.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(const Rational& constant)  // NOLINT(google-explicit-constructor)
        : num_(constant), den_(Rational(1)) {}
    RationalFunction(long constant) : RationalFunction(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(const Polynomial& p)  // NOLINT(google-explicit-constructor)
        : num_(p), den_(Rational(1)) {}
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

    /// Exact value; throws PoleError when den(x) = 0.
    Rational operator()(const Rational& x) const;
    /// Floating-point value (no pole check beyond IEEE semantics).
    double operator()(double x) const;

    RationalFunction derivative() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& f, const RationalFunction& g);
    friend RationalFunction operator-(const RationalFunction& f, const RationalFunction& g);
    friend RationalFunction operator*(const RationalFunction& f, const RationalFunction& g);
    friend RationalFunction operator/(const RationalFunction& f, const RationalFunction& g);
    friend bool operator==(const RationalFunction& f, const RationalFunction& g) = default;

    RationalFunction& operator+=(const RationalFunction& g) { return *this = *this + g; }
    RationalFunction& operator-=(const RationalFunction& g) { return *this = *this - g; }
    RationalFunction& operator*=(const RationalFunction& g) { return *this = *this * g; }
    RationalFunction& operator/=(const RationalFunction& g) { return *this = *this / g; }

    std::string str(const std::string& var = "U") const;

private:
    void canonicalize();
    Polynomial num_;
    Polynomial den_;
};

RationalFunction pow(const RationalFunction& f, unsigned exponent);

}  // namespace curvlab
