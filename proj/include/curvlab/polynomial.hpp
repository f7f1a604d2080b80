#pragma once

#include "curvlab/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

/// Largest degree any Polynomial may reach. Every identity checked by this
/// library stays far below it; hitting it signals an expression blowup.
inline constexpr int kDegreeCap = 64;

/// Univariate polynomial in U with exact rational coefficients, lowest degree
/// first. The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
    Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(std::initializer_list<Rational> coefficients)
        : Polynomial(std::vector<Rational>(coefficients)) {}

    /// The monomial U.
    static Polynomial variable();

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Rational leading() const;
    Rational coefficient(int power) const;

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    Polynomial derivative() const;
    Polynomial monic() const;
    Polynomial scaled(const Rational& factor) const;

    Polynomial operator-() const { return scaled(Rational(-1)); }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    std::string str(const std::string& var = "U") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Euclidean division: a = quotient * b + remainder with deg remainder < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace curvlab
