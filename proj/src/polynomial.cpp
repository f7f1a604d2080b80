#include "curvlab/polynomial.hpp"

#include "curvlab/errors.hpp"

#include <algorithm>
#include <sstream>

namespace curvlab {

namespace {

void check_degree(std::size_t coefficient_count) {
    if (coefficient_count > static_cast<std::size_t>(kDegreeCap) + 1)
        throw DegreeOverflow("polynomial degree " + std::to_string(coefficient_count - 1) +
                             " exceeds cap " + std::to_string(kDegreeCap));
}

}  // namespace

Polynomial::Polynomial(const Rational& constant) {
    if (!constant.is_zero()) coeffs_.push_back(constant);
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
    check_degree(coeffs_.size());
}

Polynomial Polynomial::variable() { return Polynomial({Rational(0), Rational(1)}); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::coefficient(int power) const {
    if (power < 0 || power > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(power)];
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    return scaled(Rational(1) / leading());
}

Polynomial Polynomial::scaled(const Rational& factor) const {
    if (factor.is_zero()) return {};
    Polynomial out = *this;
    for (auto& c : out.coeffs_) c *= factor;
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    check_degree(a.coeffs_.size() + b.coeffs_.size() - 1);
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by the zero polynomial");
    std::vector<Rational> rem = a.coefficients();
    const int db = b.degree();
    const Rational lead_inv = Rational(1) / b.leading();
    if (a.degree() < db) return {Polynomial(), a};

    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i) {
        const Rational factor = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (factor.is_zero()) continue;
        quot[static_cast<std::size_t>(i - db)] = factor;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coefficients()[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    // Monic normalization at every step keeps coefficient growth bounded.
    Polynomial x = a.monic();
    Polynomial y = b.monic();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second.monic();
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        const Rational mag = abs(c);
        if (i == 0 || mag != Rational(1)) {
            os << (mag.is_integer() ? mag.str() : "(" + mag.str() + ")");
            if (i > 0) os << "*";
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace curvlab
