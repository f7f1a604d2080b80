#include "curvlab/rational.hpp"

#include "curvlab/errors.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace curvlab {

Rational::Rational(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw ArgumentError("cannot convert non-finite double to Rational");
    return Rational(mpq_class(value));
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t first = 0;
    while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
    s = s.substr(first);
    if (s.empty()) throw ArgumentError("empty rational literal");

    const auto bad = [&] { return ArgumentError("malformed rational literal '" + s + "'"); };

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw bad();
        if (den == 0) throw DivisionByZero("rational literal with zero denominator: " + s);
        mpq_class q(num, den);
        q.canonicalize();
        return Rational(q);
    }

    // Decimal: [sign] digits [. digits] [e [sign] digits]
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        seen_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            digits += s[i];
            --scale;
            seen_digit = true;
        }
    }
    if (!seen_digit) throw bad();
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) exp_negative = s[i++] == '-';
        if (i >= s.size()) throw bad();
        long e = 0;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            e = e * 10 + (s[i] - '0');
            if (e > 10000) throw bad();
        }
        scale += exp_negative ? -e : e;
    }
    if (i != s.size()) throw bad();

    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(mantissa, ten_pow) : mpq_class(mantissa * ten_pow);
    q.canonicalize();
    return Rational(q);
}

long double Rational::to_long_double() const {
    // Split off the integer part so large values keep their leading digits.
    mpz_class whole = q_.get_num() / q_.get_den();
    mpq_class frac = q_ - mpq_class(whole);
    return static_cast<long double>(whole.get_d()) + static_cast<long double>(frac.get_d());
}

Rational& Rational::operator+=(const Rational& rhs) {
    q_ += rhs.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    q_ -= rhs.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    q_ *= rhs.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw DivisionByZero("rational division by zero");
    q_ /= rhs.q_;
    return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, unsigned exponent) {
    Rational result(1);
    Rational base = x;
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace curvlab
