#include "curvlab/rational_function.hpp"

#include "curvlab/errors.hpp"

namespace curvlab {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    canonicalize();
}

void RationalFunction::canonicalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(Rational(1));
        return;
    }
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    const Rational lead = den_.leading();
    if (lead != Rational(1)) {
        const Rational inv = Rational(1) / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Rational RationalFunction::operator()(const Rational& x) const {
    const Rational d = den_(x);
    if (d.is_zero()) throw PoleError(str(), x.str());
    return num_(x) / d;
}

double RationalFunction::operator()(double x) const { return num_(x) / den_(x); }

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction operator+(const RationalFunction& f, const RationalFunction& g) {
    if (f.den_ == g.den_) return RationalFunction(f.num_ + g.num_, f.den_);
    return RationalFunction(f.num_ * g.den_ + g.num_ * f.den_, f.den_ * g.den_);
}

RationalFunction operator-(const RationalFunction& f, const RationalFunction& g) { return f + (-g); }

RationalFunction operator*(const RationalFunction& f, const RationalFunction& g) {
    return RationalFunction(f.num_ * g.num_, f.den_ * g.den_);
}

RationalFunction operator/(const RationalFunction& f, const RationalFunction& g) {
    if (g.is_zero()) throw DivisionByZero("division by the zero rational function");
    return RationalFunction(f.num_ * g.den_, f.den_ * g.num_);
}

std::string RationalFunction::str(const std::string& var) const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RationalFunction pow(const RationalFunction& f, unsigned exponent) {
    RationalFunction result(1);
    for (unsigned i = 0; i < exponent; ++i) result *= f;
    return result;
}

}  // namespace curvlab
