#include "curvlab/ansatz_family.hpp"

#include "curvlab/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace curvlab {

namespace {

Rational R(long v) { return Rational(v); }

RationalFunction linear(const Rational& c0, const Rational& c1) { return RationalFunction(Polynomial({c0, c1})); }

}  // namespace

void validate(const FamilyParams& params) {
    if (params.n < 2) throw ArgumentError("n must be at least 2 (got " + std::to_string(params.n) + ")");
    if (params.k < 1) throw ArgumentError("k must be at least 1 (got " + std::to_string(params.k) + ")");
    if (params.t1.sign() >= 0) throw ArgumentError("t1 must be negative (got " + params.t1.str() + ")");
}

std::string describe(const FamilyParams& params) {
    std::ostringstream os;
    os << "(n=" << params.n << ", k=" << params.k << ", t1=" << params.t1 << ")";
    return os.str();
}

AnsatzCoefficients derive_coefficients(const FamilyParams& params) {
    if (params.n < 2) throw ArgumentError("n must be at least 2");
    if (params.k < 1) throw ArgumentError("k must be at least 1");
    if (params.t1.is_zero()) throw DegenerateAnsatz("t1 = 0 forces ad - bc = 0: psi would be constant");

    const Rational n(params.n);
    const Rational k(params.k);
    AnsatzCoefficients out;
    out.a = R(2) * n + R(2) * params.t1;
    out.b = R(2) * k;
    const Rational& a = out.a;
    const Rational& b = out.b;

    // Unknowns (c, d):
    //   -2k c + 2n d = -(a k^3 - b n k^2)
    //   -2b c + 2a d = b (a k - b n)
    const Rational m11 = R(-2) * k, m12 = R(2) * n;
    const Rational m21 = R(-2) * b, m22 = R(2) * a;
    const Rational r1 = -(a * k * k * k - b * n * k * k);
    const Rational r2 = b * (a * k - b * n);
    const Rational det = m11 * m22 - m12 * m21;
    if (det.is_zero()) throw DegenerateAnsatz("singular coefficient system");
    out.c = (r1 * m22 - m12 * r2) / det;
    out.d = (m11 * r2 - r1 * m21) / det;
    if (out.determinant().is_zero()) throw DegenerateAnsatz("ad - bc = 0");
    return out;
}

RationalFunction psi_function(const AnsatzCoefficients& coeffs) {
    return linear(coeffs.a, coeffs.b) / linear(coeffs.c, coeffs.d);
}

RationalFunction PhiFamily::base_factor() const {
    return linear(Rational(params_.n), Rational(params_.k));
}

RationalFunction PhiFamily::v_function() const {
    const Rational n(params_.n), k(params_.k);
    return linear((k + R(1)) * n + k * params_.t1, (k + R(1)) * k);
}

Rational PhiFamily::v(const Rational& u) const {
    const Rational n(params_.n), k(params_.k);
    return (k + R(1)) * (n + k * u) + k * params_.t1;
}

double PhiFamily::v(double u) const {
    const double n = params_.n, k = params_.k;
    return (k + 1.0) * (n + k * u) + k * params_.t1.to_double();
}

PhiFamily build_phi(const FamilyParams& params) {
    validate(params);
    const Rational n(params.n), k(params.k);
    const RationalFunction base = linear(n, k);
    const RationalFunction shifted = linear(n + params.t1, k);
    const RationalFunction v = linear((k + R(1)) * n + k * params.t1, (k + R(1)) * k);
    RationalFunction phi = (RationalFunction(R(2)) * base * shifted) / (RationalFunction(k) * v);

    const RationalFunction from_ansatz = base * psi_function(derive_coefficients(params));
    if (from_ansatz != phi)
        throw InconsistentFamily("closed-form phi disagrees with the derived Ansatz for " + describe(params));

    Rational u_min = -(n + params.t1) / k;
    if (!(u_min > -n / k)) throw InconsistentFamily("U_min must exceed -n/k");
    if (!phi(u_min).is_zero() || phi.derivative()(u_min) != R(2))
        throw InconsistentFamily("boundary values phi(U_min)=0, phi'(U_min)=2 fail for " + describe(params));
    return PhiFamily(params, std::move(phi), std::move(u_min));
}

RationalFunction psieq_residual(const FamilyParams& params, const AnsatzCoefficients& coeffs) {
    const Rational k(params.k);
    const RationalFunction psi = psi_function(coeffs);
    const RationalFunction d1 = psi.derivative();
    const RationalFunction d2 = d1.derivative();
    const RationalFunction base = linear(Rational(params.n), k);
    return RationalFunction(R(2)) * d1 * d1 -
           (RationalFunction(R(2) * k) / base * d1 + d2) * (psi - RationalFunction(R(2) / (k * k)));
}

RationalFunction psieq_residual(const FamilyParams& params) {
    validate(params);
    return psieq_residual(params, derive_coefficients(params));
}

ConditionReport check_conditions(const PhiFamily& family, const std::vector<Rational>& grid) {
    for (const auto& u : grid)
        if (!(u > family.u_min()))
            throw DomainError("grid point " + u.str() + " is not above U_min = " + family.u_min().str());

    const auto& p = family.params();
    const Rational k(p.k), n(p.n);
    const RationalFunction& phi = family.phi();
    const RationalFunction d1 = phi.derivative();
    const RationalFunction d2 = d1.derivative();
    const RationalFunction base = family.base_factor();
    const RationalFunction v = family.v_function();

    ConditionReport report;
    report.grid_points = grid.size();

    report.phi_second_derivative_identity =
        d2 == RationalFunction(R(-4) * k * k * p.t1 * p.t1) / pow(v, 3);

    const RationalFunction half(Rational(1, 2));
    const RationalFunction shifted = linear(n + p.t1, k);
    report.antiderivative_identity =
        half * (RationalFunction(k * k) / base + RationalFunction(k) / shifted) == RationalFunction(R(1)) / phi;

    const RationalFunction gap = phi - RationalFunction(R(2) / (k * k)) * base;
    report.gap_identity = gap == RationalFunction(R(-2)) * base * base / (RationalFunction(k * k) * v);

    // (k phi/(n+kU) - phi')^2 = (-phi''/2) ((2/k^2)(n+kU) - phi),  with the left factor <= 0.
    const RationalFunction lhs_root = RationalFunction(k) * phi / base - d1;
    report.equality_form_identity = lhs_root * lhs_root == (-half * d2) * (-gap);

    report.phi_positive = report.v_positive = report.gap_negative = report.equality_form_sign = true;
    for (const auto& u : grid) {
        report.phi_positive = report.phi_positive && phi(u).sign() > 0;
        report.v_positive = report.v_positive && v(u).sign() > 0;
        report.gap_negative = report.gap_negative && gap(u).sign() < 0;
        report.equality_form_sign = report.equality_form_sign && lhs_root(u).sign() <= 0;
    }
    return report;
}

std::vector<Rational> default_grid(const PhiFamily& family, int count) {
    if (count < 2) throw ArgumentError("grid needs at least two points");
    std::vector<Rational> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double exponent = -3.0 + 7.0 * i / (count - 1);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", std::pow(10.0, exponent));
        grid.push_back(family.u_min() + Rational::parse(buf));
    }
    return grid;
}

double inverse_phi_antiderivative(const PhiFamily& family, double u) {
    const auto& p = family.params();
    const double base = p.n + p.k * u;
    return 0.5 * (p.k * std::log(base) + std::log(base + p.t1.to_double()));
}

double inverse_phi_integral(const PhiFamily& family, double u_from, double u_to) {
    if (u_to <= u_from) return 0.0;
    // Substituting U = u_from + e^x - 1 spreads the 1/U tail evenly.
    const auto integrand = [&](double x) {
        const double u = u_from + std::expm1(x);
        return std::exp(x) / family.phi_at(u);
    };
    const double x_hi = std::log1p(u_to - u_from);
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, 0.0, x_hi, 20, 1e-14, &error);
    return value;
}

std::vector<GrowthSample> fiber_growth(const PhiFamily& family, const Rational& u0,
                                       const std::vector<double>& s_targets, GrowthOptions options) {
    namespace ode = boost::numeric::odeint;
    if (!(u0 > family.u_min())) throw DomainError("u0 must lie above U_min");
    if (s_targets.empty() || s_targets.front() != 0.0) throw ArgumentError("s_targets must start at 0");
    for (std::size_t i = 1; i < s_targets.size(); ++i)
        if (!(s_targets[i] > s_targets[i - 1])) throw ArgumentError("s_targets must be increasing");

    using State = std::array<double, 2>;  // U(s), integral of phi
    const auto rhs = [&family](const State& x, State& dxds, double /*s*/) {
        const double phi = family.phi_at(x[0]);
        dxds[0] = 2.0 * phi;
        dxds[1] = phi;
    };

    std::vector<GrowthSample> out;
    out.reserve(s_targets.size());
    const auto observe = [&out](const State& x, double s) { out.push_back({s, x[0], x[1]}); };

    State x{u0.to_double(), 0.0};
    auto stepper = ode::make_controlled(options.abs_tol, options.rel_tol, ode::runge_kutta_fehlberg78<State>());
    try {
        ode::integrate_times(stepper, rhs, x, s_targets.begin(), s_targets.end(), 1e-4, observe,
                             ode::max_step_checker(static_cast<int>(options.max_steps)));
    } catch (const std::exception& e) {
        throw IntegrationError(std::string("fiber ODE integration failed: ") + e.what());
    }

    if (out.size() != s_targets.size()) throw IntegrationError("integrator skipped output times");
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(out[i].u) || !std::isfinite(out[i].phi_integral))
            throw IntegrationError("non-finite state at s = " + std::to_string(out[i].s));
        if (i > 0 && !(out[i].u > out[i - 1].u))
            throw IntegrationError("U(s) failed to increase at s = " + std::to_string(out[i].s));
    }
    return out;
}

}  // namespace curvlab
