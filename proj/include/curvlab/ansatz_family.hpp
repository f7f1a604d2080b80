#pragma once

/**
 * @file ansatz_family.hpp
 * @brief The one-parameter family of generating functions phi(U).
 *
 * For the total space of O(-k) over P^{n-1} a U(n)-invariant Kähler metric is
 * encoded by phi(U) on [U_min, inf). The family solves the zero-discriminant
 * ODE through the Ansatz psi = phi/(n+kU) = (a+bU)/(c+dU) and reads
 *
 *     phi(U) = 2(n+kU)(n+t1+kU) / (k((k+1)(n+kU) + k t1)),     t1 < 0,
 *
 * with U_min = -(n+t1)/k and V(U) = (k+1)(n+kU) + k t1 >= -t1 > 0 on the domain.
 */

#include "curvlab/rational.hpp"
#include "curvlab/rational_function.hpp"

#include <string>
#include <vector>

namespace curvlab {

struct FamilyParams {
    int n = 2;
    int k = 1;
    Rational t1{-1};
};

/// Throws ArgumentError unless n >= 2, k >= 1 and t1 < 0.
void validate(const FamilyParams& params);

std::string describe(const FamilyParams& params);

struct AnsatzCoefficients {
    Rational a, b, c, d;

    Rational determinant() const { return a * d - b * c; }
};

/// Fixes a = 2n + 2t1, b = 2k and solves the two linear conditions (the
/// numerator identity a k^3 - b n k^2 - 2ck + 2dn = 0 and phi'(U_min) = 2)
/// exactly for c and d. Throws DegenerateAnsatz when t1 = 0.
AnsatzCoefficients derive_coefficients(const FamilyParams& params);

/// psi(U) = (a + bU)/(c + dU).
RationalFunction psi_function(const AnsatzCoefficients& coeffs);

class PhiFamily {
public:
    const FamilyParams& params() const noexcept { return params_; }
    const RationalFunction& phi() const noexcept { return phi_; }
    const Rational& u_min() const noexcept { return u_min_; }

    /// n + kU.
    RationalFunction base_factor() const;
    /// V(U) = (k+1)(n+kU) + k t1.
    RationalFunction v_function() const;
    Rational v(const Rational& u) const;
    double v(double u) const;

    Rational phi_at(const Rational& u) const { return phi_(u); }
    double phi_at(double u) const { return phi_(u); }

private:
    friend PhiFamily build_phi(const FamilyParams& params);
    PhiFamily(FamilyParams params, RationalFunction phi, Rational u_min)
        : params_(std::move(params)), phi_(std::move(phi)), u_min_(std::move(u_min)) {}

    FamilyParams params_;
    RationalFunction phi_;
    Rational u_min_;
};

/// Builds phi from its closed form and checks it against the Ansatz derived by
/// derive_coefficients and the boundary values phi(U_min) = 0, phi'(U_min) = 2.
PhiFamily build_phi(const FamilyParams& params);

/// 2 psi'^2 - (2k/(n+kU) psi' + psi'') (psi - 2/k^2) for psi built from coeffs.
RationalFunction psieq_residual(const FamilyParams& params, const AnsatzCoefficients& coeffs);
RationalFunction psieq_residual(const FamilyParams& params);

struct ConditionReport {
    // positivity and convexity
    bool phi_positive = false;
    bool v_positive = false;
    bool phi_second_derivative_identity = false;  // phi'' = -4k^2 t1^2 / V^3
    // antiderivative of 1/phi
    bool antiderivative_identity = false;  // (1/2)(k^2/(n+kU) + k/(n+kU+t1)) = 1/phi
    // gap below (2/k^2)(n+kU)
    bool gap_identity = false;  // phi - (2/k^2)(n+kU) = -2(n+kU)^2/(k^2 V)
    bool gap_negative = false;
    // Zero-discriminant form of the second gap inequality.
    bool equality_form_identity = false;
    bool equality_form_sign = false;
    std::size_t grid_points = 0;

    bool all() const {
        return phi_positive && v_positive && phi_second_derivative_identity && antiderivative_identity &&
               gap_identity && gap_negative && equality_form_identity && equality_form_sign;
    }
};

/// Grid points must lie strictly above U_min (DomainError otherwise).
ConditionReport check_conditions(const PhiFamily& family, const std::vector<Rational>& grid);

/// `count` points log-spaced in (U_min, U_min + 10^4].
std::vector<Rational> default_grid(const PhiFamily& family, int count = 32);

/// (1/2)(k log(n+kU) + log(n+kU+t1)), an antiderivative of 1/phi.
double inverse_phi_antiderivative(const PhiFamily& family, double u);

/// Adaptive Gauss-Kronrod quadrature of 1/phi over [u_from, u_to].
double inverse_phi_integral(const PhiFamily& family, double u_from, double u_to);

struct GrowthSample {
    double s = 0.0;
    double u = 0.0;
    double phi_integral = 0.0;  // integral of phi(U(s')) ds' over [0, s]
};

struct GrowthOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_steps = 2'000'000;
};

/// Integrates dU/ds = 2 phi(U), U(0) = u0, reporting U at each target s (an
/// increasing sequence starting at 0). Throws IntegrationError when the
/// integrator cannot meet its tolerance.
std::vector<GrowthSample> fiber_growth(const PhiFamily& family, const Rational& u0,
                                       const std::vector<double>& s_targets, GrowthOptions options = {});

}  // namespace curvlab
