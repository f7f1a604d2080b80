#pragma once

// Coordinate metric fields and their Chern curvature by finite differences.
//
// Conventions: g_{ij̄} = ∂_i ∂_j̄ P for a potential P, and
//   R_{ij̄kl̄} = -∂_k∂_l̄ g_{ij̄} + g^{pq̄} ∂_k g_{ip̄} ∂_l̄ g_{qj̄}.

#include "curvlab/ansatz_family.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace curvlab {

// Fields and the difference engine run in extended precision so that
// rounding in g stays below the truncation error of the finest stencil.
using real = long double;
using cplx = std::complex<real>;
using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using Point = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

struct MetricField {
    int dim = 1;
    std::function<CMatrix(const Point&)> components;
    // Distance from a point to the edge of the domain (+inf for the whole chart).
    std::function<real(const Point&)> domain_margin = [](const Point&) {
        return std::numeric_limits<real>::infinity();
    };
};

struct FDConfig {
    double base_step = 1e-3;
    int richardson_levels = 3;
};

struct CurvatureSample {
    int dim = 1;
    Point point;
    std::vector<cplx> values;  // R_{ij̄kl̄} at ((i*m + j)*m + k)*m + l
    double estimated_error = std::numeric_limits<double>::infinity();

    cplx& R(int i, int j, int k, int l) { return values[index(i, j, k, l)]; }
    const cplx& R(int i, int j, int k, int l) const { return values[index(i, j, k, l)]; }

private:
    std::size_t index(int i, int j, int k, int l) const {
        return static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l);
    }
};

CurvatureSample chern_curvature(const MetricField& field, const Point& point, const FDConfig& config = {});

/// max |∂_k g_{ij̄} - ∂_i g_{kj̄}|.
double kahler_defect(const MetricField& field, const Point& point, const FDConfig& config = {});

/// Largest violation of R_{ij̄kl̄} = R_{kj̄il̄} = R_{il̄kj̄} and R_{ij̄kl̄} = conj(R_{jīlk̄}).
struct SymmetryDefect {
    double kahler = 0.0;
    double conjugate = 0.0;
};
SymmetryDefect symmetry_defect(const CurvatureSample& sample);

/// Σ R_{ij̄kl̄} ξ_i conj(ξ_j) ξ_k conj(ξ_l), real part.
double hsc_numerator(const CurvatureSample& sample, const Point& xi);

MetricField flat_field(int dim);

/// Potential scale * log(1 + |z|^2) on C^dim.
MetricField fubini_study_field(int dim, double scale = 1.0);

/// Product of lines with potentials scale_i * log(1 + |z_i|^2).
MetricField fubini_study_product(const std::vector<double>& scales);

// ---------------------------------------------------------------------------
// n = 2 Ansatz total space in coordinates (z0, z).
//
// P = 2 log(1+|z|^2) + F(s), s = z0 + z̄0 + (k/2) log(1+|z|^2),
// F' = 2U, dU/ds = φ(U), U(0) = U_target, F(0) = 0. Then
//   g_00̄ = 2φ, g_10̄ = kφ z̄/(1+|z|^2), g_11̄ = (2 + kU + (k^2/2) φ |z|^2)/(1+|z|^2)^2.

class AnsatzProfile {
public:
    static constexpr int kTaylorOrder = 10;
    static constexpr double kTaylorRadius = 0.1;

    AnsatzProfile(const PhiFamily& family, const Rational& u_target);

    const PhiFamily& family() const { return family_; }
    const Rational& u_target() const { return u_target_; }
    const std::vector<Rational>& u_coefficients() const { return u_coeffs_; }
    const std::vector<Rational>& f_coefficients() const { return f_coeffs_; }

    /// (U(s), F(s)): Taylor inside |s| <= kTaylorRadius, adaptive integration outside.
    std::pair<real, real> at(real s) const;
    std::pair<real, real> taylor(real s) const;
    std::pair<real, real> adaptive(real s) const;

private:
    PhiFamily family_;
    Rational u_target_;
    std::vector<Rational> u_coeffs_;
    std::vector<Rational> f_coeffs_;
    std::vector<real> u_ld_, f_ld_;
};

MetricField ansatz_field(const PhiFamily& family, const Rational& u_target);
MetricField ansatz_field(std::shared_ptr<const AnsatzProfile> profile);

struct OracleReport {
    double A = 0, B = 0, C = 0;                     // FD, unitary frame
    double A_exact = 0, B_exact = 0, C_exact = 0;
    double rel_error_A = 0, rel_error_B = 0, rel_error_C = 0;
    double det_residual = 0;                        // |det g - 2φ(2 + kU)| at the origin
    double kahler_defect = 0;
    double estimated_error = 0;
    double g00 = 0, g11 = 0, g10_abs = 0;

    double max_rel_error() const;
};

OracleReport oracle_compare(const PhiFamily& family, const Rational& u_target, const FDConfig& config = {});

// ---------------------------------------------------------------------------
// Conformal change e^{f(r2)} of the product Fubini–Study metric on P^1 x C.

/// 4(√2 - 1), the exponent of the smooth factor (1 + r)^{4(√2-1)}.
inline constexpr real kConformalExponent = 4.0L * (1.41421356237309504880L - 1.0L);

/// e^f = (1+r)^a / r^{a - cc}; the ODE holds only for a = kConformalExponent.
struct ConformalFactor {
    real cc = kConformalExponent;
    real exponent = kConformalExponent;

    bool smooth_at_origin() const;
    real exp_f(real r) const;
    real f_prime(real r) const;
    real f_second(real r) const;
};

/// g = e^{f(|z2|^2)} diag(1/(1+|z1|^2)^2, 1/(1+|z2|^2)^2).
MetricField conformal_field(const ConformalFactor& factor = {});
MetricField conformal_field(real cc);

/// The factor with exponent a and cc = a (smooth at the origin).
ConformalFactor perturbed_factor(real exponent);

/// -(f' + r f'') + 2√2 √(2/(1+r)^4 - (f' + r f'')/(1+r)^2) for the given factor.
real conformal_ode_residual(real r, const ConformalFactor& factor = {});

enum class Limit { FiniteNonzero, Zero, Infinite };
const char* to_string(Limit limit);

/// Limits of e^f as r -> 0+ and r -> inf.
std::pair<Limit, Limit> boundary_behavior(real cc);

struct ConformalPointCheck {
    Point point;
    double R1111 = 0, R1122 = 0, R2222 = 0;
    double discriminant_residual = 0;  // |R_{11̄22̄} + 2 √(R_{11̄11̄} R_{22̄22̄})|
    double min_hsc = 0;                // over sampled Euclidean-unit directions
    double estimated_error = 0;
    bool ok = false;
};

struct ConformalReport {
    std::vector<ConformalPointCheck> points;
    bool all_ok() const;
};

ConformalReport conformal_curvature_checks(const std::vector<Point>& grid, const FDConfig& config = {},
                                           int directions = 1000, std::uint64_t seed = 0xc0ffee);

/// The r-grid on which the conformal ODE is checked.
std::vector<real> standard_r_grid();

/// Sample points for the conformal curvature checks.
std::vector<Point> standard_conformal_grid();

}  // namespace curvlab
