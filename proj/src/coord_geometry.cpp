#include "curvlab/coord_geometry.hpp"

#include "curvlab/curvature_model.hpp"
#include "curvlab/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace curvlab {

namespace {

using Matrix = CMatrix;
constexpr cplx I{0.0L, 1.0L};

Point shifted(const Point& p, int real_axis, real delta) {
    Point q = p;
    const int m = static_cast<int>(p.size());
    if (real_axis < m) q[real_axis] += delta;
    else q[real_axis - m] += I * delta;
    return q;
}

Matrix evaluate(const MetricField& field, const Point& p) {
    Matrix g = field.components(p);
    if (g.rows() != field.dim || g.cols() != field.dim) throw Error("metric field returned a matrix of the wrong size");
    if (!g.allFinite()) throw SingularMetric("non-finite metric components");
    Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success) throw SingularMetric("metric matrix is not positive definite");
    return g;
}

void require_margin(const MetricField& field, const Point& p, const FDConfig& config) {
    if (!(config.base_step > 0.0) || config.richardson_levels < 1)
        throw ArgumentError("FDConfig needs base_step > 0 and richardson_levels >= 1");
    if (p.size() != field.dim) throw ArgumentError("point dimension does not match the field");
    const real margin = field.domain_margin(p);
    if (!(margin >= 4.0L * static_cast<real>(config.base_step)))
        throw DomainError("point lies within 4*base_step of the domain edge (margin " + std::to_string(static_cast<double>(margin)) + ")");
}

// Wirtinger derivatives of g at one step size.
struct Derivatives {
    std::vector<Matrix> dz;                  // ∂_{z_k} g
    std::vector<Matrix> dzbar;               // ∂_{z̄_l} g
    std::vector<std::vector<Matrix>> ddbar;  // ∂_{z_k} ∂_{z̄_l} g
};

Derivatives central_differences(const MetricField& field, const Point& p, real h, const Matrix& g0) {
    const int m = field.dim;
    const int n_real = 2 * m;
    std::vector<Matrix> plus(n_real), minus(n_real), first(n_real);
    for (int a = 0; a < n_real; ++a) {
        plus[a] = evaluate(field, shifted(p, a, h));
        minus[a] = evaluate(field, shifted(p, a, -h));
        first[a] = (plus[a] - minus[a]) / cplx(2.0L * h);
    }
    std::vector<std::vector<Matrix>> second(n_real, std::vector<Matrix>(n_real));
    for (int a = 0; a < n_real; ++a) {
        second[a][a] = (plus[a] - cplx(2.0L) * g0 + minus[a]) / cplx(h * h);
        for (int b = a + 1; b < n_real; ++b) {
            const Matrix pp = evaluate(field, shifted(shifted(p, a, h), b, h));
            const Matrix pm = evaluate(field, shifted(shifted(p, a, h), b, -h));
            const Matrix mp = evaluate(field, shifted(shifted(p, a, -h), b, h));
            const Matrix mm = evaluate(field, shifted(shifted(p, a, -h), b, -h));
            second[a][b] = second[b][a] = (pp - pm - mp + mm) / cplx(4.0L * h * h);
        }
    }

    Derivatives d;
    d.dz.resize(m);
    d.dzbar.resize(m);
    d.ddbar.assign(m, std::vector<Matrix>(m));
    for (int k = 0; k < m; ++k) {
        const int xk = k, yk = k + m;
        d.dz[k] = cplx(0.5L) * (first[xk] - I * first[yk]);
        d.dzbar[k] = cplx(0.5L) * (first[xk] + I * first[yk]);
        for (int l = 0; l < m; ++l) {
            const int xl = l, yl = l + m;
            d.ddbar[k][l] =
                cplx(0.25L) * (second[xk][xl] + second[yk][yl] + I * (second[xk][yl] - second[yk][xl]));
        }
    }
    return d;
}

Derivatives combine(const Derivatives& fine, const Derivatives& coarse, real factor) {
    Derivatives out = fine;
    const std::size_t m = fine.dz.size();
    for (std::size_t k = 0; k < m; ++k) {
        out.dz[k] += (fine.dz[k] - coarse.dz[k]) / cplx(factor);
        out.dzbar[k] += (fine.dzbar[k] - coarse.dzbar[k]) / cplx(factor);
        for (std::size_t l = 0; l < m; ++l) out.ddbar[k][l] += (fine.ddbar[k][l] - coarse.ddbar[k][l]) / cplx(factor);
    }
    return out;
}

// Richardson tableau on the O(h^2) central differences. Returns the top
// entry and the previous diagonal entry (equal when only one level is used).
std::pair<Derivatives, Derivatives> richardson(const MetricField& field, const Point& p, const FDConfig& config,
                                               const Matrix& g0) {
    const int levels = config.richardson_levels;
    std::vector<std::vector<Derivatives>> table(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i) {
        const real h = static_cast<real>(config.base_step) / std::pow(2.0L, static_cast<real>(i));
        table[i].push_back(central_differences(field, p, h, g0));
        for (int j = 1; j <= i; ++j)
            table[i].push_back(combine(table[i][j - 1], table[i - 1][j - 1], std::pow(4.0L, static_cast<real>(j)) - 1.0L));
    }
    const Derivatives& top = table[levels - 1][levels - 1];
    const Derivatives& prev = levels >= 2 ? table[levels - 2][levels - 2] : top;
    return {top, prev};
}

std::vector<cplx> curvature_from(const Derivatives& d, const Matrix& g_inv, int m) {
    std::vector<cplx> out(static_cast<std::size_t>(m * m * m * m));
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            const Matrix r = -d.ddbar[k][l] + d.dz[k] * g_inv * d.dzbar[l];
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(((i * m + j) * m + k) * m + l)] = r(i, j);
        }
    return out;
}

}  // namespace

CurvatureSample chern_curvature(const MetricField& field, const Point& point, const FDConfig& config) {
    require_margin(field, point, config);
    const Matrix g0 = evaluate(field, point);
    const Matrix g_inv = g0.inverse();
    const auto [top, prev] = richardson(field, point, config, g0);

    CurvatureSample sample;
    sample.dim = field.dim;
    sample.point = point;
    sample.values = curvature_from(top, g_inv, field.dim);
    if (config.richardson_levels >= 2) {
        const auto previous = curvature_from(prev, g_inv, field.dim);
        real err = 0.0L;
        for (std::size_t i = 0; i < previous.size(); ++i) err = std::max(err, std::abs(previous[i] - sample.values[i]));
        sample.estimated_error = static_cast<double>(err);
    }
    return sample;
}

double kahler_defect(const MetricField& field, const Point& point, const FDConfig& config) {
    require_margin(field, point, config);
    const Matrix g0 = evaluate(field, point);
    const auto d = richardson(field, point, config, g0).first;
    const int m = field.dim;
    real defect = 0.0L;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) defect = std::max(defect, std::abs(d.dz[k](i, j) - d.dz[i](k, j)));
    return static_cast<double>(defect);
}

SymmetryDefect symmetry_defect(const CurvatureSample& s) {
    SymmetryDefect out;
    const int m = s.dim;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const cplx v = s.R(i, j, k, l);
                    out.kahler = std::max({out.kahler, static_cast<double>(std::abs(v - s.R(k, j, i, l))),
                                           static_cast<double>(std::abs(v - s.R(i, l, k, j)))});
                    out.conjugate = std::max(out.conjugate, static_cast<double>(std::abs(v - std::conj(s.R(j, i, l, k)))));
                }
    return out;
}

double hsc_numerator(const CurvatureSample& s, const Point& xi) {
    const int m = s.dim;
    cplx acc = 0.0L;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    acc += s.R(i, j, k, l) * xi[i] * std::conj(xi[j]) * xi[k] * std::conj(xi[l]);
    return static_cast<double>(acc.real());
}

MetricField flat_field(int dim) {
    MetricField f;
    f.dim = dim;
    f.components = [dim](const Point&) -> Matrix { return Matrix::Identity(dim, dim); };
    return f;
}

MetricField fubini_study_field(int dim, double scale) {
    MetricField f;
    f.dim = dim;
    f.components = [dim, scale](const Point& z) -> Matrix {
        const real r = z.squaredNorm();
        const real c = scale;
        Matrix g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                g(i, j) = c * (cplx(i == j ? 1.0L : 0.0L) / (1.0L + r) - std::conj(z[i]) * z[j] / ((1.0L + r) * (1.0L + r)));
        return g;
    };
    return f;
}

MetricField fubini_study_product(const std::vector<double>& scales) {
    MetricField f;
    f.dim = static_cast<int>(scales.size());
    f.components = [scales](const Point& z) -> Matrix {
        const int m = static_cast<int>(scales.size());
        Matrix g = Matrix::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            const real r = std::norm(z[i]);
            g(i, i) = static_cast<real>(scales[static_cast<std::size_t>(i)]) / ((1.0L + r) * (1.0L + r));
        }
        return g;
    };
    return f;
}

// ---------------------------------------------------------------------------

namespace {

// Coefficient j of poly(U(s)) given the U-series coefficients u[0..j].
Rational series_coefficient(const Polynomial& poly, const std::vector<Rational>& u, std::size_t j) {
    std::vector<Rational> acc(j + 1, Rational(0));
    for (int c = poly.degree(); c >= 0; --c) {
        std::vector<Rational> next(j + 1, Rational(0));
        for (std::size_t a = 0; a <= j; ++a) {
            if (acc[a].is_zero()) continue;
            for (std::size_t b = 0; a + b <= j && b < u.size(); ++b) next[a + b] += acc[a] * u[b];
        }
        next[0] += poly.coefficient(c);
        acc = std::move(next);
    }
    return acc[j];
}

real horner(const std::vector<real>& c, real s) {
    real acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
}

real phi_closed(const FamilyParams& params, real u) {
    const real k = params.k, n = params.n, t1 = params.t1.to_long_double();
    const real base = n + k * u;
    return 2.0L * base * (base + t1) / (k * ((k + 1.0L) * base + k * t1));
}

}  // namespace

AnsatzProfile::AnsatzProfile(const PhiFamily& family, const Rational& u_target)
    : family_(family), u_target_(u_target) {
    if (!(u_target > family.u_min())) throw DomainError("U_target must lie above U_min");
    const Polynomial& num = family.phi().num();
    const Polynomial& den = family.phi().den();

    // den(U) U' = num(U), solved order by order.
    u_coeffs_.push_back(u_target);
    for (std::size_t j = 0; j < static_cast<std::size_t>(kTaylorOrder); ++j) {
        Rational rhs = series_coefficient(num, u_coeffs_, j);
        for (std::size_t i = 1; i <= j; ++i)
            rhs -= series_coefficient(den, u_coeffs_, i) * Rational(static_cast<long>(j - i + 1)) * u_coeffs_[j - i + 1];
        const Rational w0 = series_coefficient(den, u_coeffs_, 0);
        u_coeffs_.push_back(rhs / (w0 * Rational(static_cast<long>(j + 1))));
    }
    // F' = 2U, F(0) = 0.
    f_coeffs_.push_back(Rational(0));
    for (std::size_t j = 0; j < u_coeffs_.size(); ++j)
        f_coeffs_.push_back(Rational(2) * u_coeffs_[j] / Rational(static_cast<long>(j + 1)));

    for (const auto& c : u_coeffs_) u_ld_.push_back(c.to_long_double());
    for (const auto& c : f_coeffs_) f_ld_.push_back(c.to_long_double());
}

std::pair<real, real> AnsatzProfile::taylor(real s) const { return {horner(u_ld_, s), horner(f_ld_, s)}; }

std::pair<real, real> AnsatzProfile::adaptive(real s) const {
    namespace ode = boost::numeric::odeint;
    using State = std::array<real, 2>;
    State x{u_target_.to_long_double(), 0.0L};
    if (s == 0.0L) return {x[0], x[1]};
    const FamilyParams& params = family_.params();
    const auto rhs = [&params](const State& y, State& dy, real) {
        dy[0] = phi_closed(params, y[0]);
        dy[1] = 2.0L * y[0];
    };
    auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State, real>>(1e-17L, 1e-17L);
    try {
        ode::integrate_adaptive(stepper, rhs, x, 0.0L, s, s > 0 ? 1e-3L : -1e-3L);
    } catch (const std::exception& e) {
        throw IntegrationError(std::string("profile integration failed: ") + e.what());
    }
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) throw IntegrationError("profile integration diverged");
    return {x[0], x[1]};
}

std::pair<real, real> AnsatzProfile::at(real s) const {
    return std::abs(s) <= kTaylorRadius ? taylor(s) : adaptive(s);
}

MetricField ansatz_field(const PhiFamily& family, const Rational& u_target) {
    if (family.params().n != 2) throw ArgumentError("ansatz_field is implemented for n = 2");
    return ansatz_field(std::make_shared<const AnsatzProfile>(family, u_target));
}

MetricField ansatz_field(std::shared_ptr<const AnsatzProfile> profile) {
    MetricField f;
    f.dim = 2;
    f.components = [profile](const Point& p) -> Matrix {
        const auto& params = profile->family().params();
        const real k = params.k;
        const cplx z = p[1];
        const real r = std::norm(z);
        const real s = 2.0L * p[0].real() + 0.5L * k * std::log1p(r);
        const real u = profile->at(s).first;
        const real phi = phi_closed(params, u);
        Matrix g(2, 2);
        g(0, 0) = 2.0L * phi;
        g(1, 0) = k * phi * std::conj(z) / (1.0L + r);
        g(0, 1) = std::conj(g(1, 0));
        g(1, 1) = (2.0L + k * u + 0.5L * k * k * phi * r) / ((1.0L + r) * (1.0L + r));
        return g;
    };
    return f;
}

double OracleReport::max_rel_error() const { return std::max({rel_error_A, rel_error_B, rel_error_C}); }

OracleReport oracle_compare(const PhiFamily& family, const Rational& u_target, const FDConfig& config) {
    using Vec2 = Eigen::Matrix<cplx, 2, 1>;
    const MetricField field = ansatz_field(family, u_target);
    const Point origin = Point::Zero(2);
    const CurvatureSample sample = chern_curvature(field, origin, config);
    const Matrix g = field.components(origin);

    // Gram–Schmidt from ∂_0: e_a = Σ_i c(a, i) ∂_i.
    const auto inner = [&g](const Vec2& x, const Vec2& y) {
        cplx acc = 0.0L;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) acc += x[i] * std::conj(y[j]) * g(i, j);
        return acc;
    };
    Vec2 e0(cplx(1.0L), cplx(0.0L)), e1(cplx(0.0L), cplx(1.0L));
    e0 /= cplx(std::sqrt(inner(e0, e0).real()));
    e1 -= inner(e1, e0) * e0;
    e1 /= cplx(std::sqrt(inner(e1, e1).real()));

    const auto frame = [&](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
        cplx acc = 0.0L;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l)
                        acc += a[i] * std::conj(b[j]) * c[k] * std::conj(d[l]) * sample.R(i, j, k, l);
        return static_cast<double>(acc.real());
    };

    OracleReport rep;
    rep.A = frame(e0, e0, e0, e0);
    rep.B = frame(e0, e0, e1, e1);
    rep.C = frame(e1, e1, e1, e1);
    const CurvatureComponents exact = components(family, u_target);
    rep.A_exact = exact.A.to_double();
    rep.B_exact = exact.B.to_double();
    rep.C_exact = exact.C.to_double();
    rep.rel_error_A = std::abs(rep.A - rep.A_exact) / std::abs(rep.A_exact);
    rep.rel_error_B = std::abs(rep.B - rep.B_exact) / std::abs(rep.B_exact);
    rep.rel_error_C = std::abs(rep.C - rep.C_exact) / std::abs(rep.C_exact);

    // det g = 2φ · p · det(g0), p = 1 + kU/2, det(g0) = 2 at z = 0.
    const Rational expected =
        Rational(2) * family.phi_at(u_target) * (Rational(1) + Rational(family.params().k, 2) * u_target) * Rational(2);
    rep.det_residual = static_cast<double>(std::abs(g.determinant().real() - expected.to_long_double()));
    rep.kahler_defect = kahler_defect(field, origin, config);
    rep.estimated_error = sample.estimated_error;
    rep.g00 = static_cast<double>(g(0, 0).real());
    rep.g11 = static_cast<double>(g(1, 1).real());
    rep.g10_abs = static_cast<double>(std::abs(g(1, 0)));
    return rep;
}

// ---------------------------------------------------------------------------

bool ConformalFactor::smooth_at_origin() const { return cc == exponent; }

real ConformalFactor::exp_f(real r) const {
    if (r < 0.0L) throw DomainError("r must be nonnegative");
    if (smooth_at_origin()) return std::pow(1.0L + r, exponent);
    if (r == 0.0L) throw DomainError("conformal factor is singular at r = 0 unless cc equals the exponent");
    return std::pow(1.0L + r, exponent) / std::pow(r, exponent - cc);
}

real ConformalFactor::f_prime(real r) const {
    if (r < 0.0L) throw DomainError("r must be nonnegative");
    if (smooth_at_origin()) return exponent / (1.0L + r);
    if (r == 0.0L) throw DomainError("f' is singular at r = 0 unless cc equals the exponent");
    return exponent / (1.0L + r) - (exponent - cc) / r;
}

real ConformalFactor::f_second(real r) const {
    if (r < 0.0L) throw DomainError("r must be nonnegative");
    if (smooth_at_origin()) return -exponent / ((1.0L + r) * (1.0L + r));
    if (r == 0.0L) throw DomainError("f'' is singular at r = 0 unless cc equals the exponent");
    return -exponent / ((1.0L + r) * (1.0L + r)) + (exponent - cc) / (r * r);
}

ConformalFactor perturbed_factor(real exponent) { return ConformalFactor{exponent, exponent}; }

MetricField conformal_field(const ConformalFactor& factor) {
    MetricField f;
    f.dim = 2;
    f.components = [factor](const Point& z) -> Matrix {
        const real r1 = std::norm(z[0]), r2 = std::norm(z[1]);
        const real ef = factor.exp_f(r2);
        Matrix g = Matrix::Zero(2, 2);
        g(0, 0) = ef / ((1.0L + r1) * (1.0L + r1));
        g(1, 1) = ef / ((1.0L + r2) * (1.0L + r2));
        return g;
    };
    if (!factor.smooth_at_origin()) f.domain_margin = [](const Point& z) { return std::abs(z[1]); };
    return f;
}

MetricField conformal_field(real cc) { return conformal_field(ConformalFactor{cc}); }

real conformal_ode_residual(real r, const ConformalFactor& factor) {
    if (r < 0.0L) throw DomainError("r must be nonnegative");
    const real hp = factor.f_prime(r) + r * factor.f_second(r);
    const real q = (1.0L + r) * (1.0L + r);
    const real radicand = 2.0L / (q * q) - hp / q;
    if (radicand < 0.0L) throw DomainError("negative radicand in the conformal ODE");
    return -hp + 2.0L * std::sqrt(2.0L) * std::sqrt(radicand);
}

const char* to_string(Limit limit) {
    switch (limit) {
        case Limit::FiniteNonzero: return "finite-nonzero";
        case Limit::Zero: return "zero";
        case Limit::Infinite: return "infinite";
    }
    return "?";
}

std::pair<Limit, Limit> boundary_behavior(real cc) {
    // e^f ~ r^{cc - a} as r -> 0 and ~ r^{cc} as r -> inf.
    const Limit at_zero = cc == kConformalExponent ? Limit::FiniteNonzero
                          : cc > kConformalExponent ? Limit::Zero
                                                    : Limit::Infinite;
    const Limit at_inf = cc == 0.0L ? Limit::FiniteNonzero : (cc > 0.0L ? Limit::Infinite : Limit::Zero);
    return {at_zero, at_inf};
}

bool ConformalReport::all_ok() const {
    return !points.empty() && std::all_of(points.begin(), points.end(), [](const auto& p) { return p.ok; });
}

ConformalReport conformal_curvature_checks(const std::vector<Point>& grid, const FDConfig& config, int directions,
                                           std::uint64_t seed) {
    const MetricField field = conformal_field();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    ConformalReport report;
    for (const auto& p : grid) {
        const CurvatureSample s = chern_curvature(field, p, config);
        ConformalPointCheck c;
        c.point = p;
        c.R1111 = static_cast<double>(s.R(0, 0, 0, 0).real());
        c.R1122 = static_cast<double>(s.R(0, 0, 1, 1).real());
        c.R2222 = static_cast<double>(s.R(1, 1, 1, 1).real());
        c.discriminant_residual = std::abs(c.R1122 + 2.0 * std::sqrt(std::max(0.0, c.R1111 * c.R2222)));
        c.estimated_error = s.estimated_error;
        c.min_hsc = std::numeric_limits<double>::infinity();
        for (int d = 0; d < directions; ++d) {
            Point xi(2);
            for (int i = 0; i < 2; ++i) xi[i] = cplx(gauss(rng), gauss(rng));
            xi /= cplx(xi.norm());
            c.min_hsc = std::min(c.min_hsc, hsc_numerator(s, xi));
        }
        c.ok = c.R1111 > 0.0 && c.R1122 < 0.0 && c.discriminant_residual <= 1e-6 && c.min_hsc >= -1e-8;
        report.points.push_back(c);
    }
    return report;
}

std::vector<real> standard_r_grid() { return {0.1L, 0.25L, 0.5L, 1.0L, 2.0L, 5.0L, 10.0L}; }

std::vector<Point> standard_conformal_grid() {
    const auto pt = [](cplx a, cplx b) {
        Point p(2);
        p << a, b;
        return p;
    };
    return {pt(0.3L, 0.7L), pt(0.0L, 0.5L), pt(0.5L, 0.5L), pt({1.2L, -0.4L}, {0.1L, 0.9L}), pt({-0.2L, 0.6L}, 2.0L)};
}

}  // namespace curvlab
