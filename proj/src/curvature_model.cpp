#include "curvlab/curvature_model.hpp"

#include "curvlab/errors.hpp"

#include <algorithm>
#include <complex>
#include <random>

namespace curvlab {

namespace {

void require_domain(const PhiFamily& family, const Rational& u) {
    if (u < family.u_min())
        throw DomainError("U = " + u.str() + " lies below U_min = " + family.u_min().str());
}

}  // namespace

CurvatureComponents components(const PhiFamily& family, const Rational& u) {
    require_domain(family, u);
    const auto& p = family.params();
    const Rational k(p.k);
    const Rational base = Rational(p.n) + k * u;
    const RationalFunction d1 = family.phi().derivative();
    const Rational phi = family.phi_at(u);
    const Rational phi1 = d1(u);
    const Rational phi2 = d1.derivative()(u);

    CurvatureComponents out;
    out.at_u = u;
    out.A = Rational(-1, 2) * phi2;
    out.B = (k * k * phi - k * base * phi1) / (Rational(2) * base * base);
    out.C = (Rational(2) * base - k * k * phi) / (base * base);
    return out;
}

CurvatureComponents components_from_v(const PhiFamily& family, const Rational& u) {
    require_domain(family, u);
    const auto& p = family.params();
    const Rational k(p.k);
    const Rational v = family.v(u);
    return {Rational(2) * k * k * p.t1 * p.t1 / pow(v, 3), k * p.t1 / (v * v), Rational(2) / v, u};
}

ComponentFunctions components_closed_forms(const PhiFamily& family) {
    const auto& p = family.params();
    const RationalFunction k(p.k);
    const RationalFunction base = family.base_factor();
    const RationalFunction& phi = family.phi();
    const RationalFunction d1 = phi.derivative();
    ComponentFunctions out;
    out.A = RationalFunction(Rational(-1, 2)) * d1.derivative();
    out.B = (k * k * phi - k * base * d1) / (RationalFunction(2) * base * base);
    out.C = (RationalFunction(2) * base - k * k * phi) / (base * base);
    return out;
}

Rational hsc(const CurvatureComponents& comp, const Rational& s) {
    const Rational t = Rational(1) - s;
    return comp.A * t * t + Rational(4) * comp.B * s * t + comp.C * s * s;
}

double hsc(const CurvatureComponents& comp, double s) {
    const double t = 1.0 - s;
    return comp.A.to_double() * t * t + 4.0 * comp.B.to_double() * s * t + comp.C.to_double() * s * s;
}

const char* to_string(HscKind kind) {
    switch (kind) {
        case HscKind::PositiveDefinite: return "PositiveDefinite";
        case HscKind::SemiPositiveWithZero: return "SemiPositiveWithZero";
        case HscKind::Indefinite: return "Indefinite";
        case HscKind::IdenticallyZero: return "IdenticallyZero";
    }
    return "?";
}

HscClassification classify(const CurvatureComponents& comp) {
    const int a = comp.A.sign(), b = comp.B.sign(), c = comp.C.sign();
    if (a == 0 && b == 0 && c == 0) return {HscKind::IdenticallyZero, std::nullopt};
    if (a < 0 || c < 0) return {HscKind::Indefinite, std::nullopt};

    if (a > 0 && c > 0) {
        if (b >= 0) return {HscKind::PositiveDefinite, std::nullopt};
        // B < 0: sign of 2B + sqrt(AC) is the sign of AC - 4B^2.
        const Rational gap = comp.A * comp.C - Rational(4) * comp.B * comp.B;
        if (gap.sign() > 0) return {HscKind::PositiveDefinite, std::nullopt};
        if (gap.sign() < 0) return {HscKind::Indefinite, std::nullopt};
        const Rational y = Rational(-2) * comp.B / comp.C;
        return {HscKind::SemiPositiveWithZero, y / (Rational(1) + y)};
    }

    // One endpoint vanishes. q(s) = s (4B(1-s) + Cs) when A = 0, and
    // (1-s)(A(1-s) + 4Bs) when C = 0: nonnegative iff B >= 0.
    if (b < 0) return {HscKind::Indefinite, std::nullopt};
    return {HscKind::SemiPositiveWithZero, a == 0 ? Rational(0) : Rational(1)};
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
}

GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }

Rational norm2(const GaussianRational& z) { return z.re * z.re + z.im * z.im; }

std::vector<TensorEntry> unitary_component_list(const CurvatureComponents& comp, int n) {
    if (n < 1) throw ArgumentError("dimension must be positive");
    std::vector<TensorEntry> out;
    const Rational half_c = comp.C / Rational(2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    // U(n-1) invariance: the unbarred pair {i,k} equals the barred pair {j,l}.
                    if (!((i == j && k == l) || (i == l && k == j))) continue;
                    const int lo = std::min(i, k), hi = std::max(i, k);
                    Rational value;
                    if (hi == 0) value = comp.A;
                    else if (lo == 0) value = comp.B;
                    else if (lo == hi) value = comp.C;
                    else value = half_c;
                    if (!value.is_zero()) out.push_back({i, j, k, l, value});
                }
    return out;
}

GaussianRational quartic_form(const std::vector<TensorEntry>& entries, const std::vector<GaussianRational>& x) {
    GaussianRational acc{Rational(0), Rational(0)};
    for (const auto& e : entries) {
        const auto term = x.at(static_cast<std::size_t>(e.i)) * conj(x.at(static_cast<std::size_t>(e.j))) *
                          x.at(static_cast<std::size_t>(e.k)) * conj(x.at(static_cast<std::size_t>(e.l)));
        acc = acc + GaussianRational{term.re * e.value, term.im * e.value};
    }
    return acc;
}

Rational reduced_quartic(const CurvatureComponents& comp, const std::vector<GaussianRational>& x) {
    const Rational x0 = norm2(x.at(0));
    Rational rho(0);
    for (std::size_t i = 1; i < x.size(); ++i) rho += norm2(x[i]);
    return comp.A * x0 * x0 + Rational(4) * comp.B * x0 * rho + comp.C * rho * rho;
}

namespace {

using cvec = std::vector<std::complex<double>>;

double reduced_hsc(double A, double B, double C, const cvec& x) {
    const double x0 = std::norm(x[0]);
    double rho = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) rho += std::norm(x[i]);
    const double total = x0 + rho;
    return (A * x0 * x0 + 4.0 * B * x0 * rho + C * rho * rho) / (total * total);
}

}  // namespace

int eta_point(const PhiFamily& family, const Rational& u, const EtaOptions& options) {
    return eta_point(components(family, u), family.params().n, options);
}

int eta_point(const CurvatureComponents& comp, int n, const EtaOptions& options) {
    if (n < 2) throw ArgumentError("eta needs dimension at least 2");
    const HscClassification cls = classify(comp);
    if (cls.kind != HscKind::SemiPositiveWithZero)
        throw NotApplicable(std::string("eta needs a semi-positive point with a zero, got ") + to_string(cls.kind));
    std::mt19937_64 rng(options.seed);

    // η >= 1: q vanishes at the null split, so the complex line through any
    // vector with that base mass is a null subspace.
    if (!hsc(comp, *cls.null_split).is_zero()) throw InconsistentFamily("q does not vanish at its null split");

    // (a) The full quartic over the component list reduces to q(rho).
    const auto entries = unitary_component_list(comp, n);
    std::uniform_int_distribution<long> coord(-6, 6);
    for (int t = 0; t < options.expansion_checks; ++t) {
        std::vector<GaussianRational> x(static_cast<std::size_t>(n));
        for (auto& z : x) z = {Rational(coord(rng), 1 + (coord(rng) + 6) % 4), Rational(coord(rng))};
        const GaussianRational full = quartic_form(entries, x);
        if (!full.im.is_zero() || full.re != reduced_quartic(comp, x))
            throw InconsistentFamily("quartic form does not reduce to the two-parameter model");
    }

    // (b) Every complex 2-plane contains a direction with H >= C/2: the
    // combination with x0 = 0 has H = C, witnessed here by sampling.
    const double A = comp.A.to_double(), B = comp.B.to_double(), C = comp.C.to_double();
    std::normal_distribution<double> gauss;
    const auto random_vector = [&] {
        cvec v(static_cast<std::size_t>(n));
        for (auto& z : v) z = {gauss(rng), gauss(rng)};
        return v;
    };
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    for (int s = 0; s < options.subspaces; ++s) {
        const cvec v = random_vector(), w = random_vector();
        double best = -1.0;
        for (int d = 0; d < options.directions_per_subspace; ++d) {
            cvec x(static_cast<std::size_t>(n));
            if (d == 0) {
                for (int i = 0; i < n; ++i) x[i] = w[0] * v[i] - v[0] * w[i];
            } else {
                const double theta = angle(rng) / 4.0;
                const std::complex<double> phase = std::polar(1.0, angle(rng));
                for (int i = 0; i < n; ++i) x[i] = std::cos(theta) * v[i] + phase * std::sin(theta) * w[i];
            }
            best = std::max(best, reduced_hsc(A, B, C, x));
        }
        if (!(best >= C / 2.0)) throw InconsistentFamily("sampled 2-plane without a direction of H >= C/2");
    }
    return 1;
}

int rank_invariant(const PhiFamily& family, const EtaOptions& options) {
    int eta_min = family.params().n;
    for (const auto& u : default_grid(family)) {
        int eta = 0;
        try {
            eta = eta_point(family, u, options);
        } catch (const NotApplicable& e) {
            throw InconsistentFamily(std::string("rank invariant undefined: ") + e.what());
        }
        if (eta != 1) throw InconsistentFamily("eta differs from 1 at U = " + u.str());
        eta_min = std::min(eta_min, eta);
    }
    return family.params().n - eta_min;
}

}  // namespace curvlab
