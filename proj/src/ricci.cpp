#include "curvlab/ricci.hpp"

#include "curvlab/curvature_model.hpp"
#include "curvlab/errors.hpp"

#include <algorithm>
#include <optional>

namespace curvlab {

RicciSpectrum ricci_eigenvalues(const PhiFamily& family, const Rational& u) {
    const CurvatureComponents c = components(family, u);
    const int n = family.params().n;
    RicciSpectrum out;
    out.n = n;
    out.v = family.v(u);
    out.lambda0 = c.A + Rational(n - 1) * c.B;
    out.lambda1 = c.B + Rational(n, 2) * c.C;
    return out;
}

Rational ricci_at_null_direction(const PhiFamily& family, const Rational& u) { return -components(family, u).B; }

Rational scalar_curvature(const RicciSpectrum& spectrum) {
    return spectrum.lambda0 + Rational(spectrum.n - 1) * spectrum.lambda1;
}

bool kappa_positive(const RicciSpectrum& spectrum, int n, int kappa) {
    if (kappa < 1 || kappa > n)
        throw ArgumentError("kappa must lie in [1, " + std::to_string(n) + "], got " + std::to_string(kappa));

    // j copies of lambda0 (multiplicity 1), kappa - j of lambda1 (multiplicity n - 1).
    std::optional<Rational> smallest;
    bool all_positive = true;
    for (int j = 0; j <= kappa; ++j) {
        if (j > 1 || kappa - j > n - 1) continue;
        const Rational sum = Rational(j) * spectrum.lambda0 + Rational(kappa - j) * spectrum.lambda1;
        all_positive = all_positive && sum.sign() > 0;
        if (!smallest || sum < *smallest) smallest = sum;
    }

    // Shortcut: the minimum puts as many copies as allowed on the smaller eigenvalue.
    const int j_lo = std::max(0, kappa - (n - 1));
    const int j_hi = std::min(kappa, 1);
    const int j = spectrum.lambda0 < spectrum.lambda1 ? j_hi : j_lo;
    const Rational shortcut = Rational(j) * spectrum.lambda0 + Rational(kappa - j) * spectrum.lambda1;

    if (!smallest || *smallest != shortcut || all_positive != (shortcut.sign() > 0))
        throw Error("kappa-positivity routes disagree");
    return all_positive;
}

std::vector<int> kappa_set(const RicciSpectrum& spectrum) {
    std::vector<int> out;
    for (int kappa = 1; kappa <= spectrum.n; ++kappa)
        if (kappa_positive(spectrum, spectrum.n, kappa)) out.push_back(kappa);
    return out;
}

KappaCoefficients kappa_coefficients(const FamilyParams& params, int kappa) {
    const Rational n(params.n), k(params.k), kap(kappa);
    return {Rational(2) * k * k * params.t1 * params.t1, (n + kap - Rational(2)) * k * params.t1,
            n * (kap - Rational(1))};
}

QuadraticInfimum kappa_infimum(const FamilyParams& params, int kappa) {
    const KappaCoefficients d = kappa_coefficients(params, kappa);
    const Rational lo = -params.t1;
    QuadraticInfimum out;
    if (d.d2.is_zero()) {
        // Linear; D1 < 0 since t1 < 0 and n + kappa - 2 >= 1.
        if (d.d1.sign() < 0) {
            out.bounded = false;
            return out;
        }
        out.argmin = lo;
        out.value = d(lo);
        return out;
    }
    const Rational vertex = -d.d1 / (Rational(2) * d.d2);
    out.vertex_interior = vertex >= lo;
    out.argmin = out.vertex_interior ? vertex : lo;
    out.value = d(out.argmin);
    return out;
}

bool K_global(const FamilyParams& params, int kappa) {
    validate(params);
    const int n = params.n;
    if (kappa < 1 || kappa > n)
        throw ArgumentError("kappa must lie in [1, " + std::to_string(n) + "], got " + std::to_string(kappa));

    // kappa copies of lambda1 (only possible when kappa <= n-1):
    // lambda1 V^2 = nV + k t1 is increasing in V, so its infimum sits at V = -t1.
    if (kappa <= n - 1) {
        const Rational at_boundary = Rational(n) * (-params.t1) + Rational(params.k) * params.t1;
        if (at_boundary.sign() <= 0) return false;
    }
    // lambda0 plus kappa-1 copies of lambda1.
    const QuadraticInfimum inf = kappa_infimum(params, kappa);
    return inf.bounded && inf.value.sign() > 0;
}

int kappa_prime(const FamilyParams& params) {
    for (int kappa = 1; kappa <= params.n; ++kappa)
        if (K_global(params, kappa)) return kappa;
    throw InconsistentFamily("K(n,k) is empty for " + describe(params));
}

namespace {

long isqrt(long value) {
    mpz_class root;
    mpz_class v(value);
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    return root.get_si();
}

}  // namespace

long floor_kappa_expression(long n) {
    const long s = 8 * n * (n + 1);
    const long r = isqrt(s);
    // sqrt(s) in [r, r+1); exact when r^2 = s.
    return r * r == s ? 3 * n + 3 - r : 3 * n + 2 - r;
}

int kappa_prime_closed(int n, int k) {
    if (n < 2 || k < 1) throw ArgumentError("kappa_prime_closed needs n >= 2, k >= 1");
    if (k == 1) return 2;
    if (n >= k + 1) return static_cast<int>(floor_kappa_expression(n));
    return n;
}

}  // namespace curvlab
