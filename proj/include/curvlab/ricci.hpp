#pragma once

/**
 * @file ricci.hpp
 * @brief Ricci eigenvalues of the family and kappa-positivity.
 *
 * In the unitary frame the Ricci form has eigenvalue lambda0 = A + (n-1)B
 * (fiber, multiplicity 1) and lambda1 = B + (n/2)C (base, multiplicity n-1).
 * With V = (k+1)(n+kU) + k t1 ranging over [-t1, inf) as U ranges over
 * [U_min, inf), a sum with lambda0 and kappa-1 copies of lambda1 equals
 * D(V)/V^3 where D(V) = D0 + D1 V + D2 V^2.
 */

#include "curvlab/ansatz_family.hpp"

#include <vector>

namespace curvlab {

struct RicciSpectrum {
    Rational lambda0;  // multiplicity 1
    Rational lambda1;  // multiplicity n - 1
    Rational v;
    int n = 2;
};

RicciSpectrum ricci_eigenvalues(const PhiFamily& family, const Rational& u);

/// Ricci curvature of a unit null vector of the HSC: -B.
Rational ricci_at_null_direction(const PhiFamily& family, const Rational& u);

/// Scalar curvature lambda0 + (n-1) lambda1.
Rational scalar_curvature(const RicciSpectrum& spectrum);

/// True iff every sum of kappa eigenvalues (with multiplicity) is positive.
/// Enumerates the multiplicity splits and cross-checks against the
/// two-value shortcut. ArgumentError unless 1 <= kappa <= n.
bool kappa_positive(const RicciSpectrum& spectrum, int n, int kappa);

/// K(n,k,U) as a sorted list.
std::vector<int> kappa_set(const RicciSpectrum& spectrum);

struct KappaCoefficients {
    Rational d0, d1, d2;

    Rational operator()(const Rational& v) const { return d0 + d1 * v + d2 * v * v; }
};

KappaCoefficients kappa_coefficients(const FamilyParams& params, int kappa);

struct QuadraticInfimum {
    bool bounded = true;  // false when D decreases without bound
    Rational argmin;      // meaningful only when bounded
    Rational value;
    bool vertex_interior = false;
};

/// Infimum of D_(kappa)(V) over V >= -t1.
QuadraticInfimum kappa_infimum(const FamilyParams& params, int kappa);

/// Whether kappa lies in K(n,k) = intersection over U >= U_min of K(n,k,U).
bool K_global(const FamilyParams& params, int kappa);

/// Smallest kappa in K(n,k), by scanning K_global.
int kappa_prime(const FamilyParams& params);

/// Piecewise closed form: 2 for k = 1; floor(3n+3 - sqrt(8n(n+1))) for
/// k >= 2, n >= k+1; n for k >= 2, n <= k. The floor uses integer square roots.
int kappa_prime_closed(int n, int k);

/// floor(3n + 3 - sqrt(8n(n+1))) in exact integer arithmetic.
long floor_kappa_expression(long n);

}  // namespace curvlab
