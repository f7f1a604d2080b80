#pragma once

/**
 * @file curvature_model.hpp
 * @brief Unitary-frame curvature of the family and the sign of its HSC.
 *
 * Along a fiber the only nonzero components (frame e_0 fiber, e_i base) are
 *   A = R_{00̄00̄},  B = R_{00̄iī},  C = R_{iīiī} = 2 R_{iījj̄} (i != j),
 * and for a unit vector with base mass s = sum_{i>=1} |x_i|^2 the holomorphic
 * sectional curvature is q(s) = A(1-s)^2 + 4B s(1-s) + C s^2.
 */

#include "curvlab/ansatz_family.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace curvlab {

struct CurvatureComponents {
    Rational A, B, C;
    Rational at_u;
};

/// Exact components at U >= U_min (DomainError below).
CurvatureComponents components(const PhiFamily& family, const Rational& u);

/// Same values through A = 2k^2 t1^2/V^3, B = k t1/V^2, C = 2/V.
CurvatureComponents components_from_v(const PhiFamily& family, const Rational& u);

struct ComponentFunctions {
    RationalFunction A, B, C;

    /// 16 B^2 - 4 A C.
    RationalFunction discriminant() const { return RationalFunction(16) * B * B - RationalFunction(4) * A * C; }
};

ComponentFunctions components_closed_forms(const PhiFamily& family);

/// q(s) for base mass s in [0, 1].
Rational hsc(const CurvatureComponents& comp, const Rational& s);
double hsc(const CurvatureComponents& comp, double s);

enum class HscKind { PositiveDefinite, SemiPositiveWithZero, Indefinite, IdenticallyZero };

const char* to_string(HscKind kind);

struct HscClassification {
    HscKind kind = HscKind::Indefinite;
    std::optional<Rational> null_split;  // present iff kind == SemiPositiveWithZero
};

/// Exact sign analysis of q on [0, 1]; square roots are compared by squaring.
HscClassification classify(const CurvatureComponents& comp);

/// Complex number with rational parts.
struct GaussianRational {
    Rational re, im;
};

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
GaussianRational conj(const GaussianRational& z);
Rational norm2(const GaussianRational& z);

struct TensorEntry {
    int i, j, k, l;  // R_{i j̄ k l̄}
    Rational value;
};

/// Every nonzero unitary-frame component in dimension n, with all index
/// placements allowed by the Kähler symmetries.
std::vector<TensorEntry> unitary_component_list(const CurvatureComponents& comp, int n);

/// sum R_{ij̄kl̄} x_i conj(x_j) x_k conj(x_l) over the given entries.
GaussianRational quartic_form(const std::vector<TensorEntry>& entries, const std::vector<GaussianRational>& x);

/// A|x0|^4 + 4B|x0|^2 rho + C rho^2 with rho = sum_{i>=1} |x_i|^2 (homogeneous, no normalization).
Rational reduced_quartic(const CurvatureComponents& comp, const std::vector<GaussianRational>& x);

struct EtaOptions {
    int subspaces = 200;
    int directions_per_subspace = 50;
    int expansion_checks = 32;
    std::uint64_t seed = 0x5eed'cafe'f00dULL;
};

/// Largest dimension of a null subspace of the HSC at U. Throws NotApplicable
/// unless the point classifies as SemiPositiveWithZero, and InconsistentFamily
/// if the expansion check or the subspace sampling fails.
int eta_point(const PhiFamily& family, const Rational& u, const EtaOptions& options = {});
int eta_point(const CurvatureComponents& comp, int n, const EtaOptions& options = {});

/// n - min_U eta over the default grid.
int rank_invariant(const PhiFamily& family, const EtaOptions& options = {});

}  // namespace curvlab
