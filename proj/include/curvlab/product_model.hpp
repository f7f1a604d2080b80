#pragma once

// Products of curvature models. For w = (w_1, ..., w_m) split across the
// factors, H(w)|w|^4 = Σ H_i(w_i)|w_i|^4, so with weights |w_i|^2/|w|^2 the
// product HSC is Σ H_i · weight_i^2.

#include "curvlab/curvature_model.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace curvlab {

struct AnsatzFactor {
    PhiFamily family;
    Rational u;
};

/// A factor with constant HSC, e.g. the projective line with Fubini–Study.
struct ConstantFactor {
    double h0 = 1.0;
    int dim = 1;
};

using FactorModel = std::variant<AnsatzFactor, ConstantFactor>;

struct VectorBlock {
    double weight = 0.0;  // |w_i|^2 / |w|^2
    double split = 0.0;   // base mass inside an Ansatz factor; ignored for constant factors
};

int factor_dim(const FactorModel& factor);

/// H of a unit vector inside one factor.
double factor_hsc(const FactorModel& factor, double split);

/// Σ H_i(block_i) weight_i^2. ArgumentError on misaligned input, weights or
/// splits outside [0, 1], or weights not summing to 1 (tolerance 1e-12).
double product_hsc(const std::vector<FactorModel>& factors, const std::vector<VectorBlock>& blocks);

/// Σ H_i(block_i), the unweighted sum; differs from product_hsc in general.
double naive_hsc_sum(const std::vector<FactorModel>& factors, const std::vector<VectorBlock>& blocks);

/// Sum of factor ranks (rank_invariant for Ansatz factors, dim for constant
/// ones). InconsistentFactor when a factor's rank is undefined.
int product_rank(const std::vector<FactorModel>& factors);

struct TheoremProduct {
    std::vector<FactorModel> factors;
    int expected_rank = 0;
};

/// The dimension-n products: n/2 copies of M2 = (n=2, k=1, t1=-1) at U = 0,
/// plus one projective line when n is odd.
TheoremProduct theorem_product(int n);

AnsatzFactor m2_factor();

struct NullSpanReport {
    int samples = 0;
    double max_null_value = 0.0;     // over combinations of per-factor null directions
    double min_generic_value = 0.0;  // over random directions
    double min_bounded_value = 0.0;  // over directions with every split at distance >= delta from the null split
    double bounded_threshold = 0.0;
    double delta = 0.1;
    bool ok = false;
};

NullSpanReport null_span_check(const std::vector<FactorModel>& factors, int samples, std::uint64_t seed);

}  // namespace curvlab
