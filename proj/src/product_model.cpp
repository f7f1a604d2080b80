#include "curvlab/product_model.hpp"

#include "curvlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>

namespace curvlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_blocks(const std::vector<FactorModel>& factors, const std::vector<VectorBlock>& blocks) {
    if (factors.empty()) throw ArgumentError("a product needs at least one factor");
    if (factors.size() != blocks.size()) throw ArgumentError("blocks must align with factors");
    double total = 0.0;
    for (const auto& b : blocks) {
        if (!(b.weight >= 0.0 && b.weight <= 1.0)) throw ArgumentError("block weight outside [0, 1]");
        if (!(b.split >= 0.0 && b.split <= 1.0)) throw ArgumentError("block split outside [0, 1]");
        total += b.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("block weights sum to " + std::to_string(total));
}

// Null split and the leading coefficient α of q(s) = α (s - s*)^2.
struct NullData {
    double split;
    double alpha;
};

NullData null_data(const AnsatzFactor& f) {
    const CurvatureComponents c = components(f.family, f.u);
    const HscClassification cls = classify(c);
    if (cls.kind != HscKind::SemiPositiveWithZero)
        throw InconsistentFactor(std::string("Ansatz factor is not semi-positive with a zero: ") + to_string(cls.kind));
    return {cls.null_split->to_double(), (c.A + c.C - Rational(4) * c.B).to_double()};
}

std::vector<double> random_weights(std::mt19937_64& rng, const std::vector<bool>& active) {
    std::normal_distribution<double> gauss;
    std::vector<double> w(active.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!active[i]) continue;
        const double re = gauss(rng), im = gauss(rng);
        w[i] = re * re + im * im;
        total += w[i];
    }
    for (auto& x : w) x /= total;
    // Absorb rounding so the weights sum to 1 within the product_hsc tolerance.
    double sum = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (active[i]) {
            sum += w[i];
            last = i;
        }
    w[last] = std::clamp(w[last] + (1.0 - sum), 0.0, 1.0);
    return w;
}

}  // namespace

int factor_dim(const FactorModel& factor) {
    return std::visit(overloaded{[](const AnsatzFactor& f) { return f.family.params().n; },
                                 [](const ConstantFactor& f) { return f.dim; }},
                      factor);
}

double factor_hsc(const FactorModel& factor, double split) {
    return std::visit(overloaded{[split](const AnsatzFactor& f) { return hsc(components(f.family, f.u), split); },
                                 [](const ConstantFactor& f) { return f.h0; }},
                      factor);
}

namespace {

// Per-factor q(s) with the components evaluated once.
struct FactorEval {
    std::optional<CurvatureComponents> comp;
    double h0 = 0.0;

    explicit FactorEval(const FactorModel& f) {
        if (const auto* a = std::get_if<AnsatzFactor>(&f)) comp = components(a->family, a->u);
        else h0 = std::get<ConstantFactor>(f).h0;
    }
    double operator()(double split) const { return comp ? hsc(*comp, split) : h0; }
};

double weighted_sum(const std::vector<FactorEval>& evals, const std::vector<VectorBlock>& blocks) {
    double h = 0.0;
    for (std::size_t i = 0; i < evals.size(); ++i) h += evals[i](blocks[i].split) * blocks[i].weight * blocks[i].weight;
    return h;
}

std::vector<FactorEval> evaluate_all(const std::vector<FactorModel>& factors) {
    std::vector<FactorEval> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.emplace_back(f);
    return out;
}

}  // namespace

double product_hsc(const std::vector<FactorModel>& factors, const std::vector<VectorBlock>& blocks) {
    check_blocks(factors, blocks);
    return weighted_sum(evaluate_all(factors), blocks);
}

double naive_hsc_sum(const std::vector<FactorModel>& factors, const std::vector<VectorBlock>& blocks) {
    check_blocks(factors, blocks);
    double h = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) h += factor_hsc(factors[i], blocks[i].split);
    return h;
}

int product_rank(const std::vector<FactorModel>& factors) {
    // Identical Ansatz factors share one rank evaluation.
    std::map<std::string, int> memo;
    int rank = 0;
    for (const auto& factor : factors) {
        rank += std::visit(overloaded{[&memo](const AnsatzFactor& f) {
                                          null_data(f);
                                          const std::string key = describe(f.family.params());
                                          if (const auto it = memo.find(key); it != memo.end()) return it->second;
                                          try {
                                              return memo[key] = rank_invariant(f.family);
                                          } catch (const InconsistentFamily& e) {
                                              throw InconsistentFactor(std::string("factor rank undefined: ") + e.what());
                                          }
                                      },
                                      [](const ConstantFactor& f) {
                                          if (!(f.h0 > 0.0) || f.dim < 1)
                                              throw InconsistentFactor("constant factor needs H0 > 0 and dim >= 1");
                                          return f.dim;
                                      }},
                           factor);
    }
    return rank;
}

AnsatzFactor m2_factor() { return {build_phi(FamilyParams{2, 1, Rational(-1)}), Rational(0)}; }

TheoremProduct theorem_product(int n) {
    if (n < 2) throw ArgumentError("theorem_product needs n >= 2");
    TheoremProduct out;
    const AnsatzFactor m2 = m2_factor();
    for (int i = 0; i < n / 2; ++i) out.factors.emplace_back(m2);
    if (n % 2 == 1) out.factors.emplace_back(ConstantFactor{1.0, 1});
    out.expected_rank = (n + 1) / 2;
    return out;
}

NullSpanReport null_span_check(const std::vector<FactorModel>& factors, int samples, std::uint64_t seed) {
    if (factors.empty() || samples < 1) throw ArgumentError("null_span_check needs factors and samples >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const std::size_t m = factors.size();
    std::vector<bool> is_ansatz(m), all(m, true);
    std::vector<NullData> nulls(m, {0.0, 0.0});
    double floor = std::numeric_limits<double>::infinity();
    NullSpanReport rep;
    rep.samples = samples;
    for (std::size_t i = 0; i < m; ++i) {
        if (const auto* a = std::get_if<AnsatzFactor>(&factors[i])) {
            is_ansatz[i] = true;
            nulls[i] = null_data(*a);
            floor = std::min(floor, nulls[i].alpha * rep.delta * rep.delta);
        } else {
            floor = std::min(floor, std::get<ConstantFactor>(factors[i]).h0);
        }
    }
    // Σ weight_i^2 >= 1/m on the simplex.
    rep.bounded_threshold = floor / static_cast<double>(m);
    const bool any_ansatz = std::find(is_ansatz.begin(), is_ansatz.end(), true) != is_ansatz.end();

    rep.max_null_value = 0.0;
    rep.min_generic_value = rep.min_bounded_value = std::numeric_limits<double>::infinity();
    const auto evals = evaluate_all(factors);
    const auto value = [&](const std::vector<VectorBlock>& blocks) {
        check_blocks(factors, blocks);
        return weighted_sum(evals, blocks);
    };
    std::vector<VectorBlock> blocks(m);
    for (int t = 0; t < samples; ++t) {
        if (any_ansatz) {
            const auto w = random_weights(rng, is_ansatz);
            for (std::size_t i = 0; i < m; ++i) blocks[i] = {w[i], is_ansatz[i] ? nulls[i].split : 0.0};
            rep.max_null_value = std::max(rep.max_null_value, std::abs(value(blocks)));
        }

        auto w = random_weights(rng, all);
        for (std::size_t i = 0; i < m; ++i) blocks[i] = {w[i], unit(rng)};
        rep.min_generic_value = std::min(rep.min_generic_value, value(blocks));

        w = random_weights(rng, all);
        for (std::size_t i = 0; i < m; ++i) {
            double s = unit(rng);
            if (is_ansatz[i]) {
                // Uniform on [0,1] minus (s* - delta, s* + delta).
                const double lo = std::max(0.0, nulls[i].split - rep.delta), hi = std::min(1.0, nulls[i].split + rep.delta);
                const double keep = lo + (1.0 - hi);
                s = s * keep;
                if (s >= lo) s += hi - lo;
            }
            blocks[i] = {w[i], s};
        }
        rep.min_bounded_value = std::min(rep.min_bounded_value, value(blocks));
    }
    rep.ok = rep.max_null_value <= 1e-12 && rep.min_generic_value >= 0.0 &&
             rep.min_bounded_value >= rep.bounded_threshold * (1.0 - 1e-12);
    return rep;
}

}  // namespace curvlab
