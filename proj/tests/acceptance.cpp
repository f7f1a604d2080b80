// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion ...]; with no arguments every criterion runs.

#include "curvlab/ansatz_family.hpp"
#include "curvlab/coord_geometry.hpp"
#include "curvlab/curvature_model.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/parallel.hpp"
#include "curvlab/product_model.hpp"
#include "curvlab/ricci.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace curvlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x, int digits = 3) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// (n, k, t1) over {2..6} x {1..4} x {-1, -1/2, -3}.
std::vector<FamilyParams> standard_cases() {
    std::vector<FamilyParams> out;
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 4; ++k)
            for (const Rational& t1 : {Rational(-1), Rational(-1, 2), Rational(-3)}) out.push_back({n, k, t1});
    return out;
}

Outcome ode_residual() {
    int zero = 0, total = 0;
    for (const auto& p : standard_cases()) {
        ++total;
        zero += psieq_residual(p).is_zero();
    }
    return {zero == total, std::to_string(zero) + "/" + std::to_string(total) + " residuals are the zero function"};
}

Outcome coefficients() {
    int ok = 0, total = 0;
    for (const auto& p : standard_cases()) {
        ++total;
        const Rational n(p.n), k(p.k);
        const auto c = derive_coefficients(p);
        ok += c.c == n * k * (k + Rational(1)) + k * k * p.t1 && c.d == k * k * (k + Rational(1)) &&
              c.determinant() == Rational(2) * k * k * p.t1;
    }
    return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " cases reproduce c, d and ad-bc"};
}

Outcome discriminant() {
    int identity = 0, total = 0;
    long points = 0, sign_ok = 0, simplified_ok = 0;
    for (const auto& p : standard_cases()) {
        ++total;
        const auto family = build_phi(p);
        identity += components_closed_forms(family).discriminant().is_zero();
        const Rational k(p.k);
        for (const auto& u : default_grid(family, 100)) {
            ++points;
            const auto c = components(family, u);
            const Rational v = family.v(u);
            sign_ok += c.A.sign() > 0 && c.C.sign() > 0 && c.B.sign() < 0;
            simplified_ok += c.A * v * v * v == Rational(2) * k * k * p.t1 * p.t1 && c.B * v * v == k * p.t1 &&
                             c.C * v == Rational(2);
        }
    }
    const bool pass = identity == total && sign_ok == points && simplified_ok == points;
    return {pass, std::to_string(identity) + "/" + std::to_string(total) + " identities; signs " +
                      std::to_string(sign_ok) + "/" + std::to_string(points) + "; V-forms " +
                      std::to_string(simplified_ok) + "/" + std::to_string(points)};
}

Outcome spot_values() {
    const auto family = build_phi(FamilyParams{2, 1, Rational(-1)});
    const auto c = components(family, Rational(0));
    const auto cls = classify(c);
    const auto spec = ricci_eigenvalues(family, Rational(0));
    const bool pass = c.A == Rational(2, 27) && c.B == Rational(-1, 9) && c.C == Rational(2, 3) && cls.null_split &&
                      *cls.null_split == Rational(1, 4) && spec.lambda0 == Rational(-1, 27) &&
                      spec.lambda1 == Rational(5, 9);
    std::ostringstream os;
    os << "(A,B,C)=(" << c.A << "," << c.B << "," << c.C << ") s*=" << (cls.null_split ? cls.null_split->str() : "none")
       << " lambda0=" << spec.lambda0 << " lambda1=" << spec.lambda1;
    return {pass, os.str()};
}

Outcome fd_oracle() {
    double worst_rel = 0.0, worst_det = 0.0, worst_defect = 0.0;
    bool pass = true;
    for (int k = 1; k <= 3; ++k) {
        const auto family = build_phi(FamilyParams{2, k, Rational(-1)});
        for (const Rational& du : {Rational(1, 2), Rational(2), Rational(10)}) {
            const auto r = oracle_compare(family, family.u_min() + du);
            const double tol = du == Rational(1, 2) ? 1e-5 : 1e-6;
            pass = pass && r.max_rel_error() <= tol && r.kahler_defect <= 1e-7 && r.det_residual <= 1e-8;
            worst_rel = std::max(worst_rel, r.max_rel_error());
            worst_det = std::max(worst_det, r.det_residual);
            worst_defect = std::max(worst_defect, r.kahler_defect);
        }
    }
    return {pass, "max rel error " + fmt(worst_rel) + ", Kahler defect " + fmt(worst_defect) + ", det residual " +
                      fmt(worst_det) + " over 9 points"};
}

Outcome engine_sanity() {
    Point origin = Point::Zero(1);
    const auto one = chern_curvature(fubini_study_field(1, 1.0), origin);
    const double r1 = static_cast<double>(one.R(0, 0, 0, 0).real());

    const auto two_field = fubini_study_field(1, 2.0);
    const auto two = chern_curvature(two_field, origin);
    const double r2 = static_cast<double>(two.R(0, 0, 0, 0).real());
    const double g = static_cast<double>(two_field.components(origin)(0, 0).real());
    const double h = r2 / (g * g);

    const bool pass = std::fabs(r1 - 2.0) <= 1e-8 && std::fabs(r2 - 4.0) <= 1e-8 && std::fabs(h - 1.0) <= 1e-8;
    return {pass, "R(log(1+r))=" + fmt(r1, 12) + ", R(2log(1+r))=" + fmt(r2, 12) + ", H=" + fmt(h, 12)};
}

Outcome kappa_equivalence() {
    struct Cell {
        int n, k, brute[3], closed;
    };
    const Rational t1s[3] = {Rational(-1), Rational(-1, 2), Rational(-5)};
    std::vector<Cell> cells;
    for (int n = 2; n <= 30; ++n)
        for (int k = 1; k <= 10; ++k) cells.push_back({n, k, {0, 0, 0}, 0});
    parallel_for(cells.size(), [&](std::size_t i) {
        auto& c = cells[i];
        for (int j = 0; j < 3; ++j) c.brute[j] = kappa_prime(FamilyParams{c.n, c.k, t1s[j]});
        c.closed = kappa_prime_closed(c.n, c.k);
    });

    int mismatches = 0;
    bool t1_independent = true;
    const Cell* first = nullptr;
    int branch_mismatch[3] = {0, 0, 0};
    for (const auto& c : cells) {
        t1_independent = t1_independent && c.brute[0] == c.brute[1] && c.brute[1] == c.brute[2];
        if (c.brute[0] != c.closed) {
            ++mismatches;
            ++branch_mismatch[c.k == 1 ? 0 : (c.n >= c.k + 1 ? 1 : 2)];
            if (!first) first = &c;
        }
    }

    const auto kp = [](int n, int k) { return kappa_prime(FamilyParams{n, k, Rational(-1)}); };
    bool named = kp(8, 2) == 3 && kp(2, 3) == 2;
    for (int n = 2; n <= 30; ++n) named = named && kp(n, 1) == 2;
    for (int n = 3; n < 8; ++n) named = named && kp(n, 2) == 2;

    std::string detail = std::to_string(mismatches) + " of " + std::to_string(cells.size()) +
                         " cells disagree (k=1: " + std::to_string(branch_mismatch[0]) +
                         ", n>k: " + std::to_string(branch_mismatch[1]) + ", n<=k: " + std::to_string(branch_mismatch[2]) + ")";
    if (first)
        detail += "; first at (n,k)=(" + std::to_string(first->n) + "," + std::to_string(first->k) +
                  "): brute force " + std::to_string(first->brute[0]) + ", closed form " + std::to_string(first->closed);
    detail += named ? "; named values hold" : "; named values FAIL";
    detail += t1_independent ? "; t1-independent" : "; t1-DEPENDENT";
    return {mismatches == 0 && named && t1_independent, detail};
}

Outcome ricci_structure() {
    long points = 0, null_pos = 0, scalar_pos = 0;
    int witnessed = 0, total = 0;
    for (const auto& p : standard_cases()) {
        ++total;
        const auto family = build_phi(p);
        bool witness = false;
        for (const auto& u : default_grid(family, 100)) {
            ++points;
            const auto spec = ricci_eigenvalues(family, u);
            null_pos += ricci_at_null_direction(family, u).sign() > 0;
            scalar_pos += scalar_curvature(spec).sign() > 0;
            witness = witness || (spec.lambda0.sign() < 0 && spec.lambda1.sign() > 0);
        }
        witnessed += witness;
    }
    const bool pass = null_pos == points && scalar_pos == points && witnessed == total;
    return {pass, "-B>0 at " + std::to_string(null_pos) + "/" + std::to_string(points) + "; scalar>0 at " +
                      std::to_string(scalar_pos) + "/" + std::to_string(points) + "; lambda0<0<lambda1 witnessed in " +
                      std::to_string(witnessed) + "/" + std::to_string(total) + " families"};
}

Outcome products() {
    bool ranks = true;
    double worst_null = 0.0;
    bool spans = true;
    for (int n = 2; n <= 12; ++n) {
        const auto tp = theorem_product(n);
        ranks = ranks && product_rank(tp.factors) == (n + 1) / 2 && tp.expected_rank == (n + 1) / 2;
        const auto ns = null_span_check(tp.factors, 1000, 0x5eedULL + static_cast<unsigned>(n));
        worst_null = std::max(worst_null, ns.max_null_value);
        spans = spans && ns.ok;
    }
    const std::vector<FactorModel> pair{m2_factor(), ConstantFactor{1.0, 1}};
    const std::vector<VectorBlock> blocks{{0.5, 1.0}, {0.5, 0.0}};
    const double gap = std::fabs(naive_hsc_sum(pair, blocks) - product_hsc(pair, blocks));
    const bool pass = ranks && spans && worst_null <= 1e-12 && gap >= 0.1;
    return {pass, std::string("ranks ") + (ranks ? "match" : "MISMATCH") + "; max |H| on null spans " + fmt(worst_null) +
                      "; naive-sum gap " + fmt(gap)};
}

Outcome conformal() {
    real worst_residual = 0.0L;
    for (const real r : standard_r_grid()) worst_residual = std::max(worst_residual, std::fabs(conformal_ode_residual(r)));

    const auto report = conformal_curvature_checks(standard_conformal_grid());
    double worst_disc = 0.0;
    for (const auto& p : report.points) worst_disc = std::max(worst_disc, p.discriminant_residual);

    Point half(2);
    half << cplx(0.5L), cplx(0.5L);
    const double defect = kahler_defect(conformal_field(), half);

    bool both_finite = false;
    std::vector<real> sweep{kConformalExponent};
    for (int i = -20; i <= 20; ++i) sweep.push_back(0.25L * i);
    for (const real cc : sweep) {
        const auto [a, b] = boundary_behavior(cc);
        both_finite = both_finite || (a == Limit::FiniteNonzero && b == Limit::FiniteNonzero);
    }

    const bool pass = worst_residual <= 1e-10L && report.points.size() == 5 && worst_disc <= 1e-6 && defect >= 0.1 &&
                      !both_finite;
    return {pass, "ODE residual " + fmt(static_cast<double>(worst_residual)) + "; discriminant residual " +
                      fmt(worst_disc) + " at " + std::to_string(report.points.size()) + " points; Kahler defect " +
                      fmt(defect) + "; both-ends-finite " + (both_finite ? "FOUND" : "never")};
}

Outcome completeness() {
    bool monotone = true, integrals = true, reached = true;
    std::string reach;
    for (const FamilyParams& p :
         {FamilyParams{2, 1, Rational(-1)}, FamilyParams{3, 2, Rational(-1, 2)}, FamilyParams{4, 3, Rational(-3)}}) {
        const auto family = build_phi(p);
        std::vector<double> targets{0.0};
        for (double s = 0.25; s <= 32.0; s *= 2.0) targets.push_back(s);
        const auto samples = fiber_growth(family, Rational(0), targets);
        double first_past = -1.0;
        const double g0 = inverse_phi_antiderivative(family, 0.0);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (i > 0) monotone = monotone && samples[i].u > samples[i - 1].u;
            if (first_past >= 0.0) continue;
            const double closed = inverse_phi_antiderivative(family, samples[i].u) - g0;
            integrals = integrals && std::fabs(inverse_phi_integral(family, 0.0, samples[i].u) - closed) <= 1e-8;
            if (samples[i].u > 1e6) first_past = samples[i].s;
        }
        reached = reached && first_past > 0.0;
        reach += (reach.empty() ? "" : ", ") + describe(p) + " at s=" + fmt(first_past);
    }
    return {monotone && integrals && reached,
            std::string(monotone ? "monotone" : "NOT monotone") + "; U>1e6 reached: " + reach + "; integrals " +
                (integrals ? "match" : "MISMATCH")};
}

Outcome negative_controls() {
    const FamilyParams p{2, 1, Rational(-1)};
    auto coeffs = derive_coefficients(p);
    coeffs.c += Rational(1);
    const bool residual_nonzero = !psieq_residual(p, coeffs).is_zero();

    real worst = 0.0L;
    for (const real exponent : {1.5L, kConformalExponent * 1.1L})
        for (const real r : standard_r_grid())
            worst = std::max(worst, std::fabs(conformal_ode_residual(r, perturbed_factor(exponent))));

    const CurvatureComponents synthetic{Rational(1), Rational(0), Rational(-1), Rational(0)};
    const bool flagged = classify(synthetic).kind == HscKind::Indefinite;

    return {residual_nonzero && worst > 1e-2L && flagged,
            std::string("perturbed psi residual ") + (residual_nonzero ? "nonzero" : "ZERO") +
                "; perturbed exponent residual " + fmt(static_cast<double>(worst)) + "; synthetic triple " +
                (flagged ? "flagged indefinite" : "NOT flagged")};
}

struct Criterion {
    const char* title;
    std::function<Outcome()> body;
    double budget_seconds;  // 0 = no runtime bound
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"exact ODE residual", ode_residual, 5.0},
        {"coefficient derivation", coefficients, 0.0},
        {"discriminant identity", discriminant, 0.0},
        {"spot values", spot_values, 0.0},
        {"finite-difference oracle", fd_oracle, 30.0},
        {"engine sanity", engine_sanity, 0.0},
        {"kappa' equivalence", kappa_equivalence, 5.0},
        {"Ricci structure", ricci_structure, 0.0},
        {"products", products, 0.0},
        {"conformal metric", conformal, 0.0},
        {"completeness evidence", completeness, 0.0},
        {"negative controls", negative_controls, 0.0},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
            return 2;
        }
        selected.push_back(id);
    }
    if (selected.empty())
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);

    int failures = 0;
    for (const int id : selected) {
        const auto& c = criteria[static_cast<std::size_t>(id - 1)];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            o.pass = false;
            o.detail += "; over the " + fmt(c.budget_seconds) + " s budget";
        }
        failures += !o.pass;
        std::printf("%s %02d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, c.title, o.detail.c_str(), secs);
    }
    return failures == 0 ? 0 : 1;
}
