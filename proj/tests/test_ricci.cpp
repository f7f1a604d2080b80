#include "curvlab/curvature_model.hpp"
#include "curvlab/errors.hpp"
#include "curvlab/ricci.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace curvlab;

namespace {

FamilyParams P(int n, int k, Rational t1) { return FamilyParams{n, k, std::move(t1)}; }

// Every multiset of kappa eigenvalues drawn from the explicit list of n values.
bool subsets_positive(const std::vector<Rational>& values, int kappa) {
    const int n = static_cast<int>(values.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != kappa) continue;
        Rational sum(0);
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sum += values[static_cast<std::size_t>(i)];
        if (sum.sign() <= 0) return false;
    }
    return true;
}

// Smallest kappa with lambda0 + (kappa-1) lambda1 > 0 and (if kappa <= n-1)
// lambda1 > 0 for all V >= -t1, from floating-point eigenvalues: dense log
// sampling followed by a Brent refinement around the worst sample, so a
// tangency (infimum exactly zero) registers as non-positive.
int sampled_kappa_prime(int n, int k, double t1) {
    const auto normalized = [&](int kappa, double x) {
        const double v = -t1 * std::pow(10.0, x);
        const double l0 = (2.0 * k * k * t1 * t1 + (n - 1) * k * t1 * v) / (v * v * v);
        const double l1 = (k * t1 + n * v) / (v * v);
        const double scale = std::abs(l0) + std::abs(l1);
        double worst = (l0 + (kappa - 1) * l1) / scale;
        if (kappa <= n - 1) worst = std::min(worst, l1 / scale);
        return worst;
    };
    constexpr int samples = 4000;
    constexpr double span = 6.0;
    for (int kappa = 1; kappa <= n; ++kappa) {
        int best = 0;
        for (int i = 1; i <= samples; ++i)
            if (normalized(kappa, span * i / samples) < normalized(kappa, span * best / samples)) best = i;
        const double lo = span * std::max(0, best - 1) / samples, hi = span * std::min(samples, best + 1) / samples;
        const auto refined = boost::math::tools::brent_find_minima(
            [&](double x) { return normalized(kappa, x); }, lo, hi, 50);
        const double minimum = std::min(refined.second, normalized(kappa, span * best / samples));
        if (minimum > 1e-9) return kappa;
    }
    return -1;
}

}  // namespace

TEST_CASE("Ricci eigenvalues at the spot values", "[ricci]") {
    const auto f = build_phi(P(2, 1, Rational(-1)));
    const auto s = ricci_eigenvalues(f, Rational(0));
    CHECK(s.lambda0 == Rational(-1, 27));
    CHECK(s.lambda1 == Rational(5, 9));
    CHECK(s.v == Rational(3));
    CHECK(ricci_at_null_direction(f, Rational(0)) == Rational(1, 9));
    CHECK(ricci_at_null_direction(f, f.u_min()) == Rational(1));
    CHECK_THROWS_AS(ricci_eigenvalues(f, Rational(-2)), DomainError);
    CHECK_THROWS_AS(ricci_at_null_direction(f, Rational(-2)), DomainError);
}

TEST_CASE("eigenvalues match components and V-forms", "[ricci][property]") {
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 4; ++k)
            for (const Rational& t1 : {Rational(-1), Rational(-1, 2), Rational(-5)}) {
                const auto f = build_phi(P(n, k, t1));
                auto grid = default_grid(f);
                grid.push_back(f.u_min());
                const Rational kk(k), nn(n);
                for (const auto& u : grid) {
                    const auto s = ricci_eigenvalues(f, u);
                    const auto c = components(f, u);
                    REQUIRE(s.lambda0 == c.A + Rational(n - 1) * c.B);
                    REQUIRE(s.lambda1 == c.B + Rational(n, 2) * c.C);
                    const Rational& v = s.v;
                    REQUIRE(s.lambda0 * pow(v, 3) == Rational(2) * kk * kk * t1 * t1 + Rational(n - 1) * kk * t1 * v);
                    REQUIRE(s.lambda1 * v * v == kk * t1 + nn * v);
                    REQUIRE(ricci_at_null_direction(f, u).sign() > 0);
                    REQUIRE(scalar_curvature(s).sign() > 0);
                    REQUIRE(kappa_positive(s, n, n));
                }
            }
}

TEST_CASE("large U splits the Ricci signs", "[ricci]") {
    const auto f = build_phi(P(2, 1, Rational(-1)));
    const auto s = ricci_eigenvalues(f, Rational(1'000'000));
    CHECK(s.lambda0.sign() < 0);
    CHECK(s.lambda1.sign() > 0);
}

TEST_CASE("kappa_positive examples and errors", "[ricci]") {
    const auto f = build_phi(P(2, 1, Rational(-1)));
    const auto s = ricci_eigenvalues(f, Rational(0));
    CHECK(kappa_positive(s, 2, 2));
    CHECK(s.lambda0 + s.lambda1 == Rational(14, 27));
    CHECK_FALSE(kappa_positive(s, 2, 1));
    CHECK(kappa_set(s) == std::vector<int>{2});
    CHECK_THROWS_AS(kappa_positive(s, 2, 0), ArgumentError);
    CHECK_THROWS_AS(kappa_positive(s, 2, 3), ArgumentError);
}

TEST_CASE("kappa_positive matches subset enumeration", "[ricci][property]") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 400; ++t) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const RicciSpectrum s{testing::random_rational(rng), testing::random_rational(rng), Rational(1), n};
        std::vector<Rational> values{s.lambda0};
        for (int i = 1; i < n; ++i) values.push_back(s.lambda1);
        for (int kappa = 1; kappa <= n; ++kappa) REQUIRE(kappa_positive(s, n, kappa) == subsets_positive(values, kappa));
    }
}

TEST_CASE("kappa sets are closed upward", "[ricci][property]") {
    std::mt19937_64 rng(7);
    // The (kappa+1)-subsums average the kappa-subsums: each index set of size
    // kappa+1 sum equals (1/kappa) times the sum of its kappa-subsets' sums.
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const RicciSpectrum s{testing::random_rational(rng, 20, 9), testing::random_rational(rng, 20, 9), Rational(1), n};
        std::vector<Rational> values{s.lambda0};
        for (int i = 1; i < n; ++i) values.push_back(s.lambda1);
        for (int kappa = 1; kappa < n; ++kappa) {
            if (kappa_positive(s, n, kappa)) REQUIRE(kappa_positive(s, n, kappa + 1));
        }
        const int kappa = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        Rational big(0), sub_total(0);
        for (int i = 0; i <= kappa; ++i) big += values[static_cast<std::size_t>(i)];
        for (int drop = 0; drop <= kappa; ++drop)
            for (int i = 0; i <= kappa; ++i)
                if (i != drop) sub_total += values[static_cast<std::size_t>(i)];
        REQUIRE(big == sub_total / Rational(kappa));
    }
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 4; ++k) {
            const auto f = build_phi(P(n, k, Rational(-1)));
            for (const auto& u : default_grid(f)) {
                const auto s = ricci_eigenvalues(f, u);
                for (int kappa = 1; kappa < n; ++kappa)
                    if (kappa_positive(s, n, kappa)) REQUIRE(kappa_positive(s, n, kappa + 1));
            }
        }
}

TEST_CASE("kappa coefficients rebuild the kappa-sum", "[ricci][property]") {
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 3; ++k) {
            const auto params = P(n, k, Rational(-3, 2));
            const auto f = build_phi(params);
            for (int kappa = 1; kappa <= n; ++kappa) {
                const auto d = kappa_coefficients(params, kappa);
                CHECK(d.d0 == Rational(2 * k * k) * params.t1 * params.t1);
                CHECK(d.d1 == Rational((n + kappa - 2) * k) * params.t1);
                CHECK(d.d2 == Rational(n * (kappa - 1)));
                for (const auto& u : default_grid(f, 12)) {
                    const auto s = ricci_eigenvalues(f, u);
                    REQUIRE((s.lambda0 + Rational(kappa - 1) * s.lambda1) * pow(s.v, 3) == d(s.v));
                }
            }
        }
}

TEST_CASE("K_global decisions", "[ricci]") {
    for (int n = 2; n <= 12; ++n) {
        CHECK(K_global(P(n, 1, Rational(-1)), 2));
        const auto inf = kappa_infimum(P(n, 1, Rational(-3)), 2);
        CHECK(inf.bounded);
        CHECK_FALSE(inf.vertex_interior);
        CHECK(inf.argmin == Rational(3));
        CHECK(inf.value == Rational(18));
    }
    CHECK_FALSE(K_global(P(2, 1, Rational(-1)), 1));
    CHECK_FALSE(kappa_infimum(P(2, 1, Rational(-1)), 1).bounded);
    CHECK_FALSE(K_global(P(2, 3, Rational(-1)), 1));
    CHECK(K_global(P(2, 3, Rational(-1)), 2));
    CHECK_THROWS_AS(K_global(P(3, 2, Rational(-1)), 0), ArgumentError);
    CHECK_THROWS_AS(K_global(P(3, 2, Rational(-1)), 4), ArgumentError);
    CHECK_THROWS_AS(K_global(P(3, 2, Rational(1)), 2), ArgumentError);
}

TEST_CASE("lambda1 fails somewhere when n <= k", "[ricci]") {
    for (int k = 2; k <= 5; ++k)
        for (int n = 2; n <= k; ++n) {
            const auto params = P(n, k, Rational(-1));
            const auto f = build_phi(params);
            CHECK(ricci_eigenvalues(f, f.u_min()).lambda1.sign() <= 0);
            for (int kappa = 1; kappa < n; ++kappa) CHECK_FALSE(K_global(params, kappa));
            CHECK(K_global(params, n));
        }
}

TEST_CASE("kappa_prime named values", "[ricci]") {
    for (int n = 2; n <= 30; ++n) {
        CHECK(kappa_prime(P(n, 1, Rational(-1))) == 2);
        CHECK(kappa_prime_closed(n, 1) == 2);
    }
    CHECK(kappa_prime(P(8, 2, Rational(-1))) == 3);
    CHECK(kappa_prime_closed(8, 2) == 3);
    CHECK(floor_kappa_expression(8) == 3);
    for (int n = 3; n < 8; ++n) {
        CHECK(kappa_prime(P(n, 2, Rational(-1))) == 2);
        CHECK(kappa_prime_closed(n, 2) == 2);
    }
    CHECK(kappa_prime(P(2, 3, Rational(-1))) == 2);
    CHECK(kappa_prime_closed(2, 3) == 2);
    CHECK_THROWS_AS(kappa_prime_closed(1, 2), ArgumentError);
}

TEST_CASE("floor expression matches a long double reference away from squares", "[ricci]") {
    for (long n = 1; n <= 5000; ++n) {
        const long double x = 3.0L * n + 3.0L - std::sqrt(8.0L * n * (n + 1));
        const long nearest = std::lround(x);
        if (std::abs(x - nearest) < 1e-9L) continue;
        REQUIRE(floor_kappa_expression(n) == static_cast<long>(std::floor(x)));
    }
    // 8 n (n+1) is a perfect square exactly at n = 1, 8, 49, 288, ...
    CHECK(floor_kappa_expression(1) == 2);
    CHECK(floor_kappa_expression(49) == 150 - 140);
    CHECK(floor_kappa_expression(288) == 867 - 816);
}

TEST_CASE("brute-force kappa_prime is independent of t1 and matches sampling", "[ricci][property]") {
    for (int n = 2; n <= 30; ++n)
        for (int k = 1; k <= 10; ++k) {
            const int ref = kappa_prime(P(n, k, Rational(-1)));
            REQUIRE(kappa_prime(P(n, k, Rational(-1, 2))) == ref);
            REQUIRE(kappa_prime(P(n, k, Rational(-5))) == ref);
            if ((n + k) % 7 == 0) REQUIRE(sampled_kappa_prime(n, k, -1.0) == ref);
        }
}

TEST_CASE("vertex test and discriminant sign invariant under t1 scaling", "[ricci][property]") {
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k <= 6; ++k)
            for (int kappa = 2; kappa <= n; ++kappa) {
                const auto base = kappa_coefficients(P(n, k, Rational(-1)), kappa);
                const auto base_inf = kappa_infimum(P(n, k, Rational(-1)), kappa);
                for (const Rational& c : {Rational(1, 3), Rational(7, 2), Rational(11)}) {
                    const auto params = P(n, k, -c);
                    const auto d = kappa_coefficients(params, kappa);
                    const auto disc = d.d1 * d.d1 - Rational(4) * d.d0 * d.d2;
                    const auto base_disc = base.d1 * base.d1 - Rational(4) * base.d0 * base.d2;
                    REQUIRE(disc.sign() == base_disc.sign());
                    REQUIRE(kappa_infimum(params, kappa).vertex_interior == base_inf.vertex_interior);
                }
            }
}

TEST_CASE("brute force and closed form part ways at (14,2)", "[ricci]") {
    // The closed form assumes the vertex of D is interior; for k = 2 and
    // kappa >= 3 it is clamped to V = -t1 and the infimum is positive.
    const auto params = P(14, 2, Rational(-1));
    CHECK(kappa_prime(params) == 3);
    CHECK(sampled_kappa_prime(14, 2, -1.0) == 3);
    CHECK(kappa_prime_closed(14, 2) == 4);
    const auto inf = kappa_infimum(params, 3);
    CHECK_FALSE(inf.vertex_interior);
    CHECK(inf.value == Rational(2 * 4 - 15 * 2 + 14 * 2));
}

TEST_CASE("asymptotic ratio of the closed form", "[ricci]") {
    for (int n = 50; n <= 200; ++n) {
        const double ratio = static_cast<double>(kappa_prime_closed(n, 2)) / n;
        REQUIRE(ratio >= 0.12);
        REQUIRE(ratio <= 0.25);
    }
}
