#pragma once

#include "curvlab/rational_function.hpp"

#include <random>

namespace curvlab::testing {

inline Rational random_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 7) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, int max_degree = 3) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& x : c) x = random_rational(rng);
    return Polynomial(std::move(c));
}

inline RationalFunction random_ratfun(std::mt19937_64& rng, int max_degree = 3) {
    Polynomial den;
    while (den.is_zero()) den = random_polynomial(rng, max_degree);
    return RationalFunction(random_polynomial(rng, max_degree), den);
}

/// A rational point where every given function is finite.
template <typename... F>
Rational non_pole_point(std::mt19937_64& rng, const F&... fs) {
    for (;;) {
        const Rational x = random_rational(rng, 11, 5);
        if (((!fs.den()(x).is_zero()) && ...)) return x;
    }
}

}  // namespace curvlab::testing
