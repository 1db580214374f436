#pragma once

#include <random>
#include <string>
#include <vector>

#include "homprob/truncated.hpp"

namespace homprob::testing {

/// Function algebra on a finite set of points with random positive rational
/// masses summing to one: basis {1, d2, .., dm} where di is the indicator
/// of point i (the first indicator is eliminated against the unit), all in
/// degree zero with zero differential.
inline TruncatedSpace random_ordinary_space(std::mt19937& rng, unsigned points) {
    std::uniform_int_distribution<long long> w(1, 9);
    std::vector<long long> weights(points);
    long long total = 0;
    for (auto& x : weights) {
        x = w(rng);
        total += x;
    }
    TruncatedSpace s;
    s.basis.push_back({"1", 0});
    for (unsigned i = 1; i < points; ++i)
        s.basis.push_back({"d" + std::to_string(i + 1), 0});
    unsigned n = points;
    s.d = Matrix(n, n);
    s.unit = 0;
    s.expectation.resize(n);
    s.expectation[0] = Rational(1);
    for (unsigned i = 1; i < n; ++i) s.expectation[i] = Rational(weights[i], total);
    for (unsigned j = 0; j < n; ++j) {
        s.product[{0, j}] = s.basis_vec(j);
        s.product[{j, 0}] = s.basis_vec(j);
    }
    for (unsigned i = 1; i < n; ++i)
        for (unsigned j = 1; j < n; ++j)
            s.product[{i, j}] = (i == j) ? s.basis_vec(i) : Vec(n);
    return s;
}

inline TruncatedSpace two_point_space(const Rational& p) {
    TruncatedSpace s;
    s.basis = {{"1", 0}, {"delta", 0}};
    s.d = Matrix(2, 2);
    s.unit = 0;
    s.expectation = {Rational(1), p};
    s.product[{0, 0}] = s.basis_vec(0);
    s.product[{0, 1}] = s.basis_vec(1);
    s.product[{1, 0}] = s.basis_vec(1);
    s.product[{1, 1}] = s.basis_vec(1);
    return s;
}

}  // namespace homprob::testing
