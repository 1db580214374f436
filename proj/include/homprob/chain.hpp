#pragma once

#include <functional>
#include <vector>

#include "homprob/graded_poly.hpp"
#include "homprob/poly_io.hpp"
#include "homprob/report.hpp"

namespace homprob {

/// Linear map on polynomials together with the degree it shifts by.
/// Linearity is the caller's promise; tests spot-check it.
struct LinearOperator {
    std::function<GradedPoly(const GradedPoly&)> apply;
    int degree_shift = 1;

    GradedPoly operator()(const GradedPoly& p) const { return apply(p); }
};

/// A chain complex of polynomials with a graded-commutative product (the
/// ambient polynomial multiplication), a distinguished unit and an
/// expectation functional. The defining laws E(1) = 1, E after d = 0 and
/// d after d = 0 are checked by the routines below, not assumed.
struct ProbabilitySpace {
    LinearOperator differential;
    std::function<Rational(const GradedPoly&)> expectation;
    GradedPoly unit = GradedPoly(1);
};

inline Report check_d_squared(const ProbabilitySpace& space,
                              const std::vector<GradedPoly>& test_set) {
    Report r;
    for (const auto& v : test_set) {
        GradedPoly dd = space.differential(space.differential(v));
        if (!dd.is_zero()) {
            r.add("d_squared_zero", false,
                  "witness " + print_poly(v) + ", d(d(v)) = " + print_poly(dd));
            return r;
        }
    }
    r.add("d_squared_zero", true,
          "verified on " + std::to_string(test_set.size()) + " elements");
    return r;
}

/// Checks E(1) = 1 and E(d(x^k eta)) = 0 for k up to the bound; the spanning
/// family x^k eta exhausts the odd part of the polynomial complex degreewise.
inline Report check_expectation_chain_map(const ProbabilitySpace& space, unsigned degree_bound) {
    Report r;
    Rational e1 = space.expectation(space.unit);
    r.add("unit_expectation_one", e1 == Rational(1), "E(1) = " + e1.to_string());
    for (unsigned k = 0; k <= degree_bound; ++k) {
        GradedPoly v = GradedPoly::x(k) * GradedPoly::eta();
        Rational ed = space.expectation(space.differential(v));
        if (!ed.is_zero()) {
            r.add("expectation_kills_boundaries", false,
                  "witness " + print_poly(v) + ", E(d(v)) = " + ed.to_string());
            return r;
        }
    }
    r.add("expectation_kills_boundaries", true,
          "E(d(x^k*eta)) = 0 for k <= " + std::to_string(degree_bound));
    return r;
}

}  // namespace homprob
