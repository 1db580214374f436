#include <iostream>
#include <vector>

#include "homprob/homprob.hpp"

using namespace homprob;

int main() {
    ProbabilitySpace g = gaussian_space();

    std::cout << "Moments and cumulants of x (standard Gaussian window):\n";
    for (unsigned n = 1; n <= 8; ++n) {
        Rational m = gauss_E(GradedPoly::x(n));
        Rational k = total_cumulant(g, std::vector<GradedPoly>(n, GradedPoly::x()));
        std::cout << "  n = " << n << "   E(x^n) = " << m.to_string()
                  << "   k_n(x) = " << k.to_string() << "\n";
    }

    std::cout << "\nMoments and cumulants of x^2 (one degree of freedom):\n";
    GradedPoly sq = GradedPoly::x(2);
    for (unsigned n = 1; n <= 4; ++n) {
        Rational m = gauss_E(sq.pow(n));
        Rational k = total_cumulant(g, std::vector<GradedPoly>(n, sq));
        std::cout << "  n = " << n << "   E(x^2n) = " << m.to_string()
                  << "   k_n(x^2) = " << k.to_string() << "\n";
    }

    std::cout << "\nPrimitives y_n with d(y_n) = x^n - E(x^n):\n";
    for (unsigned n = 1; n <= 6; ++n)
        std::cout << "  y_" << n << " = " << print_poly(y_n(n)) << "\n";

    std::cout << "\nThe expectation is a chain map but not an algebra map:\n";
    GradedPoly defect = gauss_d(GradedPoly::eta() * GradedPoly::x()) -
                        gauss_d(GradedPoly::eta()) * GradedPoly::x() +
                        GradedPoly::eta() * gauss_d(GradedPoly::x());
    std::cout << "  d(eta x) - d(eta) x + eta d(x) = " << print_poly(defect) << "\n";
    std::cout << "  matching the binary bracket l_2(eta, x) = "
              << print_poly(transported_bracket(g, {GradedPoly::eta(), GradedPoly::x()})) << "\n";

    std::cout << "\nPath components joining the collections of x and -x:\n";
    GradedPoly x = GradedPoly::x();
    for (unsigned n = 1; n <= 4; ++n)
        std::cout << "  Lambda_" << n << " = " << print_poly(lambda_n(x, -x, n)) << "\n";
    for (unsigned n = 1; n <= 4; ++n)
        std::cout << "  H_" << n << " = " << print_poly(big_h_n(x, -x, n)) << "\n";

    Report r = verify_homotopy(x, -x, 6);
    std::cout << "\n" << r.to_text();
    return r.passed() ? 0 : 1;
}
