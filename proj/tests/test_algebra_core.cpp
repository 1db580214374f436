#include <catch2/catch_amalgamated.hpp>

#include "homprob/graded_poly.hpp"
#include "homprob/linalg.hpp"
#include "homprob/partitions.hpp"
#include "homprob/poly_io.hpp"
#include "homprob/rational.hpp"

using namespace homprob;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(-2, -8) == Rational(1, 4));
    CHECK(Rational(6, -4).to_string() == "-3/2");
    CHECK(Rational(5).to_string() == "5");
}

TEST_CASE("rational arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::from_string("-22/121") == Rational(-2, 11));
    CHECK_THROWS(Rational::from_string("1/0"));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("factorials and double factorials") {
    CHECK(factorial(0) == BigInt(1));
    CHECK(factorial(5) == BigInt(120));
    CHECK(factorial(12) == BigInt(479001600));
    CHECK(double_factorial(-1) == BigInt(1));
    CHECK(double_factorial(0) == BigInt(1));
    CHECK(double_factorial(7) == BigInt(105));
    CHECK(double_factorial(8) == BigInt(384));
}

TEST_CASE("monomial degrees and parities") {
    GradedMonomial m{3, 2, true, true};  // x^3 t^2 eta dt
    CHECK(m.degree() == 0);
    CHECK(m.parity() == 0);
    GradedMonomial e{0, 0, true, false};
    CHECK(e.degree() == -1);
    CHECK(e.parity() == 1);
    GradedMonomial f{0, 0, false, true};
    CHECK(f.degree() == 1);
    CHECK(f.parity() == 1);
}

TEST_CASE("odd generators square to zero") {
    CHECK((GradedPoly::eta() * GradedPoly::eta()).is_zero());
    CHECK((GradedPoly::dt() * GradedPoly::dt()).is_zero());
}

TEST_CASE("odd generators anticommute, even generators commute") {
    GradedPoly eta = GradedPoly::eta(), dt = GradedPoly::dt();
    CHECK(dt * eta == -(eta * dt));
    CHECK(GradedPoly::x() * GradedPoly::t() == GradedPoly::t() * GradedPoly::x());
    CHECK(GradedPoly::x() * eta == eta * GradedPoly::x());
}

TEST_CASE("products respect graded commutativity on mixed polynomials") {
    GradedPoly a = parse_poly("x + 2*eta");
    GradedPoly b = parse_poly("t*dt - 3*x^2");
    GradedPoly c = parse_poly("eta*dt + t");
    CHECK(a * (b * c) == (a * b) * c);
    // parity-homogeneous pieces commute up to the sign of the parities
    GradedPoly odd1 = parse_poly("x*eta"), odd2 = parse_poly("t^2*dt");
    CHECK(odd1 * odd2 == -(odd2 * odd1));
}

TEST_CASE("powers expand binomially") {
    GradedPoly p = GradedPoly(1) + GradedPoly::x();
    GradedPoly expect = parse_poly("1 + 5*x + 10*x^2 + 10*x^3 + 5*x^4 + x^5");
    CHECK(p.pow(5) == expect);
    CHECK(p.pow(0) == GradedPoly(1));
}

TEST_CASE("partial derivatives and t-evaluation") {
    GradedPoly p = parse_poly("x^3*t^2 + 4*x*t - eta");
    CHECK(p.d_dx() == parse_poly("3*x^2*t^2 + 4*t"));
    CHECK(p.d_dt() == parse_poly("2*x^3*t + 4*x"));
    CHECK(p.eval_t(Rational(1)) == parse_poly("x^3 + 4*x - eta"));
    CHECK(p.eval_t(Rational(0)) == parse_poly("-eta"));
    GradedPoly withdt = parse_poly("x*dt + t*x");
    CHECK(withdt.eval_t(Rational(1, 2)) == parse_poly("1/2*x"));
}

TEST_CASE("degree and parity queries") {
    GradedPoly p = parse_poly("x^2 + t");
    CHECK(p.homogeneous_degree() == 0);
    CHECK(p.parity() == 0);
    GradedPoly mixed = parse_poly("x + eta");
    CHECK(!mixed.homogeneous_degree().has_value());
    CHECK(!mixed.parity().has_value());
    CHECK(mixed.parity_part(0) == GradedPoly::x());
    CHECK(mixed.parity_part(1) == GradedPoly::eta());
    CHECK(mixed.degree_part(-1) == GradedPoly::eta());
    CHECK(parse_poly("x^5 - 2*x").is_x_polynomial());
    CHECK(!parse_poly("x*t").is_x_polynomial());
    CHECK(parse_poly("x^7").max_x_degree() == 7);
}

TEST_CASE("printer emits canonical order and parser inverts it") {
    GradedPoly p = parse_poly("4*x*eta*dt - 8*x*t*eta*dt + 4*x^2*t - 4*x^2*t^2");
    CHECK(parse_poly(print_poly(p)) == p);
    CHECK(print_poly(GradedPoly()) == "0");
    CHECK(print_poly(parse_poly("x - x")) == "0");
    CHECK(print_poly(parse_poly("-x + 3")) == "3 - x");
    CHECK(print_poly(parse_poly("1/2 * x^2")) == "1/2*x^2");
}

TEST_CASE("parser rejects malformed input with positions") {
    CHECK_THROWS_AS(parse_poly("eta^2"), odd_power_error);
    CHECK_THROWS_AS(parse_poly("dt^3"), odd_power_error);
    CHECK_THROWS_AS(parse_poly("x^"), parse_error);
    CHECK_THROWS_AS(parse_poly("(x"), parse_error);
    CHECK_THROWS_AS(parse_poly("x + * 2"), parse_error);
    CHECK_THROWS_AS(parse_poly(""), parse_error);
    CHECK_THROWS_AS(parse_poly("y"), parse_error);
    try {
        parse_poly("x + $");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("parser handles rational coefficients and nesting") {
    CHECK(parse_poly("3/2*x - 1/2*x") == GradedPoly::x());
    CHECK(parse_poly("(1 + x)*(1 - x)") == parse_poly("1 - x^2"));
    CHECK(parse_poly("-(x - t)") == parse_poly("t - x"));
    CHECK(parse_poly("2*(x + 1)^2") == parse_poly("2 + 4*x + 2*x^2"));
}

TEST_CASE("set partition counts match the Bell numbers") {
    const unsigned long long bell[] = {0, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};
    for (unsigned n = 1; n <= 9; ++n) CHECK(partitions_of(n).size() == bell[n]);
    CHECK_THROWS_AS(enumerate_partitions(0), std::out_of_range);
    CHECK_THROWS_AS(enumerate_partitions(13), std::out_of_range);
}

TEST_CASE("partitions come in canonical block order") {
    const auto& p3 = partitions_of(3);
    REQUIRE(p3.size() == 5);
    for (const auto& pi : p3) {
        unsigned count = 0;
        for (std::size_t b = 0; b < pi.blocks.size(); ++b) {
            REQUIRE(!pi.blocks[b].empty());
            CHECK(std::is_sorted(pi.blocks[b].begin(), pi.blocks[b].end()));
            if (b > 0) CHECK(pi.blocks[b - 1].front() < pi.blocks[b].front());
            count += static_cast<unsigned>(pi.blocks[b].size());
        }
        CHECK(count == 3);
    }
    // every element appears exactly once in each partition
    for (const auto& pi : partitions_of(5)) {
        std::vector<bool> seen(5, false);
        for (const auto& b : pi.blocks)
            for (unsigned e : b) {
                CHECK(!seen[e]);
                seen[e] = true;
            }
    }
}

TEST_CASE("row reduction computes exact rank and nullspace") {
    Matrix m(3, 4);
    // rows: [1 2 3 4; 2 4 6 8; 0 1 1 1]
    m.at(0, 0) = Rational(1); m.at(0, 1) = Rational(2); m.at(0, 2) = Rational(3); m.at(0, 3) = Rational(4);
    m.at(1, 0) = Rational(2); m.at(1, 1) = Rational(4); m.at(1, 2) = Rational(6); m.at(1, 3) = Rational(8);
    m.at(2, 1) = Rational(1); m.at(2, 2) = Rational(1); m.at(2, 3) = Rational(1);
    CHECK(rank(m) == 2);
    auto ns = nullspace_basis(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) CHECK(vec_is_zero(m * v));
}

TEST_CASE("linear solve distinguishes consistent from inconsistent systems") {
    Matrix m(2, 2);
    m.at(0, 0) = Rational(1, 2); m.at(0, 1) = Rational(1, 3);
    m.at(1, 0) = Rational(1, 4); m.at(1, 1) = Rational(1, 5);
    Vec b{Rational(1), Rational(0)};
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    Vec mx = m * *x;
    CHECK(mx[0] == b[0]);
    CHECK(mx[1] == b[1]);

    Matrix singular(2, 2);
    singular.at(0, 0) = Rational(1); singular.at(0, 1) = Rational(2);
    singular.at(1, 0) = Rational(2); singular.at(1, 1) = Rational(4);
    CHECK(!solve(singular, Vec{Rational(1), Rational(3)}).has_value());
    CHECK(solve(singular, Vec{Rational(1), Rational(2)}).has_value());
}

TEST_CASE("span builder tracks independence incrementally") {
    SpanBuilder span(3);
    Vec v1{Rational(1), Rational(2), Rational(3)};
    Vec v2{Rational(2), Rational(4), Rational(6)};
    Vec v3{Rational(0), Rational(1), Rational(0)};
    CHECK(span.add(v1));
    CHECK(!span.add(v2));
    CHECK(span.add(v3));
    CHECK(span.dim() == 2);
    CHECK(span.contains(v1));
    Vec mix = v1;
    vec_add_scaled(mix, Rational(-7, 3), v3);
    CHECK(span.contains(mix));
    CHECK(!span.contains(Vec{Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("matrix products and column assembly") {
    Matrix a = Matrix::identity(3);
    Matrix cols = Matrix::from_columns({Vec{Rational(1), Rational(0), Rational(2)},
                                        Vec{Rational(0), Rational(1), Rational(1)}});
    CHECK(cols.rows() == 3);
    CHECK(cols.cols() == 2);
    Matrix prod = a * cols;
    CHECK(prod == cols);
    Vec image = cols * Vec{Rational(1), Rational(1)};
    CHECK(image == Vec{Rational(1), Rational(1), Rational(3)});
    CHECK_THROWS(Matrix::from_columns({Vec{Rational(1)}, Vec{Rational(1), Rational(2)}}));
}
