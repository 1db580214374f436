#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homprob/cone.hpp"
#include "homprob/gaussian.hpp"
#include "homprob/sym.hpp"
#include "homprob/truncated.hpp"
#include "test_support.hpp"

using namespace homprob;
using homprob::testing::random_ordinary_space;
using homprob::testing::two_point_space;

namespace {

TruncatedSpace three_point_space() {
    // masses 1/6, 1/3, 1/2 on the basis {1, d2, d3}; d1 = 1 - d2 - d3
    TruncatedSpace s;
    s.basis = {{"1", 0}, {"d2", 0}, {"d3", 0}};
    s.d = Matrix(3, 3);
    s.unit = 0;
    s.expectation = {Rational(1), Rational(1, 3), Rational(1, 2)};
    for (unsigned j = 0; j < 3; ++j) {
        s.product[{0, j}] = s.basis_vec(j);
        s.product[{j, 0}] = s.basis_vec(j);
    }
    for (unsigned i = 1; i < 3; ++i)
        for (unsigned j = 1; j < 3; ++j) s.product[{i, j}] = (i == j) ? s.basis_vec(i) : Vec(3);
    return s;
}

TruncatedSpace nonassociative_space() {
    TruncatedSpace s;
    s.basis = {{"1", 0}, {"u", 0}, {"v", 0}};
    s.d = Matrix(3, 3);
    s.unit = 0;
    s.expectation = {Rational(1), Rational(0), Rational(0)};
    for (unsigned j = 0; j < 3; ++j) {
        s.product[{0, j}] = s.basis_vec(j);
        s.product[{j, 0}] = s.basis_vec(j);
    }
    s.product[{1, 1}] = s.basis_vec(2);  // u*u = v
    s.product[{1, 2}] = s.basis_vec(0);  // u*v = 1
    s.product[{2, 1}] = s.basis_vec(0);
    s.product[{2, 2}] = Vec(3);  // v*v = 0
    return s;
}

}  // namespace

TEST_CASE("the two-point function algebra validates") {
    Report r = validate_space(two_point_space(Rational(1, 2)));
    INFO(r.to_text());
    CHECK(r.passed());
}

TEST_CASE("validation pinpoints a broken expectation") {
    TruncatedSpace s = two_point_space(Rational(1, 2));
    s.expectation[0] = Rational(0);
    Report r = validate_space(s);
    REQUIRE(!r.passed());
    const CheckResult* c = r.find("unit_expectation_one");
    REQUIRE(c != nullptr);
    CHECK(!c->passed);
}

TEST_CASE("validation pinpoints a non-associative product") {
    Report r = validate_space(nonassociative_space());
    REQUIRE(!r.passed());
    const CheckResult* c = r.find("product_associative");
    REQUIRE(c != nullptr);
    CHECK(!c->passed);
    CHECK(r.find("product_graded_commutative")->passed);
}

TEST_CASE("validation flags a differential that breaks the grading") {
    TruncatedSpace s = two_point_space(Rational(1, 3));
    s.d.at(0, 1) = Rational(1);  // degree 0 -> degree 0 entry
    Report r = validate_space(s);
    REQUIRE(!r.passed());
    CHECK(!r.find("differential_degree_one")->passed);
}

TEST_CASE("splitting the two-point space") {
    TruncatedSpace s = two_point_space(Rational(1, 2));
    Decomposition dec = decompose(s);
    CHECK(dec.B.empty());
    CHECK(dec.Bhat.empty());
    REQUIRE(dec.H.size() == 2);
    REQUIRE(dec.K.size() == 1);
    // K = delta - E(delta) * 1
    CHECK(dec.K[0] == Vec{Rational(-1, 2), Rational(1)});
    CHECK(s.expect(dec.K[0]).is_zero());
}

TEST_CASE("splitting the truncated polynomial complex") {
    TruncatedSpace s = gaussian_truncated_space(4);
    REQUIRE(validate_space(s).passed());
    Decomposition dec = decompose(s);
    CHECK(dec.B.size() == 5);
    CHECK(dec.Bhat.size() == 5);
    REQUIRE(dec.H.size() == 1);
    CHECK(dec.H[0] == s.unit_vec());
    CHECK(dec.K.empty());

    auto h = homology_ranks(s);
    CHECK(h[0] == 1);
    CHECK(h[-1] == 0);
}

TEST_CASE("the two-point cone kills the expectation kernel") {
    ConeResult cr = build_algebraic_cone(two_point_space(Rational(1, 2)));
    CHECK(cr.cone.dim() == 3);
    CHECK(cr.cone.basis[2].label == "ck1");
    CHECK(cr.cone.basis[2].degree == -1);
    CHECK(cr.cone.expectation[2].is_zero());
    // d of the new generator is the K vector
    CHECK(cr.cone.d.column(2) == Vec{Rational(-1, 2), Rational(1), Rational(0)});

    Report r = verify_cone(cr, {Vec{Rational(0), Rational(1)}}, 6);
    INFO(r.to_text());
    CHECK(r.passed());

    auto h = homology_ranks(cr.cone);
    CHECK(h[0] == 1);
    CHECK(h[-1] == 0);
}

TEST_CASE("the three-point cone has one homology class") {
    ConeResult cr = build_algebraic_cone(three_point_space());
    CHECK(cr.cone.dim() == 5);
    Report r = verify_cone(
        cr, {Vec{Rational(0), Rational(1), Rational(0)}, Vec{Rational(0), Rational(0), Rational(1)}},
        5);
    INFO(r.to_text());
    CHECK(r.passed());
}

TEST_CASE("cone products scale new generators by unit coordinates") {
    ConeResult cr = build_algebraic_cone(two_point_space(Rational(1, 2)));
    const TruncatedSpace& c = cr.cone;
    // delta = (delta - 1/2) + 1/2 * 1, so the unit coordinate is 1/2
    auto kd = c.basis_product(2, 1);
    REQUIRE(kd.has_value());
    CHECK(*kd == Vec{Rational(0), Rational(0), Rational(1, 2)});
    // unit times the generator is the generator
    CHECK(*c.basis_product(2, 0) == Vec{Rational(0), Rational(0), Rational(1)});
    // generator squared is zero
    CHECK(vec_is_zero(*c.basis_product(2, 2)));
}

TEST_CASE("the cone product cannot be associative on the new generator") {
    ConeResult cr = build_algebraic_cone(two_point_space(Rational(1, 2)));
    const TruncatedSpace& c = cr.cone;
    Vec k = c.basis_vec(2), delta = c.basis_vec(1);
    Vec left = *c.mul(*c.mul(k, delta), delta);   // (k*delta)*delta = 1/4 k
    Vec right = *c.mul(k, *c.mul(delta, delta));  // k*(delta*delta) = 1/2 k
    CHECK(left == Vec{Rational(0), Rational(0), Rational(1, 4)});
    CHECK(right == Vec{Rational(0), Rational(0), Rational(1, 2)});
    CHECK(left != right);
}

TEST_CASE("corrupting a generator product is invisible to the five checks") {
    // the checks only look at the embedded image, homology and
    // expectations, so a wrong product on the added generator passes
    ConeResult cr = build_algebraic_cone(two_point_space(Rational(1, 2)));
    cr.cone.product[{2, 2}] = cr.cone.unit_vec();
    Report r = verify_cone(cr, {Vec{Rational(0), Rational(1)}}, 6);
    INFO(r.to_text());
    CHECK(r.passed());
}

TEST_CASE("corrupting the differential breaks the homology check") {
    ConeResult cr = build_algebraic_cone(two_point_space(Rational(1, 2)));
    for (unsigned i = 0; i < cr.cone.dim(); ++i) cr.cone.d.at(i, 2) = Rational(0);
    Report r = verify_cone(cr, {}, 6);
    REQUIRE(!r.passed());
    const CheckResult* c = r.find("homology_point");
    REQUIRE(c != nullptr);
    CHECK(!c->passed);
    CHECK(c->detail.find("degree 0 has dimension 2") != std::string::npos);
}

TEST_CASE("cumulants in a function algebra match the moment route") {
    TruncatedSpace s = three_point_space();
    Vec d2 = s.basis_vec(1);
    // an indicator with mass p has all moments equal to p
    std::vector<Rational> moments(6, Rational(1, 3));
    for (unsigned n = 1; n <= 6; ++n) {
        auto k = space_cumulant(s, std::vector<Vec>(n, d2));
        REQUIRE(k.has_value());
        CHECK(*k == cumulant_from_moments(moments, n));
    }
    // third cumulant of an indicator: p(1-p)(1-2p)
    Rational p(1, 3);
    auto k3 = space_cumulant(s, {d2, d2, d2});
    CHECK(*k3 == p * (Rational(1) - p) * (Rational(1) - Rational(2) * p));
}

TEST_CASE("cumulant arguments must live in degree zero") {
    TruncatedSpace s = gaussian_truncated_space(3);
    Vec eta = s.basis_vec(5);  // an odd basis vector
    REQUIRE(s.basis[5].degree == -1);
    CHECK_THROWS_AS(space_cumulant(s, {eta}), std::invalid_argument);
}

TEST_CASE("cumulants out of the truncation window report nullopt") {
    TruncatedSpace s = gaussian_truncated_space(2);
    Vec x = s.basis_vec(1);
    // x^4 is outside the window, so the order-4 moment is unavailable
    CHECK(!space_cumulant(s, {x, x, x, x}).has_value());
    auto k2 = space_cumulant(s, {x, x});
    REQUIRE(k2.has_value());
    CHECK(*k2 == Rational(1));
}

TEST_CASE("random function algebras always cone to a point") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_int_distribution<unsigned> mdist(2, 4);
        unsigned m = mdist(rng);
        TruncatedSpace s = random_ordinary_space(rng, m);
        INFO("trial " << trial << " with " << m << " points");
        REQUIRE(validate_space(s).passed());
        ConeResult cr = build_algebraic_cone(s);
        std::vector<Vec> probes;
        for (unsigned i = 1; i < s.dim(); ++i) probes.push_back(s.basis_vec(i));
        Report r = verify_cone(cr, probes, 4);
        INFO(r.to_text());
        CHECK(r.passed());
        CHECK(cr.cone.dim() == 2 * s.dim() - 1);
    }
}

TEST_CASE("coning the truncated polynomial complex changes nothing") {
    // its expectation kernel on homology is already trivial
    TruncatedSpace s = gaussian_truncated_space(4);
    ConeResult cr = build_algebraic_cone(s);
    CHECK(cr.cone.dim() == s.dim());
    Report r = verify_cone(cr, {s.basis_vec(1)}, 4);
    INFO(r.to_text());
    CHECK(r.passed());
}
