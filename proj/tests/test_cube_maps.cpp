#include "doctest.h"

#include "hchow/cube_maps.hpp"

using namespace hchow;

namespace {
ZPoly x(int v) { return ZPoly::variable(v); }
ProjectiveRational pr(const std::string& s) { return ProjectiveRational::parse(s); }
}  // namespace

TEST_SUITE("cube_maps") {

TEST_CASE("polynomial gcd and reduction") {
    ZPoly a = (x(1) - 1) * (x(1) + x(2)) * (x(2) * 2 + 3);
    ZPoly b = (x(1) - 1) * (x(1) + x(2)).pow(2) * 6;
    CHECK(gcd(a, b) == (x(1) - 1) * (x(1) + x(2)));
    CHECK(gcd(ZPoly(12), ZPoly(18)) == ZPoly(6));
    CHECK(gcd(x(1) * x(2) * x(2) * 4, x(2) * x(3) * 6 + x(2) * 2) == x(2) * 2);
    CHECK(coprime_up_to_constants(x(1) + x(2) - x(1) * x(2), (x(1) - 1) * (x(2) - 1)));
    CHECK_FALSE(coprime_up_to_constants(x(1) * x(3) - x(2) * x(3), x(1) * x(1) - x(2) * x(2)));
    // x/(x-1) and 2x/(2x-2) reduce to the same pair
    CHECK(pr("x1/(x1 - 1)") == pr("(2*x1)/(2*x1 - 2)"));
    CHECK(pr("(x1 - 1)/(1 - x1)") == ProjectiveRational::polynomial(ZPoly(-1)));
    CHECK(divide_exact(x(1) * x(1) - 1, x(1) + 1) == x(1) - 1);
    CHECK_FALSE(divide_exact(x(1) * x(1) + 1, x(1) + 1).has_value());
}

TEST_CASE("text round trips") {
    ZPoly p = ZPoly::parse("-3*x1^2*x2 + x2 - 7 + 2*(x3 - 1)^2");
    CHECK(ZPoly::parse(p.to_string()) == p);
    CHECK(p.to_string() == "-3*x1^2*x2 + 2*x3^2 + x2 - 4*x3 - 5");
    CubeMap h = cube::h_map(1, 1);
    CHECK(h.to_string() == "map 2->1 : (-x1*x2 + x1 + x2)/(1)");
    CHECK(CubeMap::parse(h.to_string()) == h);
    CHECK(CubeMap::parse("map 2->1 : (x1 + x2 - x1*x2)/(1)") == h);
    CHECK(CubeMap::parse(cube::coface(2, 1, 2).to_string()) == cube::coface(2, 1, 2));
    CHECK_THROWS_AS(ZPoly::parse("x1 + * 2"), PolynomialError);
    CHECK_THROWS_AS(CubeMap::parse("map 1->2 : (x1)/(1)"), PolynomialError);
}

TEST_CASE("named maps on small cubes") {
    // coface(1, 0, 1): x -> (0, x)
    CubeMap d = cube::coface(1, 0, 1);
    REQUIRE(d.target() == 2);
    CHECK(d.component(1).is_zero());
    CHECK(d.component(2) == ProjectiveRational::variable(1));
    CHECK(cube::coface(1, 1, 1).component(1).is_infinity());
    // involution twice is the identity
    CubeMap s = cube::involution(1);
    CHECK(maps_equal(compose(s, s), cube::identity(1)));
    // h(1, 1) is t1 + t2 - t1 t2
    CHECK(cube::h_map(1, 1).component(1) == ProjectiveRational::polynomial(x(1) + x(2) - x(1) * x(2)));
    CHECK(maps_equal(compose(cube::identity(1), cube::h_map(1, 1)), cube::h_map(1, 1)));
    // pi_1 phi_1 delta^1_0 is the identity of the 1-cube
    CHECK(maps_equal(compose(cube::pi_phi(1), cube::coface(1, 0, 1)), cube::identity(1)));
    CHECK(maps_equal(compose(cube::tau(2), cube::tau(2)), cube::identity(2)));
    CHECK_THROWS(cube::coface(4, 0, 2));
    CHECK_THROWS(cube::h_map(0, 2));
    CHECK_THROWS_AS(maps_equal(cube::tau(2), cube::tau(3)), PolynomialError);
}

TEST_CASE("substitution of infinity and degenerate compositions") {
    // t = x1 + x2 - x1 x2 with x1 = infinity is infinity
    ProjectiveRational t = pr("x1 + x2 - x1*x2");
    auto r = t.substitute({ProjectiveRational::infinity(), ProjectiveRational::variable(1)});
    REQUIRE(r);
    CHECK(r->is_infinity());
    // x/(x-1)^2 vanishes at infinity
    auto w = pr("x1/(x1 - 1)^2").substitute({ProjectiveRational::infinity()});
    REQUIRE(w);
    CHECK(w->is_zero());
    // x1 / x2 at (0, 0) is undefined
    CubeMap f(2, {pr("x1/x2")});
    CubeMap g(1, {ProjectiveRational(), ProjectiveRational()});
    CHECK_THROWS_AS(compose(f, g), PolynomialError);
}

TEST_CASE("sigma_{n,m} is tau^m") {
    CHECK(maps_equal(cube::sigma_perm(2, 1), power(cube::tau(3), 1)));
    CHECK(maps_equal(cube::sigma_perm(1, 2), power(cube::tau(3), 2)));
    CHECK(maps_equal(cube::sigma_perm(2, 2), power(cube::tau(4), 2)));
    CHECK_FALSE(maps_equal(cube::sigma_perm(2, 1), cube::identity(3)));
}

TEST_CASE("identity suites up to the 4-cube") {
    Verdict a = verify_cocubical_relations(4);
    CHECK_MESSAGE(a.ok, a.failure);
    CHECK(a.checks > 100);
    Verdict b = verify_involution(4);
    CHECK_MESSAGE(b.ok, b.failure);
    Verdict c = verify_homotdelta(4);
    CHECK_MESSAGE(c.ok, c.failure);
    CHECK(c.checks == 2 * (2 + 3 + 4 + 5));
    Verdict d = verify_wn_equation(4);
    CHECK_MESSAGE(d.ok, d.failure);
    Verdict e = verify_sigma_tau(4, 3);
    CHECK_MESSAGE(e.ok, e.failure);
    Verdict f = verify_tau_face_relations(4);
    CHECK_MESSAGE(f.ok, f.failure);
}

TEST_CASE("a wrong identity is refuted") {
    // tau instead of the identity in the first homotdelta case
    CHECK_FALSE(maps_equal(compose(cube::pi_phi(2), cube::coface(1, 0, 2)), cube::tau(2)));
}

}
