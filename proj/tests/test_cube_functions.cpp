#include "doctest.h"

#include "hchow/cube_functions.hpp"

using namespace hchow;

namespace {
ProjectiveRational pr(const std::string& s) { return ProjectiveRational::parse(s); }
}  // namespace

TEST_SUITE("cube_representation") {

TEST_CASE("pullback basics") {
    CubeCalculus calc;
    CubeFunction u = CubeFunction::term(2, pr("x1*x2"));
    CHECK(calc.pullback(cube::identity(2), u) == u);
    // x1 x2 along the coface inserting 0 in slot 1 is 0
    CHECK(calc.pullback(cube::coface(1, 0, 1), u).is_zero());
    // x/(x-1)^2 along the involution is x(x-1); applying it twice returns it
    CubeFunction v = CubeFunction::term(1, pr("x1/(x1 - 1)^2"));
    CubeFunction w = calc.pullback(cube::involution(1), v);
    CHECK(w == CubeFunction::term(1, pr("x1^2 - x1")));
    CHECK(calc.pullback(cube::involution(1), w) == v);
    // scalars are split off and merged
    CubeFunction a = CubeFunction::term(1, pr("(2*x1)/(4*x1 - 4)"));
    CHECK(a == CubeFunction::term(1, pr("x1/(x1 - 1)"), mpq_class(1, 2)));
    CHECK((a - a).is_zero());
    CHECK_THROWS(calc.pullback(cube::coface(1, 1, 0), CubeFunction::term(1, pr("x1"))));
}

TEST_CASE("h_1 of x is t1 + t2 - t1 t2 and constants are fixed") {
    CubeCalculus calc;
    CHECK(calc.h(CubeFunction::term(1, pr("x1"))) == CubeFunction::term(2, pr("x1 + x2 - x1*x2")));
    for (int n = 1; n <= 3; ++n)
        CHECK(calc.h(CubeFunction::term(n, pr("1"))) == CubeFunction::term(n + 1, pr("1")));
}

TEST_CASE("H_{n,m} sign expansions") {
    CubeCalculus calc;
    Rng rng(5);
    CubeFunction a11 = random_00_element(rng, 1, 1);
    CHECK(calc.H(1, 1, a11) == -calc.h(calc.tau_star(1, a11)));
    CubeFunction a21 = random_00_element(rng, 2, 1);
    CHECK(calc.H(2, 1, a21) == calc.h(calc.tau_star(1, a21)) + calc.h(calc.tau_star(2, a21)));
    CHECK(calc.H(0, 2, random_00_element(rng, 0, 2)).is_zero());
    // an element outside the 00-part is rejected with the face named
    CubeFunction bad = CubeFunction::term(2, pr("1/((x1 - 1)*(x2 - 1))"));
    CHECK_THROWS_WITH_AS(calc.H(2, 0, bad), doctest::Contains("delta_2^0"), std::invalid_argument);
}

TEST_CASE("delta h lemma on normalized elements") {
    CubeCalculus calc;
    Rng rng(11);
    for (int n = 1; n <= 3; ++n)
        for (int t = 0; t < 5; ++t) {
            CubeFunction a = random_normalized_element(rng, n);
            CHECK(calc.normalized_violation(a) == std::nullopt);
            for (int i = 1; i <= n; ++i) CHECK(calc.face(i, 1, calc.h(a)).is_zero());
            Verdict v = verify_delta_h_lemma(calc, a);
            CHECK_MESSAGE(v.ok, v.failure);
        }
}

TEST_CASE("H_{n,m} homotopy on 00-part elements") {
    CubeCalculus calc;
    Rng rng(13);
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; n + m <= 3; ++m)
            for (int t = 0; t < 3; ++t) {
                CubeFunction a = random_00_element(rng, n, m);
                Verdict v = verify_hnm_homotopy(calc, n, m, a);
                CHECK_MESSAGE(v.ok, v.failure);
            }
}

TEST_CASE("a perturbed identity is refuted") {
    CubeCalculus calc;
    Rng rng(17);
    CubeFunction a = random_normalized_element(rng, 2);
    CubeFunction lhs = calc.differential(calc.h(a)) - calc.h(calc.face(1, 0, a));
    // at level 2 the right side is -a - tau^*(a)
    CHECK(lhs == -a - calc.tau_star(1, a));
    CHECK(lhs != -a + calc.tau_star(1, a));
}

TEST_CASE("pullback is functorial") {
    CubeCalculus calc;
    Rng rng(19);
    Verdict v = verify_pullback_functoriality(calc, rng, 3);
    CHECK_MESSAGE(v.ok, v.failure);
}

TEST_CASE("text round trip") {
    Rng rng(23);
    CubeFunction a = random_00_element(rng, 1, 2);
    CHECK(CubeFunction::parse(a.to_string()) == a);
    CHECK(CubeFunction::parse("level 2 : 0").is_zero());
    CHECK_THROWS(CubeFunction::parse("level 1 : [1] (x2)/(1)"));
}

TEST_CASE("w model carries extra degeneracies") {
    ExtraDegeneracies h;
    CubicalModule c = w_model(4, 1, &h);
    CHECK(c.rank(3) == 8);
    Verdict a = c.verify();
    CHECK_MESSAGE(a.ok, a.failure);
    Verdict b = verify_extra_degeneracies(c, h);
    CHECK_MESSAGE(b.ok, b.failure);
    Verdict r = verify_refined_equivalence(c, h, 3);
    CHECK_MESSAGE(r.ok, r.failure);
}

}
