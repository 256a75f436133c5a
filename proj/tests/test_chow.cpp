#include "doctest.h"

#include "hchow/chow.hpp"

using namespace hchow;

namespace {

void check(const Verdict& v) {
    INFO(v.failure);
    CHECK(v.ok);
}

const Domain Q = Domain::rationals();

GradedComplex q_in(int degree, std::size_t r = 1) {
    std::size_t below = 0;
    return GradedComplex(Q, Orientation::Chain, degree, {r}, {Matrix(Q, below, r)});
}

}  // namespace

TEST_SUITE("chow_assembly") {
    TEST_CASE("building and validating the diagram") {
        ChowDiagram U = unit_chow_diagram(Q);
        check(validate_chow_diagram(U));
        GradedComplex R = q_in(0);
        ChainMap id = ChainMap::identity(R), zero = ChainMap::zero(R, R);
        CHECK_THROWS_WITH_AS(build_chow_diagram(R, R, R, R, R, id, zero, id, id),
                             doctest::Contains("g1 is not a quasi-isomorphism"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(build_chow_diagram(R, R, R, R, R, id, id, id, zero), doctest::Contains("i is not injective"),
                             std::invalid_argument);
        GradedComplex R1 = q_in(1);
        CHECK_THROWS_WITH_AS(
            build_chow_diagram(R, R, R, R1, R1, id, id, ChainMap::zero(R, R1), ChainMap::identity(R1)),
            doctest::Contains("not concentrated in degree 0"), std::invalid_argument);
        // g1 an inclusion into a complex with an extra acyclic summand.
        GradedComplex H(Q, Orientation::Chain, 0, {2, 1}, {Matrix(Q, 0, 2), Matrix::from_rows(Q, {{0}, {1}})});
        ChainMap g1(R, H, {{0, Matrix::from_rows(Q, {{1}, {0}})}}, "g1");
        ChainMap f1(R, H, {{0, Matrix::from_rows(Q, {{2}, {0}})}}, "f1");
        ChowDiagram D = build_chow_diagram(R, H, R, R, R, f1, g1, id, id);
        check(verify_hat_complex(D));
        check(chow_les_report(D).verdict);
    }

    TEST_CASE("the 5-tuple differential is the simple of the diagram") {
        check(verify_hat_complex(unit_chow_diagram(Q)));
        check(verify_hat_complex(split_chow_diagram(Q)));
        check(verify_hat_complex(green_form_instance().diagram));
        Rng rng(3);
        for (int t = 0; t < 10; ++t) check(verify_hat_complex(random_chow_diagram(rng, Q)));
    }

    TEST_CASE("d(0,0,0,0,a3) = (0,0,0,0,-d a3)") {
        GreenFormInstance G = green_form_instance();
        const ChowDiagram& D = G.diagram;
        HatElement x = hat_zero(D, 0);
        x.a3 = G.form(1, Matrix::from_rows(Q, {{1}}));
        HatElement y = hat_differential(D, x), expected = hat_zero(D, -1);
        expected.a3 = -(D.deligne.d(1) * x.a3);
        CHECK(y == expected);
        CHECK_FALSE(expected.a3.is_zero());
    }

    TEST_CASE("zeta, a and omega") {
        Rng rng(17);
        check(verify_structural_maps(unit_chow_diagram(Q)));
        check(verify_structural_maps(split_chow_diagram(Q)));
        check(verify_structural_maps(green_form_instance().diagram));
        for (int t = 0; t < 10; ++t) check(verify_structural_maps(random_chow_diagram(rng, Q)));
        // zeta of a pure cycle in the unit diagram: (Z, Z, 0, 0, 0) is a cycle
        // with zeta = Z.
        ChowDiagram U = unit_chow_diagram(Q);
        HatElement x = hat_zero(U, 0);
        x.z = Matrix::from_rows(Q, {{1}});
        x.a0 = Matrix::from_rows(Q, {{1}});
        x.a1 = Matrix::from_rows(Q, {{1}});
        CHECK(hat_pack(U, hat_differential(U, x)).is_zero());
        ChowMaps m = structural_maps(U);
        CHECK(m.zeta.at(0) * hat_pack(U, x) == x.z);
        CHECK(omega(U, x) == x.a1);
        CHECK_THROWS_AS(omega(U, hat_zero(U, -1)), std::invalid_argument);
        // a of a boundary vanishes in homology.
        GreenFormInstance G = green_form_instance();
        ChowMaps mg = structural_maps(G.diagram);
        HomologyBasis hc = homology_basis(mg.cone, 0), hh = homology_basis(mg.hat, 0);
        CHECK(hh.all_boundaries(mg.a.at(0) * hc.boundaries));
    }

    TEST_CASE("split instance: CHhat_0 = CH_0 + D_1 / im d") {
        ChowDiagram D = split_chow_diagram(Q);
        ChowLesReport r = chow_les_report(D);
        check(r.verdict);
        CHECK(r.chow.at(0) == 2);
        CHECK(r.chow.at(-1) == 0);
        CHECK(r.chow.at(1) == 0);
        CHECK(r.cone.at(0) == 1);
    }

    TEST_CASE("the long exact sequence ends in CH_0 -> 0") {
        ChowLesReport z = chow_les_report(unit_chow_diagram(Q));
        check(z.verdict);
        Rng rng(42);
        for (int t = 0; t < 30; ++t) {
            ChowDiagram D = random_chow_diagram(rng, Q);
            CHECK(D.total_rank() <= 16);
            ChowLesReport r = chow_les_report(D);
            INFO(r.to_string());
            check(r.verdict);
            CHECK(r.les.exact);
        }
    }

    TEST_CASE("quotient variant has the same homology") {
        Rng rng(9);
        check(chow_quotient_variant(green_form_instance().diagram).verdict);
        for (int t = 0; t < 10; ++t) check(chow_quotient_variant(random_chow_diagram(rng, Q)).verdict);
    }

    TEST_CASE("agreement displays on the Green-form instance") {
        GreenFormInstance G = green_form_instance();
        check(validate_chow_diagram(G.diagram));
        // Cohomology with supports is concentrated in degree 0 and one-dimensional.
        CHECK(G.diagram.cohomology.total_rank() == 1);
        auto cases = agreement_cases(G);
        REQUIRE(cases.size() == 5);
        for (const auto& c : cases) {
            INFO(c.name << ": " << c.detail);
            CHECK(c.corrected);
        }
        // Literal: the omega = 0 cycle and the pair display.
        CHECK(cases[1].literal);
        CHECK(cases[3].literal);
        // Not literal: the last slot rho(omega, g) = omega survives, h has the
        // wrong sign, and (0,0,-d a,0,-a) has boundary with last slot 2 d a.
        CHECK_FALSE(cases[0].literal);
        CHECK_FALSE(cases[2].literal);
        CHECK_FALSE(cases[4].literal);
    }
}
