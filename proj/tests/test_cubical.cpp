#include "doctest.h"

#include "hchow/cubical_models.hpp"

using namespace hchow;

namespace {
const Domain QQ = Domain::rationals();
}

TEST_SUITE("cubical_normalization") {

TEST_CASE("standard interval: level ranks and normalized piece") {
    CubicalModule c = cube_subset_module(QQ, 1, 3, {"*"});
    CHECK(c.verify().ok);
    // level 1 has x, 0, 1
    CHECK(c.rank(1) == 3);
    Matrix n1 = normalized_basis(c, 1);
    CHECK(n1.cols() == 1);
    // the normalized vector is x - c1 up to scale: zero under delta^1 only
    CHECK((c.delta(1, 1, 1) * n1).is_zero());
    CHECK_FALSE((c.delta(1, 1, 0) * n1).is_zero());
    GradedComplex N = normalize(c).n_inclusion.source;
    CHECK(homology(N, 0).free_rank == 1);
    CHECK(homology(N, 1).is_zero());
    CHECK(homology(N, 2).is_zero());
}

TEST_CASE("unnormalized complex of a point is not acyclic") {
    CubicalModule pt = cube_subset_module(QQ, 0, 3, {""});
    GradedComplex C = associated_complex(pt);
    for (int n = 0; n <= 3; ++n) CHECK(homology(C, n).free_rank == 1);
    GradedComplex N = normalize(pt).n_inclusion.source;
    CHECK(homology(N, 0).free_rank == 1);
    for (int n = 1; n <= 3; ++n) CHECK(homology(N, n).is_zero());
    CHECK(verify_normalization_split(pt).ok);
}

TEST_CASE("boundary of the square has circle homology") {
    CubicalModule c = cube_subset_module(QQ, 2, 3, {"0*", "1*", "*0", "*1"});
    CHECK(c.verify().ok);
    GradedComplex C = normalize(c).n_inclusion.source;
    CHECK(homology(C, 0).free_rank == 1);
    CHECK(homology(C, 1).free_rank == 1);
    CHECK(homology(C, 2).is_zero());
    CHECK(verify_normalization_split(c).ok);
}

TEST_CASE("sphere quotient concentrates homology in the top cell degree") {
    CubicalModule c = cube_subset_module(QQ, 2, 3, {"**"}, {"0*", "1*", "*0", "*1"});
    CHECK(c.verify().ok);
    GradedComplex C = normalize(c).n_inclusion.source;
    CHECK(homology(C, 0).is_zero());
    CHECK(homology(C, 1).is_zero());
    CHECK(homology(C, 2).free_rank == 1);
}

TEST_CASE("random modules split as N + D") {
    Rng rng(17);
    for (int t = 0; t < 8; ++t) {
        CubicalModule c = random_cubical_module(rng, QQ, 3);
        Verdict v = c.verify();
        CHECK_MESSAGE(v.ok, v.failure);
        Verdict s = verify_normalization_split(c);
        CHECK_MESSAGE(s.ok, s.failure);
    }
}

TEST_CASE("broken identities are reported") {
    CubicalModule c = cube_subset_module(QQ, 1, 2, {"*"});
    Matrix f = c.delta(2, 1, 0);
    c.set_delta(2, 1, 0, c.delta(2, 1, 1));
    c.set_delta(2, 1, 1, f);
    CHECK_FALSE(c.verify().ok);
}

TEST_CASE("multilinear and constant models carry extra degeneracies") {
    ExtraDegeneracies h1, h2;
    CubicalModule m = multilinear_module(QQ, 4, &h1);
    CubicalModule k = constant_module(QQ, 4, &h2);
    CHECK(m.verify().ok);
    CHECK(k.verify().ok);
    Verdict e1 = verify_extra_degeneracies(m, h1);
    CHECK_MESSAGE(e1.ok, e1.failure);
    CHECK(verify_extra_degeneracies(k, h2).ok);
    Verdict r1 = verify_refined_equivalence(m, h1, 3);
    CHECK_MESSAGE(r1.ok, r1.failure);
    CHECK(verify_refined_equivalence(k, h2, 3).ok);
}

TEST_CASE("refined equivalence survives sums and changes of basis") {
    Rng rng(23);
    ExtraDegeneracies h1, h2;
    CubicalModule m = multilinear_module(QQ, 4, &h1);
    CubicalModule k = constant_module(QQ, 4, &h2);
    ExtraDegeneracies h = direct_sum(m, h1, k, h2);
    CubicalModule s = recoordinatize(rng, direct_sum(m, k), &h);
    CHECK(s.verify().ok);
    CHECK(verify_extra_degeneracies(s, h).ok);
    Verdict r = verify_refined_equivalence(s, h, 3);
    CHECK_MESSAGE(r.ok, r.failure);
}

TEST_CASE("normalized cohomology of cubical cochain complexes") {
    Rng rng(29);
    for (int t = 0; t < 5; ++t) {
        CubicalCochainComplex x = random_cubical_cochain_complex(rng, QQ, 3);
        Verdict v = x.verify();
        CHECK_MESSAGE(v.ok, v.failure);
        Verdict w = verify_normalized_cohomology(x);
        CHECK_MESSAGE(w.ok, w.failure);
    }
}

}
