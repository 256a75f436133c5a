#include "doctest.h"

#include "hchow/diagram.hpp"
#include "hchow/linalg.hpp"

using namespace hchow;

namespace {
const Domain QQ = Domain::rationals();
const Domain F7 = Domain::prime(7);

GradedComplex ring_in_degree(Domain dom, int k, std::size_t r = 1) {
    return GradedComplex(dom, Orientation::Chain, k, {r}, {Matrix(dom, 0, r)});
}

std::size_t total_dim(const ExactSequenceReport& r) {
    std::size_t s = 0;
    for (auto d : r.dims) s += d;
    return s;
}
}  // namespace

TEST_SUITE("beilinson_diagrams") {

TEST_CASE("simple complexes of small diagrams") {
    // size 0: s(D) = A^1
    GradedComplex A = ring_in_degree(QQ, 1, 2);
    Diagram D0 = make_diagram({A}, {}, {}, {});
    DiagramSimple s0 = simple_of_diagram(D0);
    CHECK(s0.complex.rank(1) == 2);
    CHECK(homology(s0.complex, 1).free_rank == 2);

    // all pieces Q in degree 0 with identity maps, size 2: phi is onto
    Diagram U = unit_diagram(QQ, 2);
    DiagramSimple su = simple_of_diagram(U);
    CHECK(su.complex.rank(0) == 3);
    CHECK(su.complex.rank(-1) == 2);
    CHECK(homology(su.complex, 0).free_rank == 1);
    CHECK(homology(su.complex, -1).free_rank == 0);

    // the short shape (no A^3) with identities is acyclic: rho is the identity
    GradedComplex R = ring_in_degree(QQ, 0), Z = GradedComplex::zero(QQ, Orientation::Chain);
    ChainMap id = ChainMap::identity(R);
    Diagram S = make_diagram({R, R, Z}, {R, R}, {id, id}, {id, ChainMap::zero(Z, R)});
    DiagramSimple ss = simple_of_diagram(S);
    CHECK(homology(ss.complex, 0).is_zero());
    CHECK(homology(ss.complex, -1).is_zero());
    CHECK(rho_on_homology(S, 0) == Matrix::identity(QQ, 1));

    // bad shapes are rejected
    CHECK_THROWS_AS(make_diagram({R, R}, {R}, {id}, {ChainMap::identity(A)}), ShapeError);
}

TEST_CASE("tensor diagrams") {
    Rng rng(11);
    Diagram D = random_diagram(rng, QQ, 2, {0, 1, 2});
    Diagram T = tensor_diagram(D, unit_diagram(QQ, 2));
    for (int i = 0; i < 3; ++i)
        for (int k = -1; k <= 3; ++k) CHECK(T.A[i].rank(k) == D.A[i].rank(k));
    CHECK(T.verify().ok);
    Diagram E = random_diagram(rng, QQ, 2, {0, 1, 2});
    Diagram DE = tensor_diagram(D, E);
    CHECK(DE.verify().ok);
    for (int k = 0; k <= 2; ++k) {
        std::size_t expect = 0;
        for (int p = 0; p <= k; ++p) expect += D.B[0].rank(p) * E.B[0].rank(k - p);
        CHECK(DE.B[0].rank(k) == expect);
    }
    CHECK_THROWS_AS(tensor_diagram(D, unit_diagram(QQ, 1)), ShapeError);
}

TEST_CASE("star products on pure components") {
    // A^1 = A^2 = Q in degree 0, B^1 = Q in degrees 0 and 1 with zero differential
    GradedComplex R = ring_in_degree(QQ, 0);
    GradedComplex B(QQ, Orientation::Chain, 0, {1, 1}, {Matrix(QQ, 0, 1), Matrix(QQ, 1, 1)});
    auto scalar = [&](long c) { return ChainMap(R, B, {{0, Matrix::from_rows(QQ, {{c}})}}, "c"); };
    Diagram D = make_diagram({R, R}, {B}, {scalar(1)}, {scalar(2)});
    Diagram E = make_diagram({R, R}, {B}, {scalar(3)}, {scalar(5)});
    StarProduct s0 = star_product(0, D, E);
    StarProduct s3 = star_product(3, D, E);
    int p = 0, q = 0;
    Matrix x(QQ, s0.sd.complex.rank(p), 1), y(QQ, s0.se.complex.rank(q), 1);
    x.set(s0.sd.a_index(p, 1, 0), 0, 1);
    y.set(s0.se.a_index(q, 1, 0), 0, 1);
    // a * a' = a (x) a' for every beta
    Matrix xy = s0.apply(p, x, q, y);
    CHECK(xy == s3.apply(p, x, q, y));
    Matrix expect(QQ, s0.target.complex.rank(p + q), 1);
    TensorProduct ta = tensor(D.A[0], E.A[0]);
    expect.set(s0.target.a_index(p + q, 1, ta.index(p, 0, q, 0, E.A[0].rank(q))), 0, 1);
    CHECK(xy == expect);
    // b * a' at beta = 0 is b (x) f'_1(a')
    Matrix xb(QQ, s0.sd.complex.rank(p), 1);
    xb.set(s0.sd.b_index(p, 1, 0), 0, 1);
    Matrix ba = s0.apply(p, xb, q, y);
    Matrix want(QQ, s0.target.complex.rank(p + q), 1);
    TensorProduct tb = tensor(D.B[0], E.B[0]);
    Matrix fa = E.f[0].at(q).col(0);
    for (std::size_t c = 0; c < fa.rows(); ++c)
        want.set(s0.target.b_index(p + q, 1, tb.index(p + 1, 0, q, c, E.B[0].rank(q))), 0, fa(c, 0));
    CHECK(ba == want);
    // b * b' = 0
    for (int q2 = -1; q2 <= 1; ++q2) {
        if (!E.B[0].rank(q2 + 1)) continue;
        Matrix yb(QQ, s0.se.complex.rank(q2), 1);
        yb.set(s0.se.b_index(q2, 1, 0), 0, 1);
        CHECK(s3.apply(p, xb, q2, yb).is_zero());
    }
}

TEST_CASE("star products: chain map, homology, swap and associativity") {
    Rng rng(42);
    for (int trial = 0; trial < 4; ++trial) {
        Domain dom = trial % 2 ? F7 : QQ;
        Diagram D = random_diagram(rng, dom, 2, {0, 1, 2});
        Diagram E = random_diagram(rng, dom, 2, {0, 1, 2});
        for (long beta : {-1L, 0L, 1L, 2L}) {
            Verdict c = verify_star_chain_map(star_product(beta, D, E));
            CHECK_MESSAGE(c.ok, c.failure);
            Verdict s = verify_star_swap(D, E, beta);
            CHECK_MESSAGE(s.ok, s.failure);
        }
        Verdict h = verify_star_homology_agreement(D, E, 0, 1);
        CHECK_MESSAGE(h.ok, h.failure);
        Verdict h2 = verify_star_homology_agreement(D, E, -1, 2);
        CHECK_MESSAGE(h2.ok, h2.failure);
    }
    Diagram D = random_diagram(rng, QQ, 1, {0, 1, 1});
    Diagram E = random_diagram(rng, QQ, 1, {0, 1, 1});
    Diagram F = random_diagram(rng, QQ, 1, {0, 1, 1});
    for (long beta : {0L, 1L}) {
        Verdict a = verify_star_associativity(D, E, F, beta);
        CHECK_MESSAGE(a.ok, a.failure);
    }
}

TEST_CASE("the swap square fails with the wrong beta") {
    Rng rng(9);
    Diagram D = random_diagram(rng, QQ, 1, {0, 1, 2});
    Diagram E = random_diagram(rng, QQ, 1, {0, 1, 2});
    // star_beta and star_{1-beta} differ on elements unless the maps vanish
    CHECK_FALSE(star_product(0, D, E).map.at(1) == star_product(1, D, E).map.at(1));
}

TEST_CASE("levelwise quasi-isomorphisms give quasi-isomorphic simples") {
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        Diagram D = random_diagram(rng, trial % 2 ? F7 : QQ, 2, {0, 2, 2});
        auto [E, h] = random_levelwise_quasi_iso(rng, D);
        Verdict m = verify_diagram_morphism(D, E, h);
        REQUIRE_MESSAGE(m.ok, m.failure);
        ChainMap sh = simple_of_morphism(D, E, h);
        CHECK(sh.verify().ok);
        Verdict q = verify_quasi_isomorphism(sh);
        CHECK_MESSAGE(q.ok, q.failure);
    }
}

TEST_CASE("rho through an acyclic summand") {
    // A^2 = Q in degree 0, B^1 = A^2 + (Q -> Q in degrees 1, 0), g1 the inclusion
    GradedComplex A1 = ring_in_degree(QQ, 0), A2 = ring_in_degree(QQ, 0), B2 = ring_in_degree(QQ, 0);
    GradedComplex B1(QQ, Orientation::Chain, 0, {2, 1}, {Matrix(QQ, 0, 2), Matrix::from_rows(QQ, {{0}, {1}})});
    ChainMap g1(A2, B1, {{0, Matrix::from_rows(QQ, {{1}, {0}})}}, "g1");
    // f1 hits the acyclic part too; only the A^2 coordinate survives
    ChainMap f1(A1, B1, {{0, Matrix::from_rows(QQ, {{3}, {5}})}}, "f1");
    ChainMap f2(A2, B2, {{0, Matrix::from_rows(QQ, {{2}})}}, "f2");
    GradedComplex Z = GradedComplex::zero(QQ, Orientation::Chain);
    Diagram D = make_diagram({A1, A2, Z}, {B1, B2}, {f1, f2}, {g1, ChainMap::zero(Z, B2)});
    Rng rng(1);
    CHECK(rho_on_homology(D, 0, &rng) == Matrix::from_rows(QQ, {{6}}));
    ExactSequenceReport les = diagram_les(D, &rng);
    CHECK_MESSAGE(les.exact, les.failure);
    // f1 = 0 gives rho = 0
    Diagram D0 = make_diagram({A1, A2, Z}, {B1, B2}, {ChainMap::zero(A1, B1), f2}, {g1, ChainMap::zero(Z, B2)});
    CHECK(rho_on_homology(D0, 0).is_zero());
    // g1 not a quasi-isomorphism
    Diagram bad = make_diagram({A1, A2, Z}, {B1, B2}, {f1, f2}, {ChainMap::zero(A2, B1), ChainMap::zero(Z, B2)});
    CHECK_THROWS_AS(rho_on_homology(bad, 0), std::domain_error);
}

TEST_CASE("exact sequences of random short diagrams") {
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        Domain dom = trial % 2 ? F7 : QQ;
        Diagram D = random_short_diagram(rng, dom, {0, 2, 2});
        ExactSequenceReport r = diagram_les(D, &rng);
        CHECK_MESSAGE(r.exact, r.failure);
        // the same sequence cross-checked against H(f2) H(g1)^{-1} H(f1)
        for (int k = 0; k <= 2; ++k) {
            Matrix rho = rho_on_homology(D, k);
            Matrix composite = induced_map(D.f[1], k) * inverse(induced_map(D.g[0], k)) * induced_map(D.f[0], k);
            CHECK(rho == composite);
        }
    }
    // all zero
    GradedComplex Z = GradedComplex::zero(QQ, Orientation::Chain);
    ChainMap z = ChainMap::zero(Z, Z);
    Diagram D = make_diagram({Z, Z, Z}, {Z, Z}, {z, z}, {z, z});
    ExactSequenceReport r = diagram_les(D);
    CHECK(r.exact);
    CHECK(total_dim(r) == 0);
}

TEST_CASE("quotient comparison and the cone sequence") {
    // A^3 a rank-1 subcomplex of B^2
    GradedComplex R = ring_in_degree(QQ, 0);
    GradedComplex B2(QQ, Orientation::Chain, 0, {2, 1}, {Matrix(QQ, 0, 2), Matrix::from_rows(QQ, {{1}, {0}})});
    ChainMap id = ChainMap::identity(R);
    ChainMap f2(R, B2, {{0, Matrix::from_rows(QQ, {{1}, {1}})}}, "f2");
    ChainMap g2(R, B2, {{0, Matrix::from_rows(QQ, {{0}, {1}})}}, "g2");
    Diagram D = make_diagram({R, R, R}, {R, B2}, {id, f2}, {id, g2});
    QuotientComparison qc = quotient_comparison(D);
    CHECK_MESSAGE(qc.verdict.ok, qc.verdict.failure);
    CHECK(qc.quotient.B[1].total_rank() == 2);
    DiagramSimple s = simple_of_diagram(D);
    for (int k = -1; k <= 1; ++k)
        CHECK(homology(s.complex, k) == homology(simple_of_diagram(qc.quotient).complex, k));
    ConeSequence cs = cone_sequence(D);
    CHECK_MESSAGE(cs.verdict.ok, cs.verdict.failure);
    bool found = false;
    for (const auto& l : cs.les.labels) found = found || l == "H_-1(s(g2))";
    CHECK(found);

    // g2 not injective
    Diagram bad = make_diagram({R, R, R}, {R, B2}, {id, f2}, {id, ChainMap::zero(R, B2)});
    CHECK_THROWS_AS(quotient_comparison(bad), std::invalid_argument);

    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        Diagram E = random_short_diagram_with_sub(rng, trial % 2 ? F7 : QQ, {0, 2, 2});
        QuotientComparison q = quotient_comparison(E);
        CHECK_MESSAGE(q.verdict.ok, q.verdict.failure);
        ConeSequence c = cone_sequence(E, &rng);
        CHECK_MESSAGE(c.verdict.ok, c.verdict.failure);
    }
}

}
