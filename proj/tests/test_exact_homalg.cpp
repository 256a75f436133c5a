#include "doctest.h"

#include "hchow/complex.hpp"
#include "hchow/oracles.hpp"
#include "hchow/random.hpp"

using namespace hchow;

namespace {

const Domain ZZ = Domain::integers();
const Domain QQ = Domain::rationals();

GradedComplex two_term(Domain d, long n) {
    // 0 -> Z --n--> Z -> 0 in chain degrees 1 -> 0
    return GradedComplex(d, Orientation::Chain, 0, {1, 1},
                         {Matrix::zero(d, 0, 1), Matrix::from_rows(d, {{n}})});
}

}  // namespace

TEST_SUITE("exact_homalg") {

TEST_CASE("smith form of a small integer matrix") {
    Matrix m = Matrix::from_rows(ZZ, {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    SmithForm sf = smith_normal_form(m);
    CHECK(sf.u * m * sf.v == sf.s);
    CHECK(sf.u * sf.u_inv == Matrix::identity(ZZ, 3));
    // frozen: classic textbook example with invariants 2, 6, 12
    REQUIRE(sf.invariants.size() == 3);
    CHECK(sf.invariants[0] == 2);
    CHECK(sf.invariants[1] == 6);
    CHECK(sf.invariants[2] == 12);
    CHECK(invariant_factors_by_minors(m) == sf.invariants);
    CHECK(invariant_factors_by_elimination(m) == sf.invariants);
    // diag(4, 6) has invariants 2, 12
    CHECK(invariant_factors_by_elimination(Matrix::from_rows(ZZ, {{4, 0}, {0, 6}})) ==
          std::vector<mpz_class>{2, 12});
}

TEST_CASE("smith form of zero and rectangular matrices") {
    SmithForm z = smith_normal_form(Matrix::zero(ZZ, 2, 3));
    CHECK(z.rank == 0);
    CHECK(z.u * Matrix::zero(ZZ, 2, 3) * z.v == z.s);
    Matrix r = Matrix::from_rows(ZZ, {{4, 6}, {6, 9}, {2, 3}});
    SmithForm sr = smith_normal_form(r);
    CHECK(sr.rank == 1);
    CHECK(sr.invariants[0] == 1);
    CHECK(abs(determinant(sr.u)) == 1);
    CHECK(abs(determinant(sr.v)) == 1);
}

TEST_CASE("field kernels, images and solving") {
    Matrix m = Matrix::from_rows(QQ, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(m) == 2);
    Matrix k = kernel(m);
    CHECK(k.cols() == 1);
    CHECK((m * k).is_zero());
    auto x = solve(m, m * Matrix::from_rows(QQ, {{1}, {1}, {1}}));
    REQUIRE(x);
    CHECK(m * *x == m * Matrix::from_rows(QQ, {{1}, {1}, {1}}));
    CHECK_FALSE(solve(m, Matrix::from_rows(QQ, {{1}, {0}, {0}})).has_value());
    Matrix f5 = m.in_domain(Domain::prime(5));
    CHECK(rank(f5) == 2);
    CHECK(inverse(Matrix::from_rows(QQ, {{2, 1}, {1, 1}})) == Matrix::from_rows(QQ, {{1, -1}, {-1, 2}}));
}

TEST_CASE("homology of 0 -> Z --2--> Z -> 0") {
    GradedComplex c = two_term(ZZ, 2);
    CHECK(homology(c, 0).to_string() == "Z/2");
    CHECK(homology(c, 1).to_string() == "0");
    CHECK(homology(c.in_domain(QQ), 0).is_zero());
    CHECK(homology(c.in_domain(Domain::prime(2)), 0).to_string() == "F2");
    CHECK(homology(c.in_domain(Domain::prime(2)), 1).to_string() == "F2");
}

TEST_CASE("simple of the identity is acyclic") {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        GradedComplex a = random_complex(rng, QQ, Orientation::Chain, {0, 3, 3});
        GradedComplex s = simple(ChainMap::identity(a));
        for (int k = s.lo() - 1; k <= s.hi() + 1; ++k) CHECK(homology(s, k).is_zero());
    }
}

TEST_CASE("translation shifts homology") {
    Rng rng(11);
    for (Orientation o : {Orientation::Chain, Orientation::Cochain}) {
        GradedComplex a = random_complex(rng, QQ, o, {0, 3, 3});
        GradedComplex b = translate(a, 1);
        for (int k = a.lo(); k <= a.hi(); ++k) CHECK(homology(b, k - a.step()) == homology(a, k));
    }
}

TEST_CASE("long exact sequence of a simple over Q and F5") {
    Rng rng(3);
    for (Domain d : {QQ, Domain::prime(5)})
        for (int t = 0; t < 5; ++t) {
            GradedComplex a = random_complex(rng, d, Orientation::Cochain, {0, 2, 2});
            GradedComplex b = random_complex(rng, d, Orientation::Cochain, {0, 2, 2});
            ChainMap f = random_chain_map(rng, a, b);
            CHECK(f.verify().ok);
            ExactSequenceReport r = les_of_simple(f);
            CHECK_MESSAGE(r.exact, r.to_string());
        }
}

TEST_CASE("quasi-isomorphism detection") {
    Rng rng(5);
    GradedComplex a = random_complex(rng, QQ, Orientation::Chain, {0, 3, 3});
    ChainMap q = random_quasi_isomorphism(rng, a, 2);
    CHECK(verify_quasi_isomorphism(q).ok);
    ChainMap z = ChainMap::zero(a, q.target);
    bool has_homology = false;
    for (int k = a.lo(); k <= a.hi(); ++k) has_homology |= !homology(a, k).is_zero();
    CHECK(verify_quasi_isomorphism(z).ok == !has_homology);
}

TEST_CASE("truncation keeps low cohomology") {
    Rng rng(9);
    for (int t = 0; t < 5; ++t) {
        GradedComplex c = random_complex(rng, QQ, Orientation::Cochain, {0, 3, 3});
        ChainMap inc = truncate_leq(c, 1);
        CHECK(inc.verify().ok);
        for (int k = 0; k <= 1; ++k) CHECK(rank(induced_map(inc, k)) == homology(c, k).free_rank);
        for (int k = 2; k <= 3; ++k) CHECK(homology(inc.source, k).is_zero());
    }
}

TEST_CASE("tensor product satisfies Kunneth over Q") {
    Rng rng(13);
    GradedComplex a = random_complex(rng, QQ, Orientation::Chain, {0, 2, 2});
    GradedComplex b = random_complex(rng, QQ, Orientation::Chain, {0, 2, 2});
    TensorProduct t = tensor(a, b);
    for (int k = 0; k <= 4; ++k) {
        std::size_t expect = 0;
        for (int i = 0; i <= k; ++i) expect += homology(a, i).free_rank * homology(b, k - i).free_rank;
        CHECK(homology(t.complex, k).free_rank == expect);
    }
}

TEST_CASE("kernels of surjections and quotients by injections") {
    // Z^2 -> Z, the projection onto the first factor, in degree 0
    GradedComplex a(QQ, Orientation::Chain, 0, {2}, {Matrix::zero(QQ, 0, 2)});
    GradedComplex b(QQ, Orientation::Chain, 0, {1}, {Matrix::zero(QQ, 0, 1)});
    ChainMap p(a, b, {{0, Matrix::from_rows(QQ, {{1, 0}})}}, "p");
    ChainMap k = kernel_into_simple(p);
    CHECK(k.source.rank(0) == 1);
    CHECK(verify_quasi_isomorphism(k).ok);
    CHECK_THROWS_AS(kernel_into_simple(ChainMap::zero(a, b)), std::invalid_argument);
    CHECK_THROWS_AS(simple_onto_quotient(p), std::invalid_argument);

    Rng rng(31);
    for (Domain d : {QQ, Domain::prime(5)})
        for (int t = 0; t < 5; ++t) {
            GradedComplex x = random_complex(rng, d, Orientation::Cochain, {0, 2, 2});
            GradedComplex y = random_complex(rng, d, Orientation::Cochain, {0, 2, 2});
            GradedComplex xy = direct_sum(x, y);
            std::map<int, Matrix> pr, in;
            for (int j = xy.lo(); j <= xy.hi(); ++j) {
                Matrix m(d, y.rank(j), xy.rank(j)), n(d, xy.rank(j), x.rank(j));
                m.place(0, x.rank(j), Matrix::identity(d, y.rank(j)));
                n.place(0, 0, Matrix::identity(d, x.rank(j)));
                pr.emplace(j, m);
                in.emplace(j, n);
            }
            ChainMap onto(xy, y, pr, "pr"), into(x, xy, in, "in");
            REQUIRE(onto.verify().ok);
            REQUIRE(into.verify().ok);
            Verdict v1 = verify_quasi_isomorphism(kernel_into_simple(onto));
            CHECK_MESSAGE(v1.ok, v1.failure);
            Verdict v2 = verify_quasi_isomorphism(simple_onto_quotient(into));
            CHECK_MESSAGE(v2.ok, v2.failure);
        }
}

TEST_CASE("malformed complexes are rejected") {
    CHECK_THROWS_AS(GradedComplex(QQ, Orientation::Chain, 0, {1, 1}, {Matrix::zero(QQ, 0, 1), Matrix::zero(QQ, 2, 1)}),
                    ShapeError);
    // d*d != 0
    CHECK_THROWS_AS(GradedComplex(QQ, Orientation::Chain, 0, {1, 1, 1},
                                  {Matrix::zero(QQ, 0, 1), Matrix::from_rows(QQ, {{1}}), Matrix::from_rows(QQ, {{1}})}),
                    ShapeError);
    CHECK_THROWS_AS(Domain::prime(6), DomainError);
}

}
