#include "doctest.h"

#include "hchow/product_engine.hpp"

using namespace hchow;

namespace {

void check(const Verdict& v) {
    INFO(v.failure);
    CHECK(v.ok);
}

}  // namespace

TEST_SUITE("deligne_product_engine") {
    TEST_CASE("shipped algebras satisfy their axioms") {
        GradedAlgebra ext = exterior_instance();
        GradedAlgebra def = homotopy_instance();
        check(ext.verify());
        check(def.verify());
        CHECK(ext.size() == 8);
        CHECK_FALSE(ext.has_homotopy());
        CHECK(def.has_homotopy());
        // u v = -v u and u u = 0.
        auto u = ext.index_of("u"), v = ext.index_of("v"), uv = ext.index_of("uv");
        CHECK(ext.mul[u][v] == AlgVec{{uv, 1}});
        CHECK(ext.mul[v][u] == AlgVec{{uv, -1}});
        CHECK(ext.mul[u][u].empty());
        // The deformation is really non-associative: (s t) t - s (t t) = F.
        auto s = def.index_of("s"), t = def.index_of("t"), G = def.index_of("G");
        CHECK(def.homotopy(s, t, t) == AlgVec{{G, 1}});
        CHECK(def.homotopy(t, t, s) == AlgVec{{G, -1}});
    }

    TEST_CASE("a broken homotopy is rejected") {
        GradedAlgebra def = homotopy_instance();
        def.h.erase({def.index_of("s"), def.index_of("t"), def.index_of("t")});
        Verdict v = def.verify();
        CHECK_FALSE(v.ok);
        CHECK(v.failure.find("associator") != std::string::npos);
    }

    TEST_CASE("text round trip") {
        for (const auto& A : {exterior_instance(), homotopy_instance()}) {
            GradedAlgebra B = GradedAlgebra::parse(A.to_text());
            CHECK(B.to_text() == A.to_text());
            CHECK(B.mul == A.mul);
            CHECK(B.h == A.h);
        }
        CHECK_THROWS_AS(GradedAlgebra::parse("basis 1 0 0\nmul 1 x : 1 1\n"), std::invalid_argument);
    }

    TEST_CASE("ideals are closed under products, d and h") {
        GradedAlgebra def = homotopy_instance();
        auto I = def.ideal_closure({def.index_of("s")});
        auto has = [&](const std::string& n) { return std::binary_search(I.begin(), I.end(), def.index_of(n)); };
        CHECK(has("st2"));
        CHECK(has("F"));
        CHECK(has("G"));  // through h(s, t, t)
        CHECK_FALSE(has("t3"));
    }

    TEST_CASE("cube differentials") {
        GradedAlgebra ext = exterior_instance();
        ProductModel m = make_model(ext, {"u", "v", "t"});
        // One slot: d_s(v) = dv and delta(v) = +1 (face at 0 gives -1, sign -1).
        FormKey one{0, {1}, 0};
        FormVec x{{one, 1}};
        CHECK(m.d_deligne(x) == FormVec{{FormKey{0, {1}, 1}, 1}});
        CHECK(m.delta(x) == FormVec{{FormKey{0, {0}, 0}, 1}});
        CHECK(m.delta(FormVec{{FormKey{0, {1}, 1}, 1}}).empty());
        // kappa merges directions; sigma squares to the identity.
        FormVec y{{FormKey{ext.index_of("u"), {1, 2}, 0b101}, 1}};
        CHECK(m.kappa(y) == FormVec{{FormKey{ext.index_of("u"), {3}, 0b101}, 1}});
        CHECK(m.sigma(m.sigma(y)) == y);
    }

    TEST_CASE("Leibniz rule for the cube product") {
        GradedAlgebra ext = exterior_instance();
        GradedAlgebra def = homotopy_instance();
        check(verify_bullet_leibniz(make_model(ext, {"u", "v", "t"}), 2));
        check(verify_bullet_leibniz(make_model(def, {"s", "t", "st"}), 1));
    }

    TEST_CASE("pairing with supports is a chain map in both directions") {
        GradedAlgebra ext = exterior_instance();
        GradedAlgebra def = homotopy_instance();
        Rng rng(42);
        check(verify_support_pairing(make_model(ext, {"u", "v", "t"}), rng, 40, 2));
        check(verify_support_pairing(make_model(def, {"s", "t", "st"}), rng, 40, 2));
    }

    TEST_CASE("sign audit at r = s = n = m = 1") {
        GradedAlgebra ext = exterior_instance();
        ProductModel m = make_model(ext, {"u", "v", "t"});
        auto u = ext.index_of("u"), v = ext.index_of("v");
        SupportElement x = support_zero({0}, {1}, 1), y = support_zero({1}, {1}, 1);
        x.comp[0] = {{FormKey{u, {1}, 0}, 1}};
        x.comp[1] = {{FormKey{0, {1}, 0}, 1}};
        y.comp[0] = {{FormKey{v, {1}, 0}, 1}};
        y.comp[1] = {{FormKey{0, {1}, 0}, 1}};
        SupportElement xy = support_product(m, x, y);
        // Global sign (-1)^{ns} = -1.
        CHECK(xy.comp[0] == FormVec{{FormKey{ext.index_of("uv"), {1, 1}, 0}, -1}});
        // g . w' in the quotient by (u): v survives.
        CHECK(xy.comp[1] == FormVec{{FormKey{v, {1, 1}, 0}, -1}});
        // (-1)^r w . g' in the quotient by (v): -(-u).
        CHECK(xy.comp[2] == FormVec{{FormKey{u, {1, 1}, 0}, 1}});
        // (-1)^{r-1} g . g' = 1 . 1, times -1.
        CHECK(xy.comp[3] == FormVec{{FormKey{0, {1, 1}, 0}, -1}});
        Rng rng(7);
        ProductModel mm = m;
        Verdict vd;
        for (int i = 0; i < 10; ++i) {
            SupportElement a = random_support_element(rng, mm, {0}, {1}, 1);
            SupportElement b = random_support_element(rng, mm, {1}, {1}, 1);
            SupportElement lhs = support_d(mm, support_product(mm, a, b));
            SupportElement rhs = support_add(support_product(mm, support_d(mm, a), b),
                                             support_product(mm, a, support_d(mm, b)), 1);
            vd.expect(lhs == rhs, [] { return std::string("sign audit"); });
        }
        check(vd);
    }

    TEST_CASE("triple pairings: strict with h = 0, up to H otherwise") {
        GradedAlgebra ext = exterior_instance();
        GradedAlgebra def = homotopy_instance();
        Rng rng(5);
        check(verify_triple_associativity(make_model(ext, {"u", "v", "t"}), rng, 25, 1));
        check(verify_triple_associativity(make_model(def, {"s", "t", "st"}), rng, 25, 1));
        // The sign pattern of the products alone, applied to h, is not a homotopy.
        Verdict literal = verify_triple_associativity(make_model(def, {"s", "t", "st"}), rng, 40, 1, true);
        CHECK_FALSE(literal.ok);
        // The deformed product does fail strict associativity somewhere.
        ProductModel m = make_model(def, {"s", "t", "st"});
        auto s = def.index_of("s"), t = def.index_of("t");
        SupportElement x = support_zero({0}, {0}, 2), y = support_zero({1}, {0}, 2), z = support_zero({2}, {0}, 2);
        x.comp[0] = {{FormKey{s, {0}, 0}, 1}};
        y.comp[0] = {{FormKey{t, {0}, 0}, 1}};
        z.comp[0] = {{FormKey{t, {0}, 0}, 1}};
        CHECK_FALSE(support_product(m, support_product(m, x, y), z) == support_product(m, x, support_product(m, y, z)));
    }

    TEST_CASE("homotopy avoids the top degree") {
        check(verify_homotopy_structure(exterior_instance()));
        check(verify_homotopy_structure(homotopy_instance()));
        GradedAlgebra bad = exterior_instance();
        auto t = bad.index_of("t");
        bad.h[{t, t, t}] = {{bad.index_of("tuv"), 1}};
        CHECK_FALSE(verify_homotopy_structure(bad).ok);
    }

    TEST_CASE("swap is compatible with products") {
        GradedAlgebra ext = exterior_instance();
        Rng rng(11);
        check(verify_sigma_products(make_model(ext, {"u", "v", "t"}), rng, 30, 2));
    }

    TEST_CASE("i and kappa are quasi-isomorphisms") {
        GradedAlgebra ext = exterior_instance();
        GradedAlgebra def = homotopy_instance();
        ProductModel me = make_model(ext, {"u", "v", "t"});
        check(verify_window_quasi_isos(me, 1, -1, 2));
        check(verify_window_quasi_isos(me, 2, 0, 4));
        check(verify_window_quasi_isos(make_model(def, {"s", "t", "st"}), 2, 1, 4));
        // The one-direction window of weight 1 has the homology of A_1:
        // u, v in degree 1 and t in degree 2.
        auto w = cube_total_window(me, CubeModelKind::OneDirection, 1, -1, 2);
        CHECK(homology_basis(w.complex, 0).dim() == 0);
        CHECK(homology_basis(w.complex, 1).dim() == 2);
        CHECK(homology_basis(w.complex, 2).dim() == 1);
    }
}
