/**
 * @file   suites.cpp
 * @brief  The eleven acceptance suites at their stated sizes.
 */
#include "hchow/suites.hpp"

#include "hchow/chow.hpp"
#include "hchow/cli.hpp"
#include "hchow/cube_functions.hpp"
#include "hchow/cube_maps.hpp"
#include "hchow/cubical_models.hpp"
#include "hchow/manifest.hpp"
#include "hchow/oracles.hpp"
#include "hchow/product_engine.hpp"

#include <chrono>
#include <exception>
#include <sstream>

namespace hchow {

namespace {

const Domain QQ = Domain::rationals();
const Domain ZZ = Domain::integers();

// ---- 1. Smith normal form ---------------------------------------------------

Verdict check_smith(const Matrix& m) {
    Verdict v;
    SmithForm sf = smith_normal_form(m);
    auto where = [&] { return " for M = [" + m.to_string() + "]"; };
    v.expect(sf.u * m * sf.v == sf.s, [&] { return "U M V != S" + where(); });
    v.expect(sf.u * sf.u_inv == Matrix::identity(ZZ, m.rows()), [&] { return "U U^-1 != 1" + where(); });
    v.expect(abs(determinant(sf.u)) == 1, [&] { return "det U != +-1" + where(); });
    v.expect(abs(determinant(sf.v)) == 1, [&] { return "det V != +-1" + where(); });
    bool diagonal = true;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            mpq_class want = (i == j && i < sf.rank) ? mpq_class(sf.invariants[i]) : mpq_class(0);
            diagonal = diagonal && sf.s(i, j) == want;
        }
    v.expect(diagonal, [&] { return "S is not diag(invariants)" + where(); });
    bool chain = sf.invariants.size() == sf.rank;
    for (std::size_t i = 0; chain && i < sf.invariants.size(); ++i) {
        chain = sf.invariants[i] > 0;
        if (chain && i + 1 < sf.invariants.size()) chain = sf.invariants[i + 1] % sf.invariants[i] == 0;
    }
    v.expect(chain, [&] { return "invariants do not form a divisibility chain" + where(); });
    std::vector<mpz_class> oracle = invariant_factors_by_minors(m);
    v.expect(oracle == sf.invariants, [&] { return "invariants disagree with the minors oracle" + where(); });
    v.expect(invariant_factors_by_elimination(m) == sf.invariants,
             [&] { return "invariants disagree with the elimination oracle" + where(); });
    return v;
}

Verdict suite_smith(std::uint64_t seed) {
    Rng rng = Rng::split(seed, "smith");
    Verdict v;
    for (int t = 0; t < 200; ++t) {
        auto r = static_cast<std::size_t>(rng.range(1, 6)), c = static_cast<std::size_t>(rng.range(1, 6));
        v.merge(check_smith(random_matrix(rng, ZZ, r, c, 10, 25)), "case " + std::to_string(t));
    }
    return v;
}

// ---- 2. homological core ----------------------------------------------------

Verdict squares_to_zero(const GradedComplex& c, const std::string& what) {
    Verdict v;
    for (int k = c.lo(); k <= c.hi(); ++k)
        v.expect((c.d(k + c.step()) * c.d(k)).is_zero(),
                 [&] { return "d d != 0 on " + what + " in degree " + std::to_string(k); });
    return v;
}

// [g | 1] : X + Y -> Y and [1 ; g] : X -> X + Y for a chain map g : X -> Y.
std::pair<ChainMap, ChainMap> onto_and_into(const ChainMap& g) {
    const GradedComplex &x = g.source, &y = g.target;
    GradedComplex xy = direct_sum(x, y);
    Domain d = x.domain();
    std::map<int, Matrix> onto, into;
    for (int k = xy.lo(); k <= xy.hi(); ++k) {
        Matrix p(d, y.rank(k), xy.rank(k)), i(d, xy.rank(k), x.rank(k));
        p.place(0, 0, g.at(k));
        p.place(0, x.rank(k), Matrix::identity(d, y.rank(k)));
        i.place(0, 0, Matrix::identity(d, x.rank(k)));
        i.place(x.rank(k), 0, g.at(k));
        onto.emplace(k, p);
        into.emplace(k, i);
    }
    return {ChainMap(xy, y, onto, "onto"), ChainMap(x, xy, into, "into")};
}

Verdict suite_homological(std::uint64_t seed) {
    Verdict v;
    Rng rng = Rng::split(seed, "homological");
    for (int t = 0; t < 100; ++t) {
        Domain d = t % 2 ? Domain::prime(5) : QQ;
        Orientation o = t % 4 < 2 ? Orientation::Cochain : Orientation::Chain;
        GradedComplex a = random_complex(rng, d, o, {0, 2, 2});
        GradedComplex b = random_complex(rng, d, o, {0, 2, 2});
        ChainMap f = random_chain_map(rng, a, b);
        std::string ctx = "chain map " + std::to_string(t) + " over " + d.name();
        v.merge(f.verify(), ctx);
        v.merge(squares_to_zero(simple(f), "s(f)"), ctx);
        v.merge(squares_to_zero(translate(a, 1), "A[1]"), ctx);
        ExactSequenceReport r = les_of_simple(f);
        v.expect(r.exact, [&] { return ctx + ": " + r.failure; });
    }
    // Kernel of a surjection and quotient by an injection.
    Rng qrng = Rng::split(seed, "homological/quasi");
    for (int t = 0; t < 40; ++t) {
        Domain d = t % 2 ? Domain::prime(5) : QQ;
        GradedComplex x = random_complex(qrng, d, Orientation::Chain, {0, 2, 2});
        GradedComplex y = random_complex(qrng, d, Orientation::Chain, {0, 2, 2});
        auto [onto, into] = onto_and_into(random_chain_map(qrng, x, y));
        std::string ctx = "instance " + std::to_string(t) + " over " + d.name();
        v.merge(onto.verify(), ctx);
        v.merge(into.verify(), ctx);
        ChainMap k = kernel_into_simple(onto), q = simple_onto_quotient(into);
        v.merge(squares_to_zero(k.target, "s(-f)"), ctx);
        v.merge(k.verify(), ctx + ", ker f -> s(-f)");
        v.merge(verify_quasi_isomorphism(k), ctx + ", ker f -> s(-f)");
        v.merge(q.verify(), ctx + ", s(f)[1] -> B/f(A)");
        v.merge(verify_quasi_isomorphism(q), ctx + ", s(f)[1] -> B/f(A)");
    }
    // Truncation: tau_{<=n} C -> C is iso on H^k for k <= n, and tau is zero above n.
    Rng trng = Rng::split(seed, "homological/truncation");
    for (int t = 0; t < 30; ++t) {
        Domain d = t % 2 ? Domain::prime(5) : QQ;
        GradedComplex c = random_complex(trng, d, Orientation::Cochain, {0, 3, 3});
        for (int n = c.lo(); n <= c.hi(); ++n) {
            ChainMap inc = truncate_leq(c, n);
            std::string ctx = "truncation " + std::to_string(t) + " at " + std::to_string(n);
            v.merge(inc.verify(), ctx);
            v.merge(squares_to_zero(inc.source, "tau C"), ctx);
            for (int k = c.lo(); k <= c.hi() + 1; ++k) {
                if (k <= n) {
                    Matrix h = induced_map(inc, k);
                    std::size_t dim = homology_basis(c, k).dim();
                    v.expect(h.rows() == dim && h.cols() == dim && rank(h) == dim,
                             [&] { return ctx + ": H^" + std::to_string(k) + " not preserved"; });
                } else {
                    v.expect(inc.source.rank(k) == 0,
                             [&] { return ctx + ": tau C nonzero in degree " + std::to_string(k); });
                }
            }
        }
    }
    return v;
}

// ---- 3. cubical normalization -------------------------------------------------

Verdict suite_normalization(std::uint64_t seed) {
    Verdict v;
    Rng rng = Rng::split(seed, "normalization");
    for (int t = 0; t < 50; ++t) {
        Domain d = t % 5 == 4 ? Domain::prime(7) : QQ;
        CubicalModule c = random_cubical_module(rng, d, 4);
        std::string ctx = "module " + std::to_string(t);
        v.merge(c.verify(), ctx);
        v.merge(verify_normalization_split(c), ctx);
    }
    Rng crng = Rng::split(seed, "normalization/cochain");
    for (int t = 0; t < 20; ++t) {
        CubicalCochainComplex x = random_cubical_cochain_complex(crng, QQ, 3);
        std::string ctx = "cochain complex " + std::to_string(t);
        v.merge(x.verify(), ctx);
        v.merge(verify_normalized_cohomology(x), ctx);
    }
    return v;
}

// ---- 4. the refined normalized complex ----------------------------------------

Verdict refined(const std::string& name, const CubicalModule& c, const ExtraDegeneracies& h, int max_level) {
    Verdict v;
    v.merge(c.verify(), name);
    v.merge(verify_extra_degeneracies(c, h), name);
    v.merge(verify_refined_equivalence(c, h, max_level), name);
    return v;
}

Verdict suite_refined(std::uint64_t seed) {
    Verdict v;
    {
        ExtraDegeneracies h;
        CubicalModule w = w_model(5, 1, &h);
        v.merge(refined("w model (exponents <= 1)", w, h, 4));
        ExtraDegeneracies h2;
        CubicalModule w2 = w_model(4, 2, &h2);
        v.merge(refined("w model (exponents <= 2)", w2, h2, 3));
    }
    Rng rng = Rng::split(seed, "refined");
    const Domain doms[] = {QQ, Domain::prime(5), Domain::prime(7), QQ};
    for (int t = 0; t < 20; ++t) {
        Domain d = doms[t % 4];
        int top = 3 + t % 3;  // levels up to 4 checked when top = 5
        ExtraDegeneracies hm, hk, h;
        CubicalModule m = multilinear_module(d, top, &hm), k = constant_module(d, top, &hk), c;
        std::string name;
        switch (t % 5) {
        case 0: c = m, h = hm, name = "multilinear"; break;
        case 1: c = k, h = hk, name = "constant"; break;
        case 2:
            h = direct_sum(m, hm, k, hk);
            c = direct_sum(m, k);
            name = "multilinear + constant";
            break;
        case 3: c = recoordinatize(rng, m, &(h = hm)), name = "recoordinatized multilinear"; break;
        default: {
            ExtraDegeneracies hs = direct_sum(m, hm, m, hm);
            h = direct_sum(direct_sum(m, m), hs, k, hk);
            c = recoordinatize(rng, direct_sum(direct_sum(m, m), k), &h);
            name = "recoordinatized multilinear^2 + constant";
        }
        }
        v.merge(refined("instance " + std::to_string(t) + " (" + name + " over " + d.name() + ")", c, h,
                        std::min(top - 1, 4)));
    }
    return v;
}

// ---- 5. cube maps ----------------------------------------------------------------

Verdict suite_cube_maps() {
    Verdict v;
    v.merge(verify_cocubical_relations(4), "cocubical relations");
    v.merge(verify_involution(4), "involution");
    v.merge(verify_homotdelta(4), "pi phi on cofaces");
    v.merge(verify_wn_equation(4), "W_n equation");
    v.merge(verify_sigma_tau(4, 3), "sigma = tau^m");
    v.merge(verify_tau_face_relations(4), "faces of tau powers");
    return v;
}

// ---- 6. delta h lemma and the H_{n,m} homotopy -------------------------------------------------

Verdict suite_lemma_h(std::uint64_t seed) {
    Verdict v;
    CubeCalculus calc;
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; n + m <= 4; ++m) {
            Rng rng = Rng::split(seed, "lemma-h/" + std::to_string(n) + "," + std::to_string(m));
            for (int t = 0; t < 50; ++t) {
                CubeFunction a = random_00_element(rng, n, m);
                std::string ctx = "(n, m) = (" + std::to_string(n) + ", " + std::to_string(m) + "), case " +
                                  std::to_string(t);
                v.merge(verify_hnm_homotopy(calc, n, m, a), ctx);
                if (n + m >= 1) v.merge(verify_delta_h_lemma(calc, a), ctx);
            }
        }
    return v;
}

// ---- 7. star products -----------------------------------------------------------

Verdict suite_star(std::uint64_t seed) {
    Verdict v;
    const Domain F7 = Domain::prime(7);
    Rng rng = Rng::split(seed, "star");
    for (int t = 0; t < 30; ++t) {
        Domain d = t % 2 ? F7 : QQ;
        Diagram D = random_diagram(rng, d, 2, {0, 1, 2});
        Diagram E = random_diagram(rng, d, 2, {0, 1, 2});
        std::string ctx = "pair " + std::to_string(t);
        for (long beta : {-1L, 0L, 1L, 2L}) {
            std::string b = ctx + ", beta " + std::to_string(beta);
            v.merge(verify_star_chain_map(star_product(beta, D, E)), b);
            v.merge(verify_star_swap(D, E, beta), b);
        }
        if (t < 10) {
            for (long beta : {-1L, 1L, 2L})
                v.merge(verify_star_homology_agreement(D, E, 0, beta), ctx + ", homology 0 vs " + std::to_string(beta));
        }
    }
    Rng arng = Rng::split(seed, "star/associativity");
    for (int t = 0; t < 6; ++t) {
        Domain d = t % 2 ? F7 : QQ;
        Diagram D = random_diagram(arng, d, 1, {0, 1, 1});
        Diagram E = random_diagram(arng, d, 1, {0, 1, 1});
        Diagram F = random_diagram(arng, d, 1, {0, 1, 1});
        for (long beta : {0L, 1L})
            v.merge(verify_star_associativity(D, E, F, beta),
                    "triple " + std::to_string(t) + ", beta " + std::to_string(beta));
    }
    return v;
}

// ---- 8. diagram sequences -------------------------------------------------------

Verdict suite_diagrams(std::uint64_t seed) {
    Verdict v;
    const Domain F7 = Domain::prime(7);
    Rng rng = Rng::split(seed, "diagrams");
    for (int t = 0; t < 50; ++t) {
        Domain d = t % 2 ? F7 : QQ;
        std::string ctx = "diagram " + std::to_string(t) + " over " + d.name();
        Diagram D = random_short_diagram(rng, d, {0, 2, 2});
        ExactSequenceReport les = diagram_les(D, &rng);
        v.expect(les.exact, [&] { return ctx + ": " + les.failure; });

        Diagram S = random_short_diagram_with_sub(rng, d, {0, 2, 2});
        QuotientComparison q = quotient_comparison(S);
        v.merge(q.verdict, ctx + ", quotient comparison");
        ConeSequence c = cone_sequence(S, &rng);
        v.merge(c.verdict, ctx + ", cone sequence");

        Diagram G = random_diagram(rng, d, 2, {0, 2, 2});
        auto [E, h] = random_levelwise_quasi_iso(rng, G);
        v.merge(verify_diagram_morphism(G, E, h), ctx + ", levelwise morphism");
        v.merge(verify_quasi_isomorphism(simple_of_morphism(G, E, h)), ctx + ", induced map of simples");
    }
    return v;
}

// ---- 9. product engine ---------------------------------------------------------------

Verdict suite_products(std::uint64_t seed) {
    Verdict v;
    GradedAlgebra ext = exterior_instance(), def = homotopy_instance();
    ProductModel me = make_model(ext, {"u", "v", "t"}), md = make_model(def, {"s", "t", "st"});
    v.merge(ext.verify(), "exterior instance");
    v.merge(def.verify(), "homotopy instance");
    v.merge(verify_bullet_leibniz(me, 2), "Leibniz, exterior");
    v.merge(verify_bullet_leibniz(md, 1), "Leibniz, homotopy");
    Rng rng = Rng::split(seed, "products");
    v.merge(verify_support_pairing(me, rng, 60, 2), "pairing, exterior");
    v.merge(verify_support_pairing(md, rng, 60, 2), "pairing, homotopy");
    v.merge(verify_triple_associativity(me, rng, 40, 1), "triple pairing, exterior (h = 0)");
    v.merge(verify_triple_associativity(md, rng, 40, 1), "triple pairing, homotopy");
    v.merge(verify_homotopy_structure(ext), "homotopy structure, exterior");
    v.merge(verify_homotopy_structure(def), "homotopy structure, homotopy");
    v.merge(verify_sigma_products(me, rng, 40, 2), "swap, exterior");
    v.merge(verify_sigma_products(md, rng, 40, 2), "swap, homotopy");
    v.merge(verify_window_quasi_isos(me, 1, -1, 2), "i and kappa, exterior p = 1");
    v.merge(verify_window_quasi_isos(me, 2, 0, 4), "i and kappa, exterior p = 2");
    v.merge(verify_window_quasi_isos(md, 2, 1, 4), "i and kappa, homotopy p = 2");
    return v;
}

// ---- 10. chow assembly ---------------------------------------------------------------

struct ChowOutcome {
    Verdict v;               // everything except the literal displays
    Verdict literal;         // the literal displays
    bool known = true;       // literal failures are exactly the documented ones
};

ChowOutcome suite_chow(std::uint64_t seed) {
    ChowOutcome out;
    Verdict& v = out.v;
    GreenFormInstance G = green_form_instance();
    v.merge(verify_hat_complex(unit_chow_diagram(QQ)), "unit diagram");
    v.merge(verify_hat_complex(split_chow_diagram(QQ)), "split diagram");
    v.merge(verify_hat_complex(G.diagram), "Green-form instance");
    v.merge(verify_structural_maps(G.diagram), "Green-form instance");
    v.merge(chow_les_report(G.diagram).verdict, "Green-form instance");

    Rng rng = Rng::split(seed, "chow");
    for (int t = 0; t < 30; ++t) {
        ChowDiagram D = random_chow_diagram(rng, QQ, 16);
        std::string ctx = "instance " + std::to_string(t);
        v.expect(D.total_rank() <= 16, [&] { return ctx + ": total rank above 16"; });
        v.merge(verify_hat_complex(D), ctx);
        v.merge(verify_structural_maps(D), ctx);
        ChowLesReport r = chow_les_report(D);
        v.merge(r.verdict, ctx);
        // The sequence must end ... -> CHhat_0 -> CH_0 -> 0.
        bool tail = false;
        for (std::size_t j = 0; j + 1 < r.les.labels.size(); ++j)
            tail = tail || (r.les.labels[j] == "CH_0" && r.les.labels[j + 1] == "H_-1(s(i))" && r.les.dims[j + 1] == 0);
        v.expect(tail, [&] { return ctx + ": sequence does not end in CH_0 -> 0"; });
    }

    const std::vector<std::size_t> expected_literal_failures = {0, 2, 4};
    auto cases = agreement_cases(G);
    std::vector<std::size_t> literal_failures;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const AgreementCase& c = cases[i];
        v.expect(c.corrected, [&] { return "display '" + c.name + "' fails even after correction: " + c.detail; });
        out.literal.expect(c.literal, [&] { return "display '" + c.name + "' taken literally: " + c.detail; });
        if (!c.literal) literal_failures.push_back(i);
    }
    out.known = literal_failures == expected_literal_failures;
    if (!out.literal.ok) {
        std::ostringstream s;
        s << literal_failures.size() << " of " << cases.size() << " literal displays fail;";
        for (std::size_t i : literal_failures) s << " [" << cases[i].name << "] " << cases[i].detail << ";";
        out.literal.failure = s.str();
    }
    return out;
}

// ---- 11. command line and corpus ------------------------------------------------------

Verdict suite_cli(const SuiteOptions& opts) {
    Verdict v;
    v.merge(verify_corpus_round_trips(opts.data_dir), "corpus");
    std::ostringstream out, err;
    int code = run_command({"selftest", "--seed", std::to_string(opts.seed), "--data", opts.data_dir,
                            "--only", "1-10"},
                           out, err);
    v.expect(code == 0, [&] { return "selftest exited with " + std::to_string(code) + ": " + err.str() + out.str(); });
    return v;
}

}  // namespace

std::string criterion_name(int id) {
    static const char* names[] = {"",
                                  "Smith normal form",
                                  "homological core",
                                  "cubical normalization",
                                  "refined normalized complex",
                                  "cube-map identities",
                                  "delta h lemma and the H_{n,m} homotopy",
                                  "star products",
                                  "diagram sequences",
                                  "product engine",
                                  "Chow assembly",
                                  "command line and corpus"};
    return id >= 1 && id <= kCriterionCount ? names[id] : "unknown";
}

std::string CriterionResult::line() const {
    std::ostringstream s;
    s << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << checks << " checks, ";
    s.precision(2);
    s << std::fixed << seconds << " s)";
    if (!pass) s << (known_discrepancy ? " known discrepancy: " : ": ") << detail;
    return s.str();
}

CriterionResult run_criterion(int id, const SuiteOptions& opts) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        switch (id) {
        case 1: v = suite_smith(opts.seed); break;
        case 2: v = suite_homological(opts.seed); break;
        case 3: v = suite_normalization(opts.seed); break;
        case 4: v = suite_refined(opts.seed); break;
        case 5: v = suite_cube_maps(); break;
        case 6: v = suite_lemma_h(opts.seed); break;
        case 7: v = suite_star(opts.seed); break;
        case 8: v = suite_diagrams(opts.seed); break;
        case 9: v = suite_products(opts.seed); break;
        case 10: {
            ChowOutcome c = suite_chow(opts.seed);
            v = c.v;
            v.checks += c.literal.checks;
            if (v.ok && !c.literal.ok) {
                v.ok = false;
                v.failure = c.literal.failure;
                r.known_discrepancy = c.known;
            }
            break;
        }
        case 11: v = suite_cli(opts); break;
        default: v.expect(false, [&] { return std::string("no criterion ") + std::to_string(id); });
        }
    } catch (const std::exception& e) {
        v.ok = false;
        v.failure = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = v.ok;
    r.checks = v.checks;
    r.detail = v.ok ? std::string() : v.failure;
    if (r.pass) r.known_discrepancy = false;
    return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts, const std::vector<int>& ids) {
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id, opts));
    return out;
}

bool acceptable(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass && !r.known_discrepancy) return false;
    return true;
}

}  // namespace hchow
