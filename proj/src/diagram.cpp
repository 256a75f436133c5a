/**
 * @file   diagram.cpp
 * @brief  Simple complexes of diagrams, the star products and the exact
 *         sequences of short diagrams.
 */
#include "hchow/diagram.hpp"

#include "hchow/linalg.hpp"

#include <functional>
#include <stdexcept>

namespace hchow {

namespace {

ChainMap map_in_domain(const ChainMap& f, Domain d) {
    std::map<int, Matrix> c;
    for (const auto& [k, m] : f.comps) c.emplace(k, m.in_domain(d));
    return ChainMap(f.source.in_domain(d), f.target.in_domain(d), std::move(c), f.name);
}

Diagram over_field(const Diagram& D) {
    return D.domain().is_field() ? D : D.in_domain(Domain::rationals());
}

bool same_complex(const GradedComplex& a, const GradedComplex& b) {
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    for (int k = lo; k <= hi; ++k) {
        if (a.rank(k) != b.rank(k)) return false;
        if (a.rank(k) && a.d(k) != b.d(k)) return false;
    }
    return true;
}

GradedComplex sum_of(const std::vector<GradedComplex>& v, Domain dom) {
    GradedComplex s = GradedComplex::zero(dom, Orientation::Chain);
    for (const auto& c : v) s = direct_sum(s, c);
    return s;
}

int range_lo(std::initializer_list<const GradedComplex*> cs) {
    int lo = 0;
    bool first = true;
    for (const auto* c : cs)
        if (c->total_rank() > 0) {
            lo = first ? c->lo() : std::min(lo, c->lo());
            first = false;
        }
    return lo;
}

int range_hi(std::initializer_list<const GradedComplex*> cs) {
    int hi = -1;
    bool first = true;
    for (const auto* c : cs)
        if (c->total_rank() > 0) {
            hi = first ? c->hi() : std::max(hi, c->hi());
            first = false;
        }
    return hi;
}

// Map between complexes whose bases are labelled by leaf keys; `tr` sends a
// source label to a target label and a sign.
ChainMap relabel_map(const GradedComplex& src, const LeafLayout& ls, const GradedComplex& tgt, const LeafLayout& lt,
                     const std::function<std::pair<LeafKey, int>(const LeafKey&)>& tr, const std::string& name) {
    std::map<int, Matrix> comps;
    for (int k = src.lo(); k <= src.hi(); ++k) {
        if (src.rank(k) == 0) continue;
        std::map<LeafKey, std::size_t> rows;
        auto it = lt.find(k);
        if (it != lt.end())
            for (std::size_t r = 0; r < it->second.size(); ++r) rows.emplace(it->second[r], r);
        Matrix m(src.domain(), tgt.rank(k), src.rank(k));
        for (std::size_t j = 0; j < src.rank(k); ++j) {
            auto [key, sign] = tr(ls.at(k).at(j));
            auto r = rows.find(key);
            if (r == rows.end()) throw std::logic_error(name + ": no target basis element for a label in degree " +
                                                        std::to_string(k));
            m.set(r->second, j, sign);
        }
        comps.emplace(k, std::move(m));
    }
    return ChainMap(src, tgt, std::move(comps), name);
}

Verdict same_maps(const ChainMap& a, const ChainMap& b, const std::string& what) {
    Verdict v;
    int lo = std::min(a.source.lo(), b.source.lo()), hi = std::max(a.source.hi(), b.source.hi());
    for (int k = lo; k <= hi; ++k) {
        if (a.source.rank(k) == 0) continue;
        Matrix x = a.at(k), y = b.at(k);
        v.expect(x == y, [&] { return what + " differ in degree " + std::to_string(k); });
    }
    return v;
}

GradedComplex ground_ring(Domain dom) {
    GradedComplex c(dom, Orientation::Chain, 0, {1}, {Matrix(dom, 0, 1)});
    c.name = "R";
    return c;
}

}  // namespace

// ---- diagrams ---------------------------------------------------------------

Verdict Diagram::verify() const {
    Verdict v;
    int n = size();
    v.expect(static_cast<int>(A.size()) == n + 1 && static_cast<int>(f.size()) == n &&
                 static_cast<int>(g.size()) == n,
             [&] { return "diagram: expected n+1 A pieces and n of each map"; });
    if (!v.ok) return v;
    for (const auto& c : A)
        v.expect(c.orientation() == Orientation::Chain && c.domain() == domain(),
                 [&] { return "diagram: A pieces must be chain complexes over one domain"; });
    for (const auto& c : B)
        v.expect(c.orientation() == Orientation::Chain && c.domain() == domain(),
                 [&] { return "diagram: B pieces must be chain complexes over one domain"; });
    for (int i = 0; i < n; ++i) {
        v.expect(same_complex(f[i].source, A[i]) && same_complex(f[i].target, B[i]),
                 [&] { return "diagram: f" + std::to_string(i + 1) + " has the wrong source or target"; });
        v.expect(same_complex(g[i].source, A[i + 1]) && same_complex(g[i].target, B[i]),
                 [&] { return "diagram: g" + std::to_string(i + 1) + " has the wrong source or target"; });
        v.merge(f[i].verify(), "f" + std::to_string(i + 1));
        v.merge(g[i].verify(), "g" + std::to_string(i + 1));
    }
    return v;
}

Diagram Diagram::in_domain(Domain d) const {
    Diagram out;
    for (const auto& c : A) out.A.push_back(c.in_domain(d));
    for (const auto& c : B) out.B.push_back(c.in_domain(d));
    for (const auto& m : f) out.f.push_back(map_in_domain(m, d));
    for (const auto& m : g) out.g.push_back(map_in_domain(m, d));
    out.a_layout = a_layout;
    out.b_layout = b_layout;
    return out;
}

LeafLayout Diagram::layout_a(int i) const {
    return a_layout.empty() ? trivial_layout(A.at(i - 1)) : a_layout.at(i - 1);
}

LeafLayout Diagram::layout_b(int i) const {
    return b_layout.empty() ? trivial_layout(B.at(i - 1)) : b_layout.at(i - 1);
}

Diagram make_diagram(std::vector<GradedComplex> A, std::vector<GradedComplex> B, std::vector<ChainMap> f,
                     std::vector<ChainMap> g) {
    if (A.empty()) throw ShapeError("diagram: at least one A piece is required");
    Diagram D;
    D.A = std::move(A);
    D.B = std::move(B);
    D.f = std::move(f);
    D.g = std::move(g);
    Verdict v = D.verify();
    if (!v.ok) throw ShapeError(v.failure);
    return D;
}

DiagramSimple simple_of_diagram(const Diagram& D) {
    int n = D.size();
    Domain dom = D.domain();
    GradedComplex SA = sum_of(D.A, dom), SB = sum_of(D.B, dom);
    std::map<int, Matrix> phi;
    for (int k = SA.lo(); k <= SA.hi(); ++k) {
        if (SA.rank(k) == 0 || SB.rank(k) == 0) continue;
        Matrix m(dom, SB.rank(k), SA.rank(k));
        std::vector<std::size_t> oa(n + 2, 0), ob(n + 1, 0);
        for (int i = 1; i <= n + 1; ++i) oa[i] = oa[i - 1] + D.A[i - 1].rank(k);
        for (int i = 1; i <= n; ++i) ob[i] = ob[i - 1] + D.B[i - 1].rank(k);
        for (int i = 1; i <= n; ++i) {
            if (D.B[i - 1].rank(k) == 0) continue;
            if (D.A[i - 1].rank(k)) m.place(ob[i - 1], oa[i - 1], D.f[i - 1].at(k));
            if (D.A[i].rank(k)) m.place(ob[i - 1], oa[i], -D.g[i - 1].at(k));
        }
        phi.emplace(k, std::move(m));
    }
    ChainMap ph(SA, SB, std::move(phi), "phi");
    DiagramSimple out;
    out.complex = simple(ph);
    out.complex.name = "s(D)";
    std::vector<LeafLayout> la, lb;
    for (int i = 1; i <= n + 1; ++i) la.push_back(D.layout_a(i));
    for (int i = 1; i <= n; ++i) lb.push_back(D.layout_b(i));
    const GradedComplex& S = out.complex;
    for (int k = S.lo(); k <= S.hi(); ++k) {
        auto& ao = out.a_offset[k];
        auto& bo = out.b_offset[k];
        auto& lay = out.layout[k];
        ao.assign(n + 2, 0);
        bo.assign(n + 1, 0);
        std::size_t off = 0;
        for (int i = 1; i <= n + 1; ++i) {
            ao[i] = off;
            for (std::size_t a = 0; a < D.A[i - 1].rank(k); ++a) {
                LeafKey key{{0, static_cast<std::size_t>(i)}};
                const LeafKey& leaf = la[i - 1].at(k).at(a);
                key.insert(key.end(), leaf.begin(), leaf.end());
                lay.push_back(std::move(key));
            }
            off += D.A[i - 1].rank(k);
        }
        for (int i = 1; i <= n; ++i) {
            bo[i] = off;
            for (std::size_t b = 0; b < D.B[i - 1].rank(k + 1); ++b) {
                LeafKey key{{1, static_cast<std::size_t>(i)}};
                const LeafKey& leaf = lb[i - 1].at(k + 1).at(b);
                key.insert(key.end(), leaf.begin(), leaf.end());
                lay.push_back(std::move(key));
            }
            off += D.B[i - 1].rank(k + 1);
        }
        if (off != S.rank(k)) throw std::logic_error("simple_of_diagram: block layout does not match s(phi)");
    }
    return out;
}

Diagram tensor_diagram(const Diagram& D, const Diagram& E) {
    if (D.size() != E.size()) throw ShapeError("tensor_diagram: diagrams of different sizes");
    if (!(D.domain() == E.domain())) throw DomainError("tensor_diagram: domain mismatch");
    int n = D.size();
    std::vector<TensorProduct> TA, TB;
    for (int i = 1; i <= n + 1; ++i) {
        LeafLayout l1 = D.layout_a(i), l2 = E.layout_a(i);
        TA.push_back(tensor(D.A[i - 1], E.A[i - 1], &l1, &l2));
    }
    for (int i = 1; i <= n; ++i) {
        LeafLayout l1 = D.layout_b(i), l2 = E.layout_b(i);
        TB.push_back(tensor(D.B[i - 1], E.B[i - 1], &l1, &l2));
    }
    Diagram out;
    for (const auto& t : TA) {
        out.A.push_back(t.complex);
        out.a_layout.push_back(t.layout);
    }
    for (const auto& t : TB) {
        out.B.push_back(t.complex);
        out.b_layout.push_back(t.layout);
    }
    for (int i = 0; i < n; ++i) {
        out.f.push_back(tensor_maps(D.f[i], E.f[i], TA[i], TB[i]));
        out.g.push_back(tensor_maps(D.g[i], E.g[i], TA[i + 1], TB[i]));
    }
    return out;
}

// ---- morphisms --------------------------------------------------------------

Verdict verify_diagram_morphism(const Diagram& D, const Diagram& E, const DiagramMorphism& h) {
    Verdict v;
    int n = D.size();
    v.expect(E.size() == n && static_cast<int>(h.hA.size()) == n + 1 && static_cast<int>(h.hB.size()) == n,
             [] { return "diagram morphism: size mismatch"; });
    if (!v.ok) return v;
    for (int i = 0; i <= n; ++i) v.merge(h.hA[i].verify(), "hA" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) v.merge(h.hB[i].verify(), "hB" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) {
        int lo = range_lo({&D.A[i], &D.A[i + 1], &D.B[i]}), hi = range_hi({&D.A[i], &D.A[i + 1], &D.B[i]});
        for (int k = lo; k <= hi; ++k) {
            v.expect(E.f[i].at(k) * h.hA[i].at(k) == h.hB[i].at(k) * D.f[i].at(k),
                     [&] { return "f" + std::to_string(i + 1) + " square fails in degree " + std::to_string(k); });
            v.expect(E.g[i].at(k) * h.hA[i + 1].at(k) == h.hB[i].at(k) * D.g[i].at(k),
                     [&] { return "g" + std::to_string(i + 1) + " square fails in degree " + std::to_string(k); });
        }
    }
    return v;
}

ChainMap simple_of_morphism(const Diagram& D, const Diagram& E, const DiagramMorphism& h) {
    DiagramSimple sd = simple_of_diagram(D), se = simple_of_diagram(E);
    int n = D.size();
    std::map<int, Matrix> comps;
    for (int k = sd.complex.lo(); k <= sd.complex.hi(); ++k) {
        if (sd.complex.rank(k) == 0 || se.complex.rank(k) == 0) continue;
        Matrix m(D.domain(), se.complex.rank(k), sd.complex.rank(k));
        for (int i = 1; i <= n + 1; ++i)
            if (D.A[i - 1].rank(k) && E.A[i - 1].rank(k))
                m.place(se.a_offset.at(k)[i], sd.a_offset.at(k)[i], h.hA[i - 1].at(k));
        for (int i = 1; i <= n; ++i)
            if (D.B[i - 1].rank(k + 1) && E.B[i - 1].rank(k + 1))
                m.place(se.b_offset.at(k)[i], sd.b_offset.at(k)[i], h.hB[i - 1].at(k + 1));
        comps.emplace(k, std::move(m));
    }
    return ChainMap(sd.complex, se.complex, std::move(comps), "s(h)");
}

// ---- star products ------------------------------------------------------------

StarProduct star_product(long beta, const Diagram& D, const Diagram& E) {
    if (D.size() != E.size()) throw ShapeError("star_product: diagrams of different sizes");
    int n = D.size();
    Domain dom = D.domain();
    StarProduct out;
    out.beta = beta;
    out.sd = simple_of_diagram(D);
    out.se = simple_of_diagram(E);
    out.target = simple_of_diagram(tensor_diagram(D, E));
    out.source = tensor(out.sd.complex, out.se.complex);
    std::vector<TensorProduct> TA, TB;
    for (int i = 0; i <= n; ++i) TA.push_back(tensor(D.A[i], E.A[i]));
    for (int i = 0; i < n; ++i) TB.push_back(tensor(D.B[i], E.B[i]));
    const GradedComplex &S = out.sd.complex, &S2 = out.se.complex, &T = out.source.complex;
    const GradedComplex& U = out.target.complex;
    mpq_class b(beta), one_minus_b = 1 - b;

    std::map<int, Matrix> comps;
    for (int k = T.lo(); k <= T.hi(); ++k) {
        if (T.rank(k) == 0) continue;
        Matrix m(dom, U.rank(k), T.rank(k));
        for (int p = S.lo(); p <= S.hi(); ++p) {
            int q = k - p;
            if (S.rank(p) == 0 || S2.rank(q) == 0) continue;
            std::size_t rq = S2.rank(q);
            auto col = [&](std::size_t x, std::size_t y) { return out.source.index(p, x, q, y, rq); };
            // a * a' = a (x) a'
            for (int i = 1; i <= n + 1; ++i) {
                const GradedComplex &Ai = D.A[i - 1], &Ei = E.A[i - 1];
                for (std::size_t a = 0; a < Ai.rank(p); ++a)
                    for (std::size_t a2 = 0; a2 < Ei.rank(q); ++a2)
                        m.add_to(out.target.a_index(k, i, TA[i - 1].index(p, a, q, a2, Ei.rank(q))),
                                 col(out.sd.a_index(p, i, a), out.se.a_index(q, i, a2)), 1);
            }
            // b * a' = b (x) ((1 - beta) f'_j + beta g'_{j-1})(a'), landing in B^i (x) B'^i
            for (int i = 1; i <= n; ++i) {
                const GradedComplex &Bi = D.B[i - 1], &Fi = E.B[i - 1];
                for (int j : {i, i + 1}) {
                    const GradedComplex& Ej = E.A[j - 1];
                    if (Bi.rank(p + 1) == 0 || Ej.rank(q) == 0 || Fi.rank(q) == 0) continue;
                    Matrix psi = j == i ? E.f[i - 1].at(q).scaled(one_minus_b) : E.g[i - 1].at(q).scaled(b);
                    for (std::size_t bb = 0; bb < Bi.rank(p + 1); ++bb)
                        for (std::size_t a2 = 0; a2 < Ej.rank(q); ++a2)
                            for (std::size_t c = 0; c < Fi.rank(q); ++c) {
                                if (sgn(psi(c, a2)) == 0) continue;
                                m.add_to(out.target.b_index(k, i, TB[i - 1].index(p + 1, bb, q, c, Fi.rank(q))),
                                         col(out.sd.b_index(p, i, bb), out.se.a_index(q, j, a2)), psi(c, a2));
                            }
                }
            }
            // a * b' = (-1)^p (beta f_j + (1 - beta) g_{j-1})(a) (x) b'
            for (int i = 1; i <= n; ++i) {
                const GradedComplex &Bi = D.B[i - 1], &Fi = E.B[i - 1];
                for (int j : {i, i + 1}) {
                    const GradedComplex& Aj = D.A[j - 1];
                    if (Aj.rank(p) == 0 || Bi.rank(p) == 0 || Fi.rank(q + 1) == 0) continue;
                    mpq_class sign = (p % 2 == 0) ? 1 : -1;
                    Matrix chi = j == i ? D.f[i - 1].at(p).scaled(sign * b)
                                        : D.g[i - 1].at(p).scaled(sign * one_minus_b);
                    for (std::size_t a = 0; a < Aj.rank(p); ++a)
                        for (std::size_t c = 0; c < Bi.rank(p); ++c) {
                            if (sgn(chi(c, a)) == 0) continue;
                            for (std::size_t b2 = 0; b2 < Fi.rank(q + 1); ++b2)
                                m.add_to(out.target.b_index(k, i, TB[i - 1].index(p, c, q + 1, b2, Fi.rank(q + 1))),
                                         col(out.sd.a_index(p, j, a), out.se.b_index(q, i, b2)), chi(c, a));
                        }
                }
            }
            // b * b' = 0
        }
        comps.emplace(k, std::move(m));
    }
    out.map = ChainMap(T, U, std::move(comps), "star_" + std::to_string(beta));
    return out;
}

Matrix StarProduct::apply(int p, const Matrix& x, int q, const Matrix& y) const {
    const GradedComplex &S = sd.complex, &S2 = se.complex;
    if (x.rows() != S.rank(p) || y.rows() != S2.rank(q) || x.cols() != 1 || y.cols() != 1)
        throw ShapeError("star product: element shapes do not match the simple complexes");
    int k = p + q;
    Matrix v(S.domain(), source.complex.rank(k), 1);
    for (std::size_t s = 0; s < x.rows(); ++s) {
        if (sgn(x(s, 0)) == 0) continue;
        for (std::size_t t = 0; t < y.rows(); ++t)
            if (sgn(y(t, 0)) != 0) v.add_to(source.index(p, s, q, t, S2.rank(q)), 0, x(s, 0) * y(t, 0));
    }
    return map.at(k) * v;
}

Verdict verify_star_chain_map(const StarProduct& s) {
    Verdict v;
    v.merge(s.map.verify(), "star_" + std::to_string(s.beta));
    return v;
}

Verdict verify_star_homology_agreement(const Diagram& D0, const Diagram& E0, long beta, long beta2) {
    Diagram D = over_field(D0), E = over_field(E0);
    StarProduct s1 = star_product(beta, D, E), s2 = star_product(beta2, D, E);
    Verdict v;
    const GradedComplex& T = s1.source.complex;
    for (int k = T.lo(); k <= T.hi(); ++k) {
        Matrix h1 = induced_map(s1.map, k), h2 = induced_map(s2.map, k);
        v.expect(h1 == h2, [&] {
            return "star_" + std::to_string(beta) + " and star_" + std::to_string(beta2) +
                   " differ on homology in degree " + std::to_string(k);
        });
    }
    return v;
}

Verdict verify_star_swap(const Diagram& D, const Diagram& E, long beta) {
    if (!D.a_layout.empty() || !E.a_layout.empty())
        throw std::invalid_argument("verify_star_swap expects diagrams with plain pieces");
    StarProduct left = star_product(beta, D, E), right = star_product(1 - beta, E, D);
    // x (x) y -> (-1)^{pq} y (x) x
    ChainMap swap_t = relabel_map(
        left.source.complex, left.source.layout, right.source.complex, right.source.layout,
        [](const LeafKey& key) {
            int sign = (key[0].first % 2 != 0 && key[1].first % 2 != 0) ? -1 : 1;
            return std::make_pair(LeafKey{key[1], key[0]}, sign);
        },
        "sigma");
    // within a piece, b (x) c -> (-1)^{nm} c (x) b by internal degrees
    ChainMap swap_s = relabel_map(
        left.target.complex, left.target.layout, right.target.complex, right.target.layout,
        [](const LeafKey& key) {
            int sign = (key[1].first % 2 != 0 && key[2].first % 2 != 0) ? -1 : 1;
            return std::make_pair(LeafKey{key[0], key[2], key[1]}, sign);
        },
        "sigma");
    Verdict v;
    v.merge(swap_s.verify(), "sigma on s(D (x) E)");
    v.merge(same_maps(compose(swap_s, left.map), compose(right.map, swap_t),
                      "sigma(x *_" + std::to_string(beta) + " y) and sigma(x (x) y) *_" + std::to_string(1 - beta)),
            "swap square");
    return v;
}

Verdict verify_star_associativity(const Diagram& D, const Diagram& E, const Diagram& F, long beta) {
    Diagram DE = tensor_diagram(D, E), EF = tensor_diagram(E, F);
    StarProduct s12 = star_product(beta, D, E), s12_3 = star_product(beta, DE, F);
    StarProduct s23 = star_product(beta, E, F), s1_23 = star_product(beta, D, EF);
    LeafLayout l3 = trivial_layout(s12_3.se.complex), l1 = trivial_layout(s1_23.sd.complex);
    TensorProduct T1 = tensor(s12.source.complex, s12_3.se.complex, &s12.source.layout, &l3);
    TensorProduct T2 = tensor(s1_23.sd.complex, s23.source.complex, &l1, &s23.source.layout);
    ChainMap left = compose(s12_3.map, tensor_maps(s12.map, ChainMap::identity(s12_3.se.complex), T1, s12_3.source));
    ChainMap right = compose(s1_23.map, tensor_maps(ChainMap::identity(s1_23.sd.complex), s23.map, T2, s1_23.source));
    auto same_label = [](const LeafKey& key) { return std::make_pair(key, 1); };
    ChainMap pt = relabel_map(T1.complex, T1.layout, T2.complex, T2.layout, same_label, "reassociate");
    ChainMap ps = relabel_map(s12_3.target.complex, s12_3.target.layout, s1_23.target.complex, s1_23.target.layout,
                              same_label, "reassociate");
    Verdict v;
    v.merge(same_maps(compose(ps, left), compose(right, pt), "(x * y) * z and x * (y * z)"),
            "star_" + std::to_string(beta) + " associativity");
    return v;
}

// ---- short diagrams -------------------------------------------------------------

Matrix rho_on_homology(const Diagram& D0, int k, Rng* rng) {
    if (D0.size() != 2) throw ShapeError("rho_on_homology expects a diagram of size 2");
    Diagram D = over_field(D0);
    Domain dom = D.domain();
    if (!verify_quasi_isomorphism(D.g[0]).ok) throw std::domain_error("rho_on_homology: g1 is not a quasi-isomorphism");
    const GradedComplex &A1 = D.A[0], &A2 = D.A[1], &B1 = D.B[0], &B2 = D.B[1];
    HomologyBasis ha = homology_basis(A1, k), hb = homology_basis(B2, k);
    if (ha.dim() == 0) return Matrix(dom, hb.dim(), 0);
    // g1(a2) + d(y) = f1(a1) with d(a2) = 0
    std::size_t r2 = A2.rank(k), rb = B1.rank(k), ry = B1.rank(k + 1), rd = A2.rank(k - 1);
    Matrix M(dom, rb + rd, r2 + ry);
    if (rb && r2) M.place(0, 0, D.g[0].at(k));
    if (rb && ry) M.place(0, r2, B1.d(k + 1));
    if (rd && r2) M.place(rb, 0, A2.d(k));
    Matrix rhs(dom, rb + rd, ha.dim());
    if (rb) rhs.place(0, 0, D.f[0].at(k) * ha.reps);
    std::optional<Matrix> sol = solve(M, rhs);
    if (!sol) throw std::logic_error("rho_on_homology: a cycle of A^1 has no lift through g1 in degree " +
                                     std::to_string(k));
    Matrix f2 = D.f[1].at(k);
    Matrix first = hb.classes_of(f2 * sol->rows_range(0, r2));
    // a second lift differs by a solution of the homogeneous system
    Matrix K = kernel(M);
    if (K.cols() > 0) {
        Matrix c = rng ? random_matrix(*rng, dom, K.cols(), ha.dim()) : Matrix(dom, K.cols(), ha.dim());
        if (!rng)
            for (std::size_t i = 0; i < K.cols(); ++i)
                for (std::size_t j = 0; j < ha.dim(); ++j) c.set(i, j, 1);
        Matrix other = *sol + K * c;
        Matrix second = hb.classes_of(f2 * other.rows_range(0, r2));
        if (second != first)
            throw std::logic_error("rho_on_homology: two lifts give different classes in degree " + std::to_string(k));
    }
    return first;
}

ExactSequenceReport diagram_les(const Diagram& D0, Rng* rng) {
    if (D0.size() != 2) throw ShapeError("diagram_les expects a diagram of size 2");
    if (D0.A[2].total_rank() != 0) throw ShapeError("diagram_les expects A^3 = 0 (use cone_sequence)");
    Diagram D = over_field(D0);
    Domain dom = D.domain();
    DiagramSimple sd = simple_of_diagram(D);
    const GradedComplex &S = sd.complex, &A1 = D.A[0], &B2 = D.B[1];
    int lo = range_lo({&S, &A1, &B2}) - 1, hi = range_hi({&S, &A1, &B2}) + 1;
    std::vector<std::string> labels;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    for (int k = hi; k >= lo; --k) {
        HomologyBasis hs = homology_basis(S, k), ha = homology_basis(A1, k), hb = homology_basis(B2, k);
        Matrix proj(dom, A1.rank(k), S.rank(k));
        if (A1.rank(k)) proj.place(0, sd.a_offset.at(k)[1], Matrix::identity(dom, A1.rank(k)));
        labels.push_back("H_" + std::to_string(k) + "(s)");
        dims.push_back(hs.dim());
        maps.push_back(induced_map(hs, ha, proj));
        labels.push_back("H_" + std::to_string(k) + "(A^1)");
        dims.push_back(ha.dim());
        maps.push_back(rho_on_homology(D, k, rng));
        labels.push_back("H_" + std::to_string(k) + "(B^2)");
        dims.push_back(hb.dim());
        // b -> (0, 0, 0, 0, b) in s_{k-1}
        HomologyBasis hs2 = homology_basis(S, k - 1);
        Matrix inj(dom, S.rank(k - 1), B2.rank(k));
        if (B2.rank(k)) inj.place(sd.b_offset.at(k - 1)[2], 0, Matrix::identity(dom, B2.rank(k)));
        if (k != lo) maps.push_back(induced_map(hb, hs2, inj));
    }
    return check_exact(std::move(labels), std::move(dims), std::move(maps), dom);
}

QuotientComparison quotient_comparison(const Diagram& D0) {
    if (D0.size() != 2) throw ShapeError("quotient_comparison expects a diagram of size 2");
    Diagram D = over_field(D0);
    Domain dom = D.domain();
    const GradedComplex &A3 = D.A[2], &B2 = D.B[1];
    const ChainMap& g2 = D.g[1];
    std::map<int, Matrix> spans;
    for (int k = B2.lo(); k <= B2.hi(); ++k) {
        if (A3.rank(k) && rank(g2.at(k)) != A3.rank(k))
            throw std::invalid_argument("quotient_comparison: g2 is not injective in degree " + std::to_string(k));
        spans.emplace(k, A3.rank(k) ? g2.at(k) : Matrix(dom, B2.rank(k), 0));
    }
    for (int k = A3.lo(); k <= A3.hi(); ++k)
        if (A3.rank(k) && B2.rank(k) == 0) throw std::invalid_argument("quotient_comparison: g2 is not injective");
    ChainMap pi = quotient_projection(B2, spans);
    GradedComplex Z = GradedComplex::zero(dom, Orientation::Chain);
    QuotientComparison out;
    out.quotient = make_diagram({D.A[0], D.A[1], Z}, {D.B[0], pi.target}, {D.f[0], compose(pi, D.f[1])},
                                {D.g[0], ChainMap::zero(Z, pi.target)});
    DiagramMorphism h;
    h.hA = {ChainMap::identity(D.A[0]), ChainMap::identity(D.A[1]), ChainMap::zero(A3, Z)};
    h.hB = {ChainMap::identity(D.B[0]), pi};
    out.verdict.merge(verify_diagram_morphism(D, out.quotient, h), "projection of diagrams");
    out.projection = simple_of_morphism(D, out.quotient, h);
    out.verdict.merge(out.projection.verify(), "s(D) -> s(D')");
    out.verdict.merge(verify_quasi_isomorphism(out.projection), "s(D) -> s(D')");
    return out;
}

ConeSequence cone_sequence(const Diagram& D0, Rng* rng) {
    if (D0.size() != 2) throw ShapeError("cone_sequence expects a diagram of size 2");
    Diagram D = over_field(D0);
    Domain dom = D.domain();
    const GradedComplex &A2 = D.A[1], &A3 = D.A[2], &B2 = D.B[1];
    GradedComplex cone = translate(simple(D.g[1]), 1);  // degree k: A^3_{k-1} + B^2_k
    cone.name = "s(g2)[1]";
    std::map<int, Matrix> f2c;
    for (int k = A2.lo(); k <= A2.hi(); ++k) {
        if (A2.rank(k) == 0 || cone.rank(k) == 0) continue;
        Matrix m(dom, cone.rank(k), A2.rank(k));
        if (B2.rank(k)) m.place(A3.rank(k - 1), 0, D.f[1].at(k));
        f2c.emplace(k, std::move(m));
    }
    ChainMap f2(A2, cone, std::move(f2c), "f2'");
    GradedComplex Z = GradedComplex::zero(dom, Orientation::Chain);
    ConeSequence out;
    out.replaced = make_diagram({D.A[0], A2, Z}, {D.B[0], cone}, {D.f[0], f2}, {D.g[0], ChainMap::zero(Z, cone)});
    DiagramSimple s1 = simple_of_diagram(D), s2 = simple_of_diagram(out.replaced);
    // (a1, a2, a3, b1, b2) -> (a1, a2, b1, (-a3, b2))
    std::map<int, Matrix> comps;
    for (int k = s1.complex.lo(); k <= s1.complex.hi(); ++k) {
        if (s1.complex.rank(k) == 0) continue;
        Matrix m(dom, s2.complex.rank(k), s1.complex.rank(k));
        for (int i = 1; i <= 2; ++i)
            if (D.A[i - 1].rank(k))
                m.place(s2.a_offset.at(k)[i], s1.a_offset.at(k)[i], Matrix::identity(dom, D.A[i - 1].rank(k)));
        if (D.B[0].rank(k + 1))
            m.place(s2.b_offset.at(k)[1], s1.b_offset.at(k)[1], Matrix::identity(dom, D.B[0].rank(k + 1)));
        if (A3.rank(k))
            m.place(s2.b_offset.at(k)[2], s1.a_offset.at(k)[3], -Matrix::identity(dom, A3.rank(k)));
        if (B2.rank(k + 1))
            m.place(s2.b_offset.at(k)[2] + A3.rank(k), s1.b_offset.at(k)[2], Matrix::identity(dom, B2.rank(k + 1)));
        comps.emplace(k, std::move(m));
    }
    out.iso = ChainMap(s1.complex, s2.complex, std::move(comps), "s(D) -> s(D'')");
    out.verdict.merge(out.iso.verify());
    out.verdict.merge(verify_quasi_isomorphism(out.iso), "s(D) -> s(D'')");
    out.les = diagram_les(out.replaced, rng);
    for (auto& l : out.les.labels) {
        auto pos = l.find("(B^2)");
        if (pos == std::string::npos) continue;
        int k = std::stoi(l.substr(2, pos - 2));
        l = "H_" + std::to_string(k - 1) + "(s(g2))";
    }
    out.verdict.expect(out.les.exact, [&] { return "cone sequence: " + out.les.failure; });
    return out;
}

// ---- instances ----------------------------------------------------------------

Diagram unit_diagram(Domain dom, int n) {
    GradedComplex R = ground_ring(dom);
    std::vector<GradedComplex> A(n + 1, R), B(n, R);
    std::vector<ChainMap> f(n, ChainMap::identity(R)), g(n, ChainMap::identity(R));
    return make_diagram(std::move(A), std::move(B), std::move(f), std::move(g));
}

Diagram random_diagram(Rng& rng, Domain dom, int n, const ComplexShape& shape) {
    std::vector<GradedComplex> A, B;
    std::vector<ChainMap> f, g;
    for (int i = 0; i <= n; ++i) A.push_back(random_complex(rng, dom, Orientation::Chain, shape));
    for (int i = 0; i < n; ++i) B.push_back(random_complex(rng, dom, Orientation::Chain, shape));
    for (int i = 0; i < n; ++i) {
        f.push_back(random_chain_map(rng, A[i], B[i]));
        g.push_back(random_chain_map(rng, A[i + 1], B[i]));
    }
    return make_diagram(std::move(A), std::move(B), std::move(f), std::move(g));
}

Diagram random_short_diagram(Rng& rng, Domain dom, const ComplexShape& shape) {
    GradedComplex A1 = random_complex(rng, dom, Orientation::Chain, shape);
    GradedComplex A2 = random_complex(rng, dom, Orientation::Chain, shape);
    ChainMap g1 = random_quasi_isomorphism(rng, A2, 1);
    ChainMap f1 = random_chain_map(rng, A1, g1.target);
    GradedComplex B2 = random_complex(rng, dom, Orientation::Chain, shape);
    ChainMap f2 = random_chain_map(rng, A2, B2);
    GradedComplex Z = GradedComplex::zero(dom, Orientation::Chain);
    return make_diagram({A1, A2, Z}, {g1.target, B2}, {f1, f2}, {g1, ChainMap::zero(Z, B2)});
}

Diagram random_short_diagram_with_sub(Rng& rng, Domain dom, const ComplexShape& shape) {
    Diagram D = random_short_diagram(rng, dom, shape);
    ChainMap inc = subcomplex_inclusion(D.B[1], random_subcomplex_spans(rng, D.B[1]));
    return make_diagram({D.A[0], D.A[1], inc.source}, D.B, D.f, {D.g[0], inc});
}

std::pair<Diagram, DiagramMorphism> random_levelwise_quasi_iso(Rng& rng, const Diagram& D) {
    int n = D.size();
    std::vector<QuasiIsoWithRetraction> qa, qb;
    for (const auto& c : D.A) qa.push_back(random_quasi_isomorphism_with_retraction(rng, c, 1));
    for (const auto& c : D.B) qb.push_back(random_quasi_isomorphism_with_retraction(rng, c, 1));
    std::vector<GradedComplex> A, B;
    std::vector<ChainMap> f, g;
    for (const auto& q : qa) A.push_back(q.q.target);
    for (const auto& q : qb) B.push_back(q.q.target);
    for (int i = 0; i < n; ++i) {
        f.push_back(compose(qb[i].q, compose(D.f[i], qa[i].r)));
        g.push_back(compose(qb[i].q, compose(D.g[i], qa[i + 1].r)));
    }
    DiagramMorphism h;
    for (const auto& q : qa) h.hA.push_back(q.q);
    for (const auto& q : qb) h.hB.push_back(q.q);
    return {make_diagram(std::move(A), std::move(B), std::move(f), std::move(g)), std::move(h)};
}

}  // namespace hchow
