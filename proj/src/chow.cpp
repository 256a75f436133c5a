/**
 * @file   chow.cpp
 * @brief  Chow diagram assembly, structural maps, the long exact sequence and
 *         the Green-form stand-in.
 */
#include "hchow/chow.hpp"

#include <sstream>
#include <stdexcept>

namespace hchow {

namespace {

GradedComplex point(Domain dom, int degree = 0) {
    std::size_t below = 0;
    GradedComplex c(dom, Orientation::Chain, degree, {1}, {Matrix(dom, below, 1)});
    return c;
}

Matrix column(Domain dom, std::size_t size) { return Matrix(dom, size, 1); }

Matrix unit(Domain dom, std::size_t size, std::size_t i) {
    Matrix e(dom, size, 1);
    e.set(i, 0, 1);
    return e;
}

// Chain complex with degree n equal to cochain degree top - n.
GradedComplex as_chain(const GradedComplex& c, int top) {
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    int lo = top - c.hi();
    for (int n = lo; n <= top - c.lo(); ++n) {
        ranks.push_back(c.rank(top - n));
        ds.push_back(c.d(top - n));
    }
    GradedComplex out(c.domain(), Orientation::Chain, lo, std::move(ranks), std::move(ds));
    out.name = c.name;
    return out;
}

ChainMap as_chain(const ChainMap& f, const GradedComplex& src, const GradedComplex& tgt, int top, std::string name) {
    std::map<int, Matrix> comps;
    for (const auto& [k, m] : f.comps) comps.emplace(top - k, m);
    return ChainMap(src, tgt, std::move(comps), std::move(name));
}

Matrix solve_or_throw(const Matrix& a, const Matrix& b, const char* what) {
    auto x = solve(a, b);
    if (!x) throw std::invalid_argument(std::string(what) + ": vector is not in the span");
    return *x;
}

// The pieces of s_n in layout order.
struct Blocks {
    std::size_t z, a0, a1, a2, a3;
    std::size_t total() const { return z + a0 + a1 + a2 + a3; }
};

Blocks blocks(const ChowDiagram& D, int n) {
    return {D.cycles.rank(n), D.supports.rank(n), D.top.rank(n), D.cohomology.rank(n + 1), D.deligne.rank(n + 1)};
}

int hat_lo(const ChowDiagram& D) {
    return std::min({D.cycles.lo(), D.supports.lo(), D.top.lo(), D.cohomology.lo() - 1, D.deligne.lo() - 1});
}

int hat_hi(const ChowDiagram& D) {
    return std::max({D.cycles.hi(), D.supports.hi(), D.top.hi(), D.cohomology.hi() - 1, D.deligne.hi() - 1});
}

std::string vec_text(const Matrix& v) { return "[" + v.transpose().to_string() + "]"; }

// i maps onto D_0 and D has nothing below degree 0, so s(i) has no homology
// in degree -1 and the sequence ends in CH_0 -> 0.
bool closes_at_zero(const ChowDiagram& D) {
    if (D.deligne.total_rank() == 0) return true;
    for (int k = D.deligne.lo(); k < 0; ++k)
        if (D.deligne.rank(k)) return false;
    return rank(D.i.at(0)) == D.deligne.rank(0);
}

}  // namespace

// ---- the diagram -------------------------------------------------------------

std::size_t ChowDiagram::total_rank() const {
    return cycles.total_rank() + cohomology.total_rank() + supports.total_rank() + deligne.total_rank() +
           top.total_rank();
}

Diagram ChowDiagram::diagram() const {
    return make_diagram({cycles, supports, top}, {cohomology, deligne}, {f1, rho}, {g1, i});
}

Verdict validate_chow_diagram(const ChowDiagram& D) {
    Verdict v;
    v.expect(D.domain().is_field(), [] { return std::string("chow diagram: the domain must be a field"); });
    if (!v.ok) return v;
    const GradedComplex* pieces[] = {&D.cycles, &D.cohomology, &D.supports, &D.deligne, &D.top};
    for (const GradedComplex* c : pieces) {
        v.expect(c->orientation() == Orientation::Chain, [] { return std::string("pieces must be chain complexes"); });
        v.expect(c->domain() == D.domain(), [] { return std::string("pieces must share a domain"); });
    }
    if (!v.ok) return v;
    auto endpoints = [&](const ChainMap& f, const GradedComplex& s, const GradedComplex& t, const char* name) {
        v.expect(f.source == s && f.target == t, [&] { return std::string(name) + ": wrong source or target"; });
        v.merge(f.verify(), name);
    };
    endpoints(D.f1, D.cycles, D.cohomology, "f1");
    endpoints(D.g1, D.supports, D.cohomology, "g1");
    endpoints(D.rho, D.supports, D.deligne, "rho");
    endpoints(D.i, D.top, D.deligne, "i");
    if (!v.ok) return v;
    v.merge(verify_quasi_isomorphism(D.g1), "g1 is not a quasi-isomorphism");
    for (int k = D.top.lo(); k <= D.top.hi(); ++k)
        v.expect(k == 0 || D.top.rank(k) == 0, [&] {
            return "the source of i is not concentrated in degree 0 (rank " + std::to_string(D.top.rank(k)) +
                   " in degree " + std::to_string(k) + ")";
        });
    v.expect(rank(D.i.at(0)) == D.top.rank(0), [&] {
        return "i is not injective: rank " + std::to_string(rank(D.i.at(0))) + " on a space of dimension " +
               std::to_string(D.top.rank(0));
    });
    return v;
}

ChowDiagram build_chow_diagram(GradedComplex cycles, GradedComplex cohomology, GradedComplex supports,
                               GradedComplex deligne, GradedComplex top, ChainMap f1, ChainMap g1, ChainMap rho,
                               ChainMap i) {
    ChowDiagram D{std::move(cycles), std::move(cohomology), std::move(supports), std::move(deligne), std::move(top),
                  std::move(f1), std::move(g1), std::move(rho), std::move(i)};
    Verdict v = validate_chow_diagram(D);
    if (!v.ok) throw std::invalid_argument("invalid chow diagram: " + v.failure);
    return D;
}

// ---- elements ------------------------------------------------------------------

std::string HatElement::to_string() const {
    std::ostringstream os;
    os << "deg " << n << ": (" << vec_text(z) << ", " << vec_text(a0) << ", " << vec_text(a1) << ", " << vec_text(a2)
       << ", " << vec_text(a3) << ")";
    return os.str();
}

HatElement hat_zero(const ChowDiagram& D, int n) {
    Blocks b = blocks(D, n);
    Domain dom = D.domain();
    return {n, column(dom, b.z), column(dom, b.a0), column(dom, b.a1), column(dom, b.a2), column(dom, b.a3)};
}

Matrix hat_pack(const ChowDiagram& D, const HatElement& x) {
    Blocks b = blocks(D, x.n);
    const Matrix* parts[] = {&x.z, &x.a0, &x.a1, &x.a2, &x.a3};
    std::size_t sizes[] = {b.z, b.a0, b.a1, b.a2, b.a3};
    Matrix v(D.domain(), b.total(), 1);
    std::size_t at = 0;
    for (int j = 0; j < 5; ++j) {
        if (parts[j]->rows() != sizes[j] || parts[j]->cols() != 1)
            throw ShapeError("hat element of degree " + std::to_string(x.n) + ": component " + std::to_string(j) +
                             " has the wrong size");
        v.place(at, 0, *parts[j]);
        at += sizes[j];
    }
    return v;
}

HatElement hat_unpack(const ChowDiagram& D, int n, const Matrix& v) {
    Blocks b = blocks(D, n);
    if (v.rows() != b.total() || v.cols() != 1) throw ShapeError("hat_unpack: wrong vector size");
    HatElement x;
    x.n = n;
    std::size_t at = 0;
    Matrix* parts[] = {&x.z, &x.a0, &x.a1, &x.a2, &x.a3};
    std::size_t sizes[] = {b.z, b.a0, b.a1, b.a2, b.a3};
    for (int j = 0; j < 5; ++j) {
        *parts[j] = v.rows_range(at, at + sizes[j]);
        at += sizes[j];
    }
    return x;
}

HatElement hat_differential(const ChowDiagram& D, const HatElement& x) {
    int n = x.n;
    hat_pack(D, x);  // shape check
    HatElement y = hat_zero(D, n - 1);
    y.z = D.cycles.d(n) * x.z;
    y.a0 = D.supports.d(n) * x.a0;
    y.a2 = D.f1.at(n) * x.z - D.g1.at(n) * x.a0 - D.cohomology.d(n + 1) * x.a2;
    y.a3 = D.rho.at(n) * x.a0 - D.i.at(n) * x.a1 - D.deligne.d(n + 1) * x.a3;
    return y;
}

GradedComplex hat_complex(const ChowDiagram& D) {
    Domain dom = D.domain();
    int lo = hat_lo(D), hi = hat_hi(D);
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int n = lo; n <= hi; ++n) {
        std::size_t r = blocks(D, n).total(), r1 = blocks(D, n - 1).total();
        ranks.push_back(r);
        Matrix d(dom, r1, r);
        for (std::size_t j = 0; j < r; ++j)
            d.place(0, j, hat_pack(D, hat_differential(D, hat_unpack(D, n, unit(dom, r, j)))));
        ds.push_back(std::move(d));
    }
    GradedComplex c(dom, Orientation::Chain, lo, std::move(ranks), std::move(ds));
    c.name = "hat";
    return c;
}

Verdict verify_hat_complex(const ChowDiagram& D) {
    Verdict v;
    GradedComplex direct;
    try {
        direct = hat_complex(D);
    } catch (const std::exception& e) {
        v.expect(false, [&] { return std::string("hat differential: ") + e.what(); });
        return v;
    }
    for (int n = direct.lo(); n <= direct.hi(); ++n)
        v.expect((direct.d(n - 1) * direct.d(n)).is_zero(),
                 [&] { return "hat d d != 0 in degree " + std::to_string(n); });
    GradedComplex generic = simple_of_diagram(D.diagram()).complex;
    int lo = std::min(direct.lo(), generic.lo()), hi = std::max(direct.hi(), generic.hi());
    for (int n = lo; n <= hi; ++n)
        v.expect(direct.rank(n) == generic.rank(n) && direct.d(n) == generic.d(n), [&] {
            return "5-tuple differential differs from the simple of the diagram in degree " + std::to_string(n);
        });
    return v;
}

// ---- structural maps -------------------------------------------------------------

ChowMaps structural_maps(const ChowDiagram& D) {
    Domain dom = D.domain();
    ChowMaps m;
    m.hat = hat_complex(D);
    m.cone = simple(D.i);
    m.cone.name = "s(i)";
    std::map<int, Matrix> zc, ac;
    for (int n = m.hat.lo(); n <= m.hat.hi(); ++n) {
        Blocks b = blocks(D, n);
        if (b.z) {
            Matrix p(dom, b.z, b.total());
            p.place(0, 0, Matrix::identity(dom, b.z));
            zc.emplace(n, std::move(p));
        }
        // s(i)_n = ZD_n + D_{n+1}
        std::size_t rz = D.top.rank(n), rd = D.deligne.rank(n + 1);
        if (rz + rd == 0 || b.total() == 0) continue;
        Matrix a(dom, b.total(), rz + rd);
        if (rz) a.place(b.z + b.a0, 0, Matrix::identity(dom, rz));
        if (rd) a.place(b.z + b.a0 + b.a1 + b.a2, rz, -Matrix::identity(dom, rd));
        ac.emplace(n, std::move(a));
    }
    m.zeta = ChainMap(m.hat, D.cycles, std::move(zc), "zeta");
    m.a = ChainMap(m.cone, m.hat, std::move(ac), "a");
    return m;
}

Matrix omega(const ChowDiagram& D, const HatElement& x) {
    if (x.n != 0) throw std::invalid_argument("omega is only defined in degree 0");
    if (!hat_pack(D, hat_differential(D, x)).is_zero()) throw std::invalid_argument("omega: the element is not a cycle");
    return x.a1;
}

Verdict verify_structural_maps(const ChowDiagram& D) {
    Verdict v;
    ChowMaps m = structural_maps(D);
    v.merge(m.zeta.verify(), "zeta");
    v.merge(m.a.verify(), "a");
    if (!v.ok) return v;
    ChainMap za = compose(m.zeta, m.a);
    for (const auto& [n, c] : za.comps)
        v.expect(c.is_zero(), [&, n = n] { return "zeta a != 0 in degree " + std::to_string(n); });
    int lo = std::min(m.hat.lo(), m.cone.lo()) - 1, hi = std::max(m.hat.hi(), m.cone.hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
        std::size_t chow = homology_basis(m.hat, n).dim();
        std::size_t cone = homology_basis(m.cone, n).dim();
        std::size_t cycles_next = homology_basis(D.cycles, n + 1).dim();
        Matrix hz = induced_map(m.zeta, n), ha = induced_map(m.a, n);
        Matrix hz_next = induced_map(m.zeta, n + 1);
        std::size_t rz = rank(hz), ra = rank(ha);
        v.expect((hz * ha).is_zero(), [&] { return "H(zeta) H(a) != 0 in degree " + std::to_string(n); });
        v.expect(ra == chow - rz, [&] {
            return "im H(a) != ker H(zeta) in degree " + std::to_string(n) + ": rank a " + std::to_string(ra) +
                   ", dim " + std::to_string(chow) + ", rank zeta " + std::to_string(rz);
        });
        // rho : CH_{n+1} -> H_n(s(i)) has rank dim CH_{n+1} - rank zeta_{n+1}.
        std::size_t rho_rank = cycles_next - rank(hz_next);
        v.expect(ra + rho_rank == cone, [&] {
            return "a does not factor through H_" + std::to_string(n) + "(s(i)) / im rho: rank a " +
                   std::to_string(ra) + " + rank rho " + std::to_string(rho_rank) + " != " + std::to_string(cone);
        });
    }
    if (closes_at_zero(D))
        v.expect(rank(induced_map(m.zeta, 0)) == homology_basis(D.cycles, 0).dim(),
                 [] { return std::string("zeta is not onto in degree 0"); });
    return v;
}

// ---- the long exact sequence -------------------------------------------------------

std::string ChowLesReport::to_string() const {
    std::ostringstream os;
    os << les.to_string() << "\n";
    os << "CHhat:";
    for (const auto& [n, d] : chow) os << " " << n << ":" << d;
    os << "\nH(s(i)):";
    for (const auto& [n, d] : cone) os << " " << n << ":" << d;
    if (!verdict.ok) os << "\nFAILED: " << verdict.failure;
    return os.str();
}

ChowLesReport chow_les_report(const ChowDiagram& D) {
    ChowLesReport r;
    r.verdict.merge(validate_chow_diagram(D), "diagram");
    if (!r.verdict.ok) return r;
    ConeSequence cs = cone_sequence(D.diagram());
    r.les = cs.les;
    for (auto& l : r.les.labels) {
        auto pos = l.find('(');
        int k = std::stoi(l.substr(2, pos - 2));
        std::string rest = l.substr(pos);
        if (rest == "(s)") l = "CHhat_" + std::to_string(k);
        else if (rest == "(A^1)") l = "CH_" + std::to_string(k);
        else if (rest == "(s(g2))") l = "H_" + std::to_string(k) + "(s(i))";
    }
    r.verdict.merge(cs.verdict, "sequence");
    ChowMaps m = structural_maps(D);
    for (int n = m.hat.lo() - 1; n <= m.hat.hi() + 1; ++n) r.chow[n] = homology_basis(m.hat, n).dim();
    for (int n = m.cone.lo() - 1; n <= m.cone.hi() + 1; ++n) r.cone[n] = homology_basis(m.cone, n).dim();
    if (!closes_at_zero(D)) return r;
    // Tail: ... -> CHhat_0 -> CH_0 -> 0.
    bool found = false;
    for (std::size_t j = 0; j + 1 < r.les.labels.size(); ++j) {
        if (r.les.labels[j] != "CH_0") continue;
        found = true;
        r.verdict.expect(r.les.labels[j + 1] == "H_-1(s(i))" && r.les.dims[j + 1] == 0, [&] {
            return "the sequence does not end in CH_0 -> 0: next node " + r.les.labels[j + 1] + " of dimension " +
                   std::to_string(r.les.dims[j + 1]);
        });
    }
    r.verdict.expect(found, [] { return std::string("the sequence has no CH_0 node"); });
    // H_n(s(i)) is H_{n+1}(D) for n >= 1 and D_1 / im d in degree 0.
    for (const auto& [n, dim] : r.cone) {
        std::size_t expected = 0;
        if (n >= 1) expected = homology_basis(D.deligne, n + 1).dim();
        else if (n == 0) expected = D.deligne.rank(1) - rank(D.deligne.d(2));
        r.verdict.expect(dim == expected, [&, n = n, dim = dim] {
            return "H_" + std::to_string(n) + "(s(i)) has dimension " + std::to_string(dim) + ", expected " +
                   std::to_string(expected);
        });
    }
    return r;
}

QuotientComparison chow_quotient_variant(const ChowDiagram& D) { return quotient_comparison(D.diagram()); }

// ---- instances ----------------------------------------------------------------------

ChowDiagram unit_chow_diagram(Domain dom) {
    GradedComplex R = point(dom);
    ChainMap id = ChainMap::identity(R);
    return build_chow_diagram(R, R, R, R, R, id, id, id, id);
}

ChowDiagram split_chow_diagram(Domain dom) {
    GradedComplex R = point(dom), D = point(dom, 1), Z = GradedComplex::zero(dom, Orientation::Chain);
    ChainMap id = ChainMap::identity(R);
    return build_chow_diagram(R, R, R, D, Z, id, id, ChainMap::zero(R, D), ChainMap::zero(Z, D));
}

ChowDiagram random_chow_diagram(Rng& rng, Domain dom, std::size_t max_total) {
    for (;;) {
        GradedComplex Z = random_complex(rng, dom, Orientation::Chain, {0, 1, 2});
        GradedComplex DZ = random_complex(rng, dom, Orientation::Chain, {0, 2, 2});
        GradedComplex DA = random_complex(rng, dom, Orientation::Chain, {0, 2, 2});
        ChainMap g1 = random_quasi_isomorphism(rng, DZ, 1);
        g1.name = "g1";
        ChainMap f1 = random_chain_map(rng, Z, g1.target);
        ChainMap rho = random_chain_map(rng, DZ, DA);
        std::size_t r0 = DA.rank(0);
        GradedComplex top = r0 ? GradedComplex(dom, Orientation::Chain, 0, {r0}, {Matrix(dom, 0, r0)})
                               : GradedComplex::zero(dom, Orientation::Chain);
        std::map<int, Matrix> ic;
        if (r0) ic.emplace(0, Matrix::identity(dom, r0));
        ChainMap i(top, DA, std::move(ic), "i");
        ChowDiagram D{Z, g1.target, DZ, DA, top, f1, g1, rho, i};
        if (D.total_rank() <= max_total) return build_chow_diagram(Z, g1.target, DZ, DA, top, f1, g1, rho, i);
    }
}

// ---- Green forms ----------------------------------------------------------------------

Matrix GreenFormInstance::pair(int k, const Matrix& x, const Matrix& y) const {
    return solve_or_throw(pair_truncation.at(k), Matrix::vstack(x, y), "pair");
}

Matrix GreenFormInstance::form(int k, const Matrix& x) const {
    return solve_or_throw(forms_truncation.at(k), x, "form");
}

GreenFormInstance green_form_instance(Domain dom) {
    GreenFormInstance G;
    G.p = 1;
    const int top = 2 * G.p;
    // D: alpha in degree 1, omega in degree 2, d alpha = omega.
    G.forms = GradedComplex(dom, Orientation::Cochain, 0, {0, 1, 1},
                            {Matrix(dom, 1, 0), Matrix::from_rows(dom, {{1}}), Matrix(dom, 0, 1)});
    G.forms.name = "D";
    // D': h; gamma, kappa, g; omega'. d h = kappa, d gamma = d g = omega'.
    G.forms_off = GradedComplex(dom, Orientation::Cochain, 0, {1, 3, 1},
                                {Matrix::from_rows(dom, {{0}, {1}, {0}}), Matrix::from_rows(dom, {{1, 0, 1}}),
                                 Matrix(dom, 0, 1)});
    G.forms_off.name = "D'";
    G.restriction = ChainMap(G.forms, G.forms_off,
                             {{1, Matrix::from_rows(dom, {{1}, {0}, {0}})}, {2, Matrix::from_rows(dom, {{1}})}}, "r");
    GradedComplex pair = simple(G.restriction);
    pair.name = "s(r)";
    G.pair_truncation = truncate_leq(pair, top);
    G.forms_truncation = truncate_leq(G.forms, top);

    GradedComplex supports = as_chain(G.pair_truncation.source, top);
    GradedComplex deligne = as_chain(G.forms_truncation.source, top);
    supports.name = "D_Z";
    deligne.name = "D";
    // rho: projection onto the first factor, read on the truncations.
    std::map<int, Matrix> rc;
    for (int k = G.pair_truncation.source.lo(); k <= G.pair_truncation.source.hi(); ++k) {
        std::size_t rf = G.forms.rank(k), rp = pair.rank(k);
        if (rf == 0) continue;
        Matrix proj(dom, rf, rp);
        proj.place(0, 0, Matrix::identity(dom, rf));
        rc.emplace(k, solve_or_throw(G.forms_truncation.at(k), proj * G.pair_truncation.at(k), "rho"));
    }
    ChainMap rho = as_chain(ChainMap(G.pair_truncation.source, G.forms_truncation.source, rc), supports, deligne, top,
                            "rho");
    // H: the classes in top degree, g1 the class map.
    HomologyBasis hb = homology_basis(supports, 0);
    GradedComplex cohomology(dom, Orientation::Chain, 0, {hb.dim()}, {Matrix(dom, 0, hb.dim())});
    cohomology.name = "H";
    ChainMap g1(supports, cohomology, {{0, hb.classes_of(Matrix::identity(dom, supports.rank(0)))}}, "g1");
    std::size_t r0 = deligne.rank(0);
    GradedComplex closed(dom, Orientation::Chain, 0, {r0}, {Matrix(dom, 0, r0)});
    closed.name = "ZD";
    ChainMap i(closed, deligne, {{0, Matrix::identity(dom, r0)}}, "i");
    // Cycles Z, Y with f1(Z) = cl(omega, g), f1(Y) = 0.
    GradedComplex cycles(dom, Orientation::Chain, 0, {2}, {Matrix(dom, 0, 2)});
    cycles.name = "Z";
    Matrix cl = g1.at(0) * G.pair(top, unit(dom, 1, 0), unit(dom, 3, 2));
    Matrix f(dom, cohomology.rank(0), 2);
    f.place(0, 0, cl);
    ChainMap f1(cycles, cohomology, {{0, f}}, "f1");
    G.diagram = build_chow_diagram(cycles, cohomology, supports, deligne, closed, f1, g1, rho, i);
    return G;
}

std::vector<AgreementCase> agreement_cases(const GreenFormInstance& G) {
    const ChowDiagram& D = G.diagram;
    Domain dom = D.domain();
    const int top = 2 * G.p;
    std::vector<AgreementCase> out;
    auto d = [&](const HatElement& x) { return hat_differential(D, x); };
    auto is_cycle = [&](const HatElement& x) { return hat_pack(D, d(x)).is_zero(); };
    auto mismatch = [](const HatElement& lhs, const HatElement& rhs) {
        return "computed " + lhs.to_string() + ", displayed " + rhs.to_string();
    };

    Matrix alpha = unit(dom, 1, 0), omega_form = unit(dom, 1, 0);
    Matrix h = unit(dom, 1, 0), kappa = unit(dom, 3, 1), g = unit(dom, 3, 2);
    Matrix zero1 = column(dom, 1), zero_off0 = column(dom, 1), zero_off1 = column(dom, 3);

    {
        AgreementCase c{"cycle: d(Z,(omega,g),0,0,0) = 0", false, false, {}};
        HatElement x = hat_zero(D, 0);
        x.z = unit(dom, 2, 0);
        x.a0 = G.pair(top, omega_form, g);
        HatElement lhs = d(x), rhs = hat_zero(D, -1);
        c.literal = lhs == rhs;
        HatElement y = x;
        y.a1 = G.form(top, omega_form);
        c.corrected = is_cycle(y);
        c.detail = c.literal ? "holds" : mismatch(lhs, rhs) + "; holds with a1 = omega";
        out.push_back(c);
    }
    {
        AgreementCase c{"cycle with omega = 0: d(Y,(0,kappa),0,0,0) = 0", false, false, {}};
        HatElement x = hat_zero(D, 0);
        x.z = unit(dom, 2, 1);
        x.a0 = G.pair(top, zero1, kappa);
        c.literal = c.corrected = is_cycle(x);
        c.detail = c.literal ? "holds" : d(x).to_string();
        out.push_back(c);
    }
    {
        AgreementCase c{"representative: d(0,(0,h),0,0,0) = (0,(0,g_1-g_2),0,0,0)", false, false, {}};
        Matrix g_1 = g + kappa, g_2 = g;
        Matrix dh = G.forms_off.d(0) * h;
        HatElement x = hat_zero(D, 1);
        x.a0 = G.pair(1, zero1, h);
        HatElement rhs = hat_zero(D, 0);
        rhs.a0 = G.pair(top, zero1, g_1 - g_2);
        HatElement r1 = hat_zero(D, 0), r2 = hat_zero(D, 0);
        r1.z = r2.z = unit(dom, 2, 0);
        r1.a0 = G.pair(top, omega_form, g_1);
        r2.a0 = G.pair(top, omega_form, g_2);
        bool diff_ok = hat_pack(D, rhs) == hat_pack(D, r1) - hat_pack(D, r2);
        HatElement lhs = d(x);
        c.literal = dh == g_1 - g_2 && diff_ok && lhs == rhs;
        HatElement xm = x;
        xm.a0 = -x.a0;
        c.corrected = dh == g_1 - g_2 && diff_ok && d(xm) == rhs;
        c.detail = c.literal ? "holds" : mismatch(lhs, rhs) + "; holds with -h";
        out.push_back(c);
    }
    {
        AgreementCase c{"pair: d(0,(alpha,0),0,0,0) = (0,(d alpha,alpha),0,0,0) + (0,0,0,0,alpha)", false, false, {}};
        HatElement x = hat_zero(D, 1);
        x.a0 = G.pair(1, alpha, zero_off0);
        HatElement rhs = hat_zero(D, 0);
        rhs.a0 = G.pair(top, G.forms.d(1) * alpha, G.restriction.at(1) * alpha);
        rhs.a3 = G.form(1, alpha);
        HatElement lhs = d(x);
        c.literal = c.corrected = lhs == rhs;
        c.detail = c.literal ? "holds" : mismatch(lhs, rhs);
        out.push_back(c);
    }
    {
        AgreementCase c{"a in degree 0: (0,0,-d a,0,-a) is a cycle", false, false, {}};
        Matrix da = G.forms.d(1) * alpha;
        HatElement x = hat_zero(D, 0);
        x.a1 = G.form(top, -da);
        x.a3 = G.form(1, -alpha);
        c.literal = is_cycle(x);
        HatElement y = x;
        y.a1 = G.form(top, da);
        ChowMaps m = structural_maps(D);
        Matrix cone_vec = Matrix::vstack(y.a1, G.form(1, alpha));
        c.corrected = is_cycle(y) && omega(D, y) == G.form(top, da) && m.a.at(0) * cone_vec == hat_pack(D, y);
        c.detail = c.literal ? "holds" : "boundary " + d(x).to_string() + "; (0,0,d a,0,-a) is a cycle";
        out.push_back(c);
    }
    return out;
}

}  // namespace hchow
