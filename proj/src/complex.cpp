#include "hchow/complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hchow {

GradedComplex::GradedComplex(Domain dom, Orientation o, int lo, std::vector<std::size_t> ranks,
                             std::vector<Matrix> diffs)
    : dom_(dom), orient_(o), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    if (diffs_.size() != ranks_.size()) throw ShapeError("complex: one differential per degree is required");
    for (int k = lo_; k <= hi(); ++k) {
        Matrix& m = diffs_[k - lo_];
        if (m.rows() != rank(k + step()) || m.cols() != rank(k))
            throw ShapeError("complex: d_" + std::to_string(k) + " has shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(rank(k + step())) + "x" +
                             std::to_string(rank(k)));
        if (!(m.domain() == dom_)) m = m.in_domain(dom_);
    }
    for (int k = lo_; k <= hi(); ++k)
        if (!(d(k + step()) * d(k)).is_zero())
            throw ShapeError("complex: d_" + std::to_string(k + step()) + " * d_" + std::to_string(k) + " != 0");
}

std::size_t GradedComplex::total_rank() const {
    std::size_t t = 0;
    for (auto r : ranks_) t += r;
    return t;
}

Matrix GradedComplex::d(int k) const {
    if (in_range(k)) return diffs_[k - lo_];
    return Matrix::zero(dom_, rank(k + step()), rank(k));
}

bool GradedComplex::operator==(const GradedComplex& o) const {
    if (!(dom_ == o.dom_) || orient_ != o.orient_) return false;
    int a = std::min(lo_, o.lo_), b = std::max(hi(), o.hi());
    for (int k = a; k <= b; ++k) {
        if (rank(k) != o.rank(k)) return false;
        if (d(k) != o.d(k)) return false;
    }
    return true;
}

GradedComplex GradedComplex::in_domain(Domain d) const {
    std::vector<Matrix> ds;
    for (const auto& m : diffs_) ds.push_back(m.in_domain(d));
    GradedComplex c(d, orient_, lo_, ranks_, std::move(ds));
    c.name = name;
    return c;
}

ChainMap::ChainMap(GradedComplex s, GradedComplex t, std::map<int, Matrix> c, std::string n)
    : source(std::move(s)), target(std::move(t)), comps(std::move(c)), name(std::move(n)) {
    for (auto& [k, m] : comps) {
        if (m.rows() != target.rank(k) || m.cols() != source.rank(k))
            throw ShapeError("chain map " + name + ": component in degree " + std::to_string(k) + " has shape " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        if (!(m.domain() == source.domain())) m = m.in_domain(source.domain());
    }
}

Matrix ChainMap::at(int k) const {
    auto it = comps.find(k);
    if (it != comps.end()) return it->second;
    return Matrix::zero(source.domain(), target.rank(k), source.rank(k));
}

Verdict ChainMap::verify() const {
    Verdict v;
    v.expect(source.orientation() == target.orientation(), [&] { return "chain map " + name + ": orientation mismatch"; });
    v.expect(source.domain() == target.domain(), [&] { return "chain map " + name + ": domain mismatch"; });
    if (!v.ok) return v;
    int lo = std::min(source.lo(), target.lo()) - 1, hi = std::max(source.hi(), target.hi()) + 1;
    int st = source.step();
    for (int k = lo; k <= hi; ++k) {
        Matrix lhs = target.d(k) * at(k);
        Matrix rhs = at(k + st) * source.d(k);
        v.expect(lhs == rhs, [&] {
            return "chain map " + name + ": d f != f d in degree " + std::to_string(k) + " (lhs [" + lhs.to_string() +
                   "], rhs [" + rhs.to_string() + "])";
        });
    }
    return v;
}

ChainMap ChainMap::identity(const GradedComplex& c) {
    std::map<int, Matrix> m;
    for (int k = c.lo(); k <= c.hi(); ++k) m.emplace(k, Matrix::identity(c.domain(), c.rank(k)));
    return ChainMap(c, c, std::move(m), "id");
}

ChainMap ChainMap::zero(const GradedComplex& s, const GradedComplex& t) { return ChainMap(s, t, {}, "0"); }

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    std::map<int, Matrix> m;
    int lo = std::min(f.source.lo(), g.target.lo()), hi = std::max(f.source.hi(), g.target.hi());
    for (int k = lo; k <= hi; ++k)
        if (f.source.rank(k) && g.target.rank(k)) m.emplace(k, g.at(k) * f.at(k));
    return ChainMap(f.source, g.target, std::move(m), g.name + "*" + f.name);
}

ChainMap negate(const ChainMap& f) {
    std::map<int, Matrix> m;
    for (const auto& [k, c] : f.comps) m.emplace(k, -c);
    return ChainMap(f.source, f.target, std::move(m), "-" + f.name);
}

ChainMap subtract(const ChainMap& f, const ChainMap& g) {
    std::map<int, Matrix> m;
    int lo = f.source.lo(), hi = f.source.hi();
    for (int k = lo; k <= hi; ++k) m.emplace(k, f.at(k) - g.at(k));
    return ChainMap(f.source, f.target, std::move(m), f.name + "-" + g.name);
}

// ---- homology ------------------------------------------------------------

std::string HomologyGroup::to_string() const {
    if (is_zero()) return "0";
    std::string base = dom.name();
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back(base);
    else if (free_rank > 1) parts.push_back(base + "^" + std::to_string(free_rank));
    for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
    return out;
}

HomologyGroup homology(const GradedComplex& c, int k) {
    HomologyGroup h;
    h.dom = c.domain();
    Matrix out = c.d(k), in = c.d_in(k);
    if (c.domain().is_field()) {
        h.free_rank = c.rank(k) - rank(out) - rank(in);
        return h;
    }
    std::size_t ker = c.rank(k) - rank(out);
    SmithForm sf = smith_normal_form(in);
    h.free_rank = ker - sf.rank;
    for (const auto& t : sf.invariants)
        if (t > 1) h.torsion.push_back(t);
    return h;
}

HomologyBasis homology_basis(const GradedComplex& c, int k) {
    if (!c.domain().is_field()) throw DomainError("homology representatives require a field");
    HomologyBasis hb;
    hb.cycles = kernel(c.d(k));
    hb.boundaries = image(c.d_in(k));
    RowEchelon e = rref(Matrix::hstack(hb.boundaries, hb.cycles));
    std::vector<std::size_t> pick;
    for (auto p : e.pivots)
        if (p >= hb.boundaries.cols()) pick.push_back(p - hb.boundaries.cols());
    hb.reps = hb.cycles.select_cols(pick);
    return hb;
}

Matrix HomologyBasis::classes_of(const Matrix& v) const {
    Matrix basis = Matrix::hstack(boundaries, reps);
    auto x = solve(basis, v);
    if (!x) throw ShapeError("classes_of: vector is not a cycle");
    return x->rows_range(boundaries.cols(), basis.cols());
}

bool HomologyBasis::all_boundaries(const Matrix& v) const {
    if (v.cols() == 0) return true;
    if (boundaries.cols() == 0) return v.is_zero();
    return solve(boundaries, v).has_value();
}

Matrix induced_map(const HomologyBasis& src, const HomologyBasis& tgt, const Matrix& level_map) {
    if (src.dim() == 0 || tgt.dim() == 0) return Matrix::zero(level_map.domain(), tgt.dim(), src.dim());
    return tgt.classes_of(level_map * src.reps);
}

Matrix induced_map(const ChainMap& f, int k) {
    return induced_map(homology_basis(f.source, k), homology_basis(f.target, k), f.at(k));
}

Verdict verify_quasi_isomorphism(const ChainMap& f) {
    Verdict v = f.verify();
    if (!v.ok) return v;
    int lo = std::min(f.source.lo(), f.target.lo()), hi = std::max(f.source.hi(), f.target.hi());
    for (int k = lo; k <= hi; ++k) {
        HomologyBasis s = homology_basis(f.source, k), t = homology_basis(f.target, k);
        Matrix m = induced_map(s, t, f.at(k));
        bool iso = s.dim() == t.dim() && rank(m) == s.dim();
        v.expect(iso, [&] {
            return "map " + f.name + " is not a quasi-isomorphism in degree " + std::to_string(k) + ": dims " +
                   std::to_string(s.dim()) + " -> " + std::to_string(t.dim()) + ", rank " + std::to_string(rank(m));
        });
    }
    return v;
}

// ---- constructions -------------------------------------------------------

GradedComplex translate(const GradedComplex& a, int m) {
    int st = a.step();
    // A[m]_k = A_{k + st*m}, so degree k of the result ranges over lo - st*m .. hi - st*m.
    int shift = st * m;
    int lo = a.lo() - shift;
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = lo; k <= a.hi() - shift; ++k) {
        ranks.push_back(a.rank(k + shift));
        Matrix d = a.d(k + shift);
        ds.push_back(m % 2 == 0 ? d : -d);
    }
    GradedComplex c(a.domain(), a.orientation(), lo, std::move(ranks), std::move(ds));
    c.name = a.name + "[" + std::to_string(m) + "]";
    return c;
}

GradedComplex simple(const ChainMap& f) {
    const GradedComplex &A = f.source, &B = f.target;
    if (A.orientation() != B.orientation()) throw ShapeError("simple: orientation mismatch");
    int st = A.step();
    int lo = std::min(A.lo(), B.lo() + st), hi = std::max(A.hi(), B.hi() + st);
    if (A.total_rank() + B.total_rank() == 0) return GradedComplex::zero(A.domain(), A.orientation());
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = lo; k <= hi; ++k) ranks.push_back(A.rank(k) + B.rank(k - st));
    for (int k = lo; k <= hi; ++k) {
        int t = k + st;
        std::size_t ra = A.rank(k), rb = B.rank(k - st);
        std::size_t ta = A.rank(t), tb = B.rank(t - st);  // t - st == k
        Matrix d(A.domain(), ta + tb, ra + rb);
        d.place(0, 0, A.d(k));
        d.place(ta, 0, f.at(k));
        d.place(ta, ra, -B.d(k - st));
        ds.push_back(std::move(d));
    }
    GradedComplex c(A.domain(), A.orientation(), lo, std::move(ranks), std::move(ds));
    c.name = "s(" + f.name + ")";
    return c;
}

ChainMap kernel_into_simple(const ChainMap& f) {
    const GradedComplex &A = f.source, &B = f.target;
    if (!A.domain().is_field()) throw std::invalid_argument("kernel_into_simple: field domains only");
    std::map<int, Matrix> spans;
    for (int k = std::min(A.lo(), B.lo()); k <= std::max(A.hi(), B.hi()); ++k) {
        if (rank(f.at(k)) != B.rank(k))
            throw std::invalid_argument("kernel_into_simple: f is not onto in degree " + std::to_string(k));
        if (A.rank(k)) spans.emplace(k, kernel(f.at(k)));
    }
    ChainMap inc = subcomplex_inclusion(A, spans);
    ChainMap minus = negate(f);
    GradedComplex s = simple(minus);
    std::map<int, Matrix> comps;
    for (int k = inc.source.lo(); k <= inc.source.hi(); ++k) {
        if (inc.source.rank(k) == 0) continue;
        Matrix m(A.domain(), s.rank(k), inc.source.rank(k));
        m.place(0, 0, inc.at(k));
        comps.emplace(k, std::move(m));
    }
    return ChainMap(inc.source, s, std::move(comps), "ker f -> s(-f)");
}

ChainMap simple_onto_quotient(const ChainMap& f) {
    const GradedComplex &A = f.source, &B = f.target;
    if (!A.domain().is_field()) throw std::invalid_argument("simple_onto_quotient: field domains only");
    std::map<int, Matrix> spans;
    for (int k = std::min(A.lo(), B.lo()); k <= std::max(A.hi(), B.hi()); ++k) {
        if (rank(f.at(k)) != A.rank(k))
            throw std::invalid_argument("simple_onto_quotient: f is not injective in degree " + std::to_string(k));
        if (B.rank(k)) spans.emplace(k, f.at(k));
    }
    ChainMap q = quotient_projection(B, spans);
    GradedComplex s = translate(simple(f), 1);  // degree k: A_{k+step} + B_k
    int st = A.step();
    std::map<int, Matrix> comps;
    for (int k = B.lo(); k <= B.hi(); ++k) {
        if (B.rank(k) == 0) continue;
        Matrix m(A.domain(), q.target.rank(k), s.rank(k));
        m.place(0, A.rank(k + st), q.at(k));
        comps.emplace(k, std::move(m));
    }
    return ChainMap(s, q.target, std::move(comps), "s(f)[1] -> B/A");
}

GradedComplex direct_sum(const GradedComplex& a, const GradedComplex& b) {
    if (a.orientation() != b.orientation()) throw ShapeError("direct_sum: orientation mismatch");
    if (a.total_rank() == 0) return b;
    if (b.total_rank() == 0) return a;
    int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = lo; k <= hi; ++k) {
        ranks.push_back(a.rank(k) + b.rank(k));
        ds.push_back(Matrix::block_diag(a.d(k), b.d(k)));
    }
    GradedComplex c(a.domain(), a.orientation(), lo, std::move(ranks), std::move(ds));
    c.name = a.name + "+" + b.name;
    return c;
}

ChainMap truncate_leq(const GradedComplex& c, int n) {
    if (c.orientation() != Orientation::Cochain) throw ShapeError("truncate_leq expects a cochain complex");
    int lo = c.lo();
    int hi = std::min(n, c.hi());
    std::map<int, Matrix> incl;
    if (hi < lo) {
        GradedComplex z = GradedComplex::zero(c.domain(), c.orientation());
        return ChainMap(z, c, {}, "tau");
    }
    Matrix top = (hi == n) ? kernel(c.d(n)) : Matrix::identity(c.domain(), c.rank(hi));
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = lo; k <= hi; ++k) {
        ranks.push_back(k == hi ? top.cols() : c.rank(k));
        if (k < hi - 1) ds.push_back(c.d(k));
        else if (k == hi - 1) {
            auto x = solve(top, c.d(k));
            ds.push_back(*x);
        } else ds.push_back(Matrix::zero(c.domain(), 0, top.cols()));
        incl.emplace(k, k == hi ? top : Matrix::identity(c.domain(), c.rank(k)));
    }
    GradedComplex t(c.domain(), c.orientation(), lo, std::move(ranks), std::move(ds));
    t.name = "tau<=" + std::to_string(n) + "(" + c.name + ")";
    return ChainMap(t, c, std::move(incl), "tau");
}

ChainMap subcomplex_inclusion(const GradedComplex& c, const std::map<int, Matrix>& spans) {
    std::map<int, Matrix> basis;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        auto it = spans.find(k);
        basis.emplace(k, it == spans.end() ? Matrix::zero(c.domain(), c.rank(k), 0) : image(it->second));
    }
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        ranks.push_back(basis[k].cols());
        int t = k + c.step();
        Matrix tb = c.in_range(t) ? basis[t] : Matrix::zero(c.domain(), 0, 0);
        if (tb.cols() == 0) {
            if (!(c.d(k) * basis[k]).is_zero()) throw ShapeError("subcomplex: span is not d-stable");
            ds.push_back(Matrix::zero(c.domain(), 0, basis[k].cols()));
            continue;
        }
        auto x = solve(tb, c.d(k) * basis[k]);
        if (!x) throw ShapeError("subcomplex: span is not d-stable in degree " + std::to_string(k));
        ds.push_back(*x);
    }
    GradedComplex s(c.domain(), c.orientation(), c.lo(), std::move(ranks), std::move(ds));
    s.name = "sub(" + c.name + ")";
    return ChainMap(s, c, std::move(basis), "incl");
}

ChainMap quotient_projection(const GradedComplex& c, const std::map<int, Matrix>& spans) {
    ChainMap inc = subcomplex_inclusion(c, spans);
    std::map<int, Matrix> comp, proj;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        Matrix s = inc.at(k);
        Matrix q = complete_basis(s);
        comp.emplace(k, q);
        // coordinates of a vector in [s | q], keep the q part
        Matrix full = Matrix::hstack(s, q);
        Matrix inv = inverse(full);
        proj.emplace(k, inv.rows_range(s.cols(), full.cols()));
    }
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        ranks.push_back(comp[k].cols());
        int t = k + c.step();
        if (!c.in_range(t)) {
            ds.push_back(Matrix::zero(c.domain(), 0, comp[k].cols()));
            continue;
        }
        ds.push_back(proj[t] * c.d(k) * comp[k]);
    }
    GradedComplex q(c.domain(), c.orientation(), c.lo(), std::move(ranks), std::move(ds));
    q.name = c.name + "/sub";
    return ChainMap(c, q, std::move(proj), "proj");
}

// ---- tensor products -----------------------------------------------------

LeafLayout trivial_layout(const GradedComplex& c) {
    LeafLayout l;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        auto& v = l[k];
        for (std::size_t i = 0; i < c.rank(k); ++i) v.push_back(LeafKey{{k, i}});
    }
    return l;
}

TensorProduct tensor(const GradedComplex& a, const GradedComplex& b, const LeafLayout* la, const LeafLayout* lb) {
    if (a.orientation() != b.orientation()) throw ShapeError("tensor: orientation mismatch");
    if (!(a.domain() == b.domain())) throw DomainError("tensor: domain mismatch");
    LeafLayout ta = la ? *la : trivial_layout(a), tb = lb ? *lb : trivial_layout(b);
    TensorProduct out;
    int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
    std::vector<std::size_t> ranks;
    for (int k = lo; k <= hi; ++k) {
        std::size_t off = 0;
        auto& lay = out.layout[k];
        for (int i = a.lo(); i <= a.hi(); ++i) {
            int j = k - i;
            out.offset[k][i] = off;
            for (std::size_t x = 0; x < a.rank(i); ++x)
                for (std::size_t y = 0; y < b.rank(j); ++y) {
                    LeafKey key = ta[i][x];
                    key.insert(key.end(), tb[j][y].begin(), tb[j][y].end());
                    lay.push_back(std::move(key));
                }
            off += a.rank(i) * b.rank(j);
        }
        ranks.push_back(off);
    }
    int st = a.step();
    std::vector<Matrix> ds;
    for (int k = lo; k <= hi; ++k) {
        int t = k + st;
        std::size_t rt = (t >= lo && t <= hi) ? ranks[t - lo] : 0;
        Matrix d(a.domain(), rt, ranks[k - lo]);
        for (int i = a.lo(); i <= a.hi(); ++i) {
            int j = k - i;
            if (a.rank(i) == 0 || b.rank(j) == 0) continue;
            Matrix da = a.d(i), db = b.d(j);
            std::size_t rb = b.rank(j);
            for (std::size_t x = 0; x < a.rank(i); ++x)
                for (std::size_t y = 0; y < rb; ++y) {
                    std::size_t col = out.offset[k][i] + x * rb + y;
                    // da (x) b
                    if (a.rank(i + st))
                        for (std::size_t x2 = 0; x2 < a.rank(i + st); ++x2) {
                            if (sgn(da(x2, x)) == 0) continue;
                            d.add_to(out.offset[t][i + st] + x2 * rb + y, col, da(x2, x));
                        }
                    // (-1)^i a (x) db
                    if (b.rank(j + st)) {
                        std::size_t rb2 = b.rank(j + st);
                        for (std::size_t y2 = 0; y2 < rb2; ++y2) {
                            if (sgn(db(y2, y)) == 0) continue;
                            mpq_class v = (i % 2 == 0) ? db(y2, y) : mpq_class(-db(y2, y));
                            d.add_to(out.offset[t][i] + x * rb2 + y2, col, v);
                        }
                    }
                }
        }
        ds.push_back(std::move(d));
    }
    out.complex = GradedComplex(a.domain(), a.orientation(), lo, std::move(ranks), std::move(ds));
    out.complex.name = a.name + "(x)" + b.name;
    return out;
}

ChainMap tensor_maps(const ChainMap& f, const ChainMap& g, const TensorProduct& src, const TensorProduct& tgt) {
    const GradedComplex &A = f.source, &B = g.source, &A2 = f.target, &B2 = g.target;
    std::map<int, Matrix> comps;
    for (int k = src.complex.lo(); k <= src.complex.hi(); ++k) {
        Matrix m(A.domain(), tgt.complex.rank(k), src.complex.rank(k));
        for (int i = A.lo(); i <= A.hi(); ++i) {
            int j = k - i;
            if (A.rank(i) == 0 || B.rank(j) == 0 || A2.rank(i) == 0 || B2.rank(j) == 0) continue;
            Matrix fi = f.at(i), gj = g.at(j);
            for (std::size_t x = 0; x < A.rank(i); ++x)
                for (std::size_t y = 0; y < B.rank(j); ++y) {
                    std::size_t col = src.index(i, x, j, y, B.rank(j));
                    for (std::size_t x2 = 0; x2 < A2.rank(i); ++x2) {
                        if (sgn(fi(x2, x)) == 0) continue;
                        for (std::size_t y2 = 0; y2 < B2.rank(j); ++y2) {
                            if (sgn(gj(y2, y)) == 0) continue;
                            m.add_to(tgt.index(i, x2, j, y2, B2.rank(j)), col, fi(x2, x) * gj(y2, y));
                        }
                    }
                }
        }
        comps.emplace(k, std::move(m));
    }
    return ChainMap(src.complex, tgt.complex, std::move(comps), f.name + "(x)" + g.name);
}

// ---- exact sequences -----------------------------------------------------

ExactSequenceReport check_exact(std::vector<std::string> labels, std::vector<std::size_t> dims,
                                std::vector<Matrix> maps, Domain dom) {
    ExactSequenceReport r;
    r.labels = std::move(labels);
    r.dims = std::move(dims);
    r.maps = std::move(maps);
    std::size_t n = r.dims.size();
    if (r.maps.size() + 1 != n && n > 0) throw ShapeError("check_exact: need one map between consecutive nodes");
    for (std::size_t i = 0; i < n; ++i) {
        Matrix in = i == 0 ? Matrix::zero(dom, r.dims[0], 0) : r.maps[i - 1];
        Matrix out = i + 1 == n ? Matrix::zero(dom, 0, r.dims[i]) : r.maps[i];
        bool composite_zero = (out * in).is_zero();
        std::size_t ri = rank(in), ro = rank(out);
        bool ok = composite_zero && ri + ro == r.dims[i];
        if (!ok && r.exact) {
            r.exact = false;
            r.failure = "not exact at " + r.labels[i] + ": dim " + std::to_string(r.dims[i]) + ", rank in " +
                        std::to_string(ri) + ", rank out " + std::to_string(ro) +
                        (composite_zero ? "" : ", composite nonzero");
        }
    }
    return r;
}

std::string ExactSequenceReport::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) os << " -> ";
        os << labels[i] << "[" << dims[i] << "]";
    }
    os << (exact ? "  : exact" : "  : NOT exact (" + failure + ")");
    return os.str();
}

ExactSequenceReport les_of_simple(const ChainMap& f_in) {
    ChainMap f = f_in;
    if (!f.source.domain().is_field()) {
        Domain q = Domain::rationals();
        std::map<int, Matrix> c;
        for (auto& [k, m] : f.comps) c.emplace(k, m.in_domain(q));
        f = ChainMap(f.source.in_domain(q), f.target.in_domain(q), std::move(c), f.name);
    }
    const GradedComplex &A = f.source, &B = f.target;
    GradedComplex S = simple(f);
    int st = A.step();
    int lo = std::min({A.lo(), B.lo(), S.lo()}) - 1, hi = std::max({A.hi(), B.hi(), S.hi()}) + 1;
    std::vector<std::string> labels;
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    // walk in the direction of the differential
    int first = st < 0 ? hi : lo, last = st < 0 ? lo : hi;
    std::string H = st < 0 ? "H_" : "H^";
    Matrix pending;  // map from the previous node into the next one
    bool have_pending = false;
    for (int k = first;; k += st) {
        HomologyBasis hs = homology_basis(S, k), ha = homology_basis(A, k), hb = homology_basis(B, k);
        std::size_t ra = A.rank(k), rb = B.rank(k - st);
        // projection s_k -> A_k
        Matrix proj(A.domain(), ra, ra + rb);
        proj.place(0, 0, Matrix::identity(A.domain(), ra));
        if (have_pending) maps.push_back(pending);
        labels.push_back(H + std::to_string(k) + "(s)");
        dims.push_back(hs.dim());
        maps.push_back(induced_map(hs, ha, proj));
        labels.push_back(H + std::to_string(k) + "(A)");
        dims.push_back(ha.dim());
        maps.push_back(induced_map(ha, hb, f.at(k)));
        labels.push_back(H + std::to_string(k) + "(B)");
        dims.push_back(hb.dim());
        // connecting map b -> (0, b) in s_{k+st} = A_{k+st} + B_k
        int t = k + st;
        HomologyBasis hs2 = homology_basis(S, t);
        std::size_t ta = A.rank(t);
        Matrix inj(A.domain(), ta + B.rank(k), B.rank(k));
        inj.place(ta, 0, Matrix::identity(A.domain(), B.rank(k)));
        pending = induced_map(hb, hs2, inj);
        have_pending = true;
        if (k == last) break;
    }
    return check_exact(std::move(labels), std::move(dims), std::move(maps), A.domain());
}

std::string describe(const GradedComplex& c) {
    std::ostringstream os;
    os << (c.orientation() == Orientation::Chain ? "chain" : "cochain") << " complex over " << c.domain().name()
       << ", ranks";
    for (int k = c.lo(); k <= c.hi(); ++k) os << ' ' << k << ':' << c.rank(k);
    return os.str();
}

}  // namespace hchow
