#include "hchow/random.hpp"

#include <numeric>

namespace hchow {

Rng Rng::split(std::uint64_t seed, const std::string& label) {
    // FNV-1a of the label mixed into the seed.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return Rng(seed ^ (h + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

Matrix random_matrix(Rng& rng, Domain dom, std::size_t rows, std::size_t cols, long bound, int zero_percent) {
    Matrix m(dom, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (!rng.chance(zero_percent)) m.set(i, j, mpq_class(rng.range(-bound, bound)));
    return m;
}

Matrix random_invertible(Rng& rng, Domain dom, std::size_t n) {
    Matrix m = Matrix::identity(dom, n);
    if (n < 2) {
        if (n == 1 && rng.chance(50)) m.set(0, 0, mpq_class(-1));
        return m;
    }
    // A product of elementary operations is unimodular, hence invertible in
    // every domain.
    for (std::size_t t = 0; t < 3 * n; ++t) {
        std::size_t i = rng.range(0, n - 1), j = rng.range(0, n - 1);
        if (i == j) continue;
        long q = rng.range(-2, 2);
        for (std::size_t c = 0; c < n; ++c) m.add_to(i, c, m(j, c) * q);
    }
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t i = rng.range(0, n - 1), j = rng.range(0, n - 1);
        if (i == j) continue;
        for (std::size_t c = 0; c < n; ++c) std::swap(m.raw(i, c), m.raw(j, c));
    }
    return m;
}

GradedComplex random_complex(Rng& rng, Domain dom, Orientation o, const ComplexShape& shape) {
    int lo = shape.lo, hi = shape.hi;
    std::vector<std::size_t> ranks;
    for (int k = lo; k <= hi; ++k) ranks.push_back(rng.range(0, static_cast<long>(shape.max_rank)));
    int st = o == Orientation::Chain ? -1 : 1;
    std::vector<Matrix> ds(ranks.size());
    auto rk = [&](int k) -> std::size_t { return (k >= lo && k <= hi) ? ranks[k - lo] : 0; };
    // Build differentials so that the one into which d_k maps is known first.
    std::vector<int> order;
    for (int k = lo; k <= hi; ++k) order.push_back(k);
    if (st > 0) std::reverse(order.begin(), order.end());
    for (int k : order) {
        int t = k + st;
        if (t < lo || t > hi || rk(t) == 0 || rk(k) == 0) {
            ds[k - lo] = Matrix::zero(dom, rk(t), rk(k));
            continue;
        }
        Matrix next = ds[t - lo];  // d_t, already built
        Matrix K = kernel(next);
        if (K.cols() == 0) {
            ds[k - lo] = Matrix::zero(dom, rk(t), rk(k));
            continue;
        }
        // Coefficients of reduced rank now and then, so homology shows up.
        std::size_t inner = rng.range(0, static_cast<long>(std::min(K.cols(), rk(k))));
        Matrix c = random_matrix(rng, dom, K.cols(), inner, 2, 20) * random_matrix(rng, dom, inner, rk(k), 2, 20);
        ds[k - lo] = K * c;
    }
    GradedComplex out(dom, o, lo, std::move(ranks), std::move(ds));
    out.name = "R";
    return out;
}

namespace {

mpz_class lcm_of_denominators(const Matrix& col) {
    mpz_class l = 1;
    for (std::size_t i = 0; i < col.rows(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), col(i, 0).get_den_mpz_t());
    return l;
}

}  // namespace

std::vector<ChainMap> chain_map_basis(const GradedComplex& a, const GradedComplex& b) {
    Domain dom = a.domain();
    Domain work = dom.is_field() ? dom : Domain::rationals();
    int st = a.step();
    int lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    std::map<int, std::size_t> off;
    std::size_t n = 0;
    for (int k = lo; k <= hi; ++k) {
        off[k] = n;
        n += a.rank(k) * b.rank(k);
    }
    if (n == 0) return {};
    // rows: for every k and entry (i, j) of d_B f_k - f_{k+st} d_A
    std::vector<std::vector<std::pair<std::size_t, mpq_class>>> eqs;
    for (int k = lo - 1; k <= hi + 1; ++k) {
        int t = k + st;
        std::size_t rbt = b.rank(t), rak = a.rank(k);
        if (rbt == 0 || rak == 0) continue;
        Matrix dB = b.d(k), dA = a.d(k);
        for (std::size_t i = 0; i < rbt; ++i)
            for (std::size_t j = 0; j < rak; ++j) {
                std::vector<std::pair<std::size_t, mpq_class>> row;
                if (off.count(k))
                    for (std::size_t l = 0; l < b.rank(k); ++l)
                        if (sgn(dB(i, l))) row.emplace_back(off[k] + l * rak + j, dB(i, l));
                if (off.count(t))
                    for (std::size_t l = 0; l < a.rank(t); ++l)
                        if (sgn(dA(l, j))) row.emplace_back(off[t] + i * a.rank(t) + l, -dA(l, j));
                if (!row.empty()) eqs.push_back(std::move(row));
            }
    }
    Matrix sys(work, eqs.size(), n);
    for (std::size_t r = 0; r < eqs.size(); ++r)
        for (auto& [c, v] : eqs[r]) sys.add_to(r, c, v);
    Matrix K = eqs.empty() ? Matrix::identity(work, n) : kernel(sys);
    std::vector<ChainMap> out;
    for (std::size_t c = 0; c < K.cols(); ++c) {
        Matrix col = K.col(c);
        if (!dom.is_field()) col = col.scaled(mpq_class(lcm_of_denominators(col)));
        std::map<int, Matrix> comps;
        for (int k = lo; k <= hi; ++k) {
            Matrix m(dom, b.rank(k), a.rank(k));
            for (std::size_t i = 0; i < b.rank(k); ++i)
                for (std::size_t j = 0; j < a.rank(k); ++j) m.set(i, j, col(off[k] + i * a.rank(k) + j, 0));
            comps.emplace(k, std::move(m));
        }
        out.emplace_back(a, b, std::move(comps), "f");
    }
    return out;
}

ChainMap random_chain_map(Rng& rng, const GradedComplex& a, const GradedComplex& b) {
    std::vector<ChainMap> basis = chain_map_basis(a, b);
    std::map<int, Matrix> comps;
    for (int k = std::max(a.lo(), b.lo()); k <= std::min(a.hi(), b.hi()); ++k)
        comps.emplace(k, Matrix::zero(a.domain(), b.rank(k), a.rank(k)));
    for (const auto& f : basis) {
        long c = rng.range(-2, 2);
        if (c == 0) continue;
        for (auto& [k, m] : comps) m = m + f.at(k).scaled(mpq_class(c));
    }
    return ChainMap(a, b, std::move(comps), "f");
}

std::map<int, Matrix> random_subcomplex_spans(Rng& rng, const GradedComplex& c) {
    std::map<int, Matrix> spans;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        std::size_t cnt = c.rank(k) ? rng.range(0, static_cast<long>(c.rank(k))) : 0;
        spans[k] = random_matrix(rng, c.domain(), c.rank(k), cnt, 2, 30);
    }
    std::vector<int> order;
    for (int k = c.lo(); k <= c.hi(); ++k) order.push_back(k);
    if (c.step() < 0) std::reverse(order.begin(), order.end());
    for (int k : order) {
        int t = k + c.step();
        if (!c.in_range(t)) continue;
        spans[t] = Matrix::hstack(spans[t], c.d(k) * spans[k]);
    }
    return spans;
}

ChainMap random_recoordinatize(Rng& rng, const GradedComplex& c) {
    std::map<int, Matrix> P, Pinv;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        P.emplace(k, random_invertible(rng, c.domain(), c.rank(k)));
        Pinv.emplace(k, inverse(P.at(k)));
    }
    std::vector<std::size_t> ranks;
    std::vector<Matrix> ds;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        ranks.push_back(c.rank(k));
        int t = k + c.step();
        if (!c.in_range(t)) {
            ds.push_back(c.d(k));
            continue;
        }
        ds.push_back(P.at(t) * c.d(k) * Pinv.at(k));
    }
    GradedComplex out(c.domain(), c.orientation(), c.lo(), std::move(ranks), std::move(ds));
    out.name = c.name + "'";
    return ChainMap(c, out, std::move(P), "P");
}

QuasiIsoWithRetraction random_quasi_isomorphism_with_retraction(Rng& rng, const GradedComplex& a,
                                                                std::size_t extra_rank) {
    ComplexShape sh{a.lo(), std::max(a.lo(), a.hi()), extra_rank};
    GradedComplex e = random_complex(rng, a.domain(), a.orientation(), sh);
    GradedComplex cone = simple(ChainMap::identity(e));
    GradedComplex b = direct_sum(a, cone);
    std::map<int, Matrix> inc, proj;
    for (int k = a.lo(); k <= a.hi(); ++k) {
        Matrix m(a.domain(), b.rank(k), a.rank(k));
        m.place(0, 0, Matrix::identity(a.domain(), a.rank(k)));
        proj.emplace(k, m.transpose());
        inc.emplace(k, std::move(m));
    }
    ChainMap iota(a, b, std::move(inc), "incl");
    ChainMap pi(b, a, std::move(proj), "proj");
    ChainMap p = random_recoordinatize(rng, b);
    std::map<int, Matrix> pinv;
    for (const auto& [k, m] : p.comps) pinv.emplace(k, inverse(m));
    ChainMap p_inv(p.target, b, std::move(pinv), "P^-1");
    QuasiIsoWithRetraction out{compose(p, iota), compose(pi, p_inv)};
    out.q.name = "q";
    out.r.name = "r";
    return out;
}

ChainMap random_quasi_isomorphism(Rng& rng, const GradedComplex& a, std::size_t extra_rank) {
    return random_quasi_isomorphism_with_retraction(rng, a, extra_rank).q;
}

}  // namespace hchow
