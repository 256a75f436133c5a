#include "hchow/linalg.hpp"

#include <utility>

namespace hchow {

namespace {

void require_field(const Matrix& m, const char* where) {
    if (!m.domain().is_field()) throw DomainError(std::string(where) + " requires a field domain");
}

// Dense integer matrix used by the Smith form routine.
struct IntMat {
    std::size_t r = 0, c = 0;
    std::vector<mpz_class> a;
    IntMat(std::size_t r_, std::size_t c_) : r(r_), c(c_), a(r_ * c_) {}
    mpz_class& at(std::size_t i, std::size_t j) { return a[i * c + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * c + j]; }
    static IntMat eye(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < c; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r; ++k) std::swap(at(k, i), at(k, j));
    }
    // row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < c; ++k) at(i, k) += q * at(j, k);
    }
    void add_col(std::size_t i, std::size_t j, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < r; ++k) at(k, i) += q * at(k, j);
    }
    void neg_row(std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) at(i, k) = -at(i, k);
    }
    void neg_col(std::size_t j) {
        for (std::size_t k = 0; k < r; ++k) at(k, j) = -at(k, j);
    }
    Matrix to_matrix() const {
        Matrix m(Domain::integers(), r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.raw(i, j) = mpq_class(at(i, j));
        return m;
    }
};

// Floor-style quotient so that the remainder a - q*b has |.| <= |b|/2 or so;
// any quotient that strictly shrinks the remainder works for termination.
mpz_class quotient(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

RowEchelon rref(const Matrix& m) {
    require_field(m, "rref");
    const Domain& d = m.domain();
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t p = row;
        while (p < r.rows() && sgn(r(p, col)) == 0) ++p;
        if (p == r.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.raw(p, j), r.raw(row, j));
        mpq_class inv = d.inv(r(row, col));
        for (std::size_t j = col; j < r.cols(); ++j) r.raw(row, j) = d.mul(r(row, j), inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || sgn(r(i, col)) == 0) continue;
            mpq_class f = r(i, col);
            for (std::size_t j = col; j < r.cols(); ++j)
                if (sgn(r(row, j)) != 0) r.raw(i, j) = d.sub(r(i, j), d.mul(f, r(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
    if (m.domain().is_field()) return rref(m).pivots.size();
    return smith_normal_form(m).rank;
}

Matrix kernel(const Matrix& m) {
    if (!m.domain().is_field()) {
        SmithForm sf = smith_normal_form(m);
        return sf.v.cols_range(sf.rank, m.cols());
    }
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix k(m.domain(), m.cols(), free_cols.size());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        k.raw(free_cols[t], t) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            k.raw(e.pivots[i], t) = m.domain().neg(e.reduced(i, free_cols[t]));
    }
    return k;
}

Matrix image(const Matrix& m) {
    if (!m.domain().is_field()) {
        SmithForm sf = smith_normal_form(m);
        Matrix b(m.domain(), m.rows(), sf.rank);
        for (std::size_t j = 0; j < sf.rank; ++j)
            for (std::size_t i = 0; i < m.rows(); ++i) b.raw(i, j) = sf.u_inv(i, j) * mpq_class(sf.invariants[j]);
        return b;
    }
    return m.select_cols(rref(m).pivots);
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "solve");
    if (a.rows() != b.rows()) throw ShapeError("solve: row counts differ");
    const Domain& d = a.domain();
    if (!d.is_field()) {
        SmithForm sf = smith_normal_form(a);
        Matrix ub = sf.u * b;
        Matrix y(d, a.cols(), b.cols());
        for (std::size_t i = 0; i < ub.rows(); ++i)
            for (std::size_t j = 0; j < ub.cols(); ++j) {
                if (i < sf.rank) {
                    mpq_class q = ub(i, j) / mpq_class(sf.invariants[i]);
                    if (q.get_den() != 1) return std::nullopt;
                    y.raw(i, j) = q;
                } else if (sgn(ub(i, j)) != 0) {
                    return std::nullopt;
                }
            }
        return sf.v * y;
    }
    RowEchelon e = rref(Matrix::hstack(a, b));
    Matrix x(d, a.cols(), b.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x.raw(e.pivots[i], j) = e.reduced(i, a.cols() + j);
    }
    return x;
}

Matrix complete_basis(const Matrix& basis) {
    require_field(basis, "complete_basis");
    std::size_t n = basis.rows();
    RowEchelon e = rref(Matrix::hstack(basis, Matrix::identity(basis.domain(), n)));
    std::vector<std::size_t> extra;
    for (auto p : e.pivots) {
        if (p < basis.cols()) continue;
        extra.push_back(p - basis.cols());
    }
    if (e.pivots.size() != n || n - extra.size() != basis.cols())
        throw ShapeError("complete_basis: columns are not independent");
    return Matrix::identity(basis.domain(), n).select_cols(extra);
}

mpq_class determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("determinant of a non-square matrix");
    Domain d = m.domain().is_field() ? m.domain() : Domain::rationals();
    Matrix r = m.in_domain(d);
    mpq_class det = 1;
    std::size_t n = r.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && sgn(r(p, col)) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(r.raw(p, j), r.raw(col, j));
            det = d.neg(det);
        }
        det = d.mul(det, r(col, col));
        mpq_class inv = d.inv(r(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(r(i, col)) == 0) continue;
            mpq_class f = d.mul(r(i, col), inv);
            for (std::size_t j = col; j < n; ++j) r.raw(i, j) = d.sub(r(i, j), d.mul(f, r(col, j)));
        }
    }
    return det;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("inverse of a non-square matrix");
    if (!m.domain().is_field()) {
        auto x = solve(m, Matrix::identity(m.domain(), m.rows()));
        if (!x || (*x) * m != Matrix::identity(m.domain(), m.rows()))
            throw DomainError("matrix is not unimodular");
        return *x;
    }
    auto x = solve(m, Matrix::identity(m.domain(), m.rows()));
    if (!x || rank(m) != m.rows()) throw DomainError("matrix is singular");
    return *x;
}

SmithForm smith_normal_form(const Matrix& m) {
    if (m.domain().kind != Domain::Kind::Z) throw DomainError("Smith normal form requires Z");
    const std::size_t R = m.rows(), C = m.cols();
    IntMat s(R, C);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) s.at(i, j) = m(i, j).get_num();
    IntMat u = IntMat::eye(R), ui = IntMat::eye(R), v = IntMat::eye(C);

    // Row operation row_i += q row_j on s, u; inverse update on u_inv columns.
    auto row_op = [&](std::size_t i, std::size_t j, const mpz_class& q) {
        s.add_row(i, j, q);
        u.add_row(i, j, q);
        ui.add_col(j, i, -q);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        s.swap_rows(i, j);
        u.swap_rows(i, j);
        ui.swap_cols(i, j);
    };
    auto row_neg = [&](std::size_t i) {
        s.neg_row(i);
        u.neg_row(i);
        ui.neg_col(i);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const mpz_class& q) {
        s.add_col(i, j, q);
        v.add_col(i, j, q);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        s.swap_cols(i, j);
        v.swap_cols(i, j);
    };

    std::size_t t = 0;
    for (; t < R && t < C; ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j) {
                    if (s.at(i, j) == 0) continue;
                    if (!found || abs(s.at(i, j)) < abs(s.at(pi, pj))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) goto done;
            row_swap(t, pi);
            col_swap(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (s.at(i, t) == 0) continue;
                row_op(i, t, -quotient(s.at(i, t), s.at(t, t)));
                if (s.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (s.at(t, j) == 0) continue;
                col_op(j, t, -quotient(s.at(t, j), s.at(t, t)));
                if (s.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the rest of the block by the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < R && divides; ++i)
                for (std::size_t j = t + 1; j < C; ++j) {
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        row_op(t, i, 1);
                        divides = false;
                        break;
                    }
                }
            if (divides) break;
        }
        if (s.at(t, t) < 0) row_neg(t);
    }
done:
    SmithForm out;
    out.rank = t;
    for (std::size_t i = 0; i < t; ++i) out.invariants.push_back(s.at(i, i));
    out.u = u.to_matrix();
    out.u_inv = ui.to_matrix();
    out.v = v.to_matrix();
    out.s = s.to_matrix();
    return out;
}

}  // namespace hchow
