#include "hchow/oracles.hpp"

#include "hchow/linalg.hpp"

namespace hchow {

namespace {

void for_each_subset(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t start,
                     std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        for_each_subset(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    for_each_subset(n, k, cur, 0, out);
    return out;
}

}  // namespace

std::vector<mpz_class> invariant_factors_by_minors(const Matrix& m) {
    std::vector<mpz_class> out;
    mpz_class prev = 1;
    std::size_t top = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= top; ++k) {
        mpz_class g = 0;
        auto rs = subsets(m.rows(), k), cs = subsets(m.cols(), k);
        for (const auto& r : rs)
            for (const auto& c : cs) {
                mpq_class det = determinant(m.select_rows(r).select_cols(c));
                mpz_class v = det.get_num();
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

std::vector<mpz_class> invariant_factors_by_elimination(const Matrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).get_num();
    std::vector<mpz_class> diag;
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block
            std::size_t pi = R, pj = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j)
                    if (a[i][j] != 0 && (pi == R || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
            if (pi == R) break;
            std::swap(a[t], a[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);
            bool clear = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t j = t; j < C; ++j) a[i][j] -= q * a[t][j];
                clear = clear && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (std::size_t i = t; i < R; ++i) a[i][j] -= q * a[i][t];
                clear = clear && a[t][j] == 0;
            }
            if (clear) break;
        }
        if (a[t][t] == 0) break;
        diag.push_back(abs(a[t][t]));
    }
    // diag(a, b) is equivalent to diag(gcd, lcm); repeat until each divides the next.
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            mpz_class g = gcd(diag[i], diag[j]), l = lcm(diag[i], diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    return diag;
}

}  // namespace hchow
