#include "hchow/matrix.hpp"

#include <sstream>

namespace hchow {

namespace {

bool is_probable_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

mpz_class mod_p(const mpz_class& x, long p) {
    mpz_class r = x % p;
    if (r < 0) r += p;
    return r;
}

}  // namespace

Domain Domain::prime(long p) {
    if (!is_probable_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
    return {Kind::Fp, p};
}

mpq_class Domain::reduce(const mpq_class& x) const {
    switch (kind) {
    case Kind::Q:
        return x;
    case Kind::Z:
        if (x.get_den() != 1) throw DomainError("non-integer entry " + x.get_str() + " over Z");
        return x;
    case Kind::Fp: {
        mpz_class den = mod_p(x.get_den(), p);
        if (den == 0) throw DomainError("denominator divisible by " + std::to_string(p));
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
        return mpq_class(mod_p(mod_p(x.get_num(), p) * inv, p));
    }
    }
    return x;
}

mpq_class Domain::add(const mpq_class& a, const mpq_class& b) const {
    if (kind != Kind::Fp) return a + b;
    mpz_class s = a.get_num() + b.get_num();
    if (s >= p) s -= p;
    return mpq_class(s);
}

mpq_class Domain::sub(const mpq_class& a, const mpq_class& b) const {
    if (kind != Kind::Fp) return a - b;
    mpz_class s = a.get_num() - b.get_num();
    if (s < 0) s += p;
    return mpq_class(s);
}

mpq_class Domain::mul(const mpq_class& a, const mpq_class& b) const {
    if (kind != Kind::Fp) return a * b;
    return mpq_class(mod_p(a.get_num() * b.get_num(), p));
}

mpq_class Domain::neg(const mpq_class& a) const {
    if (kind != Kind::Fp) return -a;
    if (a == 0) return a;
    return mpq_class(p - a.get_num());
}

mpq_class Domain::inv(const mpq_class& a) const {
    if (a == 0) throw DomainError("division by zero");
    switch (kind) {
    case Kind::Q:
        return 1 / a;
    case Kind::Z:
        if (a == 1 || a == -1) return a;
        throw DomainError("non-unit " + a.get_str() + " over Z");
    case Kind::Fp: {
        mpz_class r;
        mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), mpz_class(p).get_mpz_t());
        return mpq_class(r);
    }
    }
    return a;
}

std::string Domain::name() const {
    switch (kind) {
    case Kind::Z: return "Z";
    case Kind::Q: return "Q";
    case Kind::Fp: return "F" + std::to_string(p);
    }
    return "?";
}

Domain Domain::parse(const std::string& s) {
    if (s == "Z" || s == "z") return integers();
    if (s == "Q" || s == "q") return rationals();
    std::string rest;
    if (s.rfind("fp:", 0) == 0 || s.rfind("Fp:", 0) == 0) rest = s.substr(3);
    else if (!s.empty() && (s[0] == 'F' || s[0] == 'f')) rest = s.substr(1);
    if (rest.empty()) throw DomainError("unknown field '" + s + "'");
    try {
        return prime(std::stol(rest));
    } catch (const std::invalid_argument&) {
        throw DomainError("unknown field '" + s + "'");
    }
}

Matrix::Matrix(Domain dom, std::size_t rows, std::size_t cols)
    : dom_(dom), rows_(rows), cols_(cols), a_(rows * cols) {}

Matrix Matrix::identity(Domain dom, std::size_t n) {
    Matrix m(dom, n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(Domain dom, const std::vector<std::vector<long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(dom, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, mpq_class(rows[i][j]));
    }
    return m;
}

Matrix Matrix::from_rows_q(Domain dom, const std::vector<std::vector<mpq_class>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(dom, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(Domain dom, const std::vector<mpq_class>& v) {
    Matrix m(dom, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
}

void Matrix::add_to(std::size_t i, std::size_t j, const mpq_class& v) {
    mpq_class& e = a_[i * cols_ + j];
    e = dom_.add(e, dom_.reduce(v));
}

void require_same_domain(const Matrix& a, const Matrix& b, const char* where) {
    if (!(a.domain() == b.domain()))
        throw DomainError(std::string(where) + ": domain mismatch " + a.domain().name() + " vs " + b.domain().name());
}

Matrix Matrix::operator*(const Matrix& o) const {
    require_same_domain(*this, o, "matrix product");
    if (cols_ != o.rows_)
        throw ShapeError("matrix product: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " times " +
                         std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    Matrix r(dom_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpq_class& x = a_[i * cols_ + k];
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const mpq_class& y = o.a_[k * o.cols_ + j];
                if (sgn(y) == 0) continue;
                r.a_[i * o.cols_ + j] += x * y;
            }
        }
    if (dom_.kind == Domain::Kind::Fp)
        for (auto& e : r.a_) e = dom_.reduce(e);
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require_same_domain(*this, o, "matrix sum");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum: shape mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = dom_.add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require_same_domain(*this, o, "matrix difference");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix difference: shape mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = dom_.sub(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r(*this);
    for (auto& e : r.a_) e = dom_.neg(e);
    return r;
}

Matrix Matrix::scaled(const mpq_class& s) const {
    Matrix r(*this);
    mpq_class t = dom_.reduce(s);
    for (auto& e : r.a_) e = dom_.mul(e, t);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return dom_ == o.dom_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
    for (const auto& e : a_)
        if (sgn(e) != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix r(dom_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = a_[i * cols_ + j];
    return r;
}

Matrix Matrix::col(std::size_t j) const { return cols_range(j, j + 1); }

std::vector<mpq_class> Matrix::col_vector(std::size_t j) const {
    std::vector<mpq_class> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = a_[i * cols_ + j];
    return v;
}

Matrix Matrix::cols_range(std::size_t j0, std::size_t j1) const {
    if (j0 > j1 || j1 > cols_) throw ShapeError("column range out of bounds");
    Matrix r(dom_, rows_, j1 - j0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = j0; j < j1; ++j) r.a_[i * (j1 - j0) + (j - j0)] = a_[i * cols_ + j];
    return r;
}

Matrix Matrix::rows_range(std::size_t i0, std::size_t i1) const {
    if (i0 > i1 || i1 > rows_) throw ShapeError("row range out of bounds");
    Matrix r(dom_, i1 - i0, cols_);
    for (std::size_t i = i0; i < i1; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[(i - i0) * cols_ + j] = a_[i * cols_ + j];
    return r;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
    Matrix r(dom_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < idx.size(); ++k) r.a_[i * idx.size() + k] = a_[i * cols_ + idx[k]];
    return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(dom_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t j = 0; j < cols_; ++j) r.a_[k * cols_ + j] = a_[idx[k] * cols_ + j];
    return r;
}

void Matrix::place(std::size_t i, std::size_t j, const Matrix& m) {
    if (i + m.rows_ > rows_ || j + m.cols_ > cols_) throw ShapeError("block placement out of bounds");
    for (std::size_t r = 0; r < m.rows_; ++r)
        for (std::size_t c = 0; c < m.cols_; ++c) a_[(i + r) * cols_ + (j + c)] = dom_.reduce(m.a_[r * m.cols_ + c]);
}

Matrix Matrix::in_domain(Domain d) const {
    Matrix r(d, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = d.reduce(a_[i]);
    return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "hstack");
    if (a.rows_ != b.rows_) throw ShapeError("hstack: row counts differ");
    Matrix r(a.dom_, a.rows_, a.cols_ + b.cols_);
    r.place(0, 0, a);
    r.place(0, a.cols_, b);
    return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "vstack");
    if (a.cols_ != b.cols_) throw ShapeError("vstack: column counts differ");
    Matrix r(a.dom_, a.rows_ + b.rows_, a.cols_);
    r.place(0, 0, a);
    r.place(a.rows_, 0, b);
    return r;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    require_same_domain(a, b, "block_diag");
    Matrix r(a.dom_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    r.place(0, 0, a);
    r.place(a.rows_, a.cols_, b);
    return r;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << a_[i * cols_ + j].get_str();
        }
    }
    return os.str();
}

Matrix Matrix::parse(Domain dom, std::size_t rows, std::size_t cols, const std::string& text) {
    Matrix m(dom, rows, cols);
    std::size_t r = 0;
    std::size_t start = 0;
    bool any = false;
    while (start <= text.size()) {
        std::size_t semi = text.find(';', start);
        std::string row = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        std::istringstream is(row);
        std::string tok;
        std::size_t c = 0;
        while (is >> tok) {
            if (r >= rows || c >= cols)
                throw ShapeError("matrix literal larger than " + std::to_string(rows) + "x" + std::to_string(cols));
            mpq_class v;
            if (v.set_str(tok, 10) != 0) throw ShapeError("bad matrix entry '" + tok + "'");
            v.canonicalize();
            m.set(r, c, v);
            ++c;
            any = true;
        }
        if (c != 0 || rows != 0) {
            if (c != cols)
                throw ShapeError("matrix row " + std::to_string(r) + " has " + std::to_string(c) + " entries, expected " +
                                 std::to_string(cols));
            ++r;
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (rows != 0 && cols != 0 && r != rows)
        throw ShapeError("matrix literal has " + std::to_string(r) + " rows, expected " + std::to_string(rows));
    if ((rows == 0 || cols == 0) && any) throw ShapeError("entries given for an empty matrix");
    return m;
}

}  // namespace hchow
