/**
 * @file   matrix.hpp
 * @brief  Exact dense matrices over Z, Q or Z/p.
 *
 * Every matrix carries its coefficient domain at runtime. Entries are stored
 * as mpq_class in all three cases; over Z they are integers and over Z/p they
 * are kept reduced to [0, p).
 */
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hchow {

struct Domain {
    enum class Kind { Z, Q, Fp };
    Kind kind = Kind::Q;
    long p = 0;

    static Domain integers() { return {Kind::Z, 0}; }
    static Domain rationals() { return {Kind::Q, 0}; }
    static Domain prime(long p);

    bool is_field() const { return kind != Kind::Z; }
    bool operator==(const Domain&) const = default;

    // Brings an arbitrary rational into canonical form for this domain.
    // Throws for non-integers over Z and for denominators divisible by p.
    mpq_class reduce(const mpq_class& x) const;
    mpq_class add(const mpq_class& a, const mpq_class& b) const;
    mpq_class sub(const mpq_class& a, const mpq_class& b) const;
    mpq_class mul(const mpq_class& a, const mpq_class& b) const;
    mpq_class neg(const mpq_class& a) const;
    // Field inverse; over Z only +-1 are invertible.
    mpq_class inv(const mpq_class& a) const;

    std::string name() const;
    static Domain parse(const std::string& s);
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(Domain dom, std::size_t rows, std::size_t cols);

    static Matrix zero(Domain dom, std::size_t rows, std::size_t cols) { return Matrix(dom, rows, cols); }
    static Matrix identity(Domain dom, std::size_t n);
    // Builds from integer rows; every row must have the same length.
    static Matrix from_rows(Domain dom, const std::vector<std::vector<long>>& rows);
    static Matrix from_rows_q(Domain dom, const std::vector<std::vector<mpq_class>>& rows);
    static Matrix column(Domain dom, const std::vector<mpq_class>& v);

    const Domain& domain() const { return dom_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const mpq_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    // Writes through the domain reduction.
    void set(std::size_t i, std::size_t j, const mpq_class& v) { a_[i * cols_ + j] = dom_.reduce(v); }
    void add_to(std::size_t i, std::size_t j, const mpq_class& v);
    // Raw access for algorithms that maintain canonical form themselves.
    mpq_class& raw(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const mpq_class& s) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const;
    Matrix transpose() const;
    Matrix col(std::size_t j) const;
    std::vector<mpq_class> col_vector(std::size_t j) const;
    Matrix cols_range(std::size_t j0, std::size_t j1) const;
    Matrix rows_range(std::size_t i0, std::size_t i1) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    // Copies `m` into this matrix with top-left corner at (i, j).
    void place(std::size_t i, std::size_t j, const Matrix& m);
    // Reinterprets the entries in another domain (entries are re-reduced).
    Matrix in_domain(Domain d) const;

    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix block_diag(const Matrix& a, const Matrix& b);

    // "1 0 0; 0 2 0" style; inverse of parse().
    std::string to_string() const;
    static Matrix parse(Domain dom, std::size_t rows, std::size_t cols, const std::string& text);

private:
    Domain dom_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpq_class> a_;
};

void require_same_domain(const Matrix& a, const Matrix& b, const char* where);

}  // namespace hchow
