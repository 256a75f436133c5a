/**
 * @file   linalg.hpp
 * @brief  Exact linear algebra: row reduction, kernels, images, solving, and
 *         Smith normal form over Z.
 */
#pragma once

#include "hchow/matrix.hpp"

#include <optional>
#include <vector>

namespace hchow {

struct RowEchelon {
    Matrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Field domains only.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Column basis of the null space. Over Z the basis spans the full kernel
// lattice (it is computed from the Smith form).
Matrix kernel(const Matrix& m);

// Column basis of the column space. Over Z this is a lattice basis of the
// image.
Matrix image(const Matrix& m);

// Solves A X = B. Returns nothing when the system is inconsistent.
// Over Z the solution must be integral.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

// Columns C such that [basis | C] is square and invertible. `basis` must have
// independent columns. Field domains only.
Matrix complete_basis(const Matrix& basis);

mpq_class determinant(const Matrix& m);
Matrix inverse(const Matrix& m);

struct SmithForm {
    Matrix u, u_inv, v, s;                // u * m * v == s, u * u_inv == 1
    std::vector<mpz_class> invariants;    // nonzero diagonal entries, each dividing the next
    std::size_t rank = 0;
};

SmithForm smith_normal_form(const Matrix& m);

}  // namespace hchow
