/**
 * @file   oracles.hpp
 * @brief  Slow reference computations used to cross-check the fast paths.
 */
#pragma once

#include "hchow/matrix.hpp"

#include <vector>

namespace hchow {

// Invariant factors from determinantal divisors: d_k is the gcd of all k x k
// minors and the k-th invariant factor is d_k / d_{k-1}. Exponential in the
// matrix size; meant for matrices up to about 6 x 6.
std::vector<mpz_class> invariant_factors_by_minors(const Matrix& m);

// Invariant factors by plain elementary row and column operations on a copy
// of the entries: move a nonzero entry of least absolute value to the pivot,
// reduce its row and column by division with remainder until both are clear,
// and fix divisibility afterwards with gcd/lcm on the diagonal. No transforms
// are tracked; this is the independent reference for smith_normal_form.
std::vector<mpz_class> invariant_factors_by_elimination(const Matrix& m);

}  // namespace hchow
