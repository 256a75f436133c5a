/**
 * @file   random.hpp
 * @brief  Seeded generators for the property suites.
 *
 * Only the raw mt19937_64 stream is used (its output sequence is fixed by the
 * standard), so a (seed, suite) pair reproduces the same cases everywhere.
 */
#pragma once

#include "hchow/complex.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace hchow {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    // Independent stream for a named sub-suite.
    static Rng split(std::uint64_t seed, const std::string& label);

    std::uint64_t next() { return eng_(); }
    // Uniform in [lo, hi]; the modulo bias is irrelevant at these ranges.
    long range(long lo, long hi) { return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool chance(int percent) { return range(0, 99) < percent; }

private:
    std::mt19937_64 eng_;
};

// Entries in [-bound, bound]; `zero_percent` of them forced to zero.
Matrix random_matrix(Rng& rng, Domain dom, std::size_t rows, std::size_t cols, long bound = 3, int zero_percent = 30);
Matrix random_invertible(Rng& rng, Domain dom, std::size_t n);

struct ComplexShape {
    int lo = 0, hi = 2;
    std::size_t max_rank = 3;
};

GradedComplex random_complex(Rng& rng, Domain dom, Orientation o, const ComplexShape& shape);
// Random element of the space of chain maps A -> B (field domains; over Z a
// random integral combination of an integral basis).
ChainMap random_chain_map(Rng& rng, const GradedComplex& a, const GradedComplex& b);
// Basis of all chain maps A -> B.
std::vector<ChainMap> chain_map_basis(const GradedComplex& a, const GradedComplex& b);
// Random d-stable spans, suitable for subcomplex_inclusion/quotient_projection.
std::map<int, Matrix> random_subcomplex_spans(Rng& rng, const GradedComplex& c);
// A -> A + cone(id_E), conjugated by a random change of basis.
ChainMap random_quasi_isomorphism(Rng& rng, const GradedComplex& a, std::size_t extra_rank = 2);
// The same construction together with a chain retraction r, r q = id.
struct QuasiIsoWithRetraction {
    ChainMap q, r;
};
QuasiIsoWithRetraction random_quasi_isomorphism_with_retraction(Rng& rng, const GradedComplex& a,
                                                                std::size_t extra_rank = 2);
// Conjugates a complex by random per-degree changes of basis; returns the
// isomorphism from the input to the new complex.
ChainMap random_recoordinatize(Rng& rng, const GradedComplex& c);

}  // namespace hchow
