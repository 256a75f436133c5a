/**
 * @file   cubical.hpp
 * @brief  Truncated cubical modules, their associated / normalized / refined
 *         normalized complexes, extra degeneracies, and cubical cochain
 *         complexes.
 *
 * Operators act on the left. delta(n, i, j) is the face delta_i^j from level n
 * to level n-1 (1 <= i <= n, j in {0, 1}); sigma(n, i) is the degeneracy from
 * level n to level n+1 (1 <= i <= n+1). The identities checked are
 *
 *   delta_I^b delta_K^a = delta_K^a delta_{I+1}^b        (I >= K)
 *   sigma_j sigma_i     = sigma_{i+1} sigma_j            (j <= i)
 *   delta_i^a sigma_j   = id, sigma_{j-1} delta_i^a, sigma_j delta_{i-1}^a
 *                         for i = j, i < j, i > j.
 */
#pragma once

#include "hchow/complex.hpp"
#include "hchow/random.hpp"

#include <map>
#include <tuple>

namespace hchow {

class CubicalModule {
public:
    CubicalModule() = default;
    CubicalModule(Domain dom, std::vector<std::size_t> ranks);

    const Domain& domain() const { return dom_; }
    int top() const { return static_cast<int>(ranks_.size()) - 1; }
    std::size_t rank(int n) const { return n >= 0 && n <= top() ? ranks_[n] : 0; }

    const Matrix& delta(int n, int i, int j) const;
    const Matrix& sigma(int n, int i) const;
    void set_delta(int n, int i, int j, Matrix m);
    void set_sigma(int n, int i, Matrix m);

    // Shapes and all cubical identities within the truncation.
    Verdict verify() const;

    std::string name;

private:
    Domain dom_;
    std::vector<std::size_t> ranks_;
    std::map<std::tuple<int, int, int>, Matrix> faces_;
    std::map<std::pair<int, int>, Matrix> degens_;
};

// Maps h_j : C_n -> C_{n+1}, 1 <= j <= n, for n < top.
struct ExtraDegeneracies {
    std::map<std::pair<int, int>, Matrix> h;
    const Matrix& at(int n, int j) const { return h.at({n, j}); }
};

// ---- complexes attached to a cubical module ------------------------------

// Degrees 0..top, differential sum (-1)^{i+j} delta_i^j.
GradedComplex associated_complex(const CubicalModule& c);

// Column bases inside C_n of NC_n, D_n and N_0C_n.
Matrix normalized_basis(const CubicalModule& c, int n);
Matrix degenerate_basis(const CubicalModule& c, int n);
Matrix refined_basis(const CubicalModule& c, int n);

struct Normalization {
    ChainMap n_inclusion;    // NC -> C
    ChainMap d_inclusion;    // D -> C
    ChainMap n0_inclusion;   // N_0C -> NC
};
Normalization normalize(const CubicalModule& c);

// C = N + D: ranks add up, N meets D trivially, N + D -> C is a chain
// isomorphism, and H(C) = H(N) + H(D) with H(N) -> H(C) injective.
Verdict verify_normalization_split(const CubicalModule& c);

// The h-identities listed with the refined normalization.
Verdict verify_extra_degeneracies(const CubicalModule& c, const ExtraDegeneracies& h);

// phi = H_{n-2} ... H_0 and the homotopy K on levels <= max_level:
// phi restricted to N_0 is the identity, i phi - id = delta K + K delta on NC,
// phi lands in N_0, and each H_j fixes G^{j+1} and maps G^j into G^{j+1}.
// Requires max_level < top.
Verdict verify_refined_equivalence(const CubicalModule& c, const ExtraDegeneracies& h, int max_level);

// ---- constructions -------------------------------------------------------

CubicalModule direct_sum(const CubicalModule& a, const CubicalModule& b);
ExtraDegeneracies direct_sum(const CubicalModule& a, const ExtraDegeneracies& ha, const CubicalModule& b,
                             const ExtraDegeneracies& hb);
// Random change of basis in every level; h (if given) is transported along.
CubicalModule recoordinatize(Rng& rng, const CubicalModule& c, ExtraDegeneracies* h = nullptr,
                             std::vector<Matrix>* change = nullptr);

// ---- cubical cochain complexes -------------------------------------------

struct CubicalCochainComplex {
    int rlo = 0;
    std::vector<CubicalModule> slices;   // slices[r - rlo] is X^r
    std::vector<std::vector<Matrix>> d;  // d[r - rlo][n] : X^r_n -> X^{r+1}_n

    int top() const { return slices.empty() ? -1 : slices[0].top(); }
    int rhi() const { return rlo + static_cast<int>(slices.size()) - 1; }
    GradedComplex level(int n) const;
    Verdict verify() const;
};

// Cone of a map of cubical modules: X^0 = A, X^1 = B, d = f.
CubicalCochainComplex cubical_cone(const CubicalModule& a, const CubicalModule& b, const std::vector<Matrix>& f);
CubicalCochainComplex recoordinatize(Rng& rng, const CubicalCochainComplex& x);

// H^r(N X_n) -> N H^r(X_n) is an isomorphism for every n and r.
Verdict verify_normalized_cohomology(const CubicalCochainComplex& x);

}  // namespace hchow
