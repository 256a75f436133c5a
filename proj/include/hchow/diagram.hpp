/**
 * @file   diagram.hpp
 * @brief  Zig-zag diagrams of chain complexes, their simple complexes, tensor
 *         diagrams, the products star_beta and the long exact sequences
 *         attached to short diagrams.
 *
 * A diagram of size n is
 *
 *     A^1 -f1-> B^1 <-g1- A^2 -f2-> B^2 <- ... <-g_{n-1}- A^n -fn-> B^n <-gn- A^{n+1}
 *
 * and s(D) is the simple complex of phi = f_i - g_{i-1} from the sum of the
 * A^i to the sum of the B^i. In degree k it is laid out as
 * [A^1_k, ..., A^{n+1}_k, B^1_{k+1}, ..., B^n_{k+1}].
 */
#pragma once

#include "hchow/complex.hpp"
#include "hchow/random.hpp"
#include "hchow/verdict.hpp"

#include <optional>
#include <vector>

namespace hchow {

struct Diagram {
    std::vector<GradedComplex> A;  // A[i-1] is A^i, size n+1
    std::vector<GradedComplex> B;  // B[i-1] is B^i, size n
    std::vector<ChainMap> f;       // f[i-1] : A^i -> B^i
    std::vector<ChainMap> g;       // g[i-1] : A^{i+1} -> B^i
    // Optional leaf layouts of the pieces (empty means trivial). Tensor
    // diagrams fill these so iterated products can be compared.
    std::vector<LeafLayout> a_layout, b_layout;

    int size() const { return static_cast<int>(B.size()); }
    Domain domain() const { return A.front().domain(); }
    Verdict verify() const;
    Diagram in_domain(Domain d) const;
    LeafLayout layout_a(int i) const;  // 1-based
    LeafLayout layout_b(int i) const;
};

// Checks shapes and builds a diagram.
Diagram make_diagram(std::vector<GradedComplex> A, std::vector<GradedComplex> B, std::vector<ChainMap> f,
                     std::vector<ChainMap> g);

struct DiagramSimple {
    GradedComplex complex;
    // Start of A^i_k, and of B^i_{k+1}, inside s(D)_k (i is 1-based, entry 0 unused).
    std::map<int, std::vector<std::size_t>> a_offset, b_offset;
    // Basis labels: ((0 for A or 1 for B, i), leaf key of the piece element).
    LeafLayout layout;

    std::size_t a_index(int k, int i, std::size_t a) const { return a_offset.at(k).at(i) + a; }
    std::size_t b_index(int k, int i, std::size_t b) const { return b_offset.at(k).at(i) + b; }
};

DiagramSimple simple_of_diagram(const Diagram& D);

// Componentwise Koszul tensor product of two diagrams of the same size.
Diagram tensor_diagram(const Diagram& D, const Diagram& E);

// ---- morphisms ------------------------------------------------------------

struct DiagramMorphism {
    std::vector<ChainMap> hA, hB;  // hA[i-1] : A^i -> A'^i, hB[i-1] : B^i -> B'^i
};

// Chain maps and the squares f' hA = hB f, g' hA = hB g.
Verdict verify_diagram_morphism(const Diagram& D, const Diagram& E, const DiagramMorphism& h);
// s(h) : s(D) -> s(E), acting blockwise.
ChainMap simple_of_morphism(const Diagram& D, const Diagram& E, const DiagramMorphism& h);

// ---- the products star_beta -------------------------------------------------

// star_beta as a chain map from s(D) (x) s(E) to s(D (x) E).
struct StarProduct {
    long beta = 0;
    DiagramSimple sd, se, target;
    TensorProduct source;
    ChainMap map;

    // x of degree p in s(D), y of degree q in s(E) (columns); result in
    // s(D (x) E)_{p+q}.
    Matrix apply(int p, const Matrix& x, int q, const Matrix& y) const;
};

StarProduct star_product(long beta, const Diagram& D, const Diagram& E);

// d(x * y) = dx * y + (-1)^{|x|} x * dy on every pair of basis elements.
Verdict verify_star_chain_map(const StarProduct& s);
// The maps induced on homology by star_beta and star_beta' agree.
Verdict verify_star_homology_agreement(const Diagram& D, const Diagram& E, long beta, long beta2);
// sigma(x *_beta y) = sigma(x (x) y) *_{1-beta}, with sigma the signed swap on
// both sides.
Verdict verify_star_swap(const Diagram& D, const Diagram& E, long beta);
// (x * y) * z = x * (y * z) for beta in {0, 1}, compared through leaf labels.
Verdict verify_star_associativity(const Diagram& D, const Diagram& E, const Diagram& F, long beta);

// ---- homology of short diagrams -------------------------------------------

// The map rho = f2 g1^{-1} f1 : H_k(A^1) -> H_k(B^2) for a diagram of size 2,
// in the bases of homology_basis. Computed by lifting cycles through g1 and
// checked on a second lift. Throws std::domain_error if g1 is not a
// quasi-isomorphism. Over Z the computation is done over Q.
Matrix rho_on_homology(const Diagram& D, int k, Rng* rng = nullptr);

// ... -> H_k(s(D)) -> H_k(A^1) -> H_k(B^2) -> H_{k-1}(s(D)) -> ...
// for a size-2 diagram with A^3 = 0 and g1 a quasi-isomorphism.
ExactSequenceReport diagram_les(const Diagram& D, Rng* rng = nullptr);

// For a size-2 diagram with g2 injective: the diagram with B^2 replaced by
// B^2 / g2(A^3) (and A^3 dropped), with the projection s(D) -> s(D').
struct QuotientComparison {
    Diagram quotient;
    ChainMap projection;
    Verdict verdict;  // projection is a quasi-isomorphism
};
QuotientComparison quotient_comparison(const Diagram& D);

// The sequence with H_{k-1}(s(g2)) in place of H_k(B^2): the diagram with
// B^2 replaced by s(g2)[1], whose simple complex is isomorphic to s(D).
struct ConeSequence {
    Diagram replaced;
    ChainMap iso;  // s(D) -> s(replaced)
    ExactSequenceReport les;
    Verdict verdict;
};
ConeSequence cone_sequence(const Diagram& D, Rng* rng = nullptr);

// ---- instances ------------------------------------------------------------

// Unit diagram: every piece the ground ring in degree 0, all maps identities.
Diagram unit_diagram(Domain dom, int n);
Diagram random_diagram(Rng& rng, Domain dom, int n, const ComplexShape& shape);
// Size 2, A^3 = 0 and g1 a quasi-isomorphism.
Diagram random_short_diagram(Rng& rng, Domain dom, const ComplexShape& shape);
// Size 2 with g1 a quasi-isomorphism and g2 the inclusion of a subcomplex.
Diagram random_short_diagram_with_sub(Rng& rng, Domain dom, const ComplexShape& shape);
// A levelwise quasi-isomorphic diagram together with the morphism.
std::pair<Diagram, DiagramMorphism> random_levelwise_quasi_iso(Rng& rng, const Diagram& D);

}  // namespace hchow
