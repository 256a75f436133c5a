/**
 * @file   product_engine.hpp
 * @brief  A finite stand-in for the Deligne complex with its product, the
 *         cubical total complexes built from it, products with supports and
 *         the associativity homotopy.
 *
 * The algebra A is a finite bigraded (degree, weight) graded-commutative
 * algebra given by structure constants, with a differential and an optional
 * trilinear homotopy h for the associator.
 *
 * Forms on the n-cube are modelled by the normalized part of polynomial
 * forms of degree at most one in each coordinate. In the coordinate u that is
 * 0 on the face at 0 and 1 on the face at infinity, the normalized forms in
 * one variable are spanned by v = u - 1 and dv, and the n-cube uses words in
 * {v, dv}. A basis element of the model is a FormKey: an algebra basis
 * element, the cube dimensions of each cubical direction, and a word whose
 * bit i is set when slot i+1 carries dv.
 *
 * Supports are modelled by ideals of A spanned by basis elements; the
 * complement of a support is the quotient by its ideal and the complement of
 * a union is the quotient by the sum. An element with k supports has one
 * component for every subset S of the supports, of degree r - |S|, in the
 * quotient by the ideals in S. Its Deligne-direction differential is
 *
 *     (D a)_S = sum_j (-1)^j a_{S - {i_j}} + (-1)^{|S|} d a_S,
 *
 * which is d(w, g) = (dw, w - dg) for pairs and the displayed differential of
 * s(i^{p,q}) for k = 2. For k = 3 the same formula is our reading of
 * s(i^{p,q,l}); components are ordered by subset bit masks.
 */
#pragma once

#include "hchow/complex.hpp"
#include "hchow/random.hpp"
#include "hchow/verdict.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hchow {

using AlgVec = std::map<std::size_t, mpq_class>;

struct AlgebraBasis {
    std::string name;
    int degree = 0;
    int weight = 0;
};

class GradedAlgebra {
public:
    std::string name;
    std::vector<AlgebraBasis> basis;             // basis[0] is the unit
    std::vector<AlgVec> d;                       // d[i] = d(e_i)
    std::vector<std::vector<AlgVec>> mul;        // mul[i][j] = e_i * e_j
    std::map<std::array<std::size_t, 3>, AlgVec> h;  // nonzero values of h(e_i, e_j, e_k)

    std::size_t size() const { return basis.size(); }
    int degree(std::size_t i) const { return basis[i].degree; }
    AlgVec multiply(const AlgVec& x, const AlgVec& y) const;
    AlgVec differential(const AlgVec& x) const;
    AlgVec homotopy(std::size_t i, std::size_t j, std::size_t k) const;
    bool has_homotopy() const { return !h.empty(); }
    std::size_t index_of(const std::string& name) const;

    // Unit, d^2 = 0, Leibniz, graded commutativity, weight additivity,
    // 0 <= degree <= 2 weight, the homotopy identity d h + h d = associator,
    // and vanishing of h on closed elements of top degree.
    Verdict verify() const;
    // Smallest set of basis elements containing `generators` whose span is a
    // d-stable ideal that is also stable under h.
    std::vector<std::size_t> ideal_closure(std::vector<std::size_t> generators) const;
    // Basis elements of a fixed weight.
    std::vector<std::size_t> weight_part(int p) const;

    // Structure-constant text format (see README).
    std::string to_text() const;
    static GradedAlgebra parse(const std::string& text);
};

// Lambda(u, v) (x) Q[t]/(t^2) with deg u = deg v = 1, deg t = 2, all of
// weight 1, zero differential and h = 0. Strictly associative.
GradedAlgebra exterior_instance();
// Q[s, t] truncated above polynomial degree 3 (deg 2, weight 2 each) plus an
// acyclic pair dG = F in degrees 5, 6 and weight 6. The product is deformed
// by c(st, t) = c(t, st) = F, which breaks associativity; h is the unique
// map into span{G} with d h = associator.
GradedAlgebra homotopy_instance();

// ---- cubical forms ----------------------------------------------------------

struct FormKey {
    std::size_t a = 0;
    std::vector<int> dims;
    std::uint32_t word = 0;
    bool operator<(const FormKey& o) const;
    bool operator==(const FormKey& o) const { return a == o.a && dims == o.dims && word == o.word; }
};
using FormVec = std::map<FormKey, mpq_class>;

struct ProductModel {
    const GradedAlgebra* alg = nullptr;
    // Ideals for the supports, as basis index sets.
    std::vector<std::vector<std::size_t>> ideals;

    int cube_total(const FormKey& k) const;
    int form_degree(const FormKey& k) const;  // Deligne degree r

    FormVec project(const FormVec& x, unsigned support_mask) const;
    FormVec d_deligne(const FormVec& x) const;
    // Alternating sum of faces at 0 over all cubical directions, direction c
    // carrying the sign (-1)^{n_1 + ... + n_{c-1}}.
    FormVec delta(const FormVec& x) const;
    // d_D + (-1)^r delta.
    FormVec d_total(const FormVec& x) const;
    // Plain product with Koszul sign, directions concatenated.
    FormVec product(const FormVec& x, const FormVec& y) const;
    // (-1)^{n s} p13^* x * p24^* y, n the cube size of x and s the degree of y.
    FormVec bullet(const FormVec& x, const FormVec& y) const;
    // Merge all directions into one.
    FormVec kappa(const FormVec& x) const;
    // Swap the two directions with sign (-1)^{nm} and the Koszul sign of the forms.
    FormVec sigma(const FormVec& x) const;
    // h extended to forms with Koszul signs.
    FormVec homotopy(const FormVec& x, const FormVec& y, const FormVec& z) const;
};

// ---- supports ---------------------------------------------------------------

struct SupportElement {
    std::vector<int> supports;  // ideal labels
    std::vector<int> dims;
    int degree = 0;             // degree of the component with empty support set
    std::vector<FormVec> comp;  // indexed by subset masks

    bool operator==(const SupportElement& o) const { return supports == o.supports && comp == o.comp; }
};

SupportElement support_zero(const std::vector<int>& supports, const std::vector<int>& dims, int degree);
SupportElement support_add(const SupportElement& x, const SupportElement& y, const mpq_class& c = 1);
// Deligne-direction differential (the Cech formula above).
SupportElement support_d(const ProductModel& m, const SupportElement& x);
SupportElement support_delta(const ProductModel& m, const SupportElement& x);
// (x . y)_{S u T} = (-1)^{N s + |T| (r - |S|)} x_S . y_T with N the cube size of
// x. For one support each this is the pairing into s(i^{p,q}); with (2, 1) and
// (1, 2) supports these are the left and right pairings into s(i^{p,q,l}).
SupportElement support_product(const ProductModel& m, const SupportElement& x, const SupportElement& y);
// The homotopy H_{n,m,d} for three elements: h in place of the iterated
// product, with the sign pattern of the composite products times (-1)^{|U|}
// on the component of support set U. The extra sign is the Koszul sign of
// moving the support indices past the odd map h; without it (literal = true)
// the Cech terms of D H and H D add up instead of cancelling.
SupportElement support_homotopy(const ProductModel& m, const SupportElement& x, const SupportElement& y,
                                const SupportElement& z, bool literal = false);
// Swap of two one-direction-per-factor elements with two supports:
// (a0, (a1, a2), a3) -> sigma(a0, (a2, a1), -a3).
SupportElement support_sigma(const ProductModel& m, const SupportElement& x);

// ---- random elements --------------------------------------------------------

FormVec random_form(Rng& rng, const GradedAlgebra& A, const std::vector<int>& dims, int r, int terms = 3);
SupportElement random_support_element(Rng& rng, const ProductModel& m, const std::vector<int>& supports,
                                      const std::vector<int>& dims, int r);

// ---- identity checks --------------------------------------------------------

// Leibniz rule for bullet on every pair of basis forms with cube sizes <= max_n,
// for the two-direction product and after kappa.
Verdict verify_bullet_leibniz(const ProductModel& m, int max_n);
// The two equalities of the pairing lemma on random pairs.
Verdict verify_support_pairing(const ProductModel& m, Rng& rng, int cases, int max_n);
// Left and right triple pairings are chain maps, and their difference is
// D H + H D (exact equality when h = 0).
Verdict verify_triple_associativity(const ProductModel& m, Rng& rng, int cases, int max_n, bool literal = false);
// The homotopy never produces a form of top degree 2 * weight, and vanishes on
// closed top-degree triples.
Verdict verify_homotopy_structure(const GradedAlgebra& A);
// sigma(x . y) = (-1)^{|x||y|} y . x for plain forms and for support pairs.
Verdict verify_sigma_products(const ProductModel& m, Rng& rng, int cases, int max_n);

// ---- finite windows of the total complexes ----------------------------------

enum class CubeModelKind { OneDirection, TwoDirection, TwoDirection00 };

// The total complex of weight p, canonically truncated at 2p in the Deligne
// direction, restricted to total degrees [lo - 1, hi + 1]. Basis vectors are
// FormKeys, except in degree 2p of the Deligne direction where a kernel basis
// is used.
struct CubeTotalWindow {
    CubeModelKind kind;
    int p = 0, lo = 0, hi = 0;
    GradedComplex complex;
    // Per total degree: the keys of the ambient basis and the columns of the
    // embedding of the window basis into it.
    std::map<int, std::vector<FormKey>> keys;
    std::map<int, Matrix> embed;
};

CubeTotalWindow cube_total_window(const ProductModel& m, CubeModelKind kind, int p, int lo, int hi);
// The natural maps i (00 into 0) and kappa (two directions into one) on the
// windows, with an isomorphism check on homology in degrees [lo, hi].
Verdict verify_window_quasi_isos(const ProductModel& m, int p, int lo, int hi);

// Standard support setups: ideals generated by the listed basis names.
ProductModel make_model(const GradedAlgebra& A, const std::vector<std::string>& generators);

}  // namespace hchow
