/**
 * @file   cube_functions.hpp
 * @brief  Finite Q-linear combinations of rational functions on cubes, with
 *         pullback along cube maps, the operators h_n, tau^*, sigma_{n,m}^*
 *         and H_{n,m}, and the exact checks of the delta-h lemma and the H_{n,m} homotopy.
 *
 * Faces act by pullback: the face delta_i^j of a function on the n-cube is
 * its pullback along the coface inserting 0 or infinity at slot i.
 */
#pragma once

#include "hchow/cube_maps.hpp"
#include "hchow/cubical.hpp"
#include "hchow/random.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>

namespace hchow {

class CubeFunction {
public:
    explicit CubeFunction(int level = 0) : level_(level) {}
    // c * f, with f a rational function in x1..x_level.
    static CubeFunction term(int level, const ProjectiveRational& f, const mpq_class& c = 1);

    int level() const { return level_; }
    // Keys have primitive numerator and denominator with positive leading
    // coefficients; the scalar lives in the coefficient.
    const std::map<ProjectiveRational, mpq_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CubeFunction& operator+=(const CubeFunction& o);
    CubeFunction& operator-=(const CubeFunction& o);
    friend CubeFunction operator+(CubeFunction a, const CubeFunction& b) { return a += b; }
    friend CubeFunction operator-(CubeFunction a, const CubeFunction& b) { return a -= b; }
    CubeFunction operator-() const { return scaled(-1); }
    CubeFunction scaled(const mpq_class& c) const;
    bool operator==(const CubeFunction& o) const { return level_ == o.level_ && terms_ == o.terms_; }
    bool operator!=(const CubeFunction& o) const { return !(*this == o); }

    // Adds c * f after splitting the scalar off f.
    void add(const ProjectiveRational& f, const mpq_class& c);

    // "level 2 : [3/2] (x1)/(x1 - 1) ; [-1] (1)/(x2 - 1)" or "level 2 : 0".
    std::string to_string() const;
    static CubeFunction parse(const std::string& text);

private:
    int level_;
    std::map<ProjectiveRational, mpq_class> terms_;
};

// An element of bidegree (n, m), living on the (n+m)-cube.
struct BicubicalElement {
    int n = 0, m = 0;
    CubeFunction f;
};

// Pullback with a per-map memo table; all operators go through it.
class CubeCalculus {
public:
    // u on the b-cube, f from the a-cube to the b-cube.
    CubeFunction pullback(const CubeMap& f, const CubeFunction& u);

    CubeFunction face(int i, int j, const CubeFunction& u);          // level n -> n-1
    CubeFunction degeneracy(int i, const CubeFunction& u);           // level n -> n+1
    CubeFunction h_face_map(int j, const CubeFunction& u);           // pullback along h^j
    CubeFunction differential(const CubeFunction& u);                // sum (-1)^{i+j} delta_i^j
    CubeFunction h(const CubeFunction& u);                           // h_n = phi_n^* pi_n^*
    CubeFunction tau_star(int k, const CubeFunction& u);             // (tau^*)^k
    CubeFunction sigma_star(int n, int m, const CubeFunction& u);    // sigma_{n,m}^*

    // H_{n,m}; throws std::invalid_argument naming the first offending face
    // when alpha is not in the 00-part.
    CubeFunction H(int n, int m, const CubeFunction& alpha);

    // First face (i, j) with nonzero pullback among delta_i^1 for all i.
    std::optional<std::pair<int, int>> normalized_violation(const CubeFunction& u);
    // Same for the 00-part of bidegree (n, m): all delta_i^1 and every delta_i^0
    // except i = 1 and i = n + 1.
    std::optional<std::pair<int, int>> part00_violation(int n, int m, const CubeFunction& u);

    std::size_t cache_size() const;

private:
    const CubeMap& standard(const std::string& key, const std::function<CubeMap()>& make);
    std::map<std::string, CubeMap> maps_;
    std::map<CubeMap, std::map<ProjectiveRational, std::pair<ProjectiveRational, mpq_class>>> memo_;
};

// ---- test elements --------------------------------------------------------

// Random combination of products of one-variable factors that all vanish at
// infinity, so every delta_i^1 kills it.
CubeFunction random_normalized_element(Rng& rng, int n);
// Random element of the 00-part of bidegree (n, m): slots 1 and n+1 carry
// factors vanishing at infinity only, the other slots factors vanishing at 0
// and at infinity.
CubeFunction random_00_element(Rng& rng, int n, int m);

// ---- identity checks ------------------------------------------------------

// delta h_n(a) + sum_{i=1}^{n-1} (-1)^i h_{n-1} delta_i^0(a) = -a + (-1)^{n+1} tau^*(a)
// for a normalized element of level n >= 1.
Verdict verify_delta_h_lemma(CubeCalculus& calc, const CubeFunction& alpha);
// delta H_{n,m}(a) - H_{n-1,m} delta_1^0(a) - (-1)^n H_{n,m-1} delta_{n+1}^0(a)
//   = a - (-1)^{nm} sigma_{n,m}^*(a)
// for a in the 00-part of bidegree (n, m).
Verdict verify_hnm_homotopy(CubeCalculus& calc, int n, int m, const CubeFunction& alpha);
// pullback(g f) = pullback(f) pullback(g) on random normalized elements for
// compositions of cofaces, tau, sigma_{n,m} and the h maps.
Verdict verify_pullback_functoriality(CubeCalculus& calc, Rng& rng, int max_n);

// ---- the function model as a cubical module -------------------------------

// Level n spanned by prod_i w(x_i)^{e_i} with w(x) = 1/(x - 1) and
// 0 <= e_i <= max_exponent. Faces, degeneracies and h_j are computed by
// pullback and read off in this basis. The span is closed under all of them
// because w(0) = -1, w(infinity) = 0 and w pulls back along h^j to
// -w(t_j) w(t_{j+1}).
CubicalModule w_model(int top, int max_exponent, ExtraDegeneracies* h = nullptr);

}  // namespace hchow
