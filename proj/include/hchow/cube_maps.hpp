/**
 * @file   cube_maps.hpp
 * @brief  Maps between cubes as tuples of projective rational expressions,
 *         the standard cocubical maps and the exact checks of their
 *         composition identities.
 *
 * A map from the a-cube to the b-cube has b components, each a reduced
 * projective pair in x1..xa. The coordinate of a factor lives on P^1 minus
 * the point 1, so 0 and infinity = (1 : 0) are both ordinary values.
 * compose(f, g) is f after g.
 */
#pragma once

#include "hchow/polynomial.hpp"
#include "hchow/verdict.hpp"

#include <string>
#include <vector>

namespace hchow {

class CubeMap {
public:
    CubeMap() = default;
    CubeMap(int source, std::vector<ProjectiveRational> components);

    int source() const { return source_; }
    int target() const { return static_cast<int>(comps_.size()); }
    const std::vector<ProjectiveRational>& components() const { return comps_; }
    const ProjectiveRational& component(int k) const { return comps_.at(k - 1); }

    bool operator==(const CubeMap& o) const { return source_ == o.source_ && comps_ == o.comps_; }
    bool operator!=(const CubeMap& o) const { return !(*this == o); }
    bool operator<(const CubeMap& o) const;

    // "map 2->1 : (x1 + x2 - x1*x2)/(1)", components separated by " ; ".
    std::string to_string() const;
    static CubeMap parse(const std::string& text);

private:
    int source_ = 0;
    std::vector<ProjectiveRational> comps_;
};

CubeMap compose(const CubeMap& f, const CubeMap& g);
CubeMap power(const CubeMap& f, int k);  // f composed k times, source = target required
bool maps_equal(const CubeMap& f, const CubeMap& g);  // throws on arity mismatch

namespace cube {

CubeMap identity(int n);
// n-cube -> (n+1)-cube inserting 0 (j = 0) or infinity (j = 1) at slot i.
CubeMap coface(int i, int j, int n);
// n-cube -> (n-1)-cube forgetting slot i.
CubeMap codegeneracy(int i, int n);
// x -> x / (x - 1) in every slot.
CubeMap involution(int n);
// (n+1)-cube -> n-cube, slots j and j+1 merged into 1 - (t_j - 1)(t_{j+1} - 1).
CubeMap h_map(int j, int n);
// (x1, ..., xn) -> (x2, ..., xn, x1).
CubeMap tau(int n);
// (y1..ym, x1..xn) -> (x1..xn, y1..ym) on the (n+m)-cube.
CubeMap sigma_perm(int n, int m);
// (n+1)-cube -> W_n inside the (n+1)-cube times P^1.
CubeMap phi(int n);
// W_n -> n-cube, (x1, ..., x_{n+1}, t) -> (x2, ..., xn, t).
CubeMap pi(int n);
// pi_n after phi_n.
CubeMap pi_phi(int n);

enum class Kind { Coface, Codegeneracy, Involution, HMap, Tau, SigmaPerm, Phi, Pi };
// Dispatch by name; params are (i, j, n), (i, n), (n), (j, n), (n), (n, m), (n), (n).
CubeMap standard_map(Kind kind, const std::vector<int>& params);
Kind kind_from_name(const std::string& name);

}  // namespace cube

// ---- identity suites ------------------------------------------------------

// Cocubical relations among cofaces and codegeneracies on cubes of dimension <= max_n.
Verdict verify_cocubical_relations(int max_n);
// The involution composed with itself is the identity, fixing 0 and 2 and swapping 1, infinity.
Verdict verify_involution(int max_n);
// Both families of pi_n phi_n delta^i_j identities, 1 <= n <= max_n, all i.
Verdict verify_homotdelta(int max_n);
// One case of the family: pi_n phi_n delta^i_j, 1 <= i <= n + 1.
Verdict verify_homotdelta_case(int n, int i, int j);
// The last component (t0 : t1) of phi_n satisfies t1 (1 - x1)(1 - x_{n+1}) = t1 - t0.
Verdict verify_wn_equation(int max_n);
// sigma_{n,m} equals tau composed m times, 0 <= n <= max_n, 0 <= m <= max_m.
Verdict verify_sigma_tau(int max_n, int max_m);
// tau^i delta^j_0 against the three cases used for the H_{n,m} homotopy, 1 <= i <= n <= max_n.
Verdict verify_tau_face_relations(int max_n);

}  // namespace hchow
