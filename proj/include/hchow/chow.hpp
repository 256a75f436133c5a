/**
 * @file   chow.hpp
 * @brief  The higher arithmetic Chow diagram over finite stand-in complexes:
 *         its simple complex, the maps zeta, a and omega, and the long exact
 *         sequence relating it to cycles and Deligne cohomology.
 *
 * The diagram is the size-2 Beilinson diagram
 *
 *     Z --f1--> H <--g1-- D_Z --rho--> D <--i-- ZD
 *
 * of chain complexes: cycles, cohomology with supports, Deligne forms with
 * supports, Deligne forms and the closed top-degree forms (concentrated in
 * degree 0). An element of degree n of the simple complex is a 5-tuple
 * (Z, a0, a1, a2, a3) in Z_n + D_Z,n + ZD_n + H_{n+1} + D_{n+1}, which is
 * exactly the layout used by simple_of_diagram.
 */
#pragma once

#include "hchow/diagram.hpp"

#include <string>
#include <vector>

namespace hchow {

struct ChowDiagram {
    GradedComplex cycles;       // Z
    GradedComplex cohomology;   // H
    GradedComplex supports;     // D_Z
    GradedComplex deligne;      // D
    GradedComplex top;          // ZD, zero outside degree 0
    ChainMap f1, g1, rho, i;

    Domain domain() const { return cycles.domain(); }
    std::size_t total_rank() const;
    // A = (Z, D_Z, ZD), B = (H, D), f = (f1, rho), g = (g1, i).
    Diagram diagram() const;
};

// Shape checks plus the invariants: g1 is a quasi-isomorphism, i is injective
// and its source lives in degree 0. Field domains only.
Verdict validate_chow_diagram(const ChowDiagram& D);
// Throws std::invalid_argument naming the first violated invariant.
ChowDiagram build_chow_diagram(GradedComplex cycles, GradedComplex cohomology, GradedComplex supports,
                               GradedComplex deligne, GradedComplex top, ChainMap f1, ChainMap g1, ChainMap rho,
                               ChainMap i);

// ---- elements and the differential ------------------------------------------

struct HatElement {
    int n = 0;
    Matrix z, a0, a1, a2, a3;  // column vectors

    bool operator==(const HatElement& o) const {
        return n == o.n && z == o.z && a0 == o.a0 && a1 == o.a1 && a2 == o.a2 && a3 == o.a3;
    }
    std::string to_string() const;
};

HatElement hat_zero(const ChowDiagram& D, int n);
Matrix hat_pack(const ChowDiagram& D, const HatElement& x);
HatElement hat_unpack(const ChowDiagram& D, int n, const Matrix& v);
// (dZ, d a0, 0, f1(Z) - g1(a0) - d a2, rho(a0) - a1 - d a3).
HatElement hat_differential(const ChowDiagram& D, const HatElement& x);
// The simple complex assembled directly from the 5-tuple formula.
GradedComplex hat_complex(const ChowDiagram& D);
// hat_complex equals simple_of_diagram(D.diagram()) matrix for matrix,
// hat_differential agrees with it on every basis vector, and d d = 0.
Verdict verify_hat_complex(const ChowDiagram& D);

// ---- structural maps ---------------------------------------------------------

struct ChowMaps {
    GradedComplex hat;    // the simple complex
    GradedComplex cone;   // s(i), degree n: ZD_n + D_{n+1}
    ChainMap zeta;        // hat -> Z, (Z, ...) -> Z
    // cone -> hat, (z, b) -> (0, 0, z, 0, -b). On a class of H_n(D) with n > 0
    // this is a([a]) = [(0, 0, 0, 0, -a)]; in degree 0 it sends a form a~ to
    // (0, 0, d a~, 0, -a~).
    ChainMap a;
};

ChowMaps structural_maps(const ChowDiagram& D);
// a1 of a degree-0 cycle. Throws std::invalid_argument on other inputs.
Matrix omega(const ChowDiagram& D, const HatElement& x);
// zeta a = 0 on chains, im H(a) = ker H(zeta), zeta onto in degree 0, and
// rank H(a) on H_n(s(i)) = dim H_n(s(i)) - rank rho in the next degree.
Verdict verify_structural_maps(const ChowDiagram& D);

// ---- the long exact sequence ---------------------------------------------------

struct ChowLesReport {
    ExactSequenceReport les;           // nodes CHhat_n, CH_n, H_{n-1}(s(i))
    std::map<int, std::size_t> chow;   // dim of CHhat_n
    std::map<int, std::size_t> cone;   // dim H_n(s(i))
    Verdict verdict;                   // exactness, tail and the s(i) identification
    std::string to_string() const;
};

// The sequence ... -> CHhat_n -> CH_n -> H_{n-1}(s(i)) -> CHhat_{n-1} -> ...
// ending in CH_0 -> 0. When i maps onto D_0 (all of D_0 is closed) the s(i)
// groups are also checked to be H_{n+1}(D) for n >= 1 and D_1 / im d in
// degree 0.
ChowLesReport chow_les_report(const ChowDiagram& D);

// The diagram with D replaced by D / i(ZD) and ZD dropped, and the check that
// the projection of simple complexes is a quasi-isomorphism.
QuotientComparison chow_quotient_variant(const ChowDiagram& D);

// ---- instances -------------------------------------------------------------

// Every piece Q in degree 0 and every map the identity.
ChowDiagram unit_chow_diagram(Domain dom);
// g1 = id on Q in degree 0, f1 = id, D = Q in degree 1, ZD = 0, rho = 0.
// The simple complex is Q^2 in degree 0 and nothing else.
ChowDiagram split_chow_diagram(Domain dom);
// Random instance with total rank <= max_total, g1 a quasi-isomorphism and i
// an isomorphism onto D_0.
ChowDiagram random_chow_diagram(Rng& rng, Domain dom, std::size_t max_total = 16);

// Stand-in for Green forms. D is a cochain complex of forms on X, D' the forms
// on the complement of the cycles and r the restriction; D_Z is the canonical
// truncation at 2p of s(r) read as a chain complex (degree n is cochain degree
// 2p - n). H is H^{2p}(s(r)) in degree 0 with g1 the class map, D is the
// truncation of the forms and ZD = D_0 with i the identity.
struct GreenFormInstance {
    ChowDiagram diagram;
    int p = 1;
    GradedComplex forms, forms_off;  // D and D' (cochain)
    ChainMap restriction;
    ChainMap pair_truncation;        // tau s(r) -> s(r)
    ChainMap forms_truncation;       // tau D -> D

    // The pair (x, y), x in D^k and y in D'^{k-1}, as an element of D_Z of
    // chain degree 2p - k.
    Matrix pair(int k, const Matrix& x, const Matrix& y) const;
    // A form of D^k as an element of D of chain degree 2p - k.
    Matrix form(int k, const Matrix& x) const;
};

// The shipped instance, p = 1. D: alpha (deg 1), omega (deg 2), d alpha =
// omega. D': h (deg 0); gamma, kappa, g (deg 1); omega' (deg 2), with d h =
// kappa, d gamma = d g = omega'. r(alpha) = gamma, r(omega) = omega'. Cycles:
// Z and Y in degree 0 with f1(Z) = cl(omega, g) and f1(Y) = 0.
GreenFormInstance green_form_instance(Domain dom = Domain::rationals());

struct AgreementCase {
    std::string name;
    bool literal = false;    // the display taken literally
    bool corrected = false;  // the consistent form of the same statement
    std::string detail;
};

// The displays used to show that the comparison with the classical
// arithmetic Chow group is well defined, and the degree-0 form of a:
//   cycle:          d(Z,(omega,g),0,0,0) = 0; corrected with a1 = omega.
//   cycle (Div f):  the same display for a pair with omega = 0.
//   representative: d(0,(0,h),0,0,0) = (0,(0,g_1 - g_2),0,0,0) when d h =
//                   g_1 - g_2; corrected with -h.
//   pair:           d(0,(alpha,0),0,0,0) = (0,(d alpha, alpha),0,0,0) +
//                   (0,0,0,0,alpha).
//   a in degree 0:  (0,0,-d a,0,-a) is a cycle; corrected (0,0,d a,0,-a),
//                   so omega(a(a~)) = d a.
std::vector<AgreementCase> agreement_cases(const GreenFormInstance& G);

}  // namespace hchow
