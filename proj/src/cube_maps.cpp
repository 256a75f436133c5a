#include "hchow/cube_maps.hpp"

#include <sstream>
#include <stdexcept>

namespace hchow {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw std::out_of_range(what);
}

ProjectiveRational var(int v) { return ProjectiveRational::variable(v); }

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

CubeMap::CubeMap(int source, std::vector<ProjectiveRational> components) : source_(source), comps_(std::move(components)) {
    if (source < 0 || source > ZPoly::kMaxVars) throw PolynomialError("cube dimension out of range");
    for (std::size_t k = 0; k < comps_.size(); ++k)
        if (comps_[k].max_variable() > source)
            throw PolynomialError("component " + std::to_string(k + 1) + " uses a variable beyond x" + std::to_string(source));
}

bool CubeMap::operator<(const CubeMap& o) const {
    if (source_ != o.source_) return source_ < o.source_;
    return comps_ < o.comps_;
}

std::string CubeMap::to_string() const {
    std::string s = "map " + std::to_string(source_) + "->" + std::to_string(target()) + " :";
    for (std::size_t k = 0; k < comps_.size(); ++k) s += (k ? " ; " : " ") + comps_[k].to_string();
    return s;
}

CubeMap CubeMap::parse(const std::string& text) {
    std::string t = strip(text);
    if (t.rfind("map", 0) != 0) throw PolynomialError("cube map text must start with 'map': \"" + text + "\"");
    std::size_t colon = t.find(':');
    std::size_t arrow = t.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow > colon)
        throw PolynomialError("cube map text needs 'a->b :': \"" + text + "\"");
    int a = std::stoi(strip(t.substr(3, arrow - 3)));
    int b = std::stoi(strip(t.substr(arrow + 2, colon - arrow - 2)));
    std::vector<ProjectiveRational> comps;
    std::stringstream rest(t.substr(colon + 1));
    std::string piece;
    while (std::getline(rest, piece, ';'))
        if (!strip(piece).empty()) comps.push_back(ProjectiveRational::parse(piece));
    if (static_cast<int>(comps.size()) != b)
        throw PolynomialError("cube map declares " + std::to_string(b) + " components but lists " + std::to_string(comps.size()));
    return CubeMap(a, std::move(comps));
}

CubeMap compose(const CubeMap& f, const CubeMap& g) {
    if (g.target() != f.source())
        throw PolynomialError("compose: target " + std::to_string(g.target()) + " does not match source " +
                              std::to_string(f.source()));
    std::vector<ProjectiveRational> comps;
    comps.reserve(f.target());
    for (int k = 1; k <= f.target(); ++k) {
        auto c = f.component(k).substitute(g.components());
        if (!c) throw PolynomialError("compose: component " + std::to_string(k) + " degenerates to 0/0");
        comps.push_back(std::move(*c));
    }
    return CubeMap(g.source(), std::move(comps));
}

CubeMap power(const CubeMap& f, int k) {
    if (f.source() != f.target()) throw PolynomialError("power of a map between different cubes");
    CubeMap r = cube::identity(f.source());
    for (int i = 0; i < k; ++i) r = compose(f, r);
    return r;
}

bool maps_equal(const CubeMap& f, const CubeMap& g) {
    if (f.source() != g.source() || f.target() != g.target())
        throw PolynomialError("maps_equal: arities " + std::to_string(f.source()) + "->" + std::to_string(f.target()) + " and " +
                              std::to_string(g.source()) + "->" + std::to_string(g.target()));
    // components are reduced, so equality of pairs is equality of functions
    return f.components() == g.components();
}

namespace cube {

CubeMap identity(int n) {
    std::vector<ProjectiveRational> c;
    for (int v = 1; v <= n; ++v) c.push_back(var(v));
    return CubeMap(n, c);
}

CubeMap coface(int i, int j, int n) {
    require(n >= 0 && i >= 1 && i <= n + 1 && (j == 0 || j == 1), "coface index out of range");
    std::vector<ProjectiveRational> c;
    for (int v = 1; v < i; ++v) c.push_back(var(v));
    c.push_back(j == 0 ? ProjectiveRational() : ProjectiveRational::infinity());
    for (int v = i; v <= n; ++v) c.push_back(var(v));
    return CubeMap(n, c);
}

CubeMap codegeneracy(int i, int n) {
    require(n >= 1 && i >= 1 && i <= n, "codegeneracy index out of range");
    std::vector<ProjectiveRational> c;
    for (int v = 1; v <= n; ++v)
        if (v != i) c.push_back(var(v));
    return CubeMap(n, c);
}

CubeMap involution(int n) {
    require(n >= 0, "involution dimension out of range");
    std::vector<ProjectiveRational> c;
    for (int v = 1; v <= n; ++v) c.emplace_back(ZPoly::variable(v), ZPoly::variable(v) - ZPoly(1));
    return CubeMap(n, c);
}

CubeMap h_map(int j, int n) {
    require(n >= 1 && j >= 1 && j <= n, "h map index out of range");
    std::vector<ProjectiveRational> c;
    for (int v = 1; v < j; ++v) c.push_back(var(v));
    ZPoly a = ZPoly::variable(j) - ZPoly(1), b = ZPoly::variable(j + 1) - ZPoly(1);
    c.push_back(ProjectiveRational::polynomial(ZPoly(1) - a * b));
    for (int v = j + 2; v <= n + 1; ++v) c.push_back(var(v));
    return CubeMap(n + 1, c);
}

CubeMap tau(int n) {
    require(n >= 0, "tau dimension out of range");
    std::vector<ProjectiveRational> c;
    for (int v = 2; v <= n; ++v) c.push_back(var(v));
    if (n >= 1) c.push_back(var(1));
    return CubeMap(n, c);
}

CubeMap sigma_perm(int n, int m) {
    require(n >= 0 && m >= 0, "sigma dimensions out of range");
    std::vector<ProjectiveRational> c;
    for (int k = 1; k <= n; ++k) c.push_back(var(m + k));
    for (int k = 1; k <= m; ++k) c.push_back(var(k));
    return CubeMap(n + m, c);
}

CubeMap phi(int n) {
    require(n >= 1, "phi needs n >= 1");
    std::vector<ProjectiveRational> c;
    for (int v = 1; v <= n + 1; ++v) c.push_back(var(v));
    ZPoly x1 = ZPoly::variable(1), xl = ZPoly::variable(n + 1);
    c.push_back(ProjectiveRational::polynomial(x1 + xl - x1 * xl));
    return CubeMap(n + 1, c);
}

CubeMap pi(int n) {
    require(n >= 1, "pi needs n >= 1");
    std::vector<ProjectiveRational> c;
    for (int v = 2; v <= n; ++v) c.push_back(var(v));
    c.push_back(var(n + 2));
    return CubeMap(n + 2, c);
}

CubeMap pi_phi(int n) { return compose(pi(n), phi(n)); }

CubeMap standard_map(Kind kind, const std::vector<int>& p) {
    auto need = [&](std::size_t k) { require(p.size() == k, "wrong number of parameters for standard map"); };
    switch (kind) {
        case Kind::Coface: need(3); return coface(p[0], p[1], p[2]);
        case Kind::Codegeneracy: need(2); return codegeneracy(p[0], p[1]);
        case Kind::Involution: need(1); return involution(p[0]);
        case Kind::HMap: need(2); return h_map(p[0], p[1]);
        case Kind::Tau: need(1); return tau(p[0]);
        case Kind::SigmaPerm: need(2); return sigma_perm(p[0], p[1]);
        case Kind::Phi: need(1); return phi(p[0]);
        case Kind::Pi: need(1); return pi(p[0]);
    }
    throw std::logic_error("unknown map kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "coface") return Kind::Coface;
    if (name == "codegeneracy") return Kind::Codegeneracy;
    if (name == "involution") return Kind::Involution;
    if (name == "h" || name == "h_map") return Kind::HMap;
    if (name == "tau") return Kind::Tau;
    if (name == "sigma" || name == "sigma_perm") return Kind::SigmaPerm;
    if (name == "phi") return Kind::Phi;
    if (name == "pi") return Kind::Pi;
    throw std::invalid_argument("unknown cube map kind '" + name + "'");
}

}  // namespace cube

// ---- identity suites ------------------------------------------------------

namespace {

void expect_equal(Verdict& v, const CubeMap& lhs, const CubeMap& rhs, const std::string& what) {
    v.expect(maps_equal(lhs, rhs), [&] { return what + ": " + lhs.to_string() + " vs " + rhs.to_string(); });
}

std::string idx(int a, int b, int n) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ",n=" + std::to_string(n) + ")";
}

}  // namespace

Verdict verify_cocubical_relations(int max_n) {
    using namespace cube;
    Verdict v;
    // coface after coface
    for (int n = 0; n + 2 <= max_n; ++n)
        for (int I = 1; I <= n + 1; ++I)
            for (int K = 1; K <= I; ++K)
                for (int a = 0; a <= 1; ++a)
                    for (int b = 0; b <= 1; ++b)
                        expect_equal(v, compose(coface(K, a, n + 1), coface(I, b, n)),
                                     compose(coface(I + 1, b, n + 1), coface(K, a, n)), "coface-coface " + idx(I, K, n));
    // codegeneracy after codegeneracy
    for (int n = 2; n <= max_n; ++n)
        for (int i = 1; i <= n - 1; ++i)
            for (int j = 1; j <= i; ++j)
                expect_equal(v, compose(codegeneracy(i, n - 1), codegeneracy(j, n)),
                             compose(codegeneracy(j, n - 1), codegeneracy(i + 1, n)), "codegeneracy pair " + idx(i, j, n));
    // codegeneracy after coface
    for (int n = 0; n + 1 <= max_n; ++n)
        for (int i = 1; i <= n + 1; ++i)
            for (int j = 1; j <= n + 1; ++j)
                for (int a = 0; a <= 1; ++a) {
                    CubeMap lhs = compose(codegeneracy(j, n + 1), coface(i, a, n));
                    CubeMap rhs = i == j  ? identity(n)
                                  : i < j ? compose(coface(i, a, n - 1), codegeneracy(j - 1, n))
                                          : compose(coface(i - 1, a, n - 1), codegeneracy(j, n));
                    expect_equal(v, lhs, rhs, "codegeneracy-coface " + idx(i, j, n));
                }
    return v;
}

Verdict verify_involution(int max_n) {
    Verdict v;
    for (int n = 0; n <= max_n; ++n) {
        CubeMap s = cube::involution(n);
        expect_equal(v, compose(s, s), cube::identity(n), "involution squared, n=" + std::to_string(n));
    }
    const ProjectiveRational x = cube::involution(1).component(1);
    auto at = [&](const ProjectiveRational& p) { return *x.substitute({p}); };
    ProjectiveRational zero, two = ProjectiveRational::polynomial(ZPoly(2)), one = ProjectiveRational::polynomial(ZPoly(1));
    v.expect(at(zero) == zero, [] { return "involution moves 0"; });
    v.expect(at(two) == two, [] { return "involution moves 2"; });
    v.expect(at(one).is_infinity(), [] { return "involution does not send 1 to infinity"; });
    v.expect(at(ProjectiveRational::infinity()) == one, [] { return "involution does not send infinity to 1"; });
    return v;
}

Verdict verify_homotdelta_case(int n, int i, int j) {
    using namespace cube;
    Verdict v;
    CubeMap pp = pi_phi(n);
    if (j == 0) {
        CubeMap rhs = i == 1   ? identity(n)
                      : i <= n ? compose(coface(i - 1, 0, n - 1), pi_phi(n - 1))
                               : tau(n);
        expect_equal(v, compose(pp, coface(i, 0, n)), rhs, "pi phi delta^i_0 " + idx(i, 0, n));
    } else {
        CubeMap top = compose(coface(n, 1, n - 1), codegeneracy(n, n));
        CubeMap rhs = i == 1   ? top
                      : i <= n ? compose(coface(i - 1, 1, n - 1), pi_phi(n - 1))
                               : compose(top, tau(n));
        expect_equal(v, compose(pp, coface(i, 1, n)), rhs, "pi phi delta^i_1 " + idx(i, 1, n));
    }
    return v;
}

Verdict verify_homotdelta(int max_n) {
    Verdict v;
    for (int n = 1; n <= max_n; ++n)
        for (int i = 1; i <= n + 1; ++i)
            for (int j = 0; j <= 1; ++j) v.merge(verify_homotdelta_case(n, i, j));
    return v;
}

Verdict verify_wn_equation(int max_n) {
    Verdict v;
    for (int n = 1; n <= max_n; ++n) {
        CubeMap f = cube::phi(n);
        const ProjectiveRational& t = f.component(n + 2);
        ZPoly t0 = t.num(), t1 = t.den();
        ZPoly lhs = t1 * (ZPoly(1) - ZPoly::variable(1)) * (ZPoly(1) - ZPoly::variable(n + 1));
        v.expect(lhs == t1 - t0, [&] { return "phi_" + std::to_string(n) + " leaves W_n"; });
        // the first n+1 components are the identity
        for (int k = 1; k <= n + 1; ++k)
            v.expect(f.component(k) == ProjectiveRational::variable(k), [&] { return "phi_" + std::to_string(n) + " moves x" + std::to_string(k); });
    }
    return v;
}

Verdict verify_sigma_tau(int max_n, int max_m) {
    Verdict v;
    for (int n = 0; n <= max_n; ++n)
        for (int m = 0; m <= max_m; ++m) {
            if (n + m > ZPoly::kMaxVars) continue;
            expect_equal(v, cube::sigma_perm(n, m), power(cube::tau(n + m), m), "sigma_{n,m} = tau^m " + idx(n, m, n + m));
        }
    return v;
}

Verdict verify_tau_face_relations(int max_n) {
    using namespace cube;
    Verdict v;
    for (int n = 1; n <= max_n; ++n)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                CubeMap lhs = compose(power(tau(n), i), coface(j, 0, n - 1));
                CubeMap rhs = j > i    ? compose(coface(j - i, 0, n - 1), power(tau(n - 1), i))
                              : j == i ? compose(coface(n, 0, n - 1), power(tau(n - 1), i - 1))
                                       : compose(coface(n - i + j, 0, n - 1), power(tau(n - 1), i - 1));
                expect_equal(v, lhs, rhs, "tau^i delta^j_0 " + idx(i, j, n));
            }
    return v;
}

}  // namespace hchow
