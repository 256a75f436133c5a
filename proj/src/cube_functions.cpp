#include "hchow/cube_functions.hpp"

#include <sstream>
#include <stdexcept>

namespace hchow {

namespace {

mpq_class sign_pow(long e) { return (e % 2 == 0) ? mpq_class(1) : mpq_class(-1); }

// Splits a reduced rational function into (primitive key, scalar).
std::pair<ProjectiveRational, mpq_class> split_scalar(const ProjectiveRational& f) {
    if (f.is_infinity()) throw std::invalid_argument("a cube function cannot be identically infinite");
    if (f.is_zero()) return {ProjectiveRational(), mpq_class(0)};
    mpz_class cn = f.num().content(), cd = f.den().content();
    if (f.num().leading_coefficient() < 0) cn = -cn;
    mpq_class c(cn, cd);
    c.canonicalize();
    ZPoly n = f.num(), d = f.den();
    if (cn != 1) n = *divide_exact(n, ZPoly::constant(cn));
    if (cd != 1) d = *divide_exact(d, ZPoly::constant(cd));
    return {ProjectiveRational::from_reduced(std::move(n), std::move(d)), c};
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

// ---- CubeFunction ---------------------------------------------------------

CubeFunction CubeFunction::term(int level, const ProjectiveRational& f, const mpq_class& c) {
    if (f.max_variable() > level)
        throw std::invalid_argument("function " + f.to_string() + " does not live on the " + std::to_string(level) + "-cube");
    CubeFunction u(level);
    u.add(f, c);
    return u;
}

void CubeFunction::add(const ProjectiveRational& f, const mpq_class& c) {
    if (c == 0) return;
    auto [key, s] = split_scalar(f);
    if (s == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(key), c * s);
    if (inserted) return;
    it->second += c * s;
    if (it->second == 0) terms_.erase(it);
}

CubeFunction& CubeFunction::operator+=(const CubeFunction& o) {
    if (o.level_ != level_) throw std::invalid_argument("adding cube functions of levels " + std::to_string(level_) + " and " + std::to_string(o.level_));
    for (const auto& [f, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(f, c);
        if (inserted) continue;
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

CubeFunction& CubeFunction::operator-=(const CubeFunction& o) { return *this += -o; }

CubeFunction CubeFunction::scaled(const mpq_class& c) const {
    CubeFunction r(level_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [f, x] : r.terms_) x *= c;
    return r;
}

std::string CubeFunction::to_string() const {
    std::string s = "level " + std::to_string(level_) + " :";
    if (terms_.empty()) return s + " 0";
    bool first = true;
    for (const auto& [f, c] : terms_) {
        s += first ? " " : " ; ";
        first = false;
        s += "[" + c.get_str() + "] " + f.to_string();
    }
    return s;
}

CubeFunction CubeFunction::parse(const std::string& text) {
    std::string t = strip(text);
    if (t.rfind("level", 0) != 0) throw std::invalid_argument("cube function text must start with 'level': \"" + text + "\"");
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("cube function text needs ':'");
    CubeFunction u(std::stoi(strip(t.substr(5, colon - 5))));
    std::string rest = strip(t.substr(colon + 1));
    if (rest == "0") return u;
    std::stringstream ss(rest);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        piece = strip(piece);
        if (piece.empty() || piece[0] != '[') throw std::invalid_argument("expected '[coefficient]' in \"" + piece + "\"");
        std::size_t close = piece.find(']');
        if (close == std::string::npos) throw std::invalid_argument("unterminated coefficient in \"" + piece + "\"");
        mpq_class c(strip(piece.substr(1, close - 1)));
        c.canonicalize();
        ProjectiveRational f = ProjectiveRational::parse(piece.substr(close + 1));
        if (f.max_variable() > u.level_) throw std::invalid_argument("function uses variables beyond the level");
        u.add(f, c);
    }
    return u;
}

// ---- CubeCalculus ---------------------------------------------------------

const CubeMap& CubeCalculus::standard(const std::string& key, const std::function<CubeMap()>& make) {
    auto it = maps_.find(key);
    if (it == maps_.end()) it = maps_.emplace(key, make()).first;
    return it->second;
}

CubeFunction CubeCalculus::pullback(const CubeMap& f, const CubeFunction& u) {
    if (f.target() != u.level())
        throw std::invalid_argument("pullback: map lands in the " + std::to_string(f.target()) + "-cube, function lives on the " +
                                    std::to_string(u.level()) + "-cube");
    CubeFunction out(f.source());
    auto& table = memo_[f];
    for (const auto& [g, c] : u.terms()) {
        auto it = table.find(g);
        if (it == table.end()) {
            auto r = g.substitute(f.components());
            if (!r) throw std::invalid_argument("pullback degenerates to 0/0 on " + g.to_string() + " along " + f.to_string());
            if (r->is_infinity()) throw std::invalid_argument("pullback of " + g.to_string() + " is identically infinite along " + f.to_string());
            it = table.emplace(g, split_scalar(*r)).first;
        }
        if (it->second.second != 0) {
            out += CubeFunction::term(f.source(), it->second.first, c * it->second.second);
        }
    }
    return out;
}

CubeFunction CubeCalculus::face(int i, int j, const CubeFunction& u) {
    int n = u.level();
    const CubeMap& f = standard("face " + std::to_string(i) + " " + std::to_string(j) + " " + std::to_string(n),
                                [&] { return cube::coface(i, j, n - 1); });
    return pullback(f, u);
}

CubeFunction CubeCalculus::degeneracy(int i, const CubeFunction& u) {
    int n = u.level();
    const CubeMap& f = standard("degen " + std::to_string(i) + " " + std::to_string(n), [&] { return cube::codegeneracy(i, n + 1); });
    return pullback(f, u);
}

CubeFunction CubeCalculus::h_face_map(int j, const CubeFunction& u) {
    int n = u.level();
    const CubeMap& f = standard("hmap " + std::to_string(j) + " " + std::to_string(n), [&] { return cube::h_map(j, n); });
    return pullback(f, u);
}

CubeFunction CubeCalculus::differential(const CubeFunction& u) {
    int n = u.level();
    CubeFunction r(n - 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= 1; ++j) {
            CubeFunction f = face(i, j, u);
            r += (i + j) % 2 == 0 ? f : -f;
        }
    return r;
}

CubeFunction CubeCalculus::h(const CubeFunction& u) {
    int n = u.level();
    const CubeMap& f = standard("pi phi " + std::to_string(n), [&] { return cube::pi_phi(n); });
    return pullback(f, u);
}

CubeFunction CubeCalculus::tau_star(int k, const CubeFunction& u) {
    int n = u.level();
    if (n == 0) return u;
    k %= n;
    if (k == 0) return u;
    const CubeMap& f = standard("tau " + std::to_string(k) + " " + std::to_string(n), [&] { return power(cube::tau(n), k); });
    return pullback(f, u);
}

CubeFunction CubeCalculus::sigma_star(int n, int m, const CubeFunction& u) {
    if (u.level() != n + m) throw std::invalid_argument("sigma_{n,m}^* applied at the wrong level");
    const CubeMap& f = standard("sigma " + std::to_string(n) + " " + std::to_string(m), [&] { return cube::sigma_perm(n, m); });
    return pullback(f, u);
}

std::optional<std::pair<int, int>> CubeCalculus::normalized_violation(const CubeFunction& u) {
    for (int i = 1; i <= u.level(); ++i)
        if (!face(i, 1, u).is_zero()) return std::make_pair(i, 1);
    return std::nullopt;
}

std::optional<std::pair<int, int>> CubeCalculus::part00_violation(int n, int m, const CubeFunction& u) {
    if (u.level() != n + m) throw std::invalid_argument("00-part check at the wrong level");
    if (auto v = normalized_violation(u)) return v;
    for (int i = 2; i <= n + m; ++i) {
        if (i == n + 1) continue;
        if (!face(i, 0, u).is_zero()) return std::make_pair(i, 0);
    }
    return std::nullopt;
}

CubeFunction CubeCalculus::H(int n, int m, const CubeFunction& alpha) {
    if (alpha.level() != n + m) throw std::invalid_argument("H_{n,m} applied at the wrong level");
    if (auto v = part00_violation(n, m, alpha))
        throw std::invalid_argument("H_{" + std::to_string(n) + "," + std::to_string(m) + "}: input is not in the 00-part, delta_" +
                                    std::to_string(v->first) + "^" + std::to_string(v->second) + " does not vanish");
    CubeFunction r(n + m + 1);
    for (int i = 0; i < n; ++i) r += h(tau_star(m + i, alpha)).scaled(sign_pow(long(m + i) * (n + m - 1)));
    return r;
}

std::size_t CubeCalculus::cache_size() const {
    std::size_t s = 0;
    for (const auto& [f, t] : memo_) s += t.size();
    return s;
}

// ---- test elements --------------------------------------------------------

namespace {

const std::vector<ProjectiveRational>& outer_factors() {
    static const std::vector<ProjectiveRational> f = {
        ProjectiveRational::parse("1/(x1 - 1)"), ProjectiveRational::parse("1/(x1 - 1)^2"),
        ProjectiveRational::parse("(x1 + 1)/(x1 - 1)^2"), ProjectiveRational::parse("1/((x1 - 1)*(x1 + 2))")};
    return f;
}

const std::vector<ProjectiveRational>& inner_factors() {
    static const std::vector<ProjectiveRational> f = {
        ProjectiveRational::parse("x1/(x1 - 1)^2"), ProjectiveRational::parse("x1/(x1 - 1)^3"),
        ProjectiveRational::parse("x1^2/(x1 - 1)^3"), ProjectiveRational::parse("x1/((x1 - 1)*(x1 + 2))")};
    return f;
}

mpq_class random_coefficient(Rng& rng) {
    long p = rng.range(1, 6) * (rng.chance(50) ? 1 : -1);
    mpq_class c(p, rng.range(1, 4));
    c.canonicalize();
    return c;
}

ProjectiveRational in_slot(const ProjectiveRational& f, int slot) { return f.rename({slot}); }

template <class Choose>
CubeFunction random_products(Rng& rng, int level, Choose&& choose) {
    CubeFunction u(level);
    while (u.is_zero()) {
        int count = static_cast<int>(rng.range(1, 3));
        for (int t = 0; t < count; ++t) {
            ProjectiveRational f = ProjectiveRational::polynomial(ZPoly(1));
            for (int s = 1; s <= level; ++s) f = f * in_slot(choose(s), s);
            u.add(f, random_coefficient(rng));
        }
    }
    return u;
}

}  // namespace

CubeFunction random_normalized_element(Rng& rng, int n) {
    return random_products(rng, n, [&](int) -> const ProjectiveRational& {
        long k = rng.range(0, 7);
        return k < 4 ? outer_factors()[k] : inner_factors()[k - 4];
    });
}

CubeFunction random_00_element(Rng& rng, int n, int m) {
    return random_products(rng, n + m, [&](int s) -> const ProjectiveRational& {
        const auto& list = (s == 1 || s == n + 1) ? outer_factors() : inner_factors();
        return list[rng.range(0, static_cast<long>(list.size()) - 1)];
    });
}

// ---- identity checks ------------------------------------------------------

Verdict verify_delta_h_lemma(CubeCalculus& calc, const CubeFunction& alpha) {
    Verdict v;
    const int n = alpha.level();
    if (n < 1) throw std::invalid_argument("the delta-h lemma needs level >= 1");
    auto bad = calc.normalized_violation(alpha);
    v.expect(!bad, [&] { return "input is not normalized: delta_" + std::to_string(bad->first) + "^1 does not vanish"; });
    if (!v.ok) return v;
    CubeFunction ha = calc.h(alpha);
    auto bad_h = calc.normalized_violation(ha);
    v.expect(!bad_h, [&] { return "h_n(alpha) is not normalized at delta_" + std::to_string(bad_h->first) + "^1"; });
    CubeFunction lhs = calc.differential(ha);
    for (int i = 1; i <= n - 1; ++i) lhs += calc.h(calc.face(i, 0, alpha)).scaled(sign_pow(i));
    CubeFunction rhs = -alpha + calc.tau_star(1, alpha).scaled(sign_pow(n + 1));
    v.expect(lhs == rhs, [&] {
        return "delta-h lemma fails at level " + std::to_string(n) + " for " + alpha.to_string() + "; lhs - rhs = " + (lhs - rhs).to_string();
    });
    return v;
}

Verdict verify_hnm_homotopy(CubeCalculus& calc, int n, int m, const CubeFunction& alpha) {
    Verdict v;
    auto bad = calc.part00_violation(n, m, alpha);
    v.expect(!bad, [&] {
        return "input is not in the 00-part: delta_" + std::to_string(bad->first) + "^" + std::to_string(bad->second) + " does not vanish";
    });
    if (!v.ok) return v;
    CubeFunction Ha = calc.H(n, m, alpha);
    auto bad_h = calc.normalized_violation(Ha);
    v.expect(!bad_h, [&] { return "H_{n,m}(alpha) is not normalized at delta_" + std::to_string(bad_h->first) + "^1"; });
    CubeFunction lhs = calc.differential(Ha);
    if (n >= 1) lhs -= calc.H(n - 1, m, calc.face(1, 0, alpha));
    if (m >= 1) lhs -= calc.H(n, m - 1, calc.face(n + 1, 0, alpha)).scaled(sign_pow(n));
    CubeFunction rhs = alpha - calc.sigma_star(n, m, alpha).scaled(sign_pow(long(n) * m));
    v.expect(lhs == rhs, [&] {
        return "the H_{n,m} homotopy identity fails for (n,m) = (" + std::to_string(n) + "," + std::to_string(m) + ") on " + alpha.to_string() +
               "; lhs - rhs = " + (lhs - rhs).to_string();
    });
    return v;
}

Verdict verify_pullback_functoriality(CubeCalculus& calc, Rng& rng, int max_n) {
    Verdict v;
    for (int n = 1; n <= max_n; ++n) {
        // pairs (f, g) with g from the a-cube to the b-cube and f from the b-cube on
        std::vector<std::pair<CubeMap, CubeMap>> pairs = {
            {cube::tau(n + 1), cube::coface(1, 0, n)},
            {cube::coface(static_cast<int>(rng.range(1, n + 1)), static_cast<int>(rng.range(0, 1)), n), cube::tau(n)},
            {[&] { int k = static_cast<int>(rng.range(0, n)); return cube::sigma_perm(k, n - k); }(), cube::h_map(1, n)},
            {cube::h_map(static_cast<int>(rng.range(1, n)), n), cube::sigma_perm(1, n)},
            {cube::pi_phi(n), cube::coface(static_cast<int>(rng.range(1, n + 1)), 0, n)},
            {cube::codegeneracy(static_cast<int>(rng.range(1, n + 1)), n + 1), cube::involution(n + 1)},
        };
        for (auto& [f, g] : pairs) {
            CubeFunction u = random_normalized_element(rng, f.target());
            CubeFunction lhs = calc.pullback(compose(f, g), u);
            CubeFunction rhs = calc.pullback(g, calc.pullback(f, u));
            v.expect(lhs == rhs, [&] { return "pullback is not functorial for " + f.to_string() + " after " + g.to_string(); });
        }
    }
    return v;
}

// ---- w model --------------------------------------------------------------

CubicalModule w_model(int top, int max_exponent, ExtraDegeneracies* h) {
    const Domain dom = Domain::rationals();
    std::vector<std::vector<CubeFunction>> basis(top + 1);
    std::vector<std::map<ProjectiveRational, std::size_t>> index(top + 1);
    for (int n = 0; n <= top; ++n) {
        std::vector<int> e(n, 0);
        for (;;) {
            ZPoly den(1);
            for (int i = 0; i < n; ++i) den = den * (ZPoly::variable(i + 1) - ZPoly(1)).pow(e[i]);
            CubeFunction b = CubeFunction::term(n, ProjectiveRational(ZPoly(1), den));
            index[n].emplace(b.terms().begin()->first, basis[n].size());
            basis[n].push_back(std::move(b));
            int k = 0;
            while (k < n && e[k] == max_exponent) e[k++] = 0;
            if (k == n) break;
            ++e[k];
        }
    }
    std::vector<std::size_t> ranks;
    for (auto& b : basis) ranks.push_back(b.size());
    CubicalModule c(dom, ranks);
    CubeCalculus calc;
    auto matrix_of = [&](int from, int to, const std::function<CubeFunction(const CubeFunction&)>& op) {
        Matrix m(dom, ranks[to], ranks[from]);
        for (std::size_t s = 0; s < ranks[from]; ++s) {
            CubeFunction r = op(basis[from][s]);
            for (const auto& [f, coeff] : r.terms()) {
                auto it = index[to].find(f);
                if (it == index[to].end()) throw std::logic_error("w model is not closed: " + f.to_string());
                m.set(it->second, s, coeff);
            }
        }
        return m;
    };
    for (int n = 1; n <= top; ++n)
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j <= 1; ++j)
                c.set_delta(n, i, j, matrix_of(n, n - 1, [&](const CubeFunction& u) { return calc.face(i, j, u); }));
    for (int n = 0; n < top; ++n)
        for (int i = 1; i <= n + 1; ++i)
            c.set_sigma(n, i, matrix_of(n, n + 1, [&](const CubeFunction& u) { return calc.degeneracy(i, u); }));
    if (h) {
        h->h.clear();
        for (int n = 1; n < top; ++n)
            for (int j = 1; j <= n; ++j)
                h->h[{n, j}] = matrix_of(n, n + 1, [&](const CubeFunction& u) { return calc.h_face_map(j, u); });
    }
    c.name = "w-model";
    return c;
}

}  // namespace hchow
