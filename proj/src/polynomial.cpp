#include "hchow/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace hchow {

namespace {

constexpr ZPoly::Mono kHighBits = 0x8080808080808080ULL;

bool mono_divides(ZPoly::Mono b, ZPoly::Mono a) {
    for (int v = 1; v <= ZPoly::kMaxVars; ++v)
        if (ZPoly::exponent(b, v) > ZPoly::exponent(a, v)) return false;
    return true;
}

ZPoly::Mono mono_mul(ZPoly::Mono a, ZPoly::Mono b) {
    if (((a | b) & kHighBits) == 0) return a + b;  // no byte can carry
    ZPoly::Mono r = 0;
    for (int v = 1; v <= ZPoly::kMaxVars; ++v) {
        int e = ZPoly::exponent(a, v) + ZPoly::exponent(b, v);
        if (e > ZPoly::kMaxDegree) throw PolynomialError("polynomial degree overflow");
        r = ZPoly::with_exponent(r, v, e);
    }
    return r;
}

ZPoly::Mono mono_div(ZPoly::Mono a, ZPoly::Mono b) { return a - b; }  // caller checked divisibility

}  // namespace

// ---- monomials ------------------------------------------------------------

bool ZPoly::GrlexGreater::operator()(Mono a, Mono b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

ZPoly::Mono ZPoly::with_exponent(Mono m, int v, int e) {
    if (v < 1 || v > kMaxVars) throw PolynomialError("variable index out of range: x" + std::to_string(v));
    if (e < 0 || e > kMaxDegree) throw PolynomialError("exponent out of range");
    int shift = 8 * (kMaxVars - v);
    return (m & ~(Mono(0xff) << shift)) | (Mono(e) << shift);
}

int ZPoly::total_degree(Mono m) {
    int d = 0;
    for (; m; m >>= 8) d += static_cast<int>(m & 0xff);
    return d;
}

// ---- construction ---------------------------------------------------------

ZPoly::ZPoly(long c) {
    if (c != 0) terms_.emplace(0, mpz_class(c));
}

ZPoly ZPoly::constant(const mpz_class& c) { return monomial(c, 0); }

ZPoly ZPoly::variable(int v) { return monomial(1, with_exponent(0, v, 1)); }

ZPoly ZPoly::monomial(const mpz_class& c, Mono m) {
    ZPoly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

void ZPoly::add_term(Mono m, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

// ---- queries --------------------------------------------------------------

bool ZPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

const mpz_class& ZPoly::leading_coefficient() const {
    if (terms_.empty()) throw PolynomialError("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

ZPoly::Mono ZPoly::leading_monomial() const {
    if (terms_.empty()) throw PolynomialError("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

int ZPoly::degree(int v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) d = std::max(d, exponent(m, v));
    return d;
}

int ZPoly::total_degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

unsigned ZPoly::support() const {
    unsigned s = 0;
    for (const auto& [m, c] : terms_)
        for (int v = 1; v <= kMaxVars; ++v)
            if (exponent(m, v)) s |= 1u << (v - 1);
    return s;
}

int ZPoly::max_variable() const {
    unsigned s = support();
    int v = 0;
    while (s) {
        ++v;
        s >>= 1;
    }
    return v;
}

mpz_class ZPoly::content() const {
    mpz_class g = 0;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly ZPoly::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (leading_coefficient() < 0) g = -g;
    ZPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c / g);
    return r;
}

// ---- arithmetic -----------------------------------------------------------

ZPoly ZPoly::operator-() const {
    ZPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

ZPoly ZPoly::scaled(const mpz_class& c) const {
    if (c == 0) return ZPoly();
    ZPoly r = *this;
    for (auto& [m, x] : r.terms_) x *= c;
    return r;
}

ZPoly ZPoly::pow(int e) const {
    if (e < 0) throw PolynomialError("negative power");
    ZPoly r(1), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool ZPoly::operator<(const ZPoly& o) const {
    if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return GrlexGreater{}(it->first, jt->first);
        if (it->second != jt->second) return it->second < jt->second;
    }
    return false;
}

std::vector<ZPoly> ZPoly::coefficients_in(int v) const {
    std::vector<ZPoly> out(std::max(degree(v), 0) + 1);
    for (const auto& [m, c] : terms_) out[exponent(m, v)].add_term(with_exponent(m, v, 0), c);
    return out;
}

ZPoly ZPoly::from_coefficients(int v, const std::vector<ZPoly>& coeffs) {
    ZPoly r;
    for (std::size_t e = 0; e < coeffs.size(); ++e)
        for (const auto& [m, c] : coeffs[e].terms_) r.add_term(with_exponent(m, v, static_cast<int>(e)), c);
    return r;
}

std::vector<mpz_class> ZPoly::specialize_except(int v, const std::vector<mpz_class>& point) const {
    std::vector<mpz_class> out(std::max(degree(v), 0) + 1, 0);
    mpz_class t;
    for (const auto& [m, c] : terms_) {
        mpz_class val = c;
        for (int u = 1; u <= kMaxVars; ++u) {
            int e = exponent(m, u);
            if (u == v || e == 0) continue;
            mpz_pow_ui(t.get_mpz_t(), point.at(u - 1).get_mpz_t(), e);
            val *= t;
        }
        out[exponent(m, v)] += val;
    }
    return out;
}

mpz_class ZPoly::evaluate(const std::vector<mpz_class>& point) const {
    mpz_class s = 0, t;
    for (const auto& [m, c] : terms_) {
        mpz_class val = c;
        for (int u = 1; u <= kMaxVars; ++u) {
            int e = exponent(m, u);
            if (e == 0) continue;
            mpz_pow_ui(t.get_mpz_t(), point.at(u - 1).get_mpz_t(), e);
            val *= t;
        }
        s += val;
    }
    return s;
}

ZPoly ZPoly::rename(const std::vector<int>& map) const {
    ZPoly r;
    for (const auto& [m, c] : terms_) {
        Mono nm = 0;
        for (int v = 1; v <= kMaxVars; ++v) {
            int e = exponent(m, v);
            if (e == 0) continue;
            if (v > static_cast<int>(map.size())) throw PolynomialError("rename: no image for x" + std::to_string(v));
            int t = map[v - 1];
            nm = with_exponent(nm, t, exponent(nm, t) + e);
        }
        r.add_term(nm, c);
    }
    return r;
}

// ---- text -----------------------------------------------------------------

std::string ZPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) s += "-";
        } else {
            s += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (int v = 1; v <= kMaxVars; ++v) {
            int e = exponent(m, v);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) s += a.get_str();
        else if (a == 1) s += mono;
        else s += a.get_str() + "*" + mono;
    }
    return s;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& t) : s_(t) {}

    ZPoly parse_all() {
        ZPoly p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw PolynomialError("polynomial parse error at offset " + std::to_string(i_) + ": " + why + " in \"" + s_ + "\"");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected a number");
        return s_.substr(b, i_ - b);
    }
    ZPoly expr() {
        ZPoly r = term();
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }
    ZPoly term() {
        ZPoly r = unary();
        while (eat('*')) r = r * unary();
        return r;
    }
    ZPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        ZPoly a = atom();
        if (eat('^')) {
            std::string e = digits();
            if (e.size() > 3) fail("exponent too large");
            a = a.pow(std::stoi(e));
        }
        return a;
    }
    ZPoly atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            ZPoly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return ZPoly::constant(mpz_class(digits()));
        if (c == 'x') {
            ++i_;
            std::string d = digits();
            int v = std::stoi(d);
            if (v < 1 || v > ZPoly::kMaxVars) fail("variable x" + d + " out of range");
            return ZPoly::variable(v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

ZPoly ZPoly::parse(const std::string& text) { return PolyParser(text).parse_all(); }

// ---- division and gcd -----------------------------------------------------

std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw PolynomialError("division by the zero polynomial");
    ZPoly q, r = a;
    const ZPoly::Mono lb = b.leading_monomial();
    const mpz_class& cb = b.leading_coefficient();
    while (!r.is_zero()) {
        ZPoly::Mono lr = r.leading_monomial();
        const mpz_class& cr = r.leading_coefficient();
        if (!mono_divides(lb, lr) || !mpz_divisible_p(cr.get_mpz_t(), cb.get_mpz_t())) return std::nullopt;
        ZPoly t = ZPoly::monomial(mpz_class(cr / cb), mono_div(lr, lb));
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

ZPoly positive(ZPoly p) { return !p.is_zero() && p.leading_coefficient() < 0 ? -p : p; }

ZPoly exact(const ZPoly& a, const ZPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw PolynomialError("internal: expected exact division");
    return *q;
}

// Univariate helpers over Z for the specialization test.
using UPoly = std::vector<mpz_class>;

void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(UPoly& p) {
    mpz_class g = 0;
    for (auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p) c /= g;
}

// Degree of gcd over Q of two nonzero univariate integer polynomials.
int univariate_gcd_degree(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        if (b.size() == 1) return 0;
        // a := prem(a, b)
        while (a.size() >= b.size()) {
            mpz_class la = a.back(), lb = b.back();
            std::size_t shift = a.size() - b.size();
            for (auto& c : a) c *= lb;
            for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= la * b[k];
            trim(a);
            if (a.empty()) break;
        }
        make_primitive(a);
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// Proves coprimality of primitive a, b by specializing all variables but
// one, for each shared variable. A common factor G involving x_v keeps its
// x_v-degree under any specialization that does not kill lc_v(a) and lc_v(b),
// so a constant univariate gcd for every shared variable proves gcd(a, b) is
// a constant. A false answer is inconclusive.
bool specialization_proves_coprime(const ZPoly& a, const ZPoly& b) {
    unsigned shared = a.support() & b.support();
    static const long kValues[] = {2, -3, 5, 7, -11, 13, 17, -19, 23, 29, -31, 37};
    std::size_t seed = 0;
    for (int v = 1; v <= ZPoly::kMaxVars; ++v) {
        if (!(shared & (1u << (v - 1)))) continue;
        bool decided = false;
        for (int attempt = 0; attempt < 3 && !decided; ++attempt) {
            std::vector<mpz_class> point(ZPoly::kMaxVars);
            for (int u = 0; u < ZPoly::kMaxVars; ++u) point[u] = kValues[(seed + 5 * u + 7 * attempt) % 12];
            ++seed;
            UPoly ua = a.specialize_except(v, point), ub = b.specialize_except(v, point);
            if (static_cast<int>(ua.size()) - 1 != a.degree(v) || ua.back() == 0) continue;
            if (static_cast<int>(ub.size()) - 1 != b.degree(v) || ub.back() == 0) continue;
            if (univariate_gcd_degree(ua, ub) != 0) return false;
            decided = true;
        }
        if (!decided) return false;
    }
    return true;
}

ZPoly content_in(const ZPoly& p, int v);

ZPoly gcd_impl(const ZPoly& a, const ZPoly& b);

ZPoly primitive_in(const ZPoly& p, int v) { return exact(p, content_in(p, v)); }

ZPoly content_in(const ZPoly& p, int v) {
    ZPoly g;
    for (const auto& c : p.coefficients_in(v)) {
        if (c.is_zero()) continue;
        g = gcd_impl(g, c);
        if (g.is_constant() && g.leading_coefficient() == 1) break;
    }
    return g;
}

ZPoly prem_in(ZPoly a, const ZPoly& b, int v) {
    const int db = b.degree(v);
    const ZPoly lb = b.coefficients_in(v)[db];
    for (int da = a.degree(v); !a.is_zero() && da >= db; da = a.degree(v)) {
        ZPoly la = a.coefficients_in(v)[da];
        ZPoly shift = ZPoly::monomial(1, ZPoly::with_exponent(0, v, da - db));
        a = a * lb - la * shift * b;
    }
    return a;
}

ZPoly monomial_gcd(const ZPoly& mono, const ZPoly& p) {
    mpz_class g = gcd(mono.leading_coefficient(), p.content());
    ZPoly::Mono m = mono.leading_monomial();
    for (const auto& [pm, c] : p.terms())
        for (int v = 1; v <= ZPoly::kMaxVars; ++v)
            m = ZPoly::with_exponent(m, v, std::min(ZPoly::exponent(m, v), ZPoly::exponent(pm, v)));
    return ZPoly::monomial(abs(g), m);
}

ZPoly gcd_impl(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return positive(b);
    if (b.is_zero()) return positive(a);
    if (a.is_constant() || b.is_constant() || (a.support() & b.support()) == 0)
        return ZPoly::constant(gcd(a.content(), b.content()));
    if (a.is_monomial()) return monomial_gcd(a, b);
    if (b.is_monomial()) return monomial_gcd(b, a);
    mpz_class cint = gcd(a.content(), b.content());
    ZPoly pa = a.primitive_part(), pb = b.primitive_part();
    if (pa == pb) return pa.scaled(cint);
    if (specialization_proves_coprime(pa, pb)) return ZPoly::constant(cint);

    // main variable: a shared one of least degree
    unsigned shared = a.support() & b.support();
    int v = 0, best = 1 << 30;
    for (int u = 1; u <= ZPoly::kMaxVars; ++u)
        if (shared & (1u << (u - 1))) {
            int d = std::max(a.degree(u), b.degree(u));
            if (d < best) best = d, v = u;
        }
    ZPoly ca = content_in(a, v), cb = content_in(b, v);
    ZPoly c = gcd_impl(ca, cb);
    pa = exact(a, ca);
    pb = exact(b, cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    ZPoly g;
    for (;;) {
        ZPoly r = prem_in(pa, pb, v);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree(v) == 0) {
            g = ZPoly(1);
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, v);
    }
    return positive(c * primitive_in(g, v));
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) { return gcd_impl(a, b); }

bool coprime_up_to_constants(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_constant() && b.is_constant() && !(a.is_zero() && b.is_zero());
    return gcd(a.primitive_part(), b.primitive_part()).is_constant();
}

// ---- projective pairs -----------------------------------------------------

ProjectiveRational::ProjectiveRational(ZPoly num, ZPoly den) {
    if (num.is_zero() && den.is_zero()) throw PolynomialError("undefined projective pair (0 : 0)");
    if (den.is_zero()) {
        num_ = ZPoly(1);
        den_ = ZPoly(0);
        return;
    }
    if (num.is_zero()) {
        num_ = ZPoly(0);
        den_ = ZPoly(1);
        return;
    }
    ZPoly g = gcd(num, den);
    if (!(g.is_constant() && g.leading_coefficient() == 1)) {
        num = exact(num, g);
        den = exact(den, g);
    }
    if (den.leading_coefficient() < 0) {
        num = -num;
        den = -den;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

ProjectiveRational ProjectiveRational::from_reduced(ZPoly num, ZPoly den) {
    ProjectiveRational r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

int ProjectiveRational::max_variable() const { return std::max(num_.max_variable(), den_.max_variable()); }

bool ProjectiveRational::operator<(const ProjectiveRational& o) const {
    if (num_ != o.num_) return num_ < o.num_;
    return den_ < o.den_;
}

ProjectiveRational operator*(const ProjectiveRational& a, const ProjectiveRational& b) {
    if (a.is_infinity() || b.is_infinity()) throw PolynomialError("arithmetic with the point at infinity");
    return ProjectiveRational(a.num_ * b.num_, a.den_ * b.den_);
}

ProjectiveRational operator+(const ProjectiveRational& a, const ProjectiveRational& b) {
    if (a.is_infinity() || b.is_infinity()) throw PolynomialError("arithmetic with the point at infinity");
    if (a.den_ == b.den_) return ProjectiveRational(a.num_ + b.num_, a.den_);
    return ProjectiveRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ProjectiveRational operator-(const ProjectiveRational& a, const ProjectiveRational& b) {
    return a + ProjectiveRational(-b.num_, b.den_);
}

std::optional<ProjectiveRational> ProjectiveRational::substitute(const std::vector<ProjectiveRational>& values) const {
    const int nv = max_variable();
    if (nv > static_cast<int>(values.size()))
        throw PolynomialError("substitution provides " + std::to_string(values.size()) + " values for x" + std::to_string(nv));
    std::vector<int> D(nv + 1, 0);
    for (int k = 1; k <= nv; ++k) D[k] = std::max(num_.degree(k), den_.degree(k));
    // cached powers of the homogeneous coordinates
    std::vector<std::vector<ZPoly>> pa(nv + 1), pb(nv + 1);
    auto power = [&](std::vector<std::vector<ZPoly>>& cache, const ZPoly& base, int k, int e) -> const ZPoly& {
        auto& c = cache[k];
        if (c.empty()) c.push_back(ZPoly(1));
        while (static_cast<int>(c.size()) <= e) c.push_back(c.back() * base);
        return c[e];
    };
    auto homogenize = [&](const ZPoly& p) {
        ZPoly out;
        for (const auto& [m, c] : p.terms()) {
            ZPoly t = ZPoly::constant(c);
            for (int k = 1; k <= nv; ++k) {
                if (D[k] == 0) continue;
                int e = ZPoly::exponent(m, k);
                const ProjectiveRational& x = values[k - 1];
                if (e > 0) t = t * power(pa, x.num(), k, e);
                if (D[k] - e > 0 && x.den() != ZPoly(1))
                    t = t * power(pb, x.den(), k, D[k] - e);
            }
            out += t;
        }
        return out;
    };
    ZPoly n = homogenize(num_), d = homogenize(den_);
    if (n.is_zero() && d.is_zero()) return std::nullopt;
    return ProjectiveRational(std::move(n), std::move(d));
}

ProjectiveRational ProjectiveRational::rename(const std::vector<int>& map) const {
    if (is_infinity()) return *this;
    return ProjectiveRational(num_.rename(map), den_.rename(map));
}

std::string ProjectiveRational::to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

ProjectiveRational ProjectiveRational::parse(const std::string& text) {
    std::string t = text;
    auto strip = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    t = strip(t);
    if (t == "inf" || t == "infinity") return infinity();
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] == '(') ++depth;
        else if (t[i] == ')') --depth;
        else if (t[i] == '/' && depth == 0) {
            if (slash != std::string::npos) throw PolynomialError("more than one '/' in \"" + text + "\"");
            slash = i;
        }
    }
    if (slash == std::string::npos) return polynomial(ZPoly::parse(t));
    return ProjectiveRational(ZPoly::parse(t.substr(0, slash)), ZPoly::parse(t.substr(slash + 1)));
}

}  // namespace hchow
