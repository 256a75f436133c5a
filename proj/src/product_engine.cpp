/**
 * @file   product_engine.cpp
 * @brief  Finite model of the Deligne-complex products and their checks.
 */
#include "hchow/product_engine.hpp"

#include "hchow/linalg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hchow {

namespace {

int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

template <class K>
void accumulate(std::map<K, mpq_class>& into, const K& key, const mpq_class& c) {
    if (c == 0) return;
    auto [it, fresh] = into.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) into.erase(it);
    }
}

template <class K>
void add_scaled(std::map<K, mpq_class>& into, const std::map<K, mpq_class>& x, const mpq_class& c) {
    for (const auto& [k, v] : x) accumulate(into, k, v * c);
}

int popcount(std::uint32_t w) { return std::popcount(w); }

std::string alg_vec_string(const GradedAlgebra& A, const AlgVec& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : v) {
        if (!s.empty()) s += " + ";
        s += c.get_str() + "*" + A.basis[i].name;
    }
    return s;
}

std::string key_string(const GradedAlgebra& A, const FormKey& k) {
    std::string s = A.basis[k.a].name + "[";
    for (std::size_t i = 0; i < k.dims.size(); ++i) s += (i ? "," : "") + std::to_string(k.dims[i]);
    s += "|";
    int n = 0;
    for (int d : k.dims) n += d;
    for (int i = 0; i < n; ++i) s += ((k.word >> i) & 1u) ? 'D' : 'v';
    return s + "]";
}

std::string form_string(const GradedAlgebra& A, const FormVec& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : x) {
        if (!s.empty()) s += " + ";
        s += c.get_str() + "*" + key_string(A, k);
    }
    return s;
}

std::string support_string(const GradedAlgebra& A, const SupportElement& x) {
    std::string s = "(";
    for (std::size_t S = 0; S < x.comp.size(); ++S) s += (S ? "; " : "") + form_string(A, x.comp[S]);
    return s + ")";
}

}  // namespace

// ---- GradedAlgebra ----------------------------------------------------------

AlgVec GradedAlgebra::multiply(const AlgVec& x, const AlgVec& y) const {
    AlgVec out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) add_scaled(out, mul[i][j], a * b);
    return out;
}

AlgVec GradedAlgebra::differential(const AlgVec& x) const {
    AlgVec out;
    for (const auto& [i, a] : x) add_scaled(out, d[i], a);
    return out;
}

AlgVec GradedAlgebra::homotopy(std::size_t i, std::size_t j, std::size_t k) const {
    auto it = h.find({i, j, k});
    return it == h.end() ? AlgVec{} : it->second;
}

std::size_t GradedAlgebra::index_of(const std::string& n) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].name == n) return i;
    throw std::invalid_argument("algebra " + name + ": no basis element named '" + n + "'");
}

std::vector<std::size_t> GradedAlgebra::weight_part(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].weight == p) out.push_back(i);
    return out;
}

Verdict GradedAlgebra::verify() const {
    Verdict v;
    const std::size_t n = size();
    v.expect(n > 0 && basis[0].degree == 0 && basis[0].weight == 0, [&] { return name + ": basis[0] must be the unit"; });
    v.expect(d.size() == n && mul.size() == n, [&] { return name + ": table sizes do not match the basis"; });
    if (!v.ok) return v;
    for (std::size_t i = 0; i < n; ++i) {
        v.expect(mul[i].size() == n, [&] { return name + ": product row " + basis[i].name + " has wrong length"; });
        if (!v.ok) return v;
    }
    auto single = [](std::size_t i) { return AlgVec{{i, 1}}; };
    auto homogeneous = [&](const AlgVec& x, int deg, int w) {
        return std::all_of(x.begin(), x.end(), [&](const auto& e) {
            return e.first < n && basis[e.first].degree == deg && basis[e.first].weight == w;
        });
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto& bi = basis[i];
        v.expect(bi.degree >= 0 && bi.degree <= 2 * bi.weight,
                 [&] { return name + ": " + bi.name + " violates 0 <= degree <= 2 weight"; });
        v.expect(homogeneous(d[i], bi.degree + 1, bi.weight), [&] { return name + ": d(" + bi.name + ") not homogeneous"; });
        v.expect(mul[0][i] == single(i) && mul[i][0] == single(i), [&] { return name + ": 1 is not a unit for " + bi.name; });
        v.expect(differential(d[i]).empty(), [&] { return name + ": d^2 != 0 on " + bi.name; });
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &bi = basis[i], &bj = basis[j];
            v.expect(homogeneous(mul[i][j], bi.degree + bj.degree, bi.weight + bj.weight),
                     [&] { return name + ": " + bi.name + "*" + bj.name + " not homogeneous"; });
            AlgVec lhs = differential(mul[i][j]);
            AlgVec rhs = multiply(d[i], single(j));
            add_scaled(rhs, multiply(single(i), d[j]), parity_sign(bi.degree));
            v.expect(lhs == rhs, [&] {
                return name + ": Leibniz fails on " + bi.name + "," + bj.name + ": " + alg_vec_string(*this, lhs) +
                       " vs " + alg_vec_string(*this, rhs);
            });
            AlgVec swapped = mul[j][i];
            for (auto& [k, c] : swapped) c *= parity_sign(bi.degree * bj.degree);
            v.expect(mul[i][j] == swapped, [&] { return name + ": not graded commutative on " + bi.name + "," + bj.name; });
        }
    for (const auto& [ijk, val] : h) {
        const auto &bi = basis[ijk[0]], &bj = basis[ijk[1]], &bk = basis[ijk[2]];
        v.expect(homogeneous(val, bi.degree + bj.degree + bk.degree - 1, bi.weight + bj.weight + bk.weight),
                 [&] { return name + ": h(" + bi.name + "," + bj.name + "," + bk.name + ") not homogeneous"; });
    }
    // d h + h d = (xy)z - x(yz) on all basis triples.
    auto h_on = [&](const AlgVec& x, const AlgVec& y, const AlgVec& z) {
        AlgVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y)
                for (const auto& [k, c] : z) add_scaled(out, homotopy(i, j, k), a * b * c);
        return out;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                AlgVec lhs = differential(homotopy(i, j, k));
                add_scaled(lhs, h_on(d[i], single(j), single(k)), 1);
                add_scaled(lhs, h_on(single(i), d[j], single(k)), parity_sign(basis[i].degree));
                add_scaled(lhs, h_on(single(i), single(j), d[k]), parity_sign(basis[i].degree + basis[j].degree));
                AlgVec assoc = multiply(mul[i][j], single(k));
                add_scaled(assoc, multiply(single(i), mul[j][k]), -1);
                v.expect(lhs == assoc, [&] {
                    return name + ": dh + hd != associator on (" + basis[i].name + "," + basis[j].name + "," +
                           basis[k].name + "): " + alg_vec_string(*this, lhs) + " vs " + alg_vec_string(*this, assoc);
                });
            }
    // Top-degree elements are closed since nothing lives above 2 * weight;
    // h must vanish on their triples.
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < n; ++i)
        if (basis[i].degree == 2 * basis[i].weight) top.push_back(i);
    for (auto i : top)
        for (auto j : top)
            for (auto k : top)
                v.expect(homotopy(i, j, k).empty(), [&] {
                    return name + ": h is nonzero on the closed top-degree triple (" + basis[i].name + "," +
                           basis[j].name + "," + basis[k].name + ")";
                });
    return v;
}

std::vector<std::size_t> GradedAlgebra::ideal_closure(std::vector<std::size_t> generators) const {
    std::set<std::size_t> in(generators.begin(), generators.end());
    std::vector<std::size_t> todo(in.begin(), in.end());
    auto add_support = [&](const AlgVec& x) {
        for (const auto& [k, c] : x)
            if (in.insert(k).second) todo.push_back(k);
    };
    while (!todo.empty()) {
        std::size_t x = todo.back();
        todo.pop_back();
        add_support(d[x]);
        for (std::size_t y = 0; y < size(); ++y) {
            add_support(mul[x][y]);
            add_support(mul[y][x]);
            for (std::size_t z = 0; z < size(); ++z) {
                add_support(homotopy(x, y, z));
                add_support(homotopy(y, x, z));
                add_support(homotopy(y, z, x));
            }
        }
    }
    return {in.begin(), in.end()};
}

std::string GradedAlgebra::to_text() const {
    std::ostringstream os;
    os << "algebra " << name << "\n";
    for (const auto& b : basis) os << "basis " << b.name << " " << b.degree << " " << b.weight << "\n";
    auto terms = [&](const AlgVec& x) {
        std::string s;
        for (const auto& [k, c] : x) s += " " + c.get_str() + " " + basis[k].name;
        return s;
    };
    for (std::size_t i = 0; i < size(); ++i)
        if (!d[i].empty()) os << "d " << basis[i].name << " :" << terms(d[i]) << "\n";
    for (std::size_t i = 1; i < size(); ++i)
        for (std::size_t j = 1; j < size(); ++j)
            if (!mul[i][j].empty()) os << "mul " << basis[i].name << " " << basis[j].name << " :" << terms(mul[i][j]) << "\n";
    for (const auto& [ijk, val] : h)
        os << "h " << basis[ijk[0]].name << " " << basis[ijk[1]].name << " " << basis[ijk[2]].name << " :" << terms(val)
           << "\n";
    return os.str();
}

GradedAlgebra GradedAlgebra::parse(const std::string& text) {
    GradedAlgebra A;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("algebra text line " + std::to_string(lineno) + ": " + why);
    };
    struct Pending {
        std::string kind;
        std::vector<std::string> args;
        std::vector<std::pair<std::string, std::string>> terms;
        int line;
    };
    std::vector<Pending> tables;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "algebra") {
            if (!(ls >> A.name)) fail("missing algebra name");
        } else if (kw == "basis") {
            AlgebraBasis b;
            if (!(ls >> b.name >> b.degree >> b.weight)) fail("basis needs: name degree weight");
            A.basis.push_back(b);
        } else if (kw == "d" || kw == "mul" || kw == "h") {
            Pending p{kw, {}, {}, lineno};
            std::string tok;
            while (ls >> tok && tok != ":") p.args.push_back(tok);
            if (tok != ":") fail("missing ':'");
            std::string c, nm;
            while (ls >> c) {
                if (!(ls >> nm)) fail("coefficient without basis name");
                p.terms.emplace_back(c, nm);
            }
            std::size_t want = kw == "d" ? 1 : kw == "mul" ? 2 : 3;
            if (p.args.size() != want) fail(kw + " expects " + std::to_string(want) + " arguments");
            tables.push_back(std::move(p));
        } else {
            fail("unknown keyword '" + kw + "'");
        }
    }
    if (A.basis.empty()) throw std::invalid_argument("algebra text: no basis");
    const std::size_t n = A.size();
    A.d.assign(n, {});
    A.mul.assign(n, std::vector<AlgVec>(n));
    for (std::size_t i = 0; i < n; ++i) {
        A.mul[0][i] = {{i, 1}};
        A.mul[i][0] = {{i, 1}};
    }
    for (const auto& p : tables) {
        lineno = p.line;
        AlgVec val;
        try {
            for (const auto& [c, nm] : p.terms) {
                mpq_class q(c);
                q.canonicalize();
                accumulate(val, A.index_of(nm), q);
            }
            if (p.kind == "d") {
                A.d[A.index_of(p.args[0])] = val;
            } else if (p.kind == "mul") {
                std::size_t i = A.index_of(p.args[0]), j = A.index_of(p.args[1]);
                if (i == 0 || j == 0) fail("products with the unit are implicit");
                A.mul[i][j] = val;
            } else if (!val.empty()) {
                A.h[{A.index_of(p.args[0]), A.index_of(p.args[1]), A.index_of(p.args[2])}] = val;
            }
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("algebra text", 0) == 0) throw;
            fail(e.what());
        }
    }
    return A;
}

// ---- instances --------------------------------------------------------------

GradedAlgebra exterior_instance() {
    GradedAlgebra A;
    A.name = "exterior";
    // Monomials u^a v^b t^c in the order u, v, t.
    std::vector<std::array<int, 3>> mono;
    for (int c = 0; c <= 1; ++c)
        for (int b = 0; b <= 1; ++b)
            for (int a = 0; a <= 1; ++a) mono.push_back({a, b, c});
    std::stable_sort(mono.begin(), mono.end(), [](const auto& x, const auto& y) {
        return x[0] + x[1] + x[2] < y[0] + y[1] + y[2];
    });
    auto mono_name = [](const std::array<int, 3>& m) {
        std::string s = std::string(m[2] ? "t" : "") + (m[0] ? "u" : "") + (m[1] ? "v" : "");
        return s.empty() ? std::string("1") : s;
    };
    for (const auto& m : mono) A.basis.push_back({mono_name(m), m[0] + m[1] + 2 * m[2], m[0] + m[1] + m[2]});
    const std::size_t n = mono.size();
    A.d.assign(n, {});
    A.mul.assign(n, std::vector<AlgVec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::array<int, 3> m{mono[i][0] + mono[j][0], mono[i][1] + mono[j][1], mono[i][2] + mono[j][2]};
            if (m[0] > 1 || m[1] > 1 || m[2] > 1) continue;
            // Moving u^{a_j} past v^{b_i}; t is even.
            int sign = parity_sign(mono[i][1] * mono[j][0]);
            std::size_t k = std::find(mono.begin(), mono.end(), m) - mono.begin();
            A.mul[i][j] = {{k, sign}};
        }
    return A;
}

GradedAlgebra homotopy_instance() {
    GradedAlgebra A;
    A.name = "deformed";
    std::vector<std::pair<int, int>> mono;  // s^i t^j
    for (int tot = 0; tot <= 3; ++tot)
        for (int i = tot; i >= 0; --i) mono.emplace_back(i, tot - i);
    auto mono_name = [](int i, int j) {
        std::string s;
        if (i) s += "s" + (i > 1 ? std::to_string(i) : "");
        if (j) s += "t" + (j > 1 ? std::to_string(j) : "");
        return s.empty() ? std::string("1") : s;
    };
    for (auto [i, j] : mono) A.basis.push_back({mono_name(i, j), 2 * (i + j), 2 * (i + j)});
    const std::size_t nr = mono.size();
    const std::size_t G = nr, F = nr + 1;
    A.basis.push_back({"G", 5, 6});
    A.basis.push_back({"F", 6, 6});
    const std::size_t n = A.size();
    A.d.assign(n, {});
    A.d[G] = {{F, 1}};
    A.mul.assign(n, std::vector<AlgVec>(n));
    for (std::size_t i = 0; i < n; ++i) {
        A.mul[0][i] = {{i, 1}};
        A.mul[i][0] = {{i, 1}};
    }
    for (std::size_t x = 1; x < nr; ++x)
        for (std::size_t y = 1; y < nr; ++y) {
            std::pair<int, int> m{mono[x].first + mono[y].first, mono[x].second + mono[y].second};
            if (m.first + m.second <= 3) {
                std::size_t k = std::find(mono.begin(), mono.end(), m) - mono.begin();
                A.mul[x][y] = {{k, 1}};
            }
        }
    const std::size_t st = A.index_of("st"), t = A.index_of("t");
    A.mul[st][t][F] = 1;
    A.mul[t][st][F] = 1;
    // The associator lands in span{F} on the polynomial part and vanishes on
    // anything involving G or F; h picks the G with dG = F.
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nr; ++j)
            for (std::size_t k = 0; k < nr; ++k) {
                AlgVec assoc = A.multiply(A.mul[i][j], {{k, 1}});
                add_scaled(assoc, A.multiply({{i, 1}}, A.mul[j][k]), -1);
                if (assoc.empty()) continue;
                if (assoc.size() != 1 || assoc.begin()->first != F)
                    throw std::logic_error("deformed instance: associator leaves span{F}");
                A.h[{i, j, k}] = {{G, assoc.begin()->second}};
            }
    return A;
}

// ---- cubical forms ----------------------------------------------------------

bool FormKey::operator<(const FormKey& o) const {
    if (a != o.a) return a < o.a;
    if (dims != o.dims) return dims < o.dims;
    return word < o.word;
}

int ProductModel::cube_total(const FormKey& k) const {
    int n = 0;
    for (int d : k.dims) n += d;
    return n;
}

int ProductModel::form_degree(const FormKey& k) const { return alg->degree(k.a) + popcount(k.word); }

namespace {

bool killed(const ProductModel& m, std::size_t a, unsigned label_mask) {
    for (std::size_t l = 0; l < m.ideals.size(); ++l)
        if ((label_mask >> l) & 1u)
            if (std::binary_search(m.ideals[l].begin(), m.ideals[l].end(), a)) return true;
    return false;
}

unsigned labels_of(const std::vector<int>& supports, unsigned subset) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < supports.size(); ++i)
        if ((subset >> i) & 1u) mask |= 1u << supports[i];
    return mask;
}

std::uint32_t remove_slot(std::uint32_t w, int g) {
    std::uint32_t low = w & ((1u << g) - 1u);
    return low | ((w >> (g + 1)) << g);
}

}  // namespace

FormVec ProductModel::project(const FormVec& x, unsigned label_mask) const {
    if (label_mask == 0) return x;
    FormVec out;
    for (const auto& [k, c] : x)
        if (!killed(*this, k.a, label_mask)) out.emplace(k, c);
    return out;
}

FormVec ProductModel::d_deligne(const FormVec& x) const {
    FormVec out;
    for (const auto& [k, c] : x) {
        for (const auto& [b, e] : alg->d[k.a]) accumulate(out, FormKey{b, k.dims, k.word}, c * e);
        const int sign_a = parity_sign(alg->degree(k.a));
        const int n = cube_total(k);
        for (int g = 0; g < n; ++g) {
            if ((k.word >> g) & 1u) continue;
            int before = popcount(k.word & ((1u << g) - 1u));
            accumulate(out, FormKey{k.a, k.dims, k.word | (1u << g)}, c * sign_a * parity_sign(before));
        }
    }
    return out;
}

FormVec ProductModel::delta(const FormVec& x) const {
    FormVec out;
    for (const auto& [k, c] : x) {
        int offset = 0;
        for (std::size_t b = 0; b < k.dims.size(); ++b) {
            const int block_sign = parity_sign(offset);
            for (int i = 1; i <= k.dims[b]; ++i) {
                const int g = offset + i - 1;
                if ((k.word >> g) & 1u) continue;  // dv restricts to zero
                FormKey nk{k.a, k.dims, remove_slot(k.word, g)};
                nk.dims[b] -= 1;
                // v restricts to -1 on the face at 0.
                accumulate(out, nk, c * block_sign * parity_sign(i) * -1);
            }
            offset += k.dims[b];
        }
    }
    return out;
}

FormVec ProductModel::d_total(const FormVec& x) const {
    FormVec out = d_deligne(x);
    for (const auto& [k, c] : x) {
        FormVec single{{k, c}};
        add_scaled(out, delta(single), parity_sign(form_degree(k)));
    }
    return out;
}

FormVec ProductModel::product(const FormVec& x, const FormVec& y) const {
    FormVec out;
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y) {
            const int n1 = cube_total(k1);
            if (n1 + cube_total(k2) > 31) throw std::length_error("cube dimension too large for the form model");
            std::vector<int> dims = k1.dims;
            dims.insert(dims.end(), k2.dims.begin(), k2.dims.end());
            const std::uint32_t w = k1.word | (k2.word << n1);
            const int sign = parity_sign(popcount(k1.word) * alg->degree(k2.a));
            for (const auto& [b, e] : alg->mul[k1.a][k2.a]) accumulate(out, FormKey{b, dims, w}, c1 * c2 * e * sign);
        }
    return out;
}

FormVec ProductModel::bullet(const FormVec& x, const FormVec& y) const {
    FormVec out;
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y) {
            const int sign = parity_sign(cube_total(k1) * form_degree(k2));
            add_scaled(out, product({{k1, c1}}, {{k2, c2}}), sign);
        }
    return out;
}

FormVec ProductModel::kappa(const FormVec& x) const {
    FormVec out;
    for (const auto& [k, c] : x) accumulate(out, FormKey{k.a, {cube_total(k)}, k.word}, c);
    return out;
}

FormVec ProductModel::sigma(const FormVec& x) const {
    FormVec out;
    for (const auto& [k, c] : x) {
        if (k.dims.size() != 2) throw std::invalid_argument("sigma needs two cubical directions");
        const int n = k.dims[0], m = k.dims[1];
        const std::uint32_t w1 = k.word & ((1u << n) - 1u), w2 = k.word >> n;
        const int sign = parity_sign(n * m + popcount(w1) * popcount(w2));
        accumulate(out, FormKey{k.a, {m, n}, w2 | (w1 << m)}, c * sign);
    }
    return out;
}

FormVec ProductModel::homotopy(const FormVec& x, const FormVec& y, const FormVec& z) const {
    FormVec out;
    for (const auto& [k1, c1] : x)
        for (const auto& [k2, c2] : y)
            for (const auto& [k3, c3] : z) {
                const int n1 = cube_total(k1), n2 = cube_total(k2);
                std::vector<int> dims = k1.dims;
                dims.insert(dims.end(), k2.dims.begin(), k2.dims.end());
                dims.insert(dims.end(), k3.dims.begin(), k3.dims.end());
                const std::uint32_t w = k1.word | (k2.word << n1) | (k3.word << (n1 + n2));
                const int d2 = alg->degree(k2.a), d3 = alg->degree(k3.a);
                const int sign = parity_sign(popcount(k1.word) * (d2 + d3) + popcount(k2.word) * d3);
                for (const auto& [b, e] : alg->homotopy(k1.a, k2.a, k3.a))
                    accumulate(out, FormKey{b, dims, w}, c1 * c2 * c3 * e * sign);
            }
    return out;
}

// ---- supports ---------------------------------------------------------------

SupportElement support_zero(const std::vector<int>& supports, const std::vector<int>& dims, int degree) {
    SupportElement x;
    x.supports = supports;
    x.dims = dims;
    x.degree = degree;
    x.comp.assign(std::size_t{1} << supports.size(), {});
    return x;
}

SupportElement support_add(const SupportElement& x, const SupportElement& y, const mpq_class& c) {
    if (x.supports != y.supports) throw std::invalid_argument("support_add: different supports");
    SupportElement out = x;
    for (std::size_t S = 0; S < out.comp.size(); ++S) add_scaled(out.comp[S], y.comp[S], c);
    return out;
}

SupportElement support_d(const ProductModel& m, const SupportElement& x) {
    SupportElement out = support_zero(x.supports, x.dims, x.degree + 1);
    for (unsigned S = 0; S < out.comp.size(); ++S) {
        const unsigned labels = labels_of(x.supports, S);
        int j = 0;
        for (std::size_t i = 0; i < x.supports.size(); ++i) {
            if (!((S >> i) & 1u)) continue;
            add_scaled(out.comp[S], m.project(x.comp[S & ~(1u << i)], labels), parity_sign(j));
            ++j;
        }
        add_scaled(out.comp[S], m.project(m.d_deligne(x.comp[S]), labels), parity_sign(popcount(S)));
    }
    return out;
}

SupportElement support_delta(const ProductModel& m, const SupportElement& x) {
    SupportElement out = x;
    for (auto& c : out.comp) c = m.delta(c);
    return out;
}

SupportElement support_product(const ProductModel& m, const SupportElement& x, const SupportElement& y) {
    std::vector<int> supports = x.supports, dims = x.dims;
    supports.insert(supports.end(), y.supports.begin(), y.supports.end());
    dims.insert(dims.end(), y.dims.begin(), y.dims.end());
    SupportElement out = support_zero(supports, dims, x.degree + y.degree);
    const unsigned k1 = static_cast<unsigned>(x.supports.size());
    for (unsigned S = 0; S < x.comp.size(); ++S)
        for (unsigned T = 0; T < y.comp.size(); ++T) {
            const unsigned U = S | (T << k1);
            const unsigned labels = labels_of(supports, U);
            const int cech = popcount(T) * (x.degree - popcount(S));
            for (const auto& [k1key, c1] : x.comp[S]) {
                const int sign = parity_sign(m.cube_total(k1key) * y.degree + cech);
                add_scaled(out.comp[U], m.project(m.product({{k1key, c1}}, y.comp[T]), labels), sign);
            }
        }
    return out;
}

SupportElement support_homotopy(const ProductModel& m, const SupportElement& x, const SupportElement& y,
                                const SupportElement& z, bool literal) {
    std::vector<int> supports = x.supports, dims = x.dims;
    supports.insert(supports.end(), y.supports.begin(), y.supports.end());
    supports.insert(supports.end(), z.supports.begin(), z.supports.end());
    dims.insert(dims.end(), y.dims.begin(), y.dims.end());
    dims.insert(dims.end(), z.dims.begin(), z.dims.end());
    SupportElement out = support_zero(supports, dims, x.degree + y.degree + z.degree - 1);
    const unsigned k1 = static_cast<unsigned>(x.supports.size()), k2 = static_cast<unsigned>(y.supports.size());
    const int r = x.degree, s = y.degree, t = z.degree;
    for (unsigned S1 = 0; S1 < x.comp.size(); ++S1)
        for (unsigned S2 = 0; S2 < y.comp.size(); ++S2)
            for (unsigned S3 = 0; S3 < z.comp.size(); ++S3) {
                const unsigned U = S1 | (S2 << k1) | (S3 << (k1 + k2));
                const unsigned labels = labels_of(supports, U);
                const int p1 = popcount(S1), p2 = popcount(S2), p3 = popcount(S3);
                const int cech = p2 * (r - p1) + p3 * (r + s - p1 - p2) + (literal ? 0 : p1 + p2 + p3);
                for (const auto& [a, ca] : x.comp[S1])
                    for (const auto& [b, cb] : y.comp[S2]) {
                        const int n1 = m.cube_total(a), n2 = m.cube_total(b);
                        const int sign = parity_sign(n1 * s + (n1 + n2) * t + cech);
                        add_scaled(out.comp[U], m.project(m.homotopy({{a, ca}}, {{b, cb}}, z.comp[S3]), labels), sign);
                    }
            }
    return out;
}

SupportElement support_sigma(const ProductModel& m, const SupportElement& x) {
    if (x.supports.size() != 2) throw std::invalid_argument("support_sigma needs two supports");
    SupportElement out = support_zero({x.supports[1], x.supports[0]},
                                      x.dims.size() == 2 ? std::vector<int>{x.dims[1], x.dims[0]} : x.dims, x.degree);
    out.comp[0] = m.sigma(x.comp[0]);
    out.comp[1] = m.sigma(x.comp[2]);
    out.comp[2] = m.sigma(x.comp[1]);
    add_scaled(out.comp[3], m.sigma(x.comp[3]), -1);
    return out;
}

// ---- random elements --------------------------------------------------------

FormVec random_form(Rng& rng, const GradedAlgebra& A, const std::vector<int>& dims, int r, int terms) {
    int n = 0;
    for (int d : dims) n += d;
    std::vector<FormKey> candidates;
    for (std::size_t a = 0; a < A.size(); ++a) {
        const int pop = r - A.degree(a);
        if (pop < 0 || pop > n) continue;
        for (std::uint32_t w = 0; w < (1u << n); ++w)
            if (popcount(w) == pop) candidates.push_back({a, dims, w});
    }
    FormVec out;
    if (candidates.empty()) return out;
    for (int i = 0; i < terms; ++i) {
        const auto& k = candidates[rng.range(0, static_cast<long>(candidates.size()) - 1)];
        long c = rng.range(-3, 3);
        accumulate(out, k, mpq_class(c == 0 ? 1 : c));
    }
    return out;
}

SupportElement random_support_element(Rng& rng, const ProductModel& m, const std::vector<int>& supports,
                                      const std::vector<int>& dims, int r) {
    SupportElement x = support_zero(supports, dims, r);
    for (unsigned S = 0; S < x.comp.size(); ++S)
        x.comp[S] = m.project(random_form(rng, *m.alg, dims, r - popcount(S)), labels_of(supports, S));
    return x;
}

// ---- identity checks --------------------------------------------------------

namespace {

std::vector<FormKey> basis_forms(const GradedAlgebra& A, int n) {
    std::vector<FormKey> out;
    for (std::size_t a = 0; a < A.size(); ++a)
        for (std::uint32_t w = 0; w < (1u << n); ++w) out.push_back({a, {n}, w});
    return out;
}

int total_degree(const SupportElement& x) {
    int n = 0;
    for (int d : x.dims) n += d;
    return x.degree - n;
}

}  // namespace

Verdict verify_bullet_leibniz(const ProductModel& m, int max_n) {
    Verdict v;
    const auto& A = *m.alg;
    for (int n = 0; n <= max_n; ++n)
        for (int nn = 0; nn <= max_n; ++nn)
            for (const auto& kx : basis_forms(A, n))
                for (const auto& ky : basis_forms(A, nn)) {
                    FormVec x{{kx, 1}}, y{{ky, 1}};
                    const int r = m.form_degree(kx);
                    FormVec xy = m.bullet(x, y);
                    FormVec lhs = m.d_total(xy);
                    FormVec rhs = m.bullet(m.d_total(x), y);
                    add_scaled(rhs, m.bullet(x, m.d_total(y)), parity_sign(r + n));
                    v.expect(lhs == rhs, [&] {
                        return "Leibniz fails for " + key_string(A, kx) + " . " + key_string(A, ky) + ": " +
                               form_string(A, lhs) + " vs " + form_string(A, rhs);
                    });
                    v.expect(m.kappa(lhs) == m.d_total(m.kappa(xy)), [&] {
                        return "kappa does not commute with d on " + key_string(A, kx) + " . " + key_string(A, ky);
                    });
                    v.expect(m.d_total(m.d_total(x)).empty(), [&] { return "d_s^2 != 0 on " + key_string(A, kx); });
                }
    return v;
}

Verdict verify_support_pairing(const ProductModel& m, Rng& rng, int cases, int max_n) {
    Verdict v;
    const auto& A = *m.alg;
    for (int c = 0; c < cases; ++c) {
        const int n = static_cast<int>(rng.range(0, max_n)), mm = static_cast<int>(rng.range(0, max_n));
        const int r = static_cast<int>(rng.range(0, 4)), s = static_cast<int>(rng.range(0, 4));
        SupportElement x = random_support_element(rng, m, {0}, {n}, r);
        SupportElement y = random_support_element(rng, m, {1}, {mm}, s);
        SupportElement xy = support_product(m, x, y);
        SupportElement lhs = support_d(m, xy);
        SupportElement rhs = support_add(support_product(m, support_d(m, x), y), support_product(m, x, support_d(m, y)),
                                         parity_sign(r - n));
        v.expect(lhs == rhs, [&] {
            return "d_s(x.y) != d_s x.y + (-1)^{r-n} x.d_s y at (r,s,n,m)=(" + std::to_string(r) + "," +
                   std::to_string(s) + "," + std::to_string(n) + "," + std::to_string(mm) + "): " + support_string(A, lhs) +
                   " vs " + support_string(A, rhs);
        });
        SupportElement dl = support_delta(m, xy);
        SupportElement dr = support_zero(xy.supports, xy.dims, xy.degree);
        dr = support_add(dr, support_product(m, support_delta(m, x), y), parity_sign(s));
        dr = support_add(dr, support_product(m, x, support_delta(m, y)), parity_sign(n));
        v.expect(dl == dr, [&] {
            return "delta(x.y) != (-1)^s delta x.y + (-1)^n x.delta y at (r,s,n,m)=(" + std::to_string(r) + "," +
                   std::to_string(s) + "," + std::to_string(n) + "," + std::to_string(mm) + ")";
        });
        SupportElement dd = support_d(m, support_d(m, x));
        v.expect(std::all_of(dd.comp.begin(), dd.comp.end(), [](const FormVec& f) { return f.empty(); }),
                 [&] { return "D^2 != 0 on a support pair"; });
    }
    return v;
}

Verdict verify_triple_associativity(const ProductModel& m, Rng& rng, int cases, int max_n, bool literal) {
    Verdict v;
    const auto& A = *m.alg;
    std::vector<std::array<std::size_t, 3>> h_keys;
    for (const auto& [ijk, val] : A.h) h_keys.push_back(ijk);
    for (int c = 0; c < cases; ++c) {
        int n[3], r[3];
        // Half of the cases sit in degrees where the associator is nonzero.
        const bool aim = !h_keys.empty() && rng.chance(50);
        std::array<std::size_t, 3> target{};
        if (aim) target = h_keys[rng.range(0, static_cast<long>(h_keys.size()) - 1)];
        for (int i = 0; i < 3; ++i) {
            n[i] = static_cast<int>(rng.range(0, max_n));
            r[i] = aim ? A.degree(target[i]) + static_cast<int>(rng.range(0, n[i])) : static_cast<int>(rng.range(0, 4));
        }
        SupportElement x = random_support_element(rng, m, {0}, {n[0]}, r[0]);
        SupportElement y = random_support_element(rng, m, {1}, {n[1]}, r[1]);
        SupportElement z = random_support_element(rng, m, {2}, {n[2]}, r[2]);
        auto where = [&] {
            return "(r,s,t,n,m,d)=(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) +
                   "," + std::to_string(n[0]) + "," + std::to_string(n[1]) + "," + std::to_string(n[2]) + ")";
        };
        SupportElement xy = support_product(m, x, y), yz = support_product(m, y, z);
        SupportElement left = support_product(m, xy, z), right = support_product(m, x, yz);
        // Both triple pairings are chain maps for D.
        {
            SupportElement lhs = support_d(m, left);
            SupportElement rhs = support_add(support_product(m, support_d(m, xy), z),
                                             support_product(m, xy, support_d(m, z)), parity_sign(total_degree(xy)));
            v.expect(lhs == rhs, [&] { return "left triple pairing is not a chain map at " + where(); });
            lhs = support_d(m, right);
            rhs = support_add(support_product(m, support_d(m, x), yz), support_product(m, x, support_d(m, yz)),
                              parity_sign(total_degree(x)));
            v.expect(lhs == rhs, [&] { return "right triple pairing is not a chain map at " + where(); });
        }
        SupportElement diff = support_add(left, right, -1);
        SupportElement dh = support_d(m, support_homotopy(m, x, y, z, literal));
        SupportElement hd = support_homotopy(m, support_d(m, x), y, z, literal);
        hd = support_add(hd, support_homotopy(m, x, support_d(m, y), z, literal), parity_sign(total_degree(x)));
        hd = support_add(hd, support_homotopy(m, x, y, support_d(m, z), literal), parity_sign(total_degree(x) + total_degree(y)));
        SupportElement sum = support_add(dh, hd);
        v.expect(diff == sum, [&] {
            return "left - right != D H + H D at " + where() + ": " + support_string(A, diff) + " vs " +
                   support_string(A, sum);
        });
        // H is compatible with the cubical differential in the same way as the
        // iterated product: delta H = (-1)^{s+t} H(dx) + (-1)^{n+t} H(dy) + (-1)^{n+m} H(dz).
        SupportElement dH = support_delta(m, support_homotopy(m, x, y, z, literal));
        SupportElement Hd = support_zero(dH.supports, dH.dims, dH.degree);
        Hd = support_add(Hd, support_homotopy(m, support_delta(m, x), y, z, literal), parity_sign(r[1] + r[2]));
        Hd = support_add(Hd, support_homotopy(m, x, support_delta(m, y), z, literal), parity_sign(n[0] + r[2]));
        Hd = support_add(Hd, support_homotopy(m, x, y, support_delta(m, z), literal), parity_sign(n[0] + n[1]));
        v.expect(dH == Hd, [&] { return "H does not commute with delta at " + where(); });
        if (!m.alg->has_homotopy())
            v.expect(left == right, [&] { return "triple pairings differ with h = 0 at " + where(); });
    }
    return v;
}

Verdict verify_homotopy_structure(const GradedAlgebra& A) {
    Verdict v;
    for (const auto& [ijk, val] : A.h)
        for (const auto& [b, c] : val)
            v.expect(A.basis[b].degree < 2 * A.basis[b].weight, [&] {
                return "h(" + A.basis[ijk[0]].name + "," + A.basis[ijk[1]].name + "," + A.basis[ijk[2]].name +
                       ") has a component in top degree";
            });
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (A.basis[i].degree == 2 * A.basis[i].weight) top.push_back(i);
    for (auto i : top)
        for (auto j : top)
            for (auto k : top)
                v.expect(A.homotopy(i, j, k).empty(), [&] {
                    return "h nonzero on closed top-degree triple (" + A.basis[i].name + "," + A.basis[j].name + "," +
                           A.basis[k].name + ")";
                });
    return v;
}

Verdict verify_sigma_products(const ProductModel& m, Rng& rng, int cases, int max_n) {
    Verdict v;
    for (int c = 0; c < cases; ++c) {
        const int n = static_cast<int>(rng.range(0, max_n)), mm = static_cast<int>(rng.range(0, max_n));
        const int r = static_cast<int>(rng.range(0, 4)), s = static_cast<int>(rng.range(0, 4));
        const int sign = parity_sign((r - n) * (s - mm));
        FormVec x = random_form(rng, *m.alg, {n}, r), y = random_form(rng, *m.alg, {mm}, s);
        FormVec lhs = m.sigma(m.bullet(x, y)), rhs;
        add_scaled(rhs, m.bullet(y, x), sign);
        v.expect(lhs == rhs, [&] { return "sigma(x.y) != +-y.x on forms"; });
        v.expect(m.sigma(m.sigma(m.bullet(x, y))) == m.bullet(x, y), [&] { return "sigma is not an involution"; });
        SupportElement X = random_support_element(rng, m, {0}, {n}, r);
        SupportElement Y = random_support_element(rng, m, {1}, {mm}, s);
        SupportElement L = support_sigma(m, support_product(m, X, Y));
        SupportElement R = support_add(support_zero({1, 0}, {mm, n}, r + s), support_product(m, Y, X), sign);
        v.expect(L == R, [&] { return "sigma(x.y) != +-y.x on support pairs"; });
        SupportElement D1 = support_sigma(m, support_d(m, support_product(m, X, Y)));
        SupportElement D2 = support_d(m, L);
        v.expect(D1 == D2, [&] { return "sigma does not commute with D"; });
    }
    return v;
}

// ---- finite windows ---------------------------------------------------------

namespace {

std::vector<std::vector<int>> dims_for(CubeModelKind kind, int n) {
    if (kind == CubeModelKind::OneDirection) return {{n}};
    std::vector<std::vector<int>> out;
    for (int a = 0; a <= n; ++a) out.push_back({a, n - a});
    return out;
}

// Slots other than 1 and n+1 must carry dv (faces at 0 kill exactly those).
bool allowed00(const std::vector<int>& dims, std::uint32_t w) {
    const int n = dims[0] + dims[1];
    for (int g = 0; g < n; ++g)
        if (g != 0 && g != dims[0] && !((w >> g) & 1u)) return false;
    return true;
}

Matrix coords_of(const std::vector<FormKey>& keys, const std::vector<FormVec>& vecs, const std::string& where) {
    std::map<FormKey, std::size_t> pos;
    for (std::size_t i = 0; i < keys.size(); ++i) pos[keys[i]] = i;
    Matrix out(Domain::rationals(), keys.size(), vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (const auto& [k, c] : vecs[j]) {
            auto it = pos.find(k);
            if (it == pos.end()) throw std::logic_error(where + ": image leaves the window");
            out.set(it->second, j, c);
        }
    return out;
}

std::vector<FormVec> columns_as_forms(const std::vector<FormKey>& keys, const Matrix& e) {
    std::vector<FormVec> out(e.cols());
    for (std::size_t j = 0; j < e.cols(); ++j)
        for (std::size_t i = 0; i < e.rows(); ++i)
            if (e(i, j) != 0) out[j][keys[i]] = e(i, j);
    return out;
}

Matrix window_coords(const CubeTotalWindow& w, int k, const std::vector<FormVec>& vecs, const std::string& where) {
    auto kit = w.keys.find(k);
    if (kit == w.keys.end()) return Matrix(Domain::rationals(), 0, vecs.size());
    Matrix amb = coords_of(kit->second, vecs, where);
    auto sol = solve(w.embed.at(k), amb);
    if (!sol) throw std::logic_error(where + ": image is not in the truncated window");
    return *sol;
}

ChainMap window_map(const CubeTotalWindow& src, const CubeTotalWindow& tgt,
                    const std::function<FormVec(const FormVec&)>& f, const std::string& name) {
    std::map<int, Matrix> comps;
    for (int k = src.lo - 1; k <= src.hi + 1; ++k) {
        std::vector<FormVec> images;
        for (const auto& col : columns_as_forms(src.keys.at(k), src.embed.at(k))) images.push_back(f(col));
        comps[k] = window_coords(tgt, k, images, name);
    }
    return ChainMap(src.complex, tgt.complex, comps, name);
}

}  // namespace

CubeTotalWindow cube_total_window(const ProductModel& m, CubeModelKind kind, int p, int lo, int hi) {
    const auto& A = *m.alg;
    CubeTotalWindow w;
    w.kind = kind;
    w.p = p;
    w.lo = lo;
    w.hi = hi;
    const auto part = A.weight_part(p);
    const Domain Q = Domain::rationals();
    for (int k = lo - 1; k <= hi + 1; ++k) {
        std::vector<FormKey> keys;
        for (int n = std::max(0, -k); n <= 2 * p - k; ++n) {
            const int r = k + n;
            for (const auto& dims : dims_for(kind, n))
                for (auto a : part) {
                    const int pop = r - A.degree(a);
                    if (pop < 0 || pop > n) continue;
                    for (std::uint32_t word = 0; word < (1u << n); ++word) {
                        if (popcount(word) != pop) continue;
                        if (kind == CubeModelKind::TwoDirection00 && !allowed00(dims, word)) continue;
                        keys.push_back({a, dims, word});
                    }
                }
        }
        // Keys of Deligne degree 2p are replaced by the kernel of d_D.
        std::vector<std::size_t> low, top;
        for (std::size_t i = 0; i < keys.size(); ++i) (m.form_degree(keys[i]) == 2 * p ? top : low).push_back(i);
        Matrix embed_low(Q, keys.size(), low.size());
        for (std::size_t j = 0; j < low.size(); ++j) embed_low.set(low[j], j, 1);
        Matrix embed_top(Q, keys.size(), 0);
        if (!top.empty()) {
            std::vector<FormVec> images;
            std::set<FormKey> targets;
            for (auto i : top) {
                images.push_back(m.d_deligne({{keys[i], 1}}));
                for (const auto& [t, c] : images.back()) targets.insert(t);
            }
            Matrix dm = coords_of({targets.begin(), targets.end()}, images, "truncation");
            Matrix ker = targets.empty() ? Matrix::identity(Q, top.size()) : kernel(dm);
            embed_top = Matrix(Q, keys.size(), ker.cols());
            for (std::size_t i = 0; i < top.size(); ++i)
                for (std::size_t j = 0; j < ker.cols(); ++j) embed_top.set(top[i], j, ker(i, j));
        }
        w.embed[k] = Matrix::hstack(embed_low, embed_top);
        w.keys[k] = std::move(keys);
    }
    std::vector<std::size_t> ranks;
    std::vector<Matrix> diffs;
    for (int k = lo - 1; k <= hi + 1; ++k) {
        ranks.push_back(w.embed[k].cols());
        if (k == hi + 1) {
            diffs.push_back(Matrix(Q, 0, w.embed[k].cols()));
            continue;
        }
        std::vector<FormVec> images;
        for (const auto& col : columns_as_forms(w.keys[k], w.embed[k])) images.push_back(m.d_total(col));
        diffs.push_back(window_coords(w, k + 1, images, "total differential"));
    }
    w.complex = GradedComplex(Q, Orientation::Cochain, lo - 1, ranks, diffs);
    return w;
}

Verdict verify_window_quasi_isos(const ProductModel& m, int p, int lo, int hi) {
    Verdict v;
    auto one = cube_total_window(m, CubeModelKind::OneDirection, p, lo, hi);
    auto two = cube_total_window(m, CubeModelKind::TwoDirection, p, lo, hi);
    auto two00 = cube_total_window(m, CubeModelKind::TwoDirection00, p, lo, hi);
    ChainMap incl = window_map(two00, two, [](const FormVec& x) { return x; }, "i");
    ChainMap kap = window_map(two, one, [&](const FormVec& x) { return m.kappa(x); }, "kappa");
    v.merge(incl.verify(), "i");
    v.merge(kap.verify(), "kappa");
    if (!v.ok) return v;
    // Homology of the weight-p part of A itself, for comparison.
    const auto& A = *m.alg;
    const auto part = A.weight_part(p);
    auto alg_h = [&](int k) -> std::size_t {
        auto idx = [&](int deg) {
            std::vector<std::size_t> out;
            for (auto a : part)
                if (A.degree(a) == deg) out.push_back(a);
            return out;
        };
        auto dmat = [&](int deg) {
            auto src = idx(deg), tgt = idx(deg + 1);
            Matrix mm(Domain::rationals(), tgt.size(), src.size());
            for (std::size_t j = 0; j < src.size(); ++j)
                for (const auto& [b, c] : A.d[src[j]])
                    for (std::size_t i = 0; i < tgt.size(); ++i)
                        if (tgt[i] == b) mm.set(i, j, c);
            return mm;
        };
        std::size_t dim = idx(k).size();
        return dim - rank(dmat(k)) - rank(dmat(k - 1));
    };
    for (int k = lo; k <= hi; ++k) {
        const std::string at = " in degree " + std::to_string(k) + " (weight " + std::to_string(p) + ")";
        Matrix hi_ = induced_map(incl, k), hk = induced_map(kap, k);
        v.expect(hi_.rows() == hi_.cols() && (hi_.rows() == 0 || determinant(hi_) != 0),
                 [&] { return "i is not an isomorphism on homology" + at; });
        v.expect(hk.rows() == hk.cols() && (hk.rows() == 0 || determinant(hk) != 0),
                 [&] { return "kappa is not an isomorphism on homology" + at; });
        const std::size_t hk_dim = homology_basis(one.complex, k).dim();
        v.expect(hk_dim == alg_h(k), [&] {
            return "homology of the cube total complex differs from that of the algebra" + at + ": " +
                   std::to_string(hk_dim) + " vs " + std::to_string(alg_h(k));
        });
    }
    return v;
}

ProductModel make_model(const GradedAlgebra& A, const std::vector<std::string>& generators) {
    ProductModel m;
    m.alg = &A;
    for (const auto& g : generators) m.ideals.push_back(A.ideal_closure({A.index_of(g)}));
    return m;
}

}  // namespace hchow
