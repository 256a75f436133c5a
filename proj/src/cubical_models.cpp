#include "hchow/cubical_models.hpp"

#include <functional>
#include <map>

namespace hchow {

namespace {

// A cubical map from the n-cube to the k-cube: per target coordinate either a
// constant (0 or 1) or a source variable, encoded as 2 + (variable index - 1).
// Variables appear in strictly increasing order.
using CubeMapWord = std::vector<int>;

std::vector<CubeMapWord> enumerate_words(int k, int n) {
    std::vector<CubeMapWord> out;
    CubeMapWord cur;
    std::function<void(int, int)> rec = [&](int pos, int last_var) {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int c = 0; c <= 1; ++c) {
            cur.push_back(c);
            rec(pos + 1, last_var);
            cur.pop_back();
        }
        for (int v = last_var + 1; v <= n; ++v) {
            cur.push_back(2 + v - 1);
            rec(pos + 1, v);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

FacePattern pattern_of(const CubeMapWord& w) {
    FacePattern p;
    for (int c : w) p.push_back(c == 0 ? '0' : c == 1 ? '1' : '*');
    return p;
}

bool contained(const FacePattern& p, const std::vector<FacePattern>& gens) {
    for (const auto& g : gens) {
        bool ok = g.size() == p.size();
        for (std::size_t c = 0; ok && c < p.size(); ++c) ok = g[c] == '*' || g[c] == p[c];
        if (ok) return true;
    }
    return false;
}

CubeMapWord apply_face(const CubeMapWord& w, int i, int eps) {
    CubeMapWord r = w;
    for (int& c : r) {
        if (c < 2) continue;
        int v = c - 1;
        if (v == i) c = eps;
        else if (v > i) c = 2 + (v - 1) - 1;
    }
    return r;
}

CubeMapWord apply_degeneracy(const CubeMapWord& w, int i) {
    CubeMapWord r = w;
    for (int& c : r) {
        if (c < 2) continue;
        int v = c - 1;
        if (v >= i) c = 2 + (v + 1) - 1;
    }
    return r;
}

struct Levels {
    std::vector<std::vector<CubeMapWord>> words;
    std::vector<std::map<CubeMapWord, std::size_t>> index;
};

Levels build_levels(int k, int top, const std::vector<FacePattern>& gens, const std::vector<FacePattern>& quot) {
    Levels L;
    for (int n = 0; n <= top; ++n) {
        std::vector<CubeMapWord> ws;
        std::map<CubeMapWord, std::size_t> idx;
        for (auto& w : enumerate_words(k, n)) {
            FacePattern p = pattern_of(w);
            if (!contained(p, gens)) continue;
            if (!quot.empty() && contained(p, quot)) continue;
            idx[w] = ws.size();
            ws.push_back(w);
        }
        L.words.push_back(std::move(ws));
        L.index.push_back(std::move(idx));
    }
    return L;
}

}  // namespace

CubicalModule cube_subset_module(Domain dom, int k, int top, const std::vector<FacePattern>& generators,
                                 const std::vector<FacePattern>& quotient_by) {
    Levels L = build_levels(k, top, generators, quotient_by);
    std::vector<std::size_t> ranks;
    for (auto& ws : L.words) ranks.push_back(ws.size());
    CubicalModule c(dom, ranks);
    for (int n = 1; n <= top; ++n)
        for (int i = 1; i <= n; ++i)
            for (int e = 0; e <= 1; ++e) {
                Matrix m(dom, ranks[n - 1], ranks[n]);
                for (std::size_t s = 0; s < ranks[n]; ++s) {
                    auto it = L.index[n - 1].find(apply_face(L.words[n][s], i, e));
                    if (it != L.index[n - 1].end()) m.set(it->second, s, 1);
                }
                c.set_delta(n, i, e, std::move(m));
            }
    for (int n = 0; n < top; ++n)
        for (int i = 1; i <= n + 1; ++i) {
            Matrix m(dom, ranks[n + 1], ranks[n]);
            for (std::size_t s = 0; s < ranks[n]; ++s) {
                auto it = L.index[n + 1].find(apply_degeneracy(L.words[n][s], i));
                if (it != L.index[n + 1].end()) m.set(it->second, s, 1);
            }
            c.set_sigma(n, i, std::move(m));
        }
    c.name = "cube" + std::to_string(k);
    return c;
}

std::vector<Matrix> cube_subset_inclusion(Domain dom, int k, int top, const std::vector<FacePattern>& small,
                                          const std::vector<FacePattern>& big) {
    Levels A = build_levels(k, top, small, {}), B = build_levels(k, top, big, {});
    std::vector<Matrix> out;
    for (int n = 0; n <= top; ++n) {
        Matrix m(dom, B.words[n].size(), A.words[n].size());
        for (std::size_t s = 0; s < A.words[n].size(); ++s) {
            auto it = B.index[n].find(A.words[n][s]);
            if (it == B.index[n].end()) throw ShapeError("cube subset inclusion: small is not contained in big");
            m.set(it->second, s, 1);
        }
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

// Monomials of the multilinear model are bitmasks; bit (i-1) is t_i.
unsigned insert_bit(unsigned mask, int pos, unsigned bit) {
    // new coordinate at position pos (1-based); coordinates >= pos shift up
    unsigned low = mask & ((1u << (pos - 1)) - 1);
    unsigned high = mask >> (pos - 1);
    return low | (bit << (pos - 1)) | (high << pos);
}

unsigned remove_bit(unsigned mask, int pos) {
    unsigned low = mask & ((1u << (pos - 1)) - 1);
    unsigned high = mask >> pos;
    return low | (high << (pos - 1));
}

}  // namespace

CubicalModule multilinear_module(Domain dom, int top, ExtraDegeneracies* h) {
    std::vector<std::size_t> ranks;
    for (int n = 0; n <= top; ++n) ranks.push_back(std::size_t(1) << n);
    CubicalModule c(dom, ranks);
    for (int n = 1; n <= top; ++n)
        for (int i = 1; i <= n; ++i)
            for (int e = 0; e <= 1; ++e) {
                Matrix m(dom, ranks[n - 1], ranks[n]);
                for (unsigned s = 0; s < ranks[n]; ++s) {
                    bool has = s & (1u << (i - 1));
                    if (has && e == 0) continue;  // t_i at 0
                    m.set(remove_bit(s, i), s, 1);
                }
                c.set_delta(n, i, e, std::move(m));
            }
    for (int n = 0; n < top; ++n)
        for (int i = 1; i <= n + 1; ++i) {
            Matrix m(dom, ranks[n + 1], ranks[n]);
            for (unsigned s = 0; s < ranks[n]; ++s) m.set(insert_bit(s, i, 0), s, 1);
            c.set_sigma(n, i, std::move(m));
        }
    if (h) {
        h->h.clear();
        for (int n = 1; n < top; ++n)
            for (int j = 1; j <= n; ++j) {
                Matrix m(dom, ranks[n + 1], ranks[n]);
                for (unsigned s = 0; s < ranks[n]; ++s) {
                    if (!(s & (1u << (j - 1)))) {
                        m.set(insert_bit(s, j + 1, 0), s, 1);
                        continue;
                    }
                    // t_j -> t_j + t_{j+1} - t_j t_{j+1}
                    unsigned base = insert_bit(s, j + 1, 0);
                    unsigned tj = base, tj1 = (base & ~(1u << (j - 1))) | (1u << j), both = base | (1u << j);
                    m.add_to(tj, s, 1);
                    m.add_to(tj1, s, 1);
                    m.add_to(both, s, -1);
                }
                h->h[{n, j}] = std::move(m);
            }
    }
    c.name = "multilinear";
    return c;
}

CubicalModule constant_module(Domain dom, int top, ExtraDegeneracies* h) {
    std::vector<std::size_t> ranks(top + 1, 1);
    CubicalModule c(dom, ranks);
    Matrix one = Matrix::identity(dom, 1);
    for (int n = 1; n <= top; ++n)
        for (int i = 1; i <= n; ++i)
            for (int e = 0; e <= 1; ++e) c.set_delta(n, i, e, one);
    for (int n = 0; n < top; ++n)
        for (int i = 1; i <= n + 1; ++i) c.set_sigma(n, i, one);
    if (h) {
        h->h.clear();
        for (int n = 1; n < top; ++n)
            for (int j = 1; j <= n; ++j) h->h[{n, j}] = one;
    }
    c.name = "constant";
    return c;
}

namespace {

std::vector<FacePattern> random_faces(Rng& rng, int k, int count) {
    std::vector<FacePattern> out;
    for (int t = 0; t < count; ++t) {
        FacePattern p;
        for (int c = 0; c < k; ++c) {
            long r = rng.range(0, 3);
            p.push_back(r == 0 ? '0' : r == 1 ? '1' : '*');
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace

CubicalModule random_cubical_module(Rng& rng, Domain dom, int top) {
    int pieces = static_cast<int>(rng.range(1, 2));
    CubicalModule acc;
    bool first = true;
    for (int p = 0; p < pieces; ++p) {
        int k = static_cast<int>(rng.range(0, 2));
        CubicalModule piece;
        long kind = rng.range(0, 2);
        if (kind == 0 || k == 0) {
            piece = cube_subset_module(dom, k, top, random_faces(rng, k, static_cast<int>(rng.range(1, 3))));
        } else if (kind == 1) {
            piece = cube_subset_module(dom, k, top, {FacePattern(k, '*')});
        } else {
            piece = cube_subset_module(dom, k, top, {FacePattern(k, '*')}, random_faces(rng, k, static_cast<int>(rng.range(1, 3))));
        }
        acc = first ? piece : direct_sum(acc, piece);
        first = false;
    }
    CubicalModule out = recoordinatize(rng, acc);
    out.name = "random";
    return out;
}

CubicalCochainComplex random_cubical_cochain_complex(Rng& rng, Domain dom, int top) {
    int k = static_cast<int>(rng.range(1, 2));
    std::vector<FacePattern> small = random_faces(rng, k, static_cast<int>(rng.range(1, 2)));
    std::vector<FacePattern> big = small;
    for (auto& f : random_faces(rng, k, static_cast<int>(rng.range(1, 2)))) big.push_back(f);
    if (rng.chance(30)) big = {FacePattern(k, '*')};
    CubicalModule a = cube_subset_module(dom, k, top, small), b = cube_subset_module(dom, k, top, big);
    CubicalCochainComplex x = cubical_cone(a, b, cube_subset_inclusion(dom, k, top, small, big));
    return recoordinatize(rng, x);
}

}  // namespace hchow
