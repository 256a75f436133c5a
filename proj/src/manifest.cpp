/**
 * @file   manifest.cpp
 * @brief  Parser and printer for the manifest text format.
 */
#include "hchow/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

namespace hchow {

ParseError::ParseError(int l, int c, const std::string& msg, const std::string& src)
    : std::runtime_error((src.empty() ? "" : src + ": ") + "line " + std::to_string(l) + ", column " +
                         std::to_string(c) + ": " + msg),
      line(l),
      column(c),
      message(msg),
      source(src) {}

namespace {

struct Token {
    std::string text;
    int col = 0;
    bool quoted = false;
};

struct Line {
    int no = 0;
    std::string raw;
    std::vector<Token> toks;
};

std::vector<Token> tokenize(const std::string& s, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.col = static_cast<int>(i) + 1;
        if (c == '"') {
            std::size_t close = s.find('"', i + 1);
            if (close == std::string::npos) throw ParseError(lineno, t.col, "unterminated quoted matrix");
            t.text = s.substr(i + 1, close - i - 1);
            t.quoted = true;
            i = close + 1;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '"' && s[j] != '#') ++j;
            t.text = s.substr(i, j - i);
            i = j;
        }
        out.push_back(std::move(t));
    }
    return out;
}

[[noreturn]] void fail(const Line& l, std::size_t tok, const std::string& what) {
    int col = tok < l.toks.size() ? l.toks[tok].col : static_cast<int>(l.raw.size()) + 1;
    throw ParseError(l.no, col, what);
}

long to_long(const Line& l, std::size_t tok, const std::string& what) {
    if (tok >= l.toks.size()) fail(l, tok, "expected " + what);
    const std::string& s = l.toks[tok].text;
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) fail(l, tok, "expected " + what + ", found '" + s + "'");
    return v;
}

std::size_t to_size(const Line& l, std::size_t tok, const std::string& what) {
    long v = to_long(l, tok, what);
    if (v < 0) fail(l, tok, what + " must be nonnegative");
    return static_cast<std::size_t>(v);
}

void expect_word(const Line& l, std::size_t tok, const std::string& word) {
    if (tok >= l.toks.size() || l.toks[tok].quoted || l.toks[tok].text != word)
        fail(l, tok, "expected '" + word + "'" + (tok < l.toks.size() ? ", found '" + l.toks[tok].text + "'" : ""));
}

void expect_count(const Line& l, std::size_t n) {
    if (l.toks.size() > n) fail(l, n, "unexpected '" + l.toks[n].text + "'");
    if (l.toks.size() < n) fail(l, l.toks.size(), "line ends early");
}

// A matrix literal token; shape errors are reported at the token.
struct PendingMatrix {
    Line line;
    std::size_t tok = 0;
    Matrix build(Domain dom, std::size_t rows, std::size_t cols) const {
        const Token& t = line.toks.at(tok);
        if (!t.quoted) fail(line, tok, "matrix literal must be quoted");
        try {
            return Matrix::parse(dom, rows, cols, t.text);
        } catch (const std::exception& e) {
            fail(line, tok, std::string(e.what()) + " (expected " + std::to_string(rows) + "x" + std::to_string(cols) + ")");
        }
    }
};

Domain parse_field(const Line& l, std::size_t tok) {
    if (tok >= l.toks.size()) fail(l, tok, "expected a field");
    try {
        return Domain::parse(l.toks[tok].text);
    } catch (const std::exception& e) {
        fail(l, tok, e.what());
    }
}

std::string quote(const Matrix& m) { return "\"" + m.to_string() + "\""; }

const char* orientation_name(Orientation o) { return o == Orientation::Chain ? "chain" : "cochain"; }

class Parser {
public:
    explicit Parser(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            lines_.push_back({no, raw, tokenize(raw, no)});
        }
    }

    Manifest run() {
        while (pos_ < lines_.size()) {
            const Line& l = lines_[pos_++];
            if (l.toks.empty()) continue;
            const std::string& kw = l.toks[0].text;
            if (kw == "complex") complex_block(l);
            else if (kw == "cubical") cubical_block(l);
            else if (kw == "map") map_block(l);
            else if (kw == "diagram") diagram_block(l);
            else if (kw == "chow-diagram") chow_block(l);
            else if (kw == "algebra") algebra_block(l);
            else if (kw == "cube-map") cube_map_line(l);
            else
                fail(l, 0,
                     "unknown block '" + kw + "' (expected complex, cubical, map, diagram, chow-diagram, algebra or "
                     "cube-map)");
        }
        return std::move(m_);
    }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    Manifest m_;
    std::map<std::string, std::string> kinds_;  // name -> kind

    std::string declare(const Line& l, std::size_t tok, const std::string& kind) {
        if (tok >= l.toks.size() || l.toks[tok].quoted) fail(l, tok, "expected a name");
        const std::string& name = l.toks[tok].text;
        if (auto it = kinds_.find(name); it != kinds_.end())
            fail(l, tok, "'" + name + "' is already declared as a " + it->second);
        kinds_[name] = kind;
        m_.order.emplace_back(kind, name);
        return name;
    }

    const std::string& lookup(const Line& l, std::size_t tok, const std::string& kind) {
        if (tok >= l.toks.size()) fail(l, tok, "expected the name of a " + kind);
        const std::string& name = l.toks[tok].text;
        auto it = kinds_.find(name);
        if (it == kinds_.end()) fail(l, tok, "unknown name '" + name + "'");
        if (it->second != kind) fail(l, tok, "'" + name + "' is a " + it->second + ", expected a " + kind);
        return name;
    }

    // Lines of the block up to (excluding) `end`.
    std::vector<Line> body(const Line& header) {
        std::vector<Line> out;
        while (pos_ < lines_.size()) {
            const Line& l = lines_[pos_++];
            if (!l.toks.empty() && l.toks[0].text == "end" && !l.toks[0].quoted) {
                expect_count(l, 1);
                return out;
            }
            out.push_back(l);
        }
        fail(header, 0, "missing 'end' for " + header.toks[0].text + " block");
    }

    void complex_block(const Line& h) {
        expect_count(h, 2);
        std::string name = declare(h, 1, "complex");
        std::optional<Domain> dom;
        Orientation o = Orientation::Chain;
        std::map<int, std::size_t> ranks;
        std::map<int, PendingMatrix> diffs;
        for (const Line& l : body(h)) {
            if (l.toks.empty()) continue;
            const std::string& kw = l.toks[0].text;
            if (kw == "field") {
                expect_count(l, 2);
                dom = parse_field(l, 1);
            } else if (kw == "orientation") {
                expect_count(l, 2);
                if (l.toks[1].text == "chain") o = Orientation::Chain;
                else if (l.toks[1].text == "cochain") o = Orientation::Cochain;
                else fail(l, 1, "orientation is 'chain' or 'cochain'");
            } else if (kw == "degree") {
                expect_count(l, 4);
                int k = static_cast<int>(to_long(l, 1, "a degree"));
                expect_word(l, 2, "rank");
                if (ranks.count(k)) fail(l, 1, "degree " + std::to_string(k) + " given twice");
                ranks[k] = to_size(l, 3, "a rank");
            } else if (kw == "d") {
                expect_count(l, 4);
                int k = static_cast<int>(to_long(l, 1, "a degree"));
                expect_word(l, 2, ":");
                if (diffs.count(k)) fail(l, 1, "d " + std::to_string(k) + " given twice");
                diffs[k] = PendingMatrix{l, 3};
            } else {
                fail(l, 0, "unknown complex entry '" + kw + "' (expected field, orientation, degree or d)");
            }
        }
        if (!dom) fail(h, 0, "complex " + name + " has no field");
        int step = o == Orientation::Chain ? -1 : 1;
        GradedComplex c = GradedComplex::zero(*dom, o);
        if (!ranks.empty()) {
            int lo = ranks.begin()->first, hi = ranks.rbegin()->first;
            auto rank = [&](int k) { return ranks.count(k) ? ranks[k] : std::size_t{0}; };
            std::vector<std::size_t> rv;
            std::vector<Matrix> dv;
            for (int k = lo; k <= hi; ++k) {
                rv.push_back(rank(k));
                auto it = diffs.find(k);
                dv.push_back(it == diffs.end() ? Matrix::zero(*dom, rank(k + step), rank(k))
                                               : it->second.build(*dom, rank(k + step), rank(k)));
            }
            for (const auto& [k, pm] : diffs)
                if (k < lo || k > hi) pm.build(*dom, rank(k + step), rank(k));
            try {
                c = GradedComplex(*dom, o, lo, rv, dv);
            } catch (const std::exception& e) {
                fail(h, 1, "complex " + name + ": " + e.what());
            }
        } else {
            for (const auto& [k, pm] : diffs) pm.build(*dom, 0, 0);
        }
        c.name = name;
        m_.complexes[name] = c;
    }

    void cubical_block(const Line& h) {
        expect_count(h, 2);
        std::string name = declare(h, 1, "cubical module");
        std::optional<Domain> dom;
        std::map<int, std::size_t> ranks;
        std::map<std::tuple<int, int, int>, PendingMatrix> faces;
        std::map<std::pair<int, int>, PendingMatrix> degens;
        for (const Line& l : body(h)) {
            if (l.toks.empty()) continue;
            const std::string& kw = l.toks[0].text;
            if (kw == "field") {
                expect_count(l, 2);
                dom = parse_field(l, 1);
            } else if (kw == "level") {
                expect_count(l, 4);
                int n = static_cast<int>(to_size(l, 1, "a level"));
                expect_word(l, 2, "rank");
                if (ranks.count(n)) fail(l, 1, "level " + std::to_string(n) + " given twice");
                ranks[n] = to_size(l, 3, "a rank");
            } else if (kw == "face") {
                expect_count(l, 6);
                auto key = std::make_tuple(static_cast<int>(to_long(l, 1, "a level")),
                                           static_cast<int>(to_long(l, 2, "an index")),
                                           static_cast<int>(to_long(l, 3, "0 or 1")));
                expect_word(l, 4, ":");
                if (!faces.emplace(key, PendingMatrix{l, 5}).second) fail(l, 1, "face given twice");
            } else if (kw == "degeneracy") {
                expect_count(l, 5);
                auto key = std::make_pair(static_cast<int>(to_long(l, 1, "a level")),
                                          static_cast<int>(to_long(l, 2, "an index")));
                expect_word(l, 3, ":");
                if (!degens.emplace(key, PendingMatrix{l, 4}).second) fail(l, 1, "degeneracy given twice");
            } else {
                fail(l, 0, "unknown cubical entry '" + kw + "' (expected field, level, face or degeneracy)");
            }
        }
        if (!dom) fail(h, 0, "cubical module " + name + " has no field");
        std::vector<std::size_t> rv;
        for (const auto& [n, r] : ranks) {
            if (n != static_cast<int>(rv.size())) fail(h, 1, "levels of " + name + " must be 0, 1, ... without gaps");
            rv.push_back(r);
        }
        CubicalModule c(*dom, rv);
        auto rank = [&](int n) { return c.rank(n); };
        for (const auto& [key, pm] : faces) {
            auto [n, i, j] = key;
            if (n < 1 || n > c.top() || i < 1 || i > n || (j != 0 && j != 1))
                fail(pm.line, 1, "face index out of range");
            c.set_delta(n, i, j, pm.build(*dom, rank(n - 1), rank(n)));
        }
        for (const auto& [key, pm] : degens) {
            auto [n, i] = key;
            if (n < 0 || n >= c.top() || i < 1 || i > n + 1) fail(pm.line, 1, "degeneracy index out of range");
            c.set_sigma(n, i, pm.build(*dom, rank(n + 1), rank(n)));
        }
        Verdict v = c.verify();
        if (!v.ok) fail(h, 1, "cubical module " + name + ": " + v.failure);
        c.name = name;
        m_.cubicals[name] = c;
    }

    void map_block(const Line& h) {
        expect_count(h, 6);
        std::string name = declare(h, 1, "map");
        expect_word(h, 2, ":");
        expect_word(h, 4, "->");
        NamedMap nm;
        nm.source = h.toks[3].text;
        nm.target = h.toks[5].text;
        std::map<int, PendingMatrix> comps;
        std::optional<std::size_t> role_line;
        std::vector<Line> lines = body(h);
        for (std::size_t idx = 0; idx < lines.size(); ++idx) {
            const Line& l = lines[idx];
            if (l.toks.empty()) continue;
            const std::string& kw = l.toks[0].text;
            if (kw == "role") {
                expect_count(l, 2);
                if (l.toks[1].text == "chain") nm.role = MapRole::Chain;
                else if (l.toks[1].text == "cubical") nm.role = MapRole::Cubical;
                else fail(l, 1, "role is 'chain' or 'cubical'");
                role_line = idx;
            } else if (kw == "at") {
                expect_count(l, 4);
                int k = static_cast<int>(to_long(l, 1, "a degree"));
                expect_word(l, 2, ":");
                if (!comps.emplace(k, PendingMatrix{l, 3}).second) fail(l, 1, "component given twice");
            } else {
                fail(l, 0, "unknown map entry '" + kw + "' (expected role or at)");
            }
        }
        const std::string want = nm.role == MapRole::Chain ? "complex" : "cubical module";
        const Line& rl = role_line ? lines[*role_line] : h;
        for (std::size_t tok : {std::size_t{3}, std::size_t{5}}) {
            auto it = kinds_.find(h.toks[tok].text);
            if (it == kinds_.end()) fail(h, tok, "unknown name '" + h.toks[tok].text + "'");
            if (it->second != want)
                fail(rl, role_line ? 1 : 0,
                     "map " + name + " has role " + (nm.role == MapRole::Chain ? "chain" : "cubical") + " but '" +
                         h.toks[tok].text + "' is a " + it->second);
        }
        if (nm.role == MapRole::Chain) {
            const GradedComplex &s = m_.complexes.at(nm.source), &t = m_.complexes.at(nm.target);
            if (!(s.domain() == t.domain())) fail(h, 5, "source and target of " + name + " have different fields");
            std::map<int, Matrix> mats;
            for (const auto& [k, pm] : comps) mats.emplace(k, pm.build(s.domain(), t.rank(k), s.rank(k)));
            try {
                nm.chain = ChainMap(s, t, mats, name);
            } catch (const std::exception& e) {
                fail(h, 1, "map " + name + ": " + e.what());
            }
            Verdict v = nm.chain.verify();
            if (!v.ok) fail(h, 1, "map " + name + " is not a chain map: " + v.failure);
        } else {
            const CubicalModule &s = m_.cubicals.at(nm.source), &t = m_.cubicals.at(nm.target);
            if (!(s.domain() == t.domain())) fail(h, 5, "source and target of " + name + " have different fields");
            if (s.top() != t.top()) fail(h, 5, "source and target of " + name + " have different top levels");
            for (int n = 0; n <= s.top(); ++n) nm.levels.push_back(Matrix::zero(s.domain(), t.rank(n), s.rank(n)));
            for (const auto& [n, pm] : comps) {
                if (n < 0 || n > s.top()) fail(pm.line, 1, "level out of range");
                nm.levels[n] = pm.build(s.domain(), t.rank(n), s.rank(n));
            }
            for (int n = 1; n <= s.top(); ++n)
                for (int i = 1; i <= n; ++i)
                    for (int j = 0; j <= 1; ++j)
                        if (t.delta(n, i, j) * nm.levels[n] != nm.levels[n - 1] * s.delta(n, i, j))
                            fail(h, 1, "map " + name + " does not commute with the face (" + std::to_string(n) + ", " +
                                           std::to_string(i) + ", " + std::to_string(j) + ")");
            for (int n = 0; n < s.top(); ++n)
                for (int i = 1; i <= n + 1; ++i)
                    if (t.sigma(n, i) * nm.levels[n] != nm.levels[n + 1] * s.sigma(n, i))
                        fail(h, 1, "map " + name + " does not commute with the degeneracy (" + std::to_string(n) + ", " +
                                       std::to_string(i) + ")");
        }
        m_.maps[name] = nm;
    }

    const ChainMap& chain_ref(const Line& l, std::size_t tok) {
        const std::string& name = lookup(l, tok, "map");
        const NamedMap& nm = m_.maps.at(name);
        if (nm.role != MapRole::Chain) fail(l, tok, "map '" + name + "' has role cubical, expected chain");
        return nm.chain;
    }

    void diagram_block(const Line& h) {
        expect_count(h, 2);
        std::string name = declare(h, 1, "diagram");
        static const std::regex slot("([ABfg])([0-9]+)");
        std::map<char, std::map<int, std::pair<Line, std::string>>> slots;
        for (const Line& l : body(h)) {
            if (l.toks.empty()) continue;
            std::smatch sm;
            if (!std::regex_match(l.toks[0].text, sm, slot))
                fail(l, 0, "unknown diagram entry '" + l.toks[0].text + "' (expected A1, B1, f1, g1, ...)");
            expect_count(l, 2);
            char kind = sm[1].str()[0];
            int i = std::stoi(sm[2].str());
            if (!slots[kind].emplace(i, std::make_pair(l, l.toks[1].text)).second) fail(l, 0, "slot given twice");
        }
        std::size_t n = slots['B'].size();
        if (n == 0) fail(h, 1, "diagram " + name + " has no B pieces");
        auto need = [&](char kind, std::size_t count) {
            std::size_t want = 1;
            for (const auto& [i, e] : slots[kind]) {
                if (static_cast<std::size_t>(i) != want) fail(e.first, 0, std::string(1, kind) + " pieces must be numbered 1, 2, ...");
                ++want;
            }
            if (slots[kind].size() != count)
                fail(h, 1, "diagram " + name + " with " + std::to_string(n) + " B pieces needs " + std::to_string(count) +
                               " " + std::string(1, kind) + " entries");
        };
        need('A', n + 1);
        need('B', n);
        need('f', n);
        need('g', n);
        DiagramSpec spec;
        for (auto& [i, e] : slots['A']) spec.A.push_back(lookup(e.first, 1, "complex"));
        for (auto& [i, e] : slots['B']) spec.B.push_back(lookup(e.first, 1, "complex"));
        for (auto& [i, e] : slots['f']) {
            const ChainMap& f = chain_ref(e.first, 1);
            const NamedMap& nm = m_.maps.at(e.second);
            if (nm.source != spec.A[i - 1] || nm.target != spec.B[i - 1])
                fail(e.first, 1, "f" + std::to_string(i) + " must go from A" + std::to_string(i) + " to B" + std::to_string(i));
            (void)f;
            spec.f.push_back(e.second);
        }
        for (auto& [i, e] : slots['g']) {
            chain_ref(e.first, 1);
            const NamedMap& nm = m_.maps.at(e.second);
            if (nm.source != spec.A[i] || nm.target != spec.B[i - 1])
                fail(e.first, 1, "g" + std::to_string(i) + " must go from A" + std::to_string(i + 1) + " to B" + std::to_string(i));
            spec.g.push_back(e.second);
        }
        m_.diagrams[name] = spec;
        try {
            m_.diagram(name);
        } catch (const std::exception& e) {
            fail(h, 1, "diagram " + name + ": " + e.what());
        }
    }

    void chow_block(const Line& h) {
        expect_count(h, 2);
        std::string name = declare(h, 1, "chow-diagram");
        ChowSpec spec;
        std::map<std::string, std::string*> complex_slots = {{"cycles", &spec.cycles}, {"cohomology", &spec.cohomology},
                                                             {"supports", &spec.supports}, {"deligne", &spec.deligne},
                                                             {"top", &spec.top}};
        std::map<std::string, std::string*> map_slots = {{"f1", &spec.f1}, {"g1", &spec.g1}, {"rho", &spec.rho}, {"i", &spec.i}};
        for (const Line& l : body(h)) {
            if (l.toks.empty()) continue;
            const std::string& kw = l.toks[0].text;
            expect_count(l, 2);
            std::string* target = nullptr;
            if (auto it = complex_slots.find(kw); it != complex_slots.end()) {
                target = it->second;
                lookup(l, 1, "complex");
            } else if (auto jt = map_slots.find(kw); jt != map_slots.end()) {
                target = jt->second;
                chain_ref(l, 1);
            } else {
                fail(l, 0, "unknown chow-diagram entry '" + kw + "'");
            }
            if (!target->empty()) fail(l, 0, "'" + kw + "' given twice");
            *target = l.toks[1].text;
        }
        for (const auto& [k, p] : complex_slots)
            if (p->empty()) fail(h, 1, "chow-diagram " + name + " is missing '" + k + "'");
        for (const auto& [k, p] : map_slots)
            if (p->empty()) fail(h, 1, "chow-diagram " + name + " is missing '" + k + "'");
        auto endpoints = [&](const std::string& slot, const std::string& map, const std::string& s, const std::string& t) {
            const NamedMap& nm = m_.maps.at(map);
            if (nm.source != s || nm.target != t)
                fail(h, 1, "chow-diagram " + name + ": " + slot + " = " + map + " must go from " + s + " to " + t);
        };
        endpoints("f1", spec.f1, spec.cycles, spec.cohomology);
        endpoints("g1", spec.g1, spec.supports, spec.cohomology);
        endpoints("rho", spec.rho, spec.supports, spec.deligne);
        endpoints("i", spec.i, spec.top, spec.deligne);
        m_.chow_diagrams[name] = spec;
        try {
            m_.chow_diagram(name);
        } catch (const std::exception& e) {
            fail(h, 1, e.what());
        }
    }

    void algebra_block(const Line& h) {
        expect_count(h, 2);
        std::string name = declare(h, 1, "algebra");
        std::string text = "algebra " + name + "\n";
        for (const Line& l : body(h)) text += l.raw + "\n";
        try {
            GradedAlgebra A = GradedAlgebra::parse(text);
            Verdict v = A.verify();
            if (!v.ok) fail(h, 1, "algebra " + name + ": " + v.failure);
            m_.algebras[name] = A;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            // The algebra parser counts lines from the header.
            std::string what = e.what();
            static const std::regex rel("algebra text line ([0-9]+): (.*)");
            std::smatch sm;
            if (std::regex_match(what, sm, rel)) throw ParseError(h.no + std::stoi(sm[1].str()) - 1, 1, sm[2].str());
            fail(h, 1, "algebra " + name + ": " + what);
        }
    }

    void cube_map_line(const Line& h) {
        if (h.toks.size() < 4) fail(h, h.toks.size(), "expected: cube-map NAME : map A->B : ...");
        std::string name = declare(h, 1, "cube map");
        expect_word(h, 2, ":");
        std::string rest = h.raw.substr(static_cast<std::size_t>(h.toks[3].col - 1));
        if (auto hash = rest.find('#'); hash != std::string::npos) rest.erase(hash);
        try {
            m_.cube_maps[name] = CubeMap::parse(rest);
        } catch (const std::exception& e) {
            fail(h, 3, e.what());
        }
    }
};

bool same_complex(const GradedComplex& a, const GradedComplex& b) {
    return a.domain() == b.domain() && a.orientation() == b.orientation() && a == b;
}

bool same_cubical(const CubicalModule& a, const CubicalModule& b) {
    if (!(a.domain() == b.domain()) || a.top() != b.top()) return false;
    for (int n = 0; n <= a.top(); ++n)
        if (a.rank(n) != b.rank(n)) return false;
    for (int n = 1; n <= a.top(); ++n)
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j <= 1; ++j)
                if (a.delta(n, i, j) != b.delta(n, i, j)) return false;
    for (int n = 0; n < a.top(); ++n)
        for (int i = 1; i <= n + 1; ++i)
            if (a.sigma(n, i) != b.sigma(n, i)) return false;
    return true;
}

bool same_map(const NamedMap& a, const NamedMap& b) {
    if (a.source != b.source || a.target != b.target || a.role != b.role) return false;
    if (a.role == MapRole::Cubical) return a.levels == b.levels;
    const GradedComplex& s = a.chain.source;
    for (int k = s.lo(); k <= s.hi(); ++k)
        if (a.chain.at(k) != b.chain.at(k)) return false;
    return true;
}

bool same_algebra(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (a.name != b.name || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.basis[i].name != b.basis[i].name || a.basis[i].degree != b.basis[i].degree ||
            a.basis[i].weight != b.basis[i].weight)
            return false;
    return a.d == b.d && a.mul == b.mul && a.h == b.h;
}

template <class M, class Eq>
bool same_maps(const M& a, const M& b, Eq eq) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || !eq(v, it->second)) return false;
    }
    return true;
}

}  // namespace

const GradedComplex& Manifest::complex(const std::string& name) const {
    auto it = complexes.find(name);
    if (it == complexes.end()) throw std::out_of_range("no complex named '" + name + "'");
    return it->second;
}

const ChainMap& Manifest::chain_map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end() || it->second.role != MapRole::Chain) throw std::out_of_range("no chain map named '" + name + "'");
    return it->second.chain;
}

Diagram Manifest::diagram(const std::string& name) const {
    auto it = diagrams.find(name);
    if (it == diagrams.end()) throw std::out_of_range("no diagram named '" + name + "'");
    const DiagramSpec& s = it->second;
    std::vector<GradedComplex> A, B;
    std::vector<ChainMap> f, g;
    for (const auto& x : s.A) A.push_back(complex(x));
    for (const auto& x : s.B) B.push_back(complex(x));
    for (const auto& x : s.f) f.push_back(chain_map(x));
    for (const auto& x : s.g) g.push_back(chain_map(x));
    return make_diagram(A, B, f, g);
}

ChowDiagram Manifest::chow_diagram(const std::string& name) const {
    auto it = chow_diagrams.find(name);
    if (it == chow_diagrams.end()) throw std::out_of_range("no chow-diagram named '" + name + "'");
    const ChowSpec& s = it->second;
    return build_chow_diagram(complex(s.cycles), complex(s.cohomology), complex(s.supports), complex(s.deligne),
                              complex(s.top), chain_map(s.f1), chain_map(s.g1), chain_map(s.rho), chain_map(s.i));
}

std::string Manifest::to_text() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [kind, name] : order) {
        if (!first) os << "\n";
        first = false;
        if (kind == "complex") {
            const GradedComplex& c = complexes.at(name);
            os << "complex " << name << "\n  field " << c.domain().name() << "\n  orientation "
               << orientation_name(c.orientation()) << "\n";
            if (c.total_rank() > 0 || c.lo() <= c.hi())
                for (int k = c.lo(); k <= c.hi(); ++k) os << "  degree " << k << " rank " << c.rank(k) << "\n";
            for (int k = c.lo(); k <= c.hi(); ++k)
                if (!c.d(k).is_zero()) os << "  d " << k << " : " << quote(c.d(k)) << "\n";
            os << "end\n";
        } else if (kind == "cubical module") {
            const CubicalModule& c = cubicals.at(name);
            os << "cubical " << name << "\n  field " << c.domain().name() << "\n";
            for (int n = 0; n <= c.top(); ++n) os << "  level " << n << " rank " << c.rank(n) << "\n";
            for (int n = 1; n <= c.top(); ++n)
                for (int i = 1; i <= n; ++i)
                    for (int j = 0; j <= 1; ++j)
                        if (!c.delta(n, i, j).is_zero())
                            os << "  face " << n << " " << i << " " << j << " : " << quote(c.delta(n, i, j)) << "\n";
            for (int n = 0; n < c.top(); ++n)
                for (int i = 1; i <= n + 1; ++i)
                    if (!c.sigma(n, i).is_zero()) os << "  degeneracy " << n << " " << i << " : " << quote(c.sigma(n, i)) << "\n";
            os << "end\n";
        } else if (kind == "map") {
            const NamedMap& m = maps.at(name);
            os << "map " << name << " : " << m.source << " -> " << m.target << "\n  role "
               << (m.role == MapRole::Chain ? "chain" : "cubical") << "\n";
            if (m.role == MapRole::Chain) {
                const GradedComplex& s = m.chain.source;
                for (int k = s.lo(); k <= s.hi(); ++k)
                    if (!m.chain.at(k).is_zero()) os << "  at " << k << " : " << quote(m.chain.at(k)) << "\n";
            } else {
                for (std::size_t n = 0; n < m.levels.size(); ++n)
                    if (!m.levels[n].is_zero()) os << "  at " << n << " : " << quote(m.levels[n]) << "\n";
            }
            os << "end\n";
        } else if (kind == "diagram") {
            const DiagramSpec& d = diagrams.at(name);
            os << "diagram " << name << "\n";
            for (std::size_t i = 0; i < d.A.size(); ++i) os << "  A" << i + 1 << " " << d.A[i] << "\n";
            for (std::size_t i = 0; i < d.B.size(); ++i) os << "  B" << i + 1 << " " << d.B[i] << "\n";
            for (std::size_t i = 0; i < d.f.size(); ++i) os << "  f" << i + 1 << " " << d.f[i] << "\n";
            for (std::size_t i = 0; i < d.g.size(); ++i) os << "  g" << i + 1 << " " << d.g[i] << "\n";
            os << "end\n";
        } else if (kind == "chow-diagram") {
            const ChowSpec& s = chow_diagrams.at(name);
            os << "chow-diagram " << name << "\n  cycles " << s.cycles << "\n  cohomology " << s.cohomology
               << "\n  supports " << s.supports << "\n  deligne " << s.deligne << "\n  top " << s.top << "\n  f1 "
               << s.f1 << "\n  g1 " << s.g1 << "\n  rho " << s.rho << "\n  i " << s.i << "\nend\n";
        } else if (kind == "algebra") {
            std::string text = algebras.at(name).to_text();
            std::istringstream in(text);
            std::string line;
            std::getline(in, line);  // the algebra header
            os << "algebra " << name << "\n";
            while (std::getline(in, line)) os << "  " << line << "\n";
            os << "end\n";
        } else if (kind == "cube map") {
            os << "cube-map " << name << " : " << cube_maps.at(name).to_string() << "\n";
        }
    }
    return os.str();
}

Manifest Manifest::parse(const std::string& text) { return Parser(text).run(); }

Manifest Manifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(e.line, e.column, e.message, path);
    }
}

bool operator==(const Manifest& a, const Manifest& b) {
    return a.order == b.order && same_maps(a.complexes, b.complexes, same_complex) &&
           same_maps(a.cubicals, b.cubicals, same_cubical) && same_maps(a.maps, b.maps, same_map) &&
           a.diagrams == b.diagrams && a.chow_diagrams == b.chow_diagrams &&
           same_maps(a.algebras, b.algebras, same_algebra) && a.cube_maps == b.cube_maps;
}

Verdict verify_round_trip(const Manifest& m) {
    Verdict v;
    std::string text = m.to_text();
    Manifest back;
    try {
        back = Manifest::parse(text);
    } catch (const std::exception& e) {
        v.expect(false, [&] { return std::string("printed manifest does not parse: ") + e.what(); });
        return v;
    }
    v.expect(back == m, [] { return std::string("parse(print(x)) differs from x"); });
    v.expect(back.to_text() == text, [] { return std::string("print(parse(print(x))) differs from print(x)"); });
    return v;
}

Verdict verify_corpus_round_trips(const std::string& dir) {
    namespace fs = std::filesystem;
    Verdict v;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir, ec))
        if (e.path().extension() == ".hc") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    v.expect(!files.empty(), [&] { return "no .hc manifests in '" + dir + "'"; });
    for (const auto& f : files) {
        try {
            Manifest m = Manifest::load(f.string());
            v.merge(verify_round_trip(m), f.filename().string());
        } catch (const std::exception& e) {
            v.expect(false, [&] { return f.filename().string() + ": " + e.what(); });
        }
    }
    return v;
}

}  // namespace hchow
