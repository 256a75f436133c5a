/**
 * @file   complex.hpp
 * @brief  Bounded graded complexes of finite free modules, chain maps, and the
 *         standard constructions on them (homology, simple, translation,
 *         truncation, tensor product, long exact sequences).
 *
 * A single convention covers chain and cochain complexes. The differential
 * d_k goes from degree k to degree k + step(), where step() is -1 for chain
 * complexes and +1 for cochain complexes.
 */
#pragma once

#include "hchow/linalg.hpp"
#include "hchow/verdict.hpp"

#include <map>
#include <string>
#include <vector>

namespace hchow {

enum class Orientation { Chain, Cochain };

class GradedComplex {
public:
    GradedComplex() = default;
    // ranks[i] and diffs[i] describe degree lo + i. diffs[i] must have shape
    // rank(lo + i + step) x rank(lo + i). Throws on shape errors or d*d != 0.
    GradedComplex(Domain dom, Orientation o, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs);

    static GradedComplex zero(Domain dom, Orientation o) { return GradedComplex(dom, o, 0, {}, {}); }

    const Domain& domain() const { return dom_; }
    Orientation orientation() const { return orient_; }
    int step() const { return orient_ == Orientation::Chain ? -1 : 1; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool in_range(int k) const { return k >= lo_ && k <= hi(); }
    std::size_t rank(int k) const { return in_range(k) ? ranks_[k - lo_] : 0; }
    std::size_t total_rank() const;
    // d_k : C_k -> C_{k+step}, zero matrix of the right shape outside the range.
    Matrix d(int k) const;
    // The incoming differential into degree k.
    Matrix d_in(int k) const { return d(k - step()); }

    bool operator==(const GradedComplex& o) const;
    // Same data with entries reinterpreted in another domain.
    GradedComplex in_domain(Domain d) const;

    std::string name;

private:
    Domain dom_;
    Orientation orient_ = Orientation::Chain;
    int lo_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<Matrix> diffs_;
};

struct ChainMap {
    GradedComplex source, target;
    std::map<int, Matrix> comps;  // f_k : source_k -> target_k; missing means zero
    std::string name;

    ChainMap() = default;
    ChainMap(GradedComplex s, GradedComplex t, std::map<int, Matrix> c, std::string n = {});

    Matrix at(int k) const;
    // Shape and commutation check d f = f d in every degree.
    Verdict verify() const;

    static ChainMap identity(const GradedComplex& c);
    static ChainMap zero(const GradedComplex& s, const GradedComplex& t);
};

ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
ChainMap negate(const ChainMap& f);
ChainMap subtract(const ChainMap& f, const ChainMap& g);

// ---- homology ------------------------------------------------------------

struct HomologyGroup {
    Domain dom;
    std::size_t free_rank = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1, over Z only

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const {
        return dom == o.dom && free_rank == o.free_rank && torsion == o.torsion;
    }
    std::string to_string() const;  // "0", "Z", "Q^2", "Z + Z/2", ...
};

HomologyGroup homology(const GradedComplex& c, int k);

// Explicit cycle representatives and class coordinates (field domains).
struct HomologyBasis {
    Matrix boundaries;  // basis of B_k
    Matrix reps;        // cycles completing B_k to a basis of Z_k
    Matrix cycles;      // basis of Z_k
    std::size_t dim() const { return reps.cols(); }
    // Coordinates of the classes of the given cycles (columns).
    Matrix classes_of(const Matrix& cycles) const;
    // True when every column is a boundary.
    bool all_boundaries(const Matrix& vectors) const;
};

HomologyBasis homology_basis(const GradedComplex& c, int k);
// Matrix of H_k(f) in the representative bases.
Matrix induced_map(const HomologyBasis& src, const HomologyBasis& tgt, const Matrix& level_map);
Matrix induced_map(const ChainMap& f, int k);
Verdict verify_quasi_isomorphism(const ChainMap& f);

// ---- constructions -------------------------------------------------------

// A[m]_k = A_{k + step*m} with differential (-1)^m d.
GradedComplex translate(const GradedComplex& a, int m);

// s(f)_k = A_k + B_{k-step}, d(a,b) = (da, f(a) - db).
GradedComplex simple(const ChainMap& f);
GradedComplex direct_sum(const GradedComplex& a, const GradedComplex& b);

// For f onto in every degree: ker f -> s(-f), x -> (x, 0). For f injective in
// every degree: s(f)[1] -> B / f(A), (a, b) -> [b]. Both are
// quasi-isomorphisms; field domains only, std::invalid_argument otherwise or
// when f is not onto (resp. injective).
ChainMap kernel_into_simple(const ChainMap& f);
ChainMap simple_onto_quotient(const ChainMap& f);

// Canonical truncation of a cochain complex: C^k for k < n, ker d^n in
// degree n, zero above. Returns the inclusion into the input.
ChainMap truncate_leq(const GradedComplex& c, int n);

// Subcomplex spanned by the given columns in each degree (must be d-stable),
// with its inclusion, and the quotient with its projection.
ChainMap subcomplex_inclusion(const GradedComplex& c, const std::map<int, Matrix>& spans);
ChainMap quotient_projection(const GradedComplex& c, const std::map<int, Matrix>& spans);

// ---- tensor products -----------------------------------------------------

// Position of a basis element of an iterated tensor product in terms of its
// leaf factors: one (degree, index) pair per factor.
using LeafKey = std::vector<std::pair<int, std::size_t>>;
using LeafLayout = std::map<int, std::vector<LeafKey>>;

LeafLayout trivial_layout(const GradedComplex& c);

struct TensorProduct {
    GradedComplex complex;
    LeafLayout layout;
    // offset[k][i]: first index of the A_i (x) B_{k-i} block inside degree k.
    std::map<int, std::map<int, std::size_t>> offset;
    std::size_t index(int i, std::size_t a, int j, std::size_t b, std::size_t rank_b) const {
        return offset.at(i + j).at(i) + a * rank_b + b;
    }
};

// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db. Both factors must share
// orientation and domain.
TensorProduct tensor(const GradedComplex& a, const GradedComplex& b, const LeafLayout* la = nullptr,
                     const LeafLayout* lb = nullptr);
// f (x) g between tensor products built by tensor().
ChainMap tensor_maps(const ChainMap& f, const ChainMap& g, const TensorProduct& src, const TensorProduct& tgt);

// ---- exact sequences -----------------------------------------------------

struct ExactSequenceReport {
    std::vector<std::string> labels;  // node names, e.g. "H_2(A)"
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;         // maps[i] : node i -> node i+1
    bool exact = true;
    std::string failure;
    std::string to_string() const;
};

// Exactness at every node, treating the sequence as padded by zeros.
ExactSequenceReport check_exact(std::vector<std::string> labels, std::vector<std::size_t> dims,
                                std::vector<Matrix> maps, Domain dom);

// ... -> H_k(s(f)) -> H_k(A) -> H_k(B) -> H_{k+step}(s(f)) -> ...
// Over Z the computation is done over Q.
ExactSequenceReport les_of_simple(const ChainMap& f);

std::string describe(const GradedComplex& c);

}  // namespace hchow
