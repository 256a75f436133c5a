/**
 * @file   polynomial.hpp
 * @brief  Sparse multivariate integer polynomials and reduced projective
 *         pairs of them (rational functions and points of P^1).
 *
 * A monomial packs up to eight exponents into one 64-bit word with x1 in the
 * most significant byte, so lexicographic order on exponents is integer order
 * on the packed word. Terms are kept in graded-lex order, leading term first.
 * Rational functions over Q are written as quotients of integer polynomials.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hchow {

class PolynomialError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZPoly {
public:
    using Mono = std::uint64_t;
    static constexpr int kMaxVars = 8;
    static constexpr int kMaxDegree = 255;

    struct GrlexGreater {
        bool operator()(Mono a, Mono b) const;
    };
    using Terms = std::map<Mono, mpz_class, GrlexGreater>;

    ZPoly() = default;
    ZPoly(long c);  // NOLINT: constants convert implicitly
    static ZPoly constant(const mpz_class& c);
    static ZPoly variable(int v);  // 1-based
    static ZPoly monomial(const mpz_class& c, Mono m);

    static int exponent(Mono m, int v) { return static_cast<int>((m >> (8 * (kMaxVars - v))) & 0xff); }
    static Mono with_exponent(Mono m, int v, int e);
    static int total_degree(Mono m);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t size() const { return terms_.size(); }

    const mpz_class& leading_coefficient() const;
    Mono leading_monomial() const;
    int degree(int v) const;
    int total_degree() const;
    // Bitmask of variables that occur (bit v-1 for x_v).
    unsigned support() const;
    // Largest variable index that occurs, 0 for constants.
    int max_variable() const;

    mpz_class content() const;
    ZPoly primitive_part() const;

    ZPoly operator-() const;
    ZPoly& operator+=(const ZPoly& o);
    ZPoly& operator-=(const ZPoly& o);
    friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
    friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    ZPoly scaled(const mpz_class& c) const;
    ZPoly pow(int e) const;
    bool operator==(const ZPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ZPoly& o) const { return !(*this == o); }
    // Total order used for map keys (not a monomial order on polynomials).
    bool operator<(const ZPoly& o) const;

    // Coefficients of powers of x_v, each free of x_v.
    std::vector<ZPoly> coefficients_in(int v) const;
    static ZPoly from_coefficients(int v, const std::vector<ZPoly>& coeffs);

    // Value with every variable except x_v specialized (entry v-1 ignored).
    std::vector<mpz_class> specialize_except(int v, const std::vector<mpz_class>& point) const;
    mpz_class evaluate(const std::vector<mpz_class>& point) const;

    // Renumber variables: x_v becomes x_{map[v-1]} (1-based targets).
    ZPoly rename(const std::vector<int>& map) const;

    std::string to_string() const;
    static ZPoly parse(const std::string& text);

private:
    Terms terms_;
    void add_term(Mono m, const mpz_class& c);
};

// Exact quotient a / b, or nullopt if b does not divide a.
std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b);
// Greatest common divisor with positive leading coefficient (gcd(0, 0) = 0).
ZPoly gcd(const ZPoly& a, const ZPoly& b);
// True when a and b have no common factor of positive degree.
bool coprime_up_to_constants(const ZPoly& a, const ZPoly& b);

// A reduced pair (num : den). With den != 0 it is the rational function
// num / den; with den == 0 it is the point infinity = (1 : 0). Reduced means
// gcd(num, den) = 1 over Z (integer content included) and lc(den) > 0.
class ProjectiveRational {
public:
    ProjectiveRational() : num_(0), den_(1) {}
    ProjectiveRational(ZPoly num, ZPoly den);  // reduces; throws on (0 : 0)
    static ProjectiveRational infinity() { return ProjectiveRational(ZPoly(1), ZPoly(0)); }
    static ProjectiveRational polynomial(ZPoly p) { return ProjectiveRational(std::move(p), ZPoly(1)); }
    static ProjectiveRational variable(int v) { return polynomial(ZPoly::variable(v)); }
    // No reduction; the caller guarantees the pair is already reduced.
    static ProjectiveRational from_reduced(ZPoly num, ZPoly den);

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    bool is_infinity() const { return den_.is_zero(); }
    bool is_zero() const { return num_.is_zero(); }
    int max_variable() const;

    bool operator==(const ProjectiveRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ProjectiveRational& o) const { return !(*this == o); }
    bool operator<(const ProjectiveRational& o) const;

    // Rational function arithmetic (throws on infinity operands).
    friend ProjectiveRational operator*(const ProjectiveRational& a, const ProjectiveRational& b);
    friend ProjectiveRational operator+(const ProjectiveRational& a, const ProjectiveRational& b);
    friend ProjectiveRational operator-(const ProjectiveRational& a, const ProjectiveRational& b);

    // Substitute x_k := values[k-1], each a projective pair in the new
    // variables. Each variable is homogenized separately, so infinity is an
    // ordinary value. Returns nullopt when the result is the undefined (0 : 0).
    std::optional<ProjectiveRational> substitute(const std::vector<ProjectiveRational>& values) const;

    ProjectiveRational rename(const std::vector<int>& map) const;

    // "(num)/(den)"
    std::string to_string() const;
    static ProjectiveRational parse(const std::string& text);

private:
    ZPoly num_, den_;
};

}  // namespace hchow
