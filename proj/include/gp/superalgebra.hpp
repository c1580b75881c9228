#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gp {

using Rational = mpq_class;

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// m even variables x_1..x_m followed by n odd variables th_1..th_n.
// Variable index v < m is even, v >= m is odd.
struct AlgebraSignature {
    int m = 0;
    int n = 0;
    std::vector<std::string> names;  // m + n entries

    AlgebraSignature() = default;
    AlgebraSignature(int m_, int n_);

    int nvars() const { return m + n; }
    bool is_odd(int v) const { return v >= m; }
    const std::string& name(int v) const { return names.at(v); }
    std::optional<int> index_of(const std::string& s) const;

    bool operator==(const AlgebraSignature& o) const { return m == o.m && n == o.n; }
};

struct GradedMonomial {
    std::vector<std::uint32_t> exps;  // even exponents, length m
    std::uint32_t odd_mask = 0;       // bit j set iff th_{j+1} present

    GradedMonomial() = default;
    explicit GradedMonomial(int m) : exps(m, 0) {}

    int even_degree() const;
    int odd_count() const { return __builtin_popcount(odd_mask); }
    int degree() const { return even_degree() + odd_count(); }
    int parity() const { return odd_count() & 1; }
    bool is_one() const;

    bool operator==(const GradedMonomial& o) const = default;
};

// grlex with x_1 > x_2 > ... ; odd part compared after even part.
int compare_grlex(const GradedMonomial& a, const GradedMonomial& b);

// Map order: grlex-largest first, so iteration runs from the leading term down.
struct MonomialOrder {
    bool operator()(const GradedMonomial& a, const GradedMonomial& b) const {
        return compare_grlex(a, b) > 0;
    }
};

// Product of monomials with the Koszul sign of merging odd masks; 0 if they share a th.
int monomial_mul(const GradedMonomial& a, const GradedMonomial& b, GradedMonomial& out);

class GradedPolynomial {
public:
    using Terms = std::map<GradedMonomial, Rational, MonomialOrder>;

    GradedPolynomial() = default;
    GradedPolynomial(int m, int n) : m_(m), n_(n) {}
    explicit GradedPolynomial(const AlgebraSignature& s) : m_(s.m), n_(s.n) {}

    static GradedPolynomial constant(int m, int n, const Rational& c);
    static GradedPolynomial variable(int m, int n, int v);
    static GradedPolynomial monomial(const GradedMonomial& mono, const Rational& c, int n);

    int m() const { return m_; }
    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const GradedMonomial& mono, const Rational& c);
    Rational coeff(const GradedMonomial& mono) const;

    // -1 when the polynomial is zero or has mixed parity.
    int parity_or_inhomogeneous() const;
    bool is_parity_homogeneous() const { return is_zero() || parity_or_inhomogeneous() >= 0; }
    int degree() const;        // total degree, -1 for zero
    int min_degree() const;    // -1 for zero
    bool is_odd_free() const;
    const GradedMonomial& leading_monomial() const;
    const Rational& leading_coeff() const;

    GradedPolynomial homogeneous_part(int d) const;

    GradedPolynomial operator+(const GradedPolynomial& o) const;
    GradedPolynomial operator-(const GradedPolynomial& o) const;
    GradedPolynomial operator-() const;
    GradedPolynomial operator*(const GradedPolynomial& o) const;
    GradedPolynomial operator*(const Rational& c) const;
    GradedPolynomial& operator+=(const GradedPolynomial& o);
    GradedPolynomial& operator-=(const GradedPolynomial& o);

    bool operator==(const GradedPolynomial& o) const {
        return m_ == o.m_ && n_ == o.n_ && terms_ == o.terms_;
    }

    GradedPolynomial pow(unsigned e) const;

private:
    int m_ = 0;
    int n_ = 0;
    Terms terms_;
};

void check_same_signature(const GradedPolynomial& a, const GradedPolynomial& b);

GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b);

// Left derivative with respect to variable v.
GradedPolynomial partial(const GradedPolynomial& f, int v);
// Monomial-level version: returns sign*coefficient factor, 0 if the derivative vanishes.
Rational partial_monomial(const GradedMonomial& mono, int v, int m, GradedMonomial& out);

// x_i -> sum_j A[i][j] x_j + B[i],  th_i -> sum_j C[i][j] th_j
struct AffineSubstitution {
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> B;
    std::vector<std::vector<Rational>> C;

    static AffineSubstitution identity(int m, int n);
    int m() const { return static_cast<int>(B.size()); }
    int n() const { return static_cast<int>(C.size()); }
    bool invertible() const;
    AffineSubstitution inverse() const;
};

// The composite substitution "first apply outer, then inner to the result":
// substitute_linear(substitute_linear(f, outer), inner) == substitute_linear(f, compose(outer, inner)).
AffineSubstitution compose(const AffineSubstitution& outer, const AffineSubstitution& inner);

GradedPolynomial substitute_linear(const GradedPolynomial& f, const AffineSubstitution& s);

// Univariate helpers over Q, dense coefficient vectors (index = degree).
using UPoly = std::vector<Rational>;

void upoly_trim(UPoly& p);
int upoly_degree(const UPoly& p);
UPoly upoly_derivative(const UPoly& p);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly upoly_gcd(UPoly a, UPoly b);
UPoly upoly_monic(const UPoly& p);
UPoly upoly_compose_affine(const UPoly& p, const Rational& A, const Rational& B);  // p(Ax+B)

// Conversion between GradedPolynomial and univariate form in even variable v.
std::optional<int> univariate_variable(const GradedPolynomial& f);
UPoly to_upoly(const GradedPolynomial& f, int v);
GradedPolynomial from_upoly(const UPoly& p, int m, int n, int v);

GradedPolynomial gcd_univariate(const GradedPolynomial& a, const GradedPolynomial& b);

// Exact division of odd-free polynomials; std::nullopt if b does not divide a.
std::optional<GradedPolynomial> exact_divide(const GradedPolynomial& a, const GradedPolynomial& b);

}  // namespace gp
