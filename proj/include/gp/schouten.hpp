#pragma once

#include <functional>
#include <map>
#include <vector>

#include "gp/superalgebra.hpp"

namespace gp {

// Product of derivation symbols in Lambda(V*): each Dx at most once, Dth with multiplicity.
// Canonical order: Dx_1 .. Dx_m, then Dth_1^a_1 .. Dth_n^a_n.
struct ExteriorMonomial {
    std::uint32_t even_mask = 0;
    std::vector<std::uint32_t> odd_exps;  // length n

    ExteriorMonomial() = default;
    explicit ExteriorMonomial(int n) : odd_exps(n, 0) {}

    int symbol_count() const;
    int exterior_degree() const { return symbol_count() - 1; }
    int odd_symbols() const;
    int parity() const { return odd_symbols() & 1; }
    // Variable indices in canonical order (odd variable j is m + j).
    std::vector<int> symbols(int m) const;

    bool operator==(const ExteriorMonomial& o) const = default;
};

int compare_exterior(const ExteriorMonomial& a, const ExteriorMonomial& b);

struct ExteriorOrder {
    bool operator()(const ExteriorMonomial& a, const ExteriorMonomial& b) const {
        return compare_exterior(a, b) < 0;
    }
};

// Sort a symbol word into canonical order. Returns 0 if the word vanishes (repeated Dx),
// otherwise the sign of the reordering.
int canonicalize_symbols(std::vector<int> word, int m, int n, ExteriorMonomial& out);

struct Bidegree {
    int exterior_degree = -1;  // k - 1
    int internal_parity = 0;
    int total_parity() const { return ((exterior_degree + internal_parity) % 2 + 2) % 2; }
    bool operator==(const Bidegree&) const = default;
};

class MultiDerivation {
public:
    using Terms = std::map<ExteriorMonomial, GradedPolynomial, ExteriorOrder>;

    MultiDerivation() = default;
    MultiDerivation(int m, int n) : m_(m), n_(n) {}
    explicit MultiDerivation(const AlgebraSignature& s) : m_(s.m), n_(s.n) {}

    static MultiDerivation from_polynomial(const GradedPolynomial& f);

    int m() const { return m_; }
    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const;

    void add(const ExteriorMonomial& e, const GradedPolynomial& f);
    void add(const ExteriorMonomial& e, const GradedMonomial& mono, const Rational& c);
    GradedPolynomial coefficient(const ExteriorMonomial& e) const;

    // visit every (exterior monomial, coefficient monomial, rational) atom
    void for_each_atom(const std::function<void(const ExteriorMonomial&, const GradedMonomial&, const Rational&)>& fn) const;

    int min_symbols() const;  // -1 if zero
    int max_symbols() const;  // -1 if zero
    MultiDerivation component(int symbols) const;
    MultiDerivation truncate(int max_symbols) const;
    // split by total Z2 degree
    MultiDerivation total_parity_part(int p) const;
    // -1 if zero or mixed
    int total_parity() const;
    std::optional<Bidegree> bidegree() const;  // nullopt if not bihomogeneous

    MultiDerivation operator+(const MultiDerivation& o) const;
    MultiDerivation operator-(const MultiDerivation& o) const;
    MultiDerivation operator-() const;
    MultiDerivation operator*(const Rational& c) const;
    MultiDerivation& operator+=(const MultiDerivation& o);
    MultiDerivation& operator-=(const MultiDerivation& o);
    // left multiplication by an algebra element
    MultiDerivation left_multiply(const GradedPolynomial& f) const;

    bool operator==(const MultiDerivation& o) const { return m_ == o.m_ && n_ == o.n_ && terms_ == o.terms_; }

private:
    int m_ = 0;
    int n_ = 0;
    Terms terms_;
};

void check_same_signature(const MultiDerivation& a, const MultiDerivation& b);

// Exterior monomial from a symbol word, e.g. {x, th, th} -> Dx Dth^2 with sign.
MultiDerivation derivation_word(int m, int n, const std::vector<int>& word, const GradedPolynomial& coeff);

// Wedge product in A (x) Lambda(V*), Koszul sign on parity only.
MultiDerivation wedge(const MultiDerivation& a, const MultiDerivation& b);

GradedPolynomial evaluate(const MultiDerivation& alpha, const std::vector<GradedPolynomial>& args);

MultiDerivation schouten_bracket(const MultiDerivation& a, const MultiDerivation& b);
MultiDerivation modified_bracket(const MultiDerivation& a, const MultiDerivation& b);

// (a o b)(probe) with a, b extended to coderivations of Lambda(A).
GradedPolynomial coderivation_compose(const MultiDerivation& a, const MultiDerivation& b,
                                      const std::vector<GradedPolynomial>& probe);

// Bracket computed as the graded commutator of the coderivations of Lambda(A), evaluated on a probe.
GradedPolynomial commutator_oracle(const MultiDerivation& a, const MultiDerivation& b,
                                   const std::vector<GradedPolynomial>& probe);

struct CodifferentialCheck {
    bool ok = false;
    MultiDerivation residual;  // (1/2){psi,psi} truncated
    int first_nonzero_symbols = -1;
};

CodifferentialCheck is_codifferential(const MultiDerivation& psi, int max_symbols);
MultiDerivation coboundary(const MultiDerivation& psi, const MultiDerivation& phi);
MultiDerivation maurer_cartan_residual(const MultiDerivation& psi, const MultiDerivation& alpha, int max_symbols);

// lambda^{-1} o psi o lambda, lambda the algebra automorphism given by the substitution.
MultiDerivation apply_linear_automorphism(const MultiDerivation& psi, const AffineSubstitution& s);
// exp(phi)^*(psi) = psi + {psi,phi} + 1/2 {{psi,phi},phi} + ...  truncated at max_symbols
MultiDerivation apply_higher_automorphism(const MultiDerivation& psi, const MultiDerivation& phi, int max_symbols);

}  // namespace gp
