#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gp/planar.hpp"
#include "gp/schouten.hpp"

namespace gp {

enum class ModuleType { K, Kx, KxQuotient, Kb, Kxy };
std::string to_string(ModuleType t);

// One summand M*g of a cohomology space: a generator g with coefficient module M.
struct Generator {
    MultiDerivation element;  // the generator at multiplier 1
    ModuleType module = ModuleType::K;
    UPoly modulus;            // KxQuotient: the polynomial p of K[x]/(p)
    int degree = 0;           // internal (leading) degree of the generator
    int step = 1;             // Kb: deg b
    // multiplier -> element; empty means left multiplication
    std::function<MultiDerivation(const GradedPolynomial&)> action;
    std::string action_note;  // human-readable description of a non-standard action

    int dimension_at(int e) const;
    MultiDerivation at(const GradedPolynomial& multiplier) const;
};

struct CohomologySpace {
    CohomologySpace() = default;
    CohomologySpace(int n_, int parity_) : n(n_), parity(parity_) {}

    int n = 0;
    int parity = 1;
    bool closed_form = true;
    std::string note;
    std::vector<Generator> generators;

    int dimension_at(int e) const;
};

struct GeneratorList {
    AlgebraSignature sig;
    MultiDerivation psi;
    bool deformation_convention = false;
    std::vector<CohomologySpace> spaces;

    const CohomologySpace* find(int n, int parity) const;
};

// 0|1

struct Normal01 {
    int order = 0;          // k
    Rational leading = 0;   // a_k
};
Normal01 classify_0_1(const MultiDerivation& psi);
// Removes the terms above the leading one by successive exp(c theta Dth^{l-k+1}), truncated at max_symbols.
MultiDerivation eliminate_0_1(const MultiDerivation& psi, int max_symbols);
MultiDerivation psi_0_1(int k);  // Dth^k
GeneratorList cohomology_0_1(int k, bool convention, int n_max);

// 1|1

enum class Kind11 { FirstKind, SecondKind, NotCodifferential };
std::string to_string(Kind11 k);
Kind11 classify_1_1(const MultiDerivation& psi);

MultiDerivation first_kind_psi(const UPoly& g, int k);   // g(x) Dth^k
MultiDerivation second_kind_psi(const UPoly& f, int k);  // f(x) th Dx Dth^{k-1}

GeneratorList first_kind_cohomology_1_1(const UPoly& g, int k, bool convention, int n_max);
GeneratorList second_kind_cohomology_1_1(const UPoly& f, int k, bool convention, int n_max);

struct Equivalence11 {
    enum class Status { Equivalent, None, Unknown } status = Status::None;
    Rational A = 1, B = 0, C = 1;  // g2(x) = C g1(A x + B)
    std::string reason;
};
Equivalence11 equivalent_1_1_first_kind(const UPoly& g1, const UPoly& g2, int k);

// 2|1

// Embeds a polynomial of K[x,y] into K[x,y,th].
GradedPolynomial lift_planar(const GradedPolynomial& f);

MultiDerivation build_psi_b(const GradedPolynomial& b);
MultiDerivation even_casimir_family(const GradedPolynomial& a);
MultiDerivation odd_casimir_family(const GradedPolynomial& b);
MultiDerivation dtheta2_family(const GradedPolynomial& k);
MultiDerivation minus2k_family(const GradedPolynomial& k);

// [psi, alpha] for alpha in C^0.
MultiDerivation casimir_residual(const MultiDerivation& psi, const GradedPolynomial& alpha);

GeneratorList psi_b_odd_cohomology(const MilnorData& data, bool convention, int n_max);
GeneratorList psi_b_even_cohomology(const MilnorData& data, int n_max);

// Recovers b from psi = psi_b (b homogeneous, b(0) = 0); nullopt if psi is not of that form.
std::optional<GradedPolynomial> psi_b_potential(const MultiDerivation& psi);

// Dispatch on the signature and shape of psi to the matching closed form.
struct ClosedFormMatch {
    std::string family;       // "0|1", "1|1 first kind", "1|1 second kind", "2|1 psi_b"; empty if none
    std::string reason;       // why no closed form applies
    int k = 0;                // order for 0|1 and 1|1
    UPoly poly;               // g or f for 1|1
    GradedPolynomial b;       // 2|1
    std::optional<GeneratorList> list;
};
ClosedFormMatch closed_form_for(const MultiDerivation& psi, bool convention, int n_max);

}  // namespace gp
