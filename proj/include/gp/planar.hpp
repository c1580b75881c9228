#pragma once

#include <vector>

#include "gp/linalg.hpp"
#include "gp/superalgebra.hpp"

namespace gp {

// Polynomials in K[x,y] are GradedPolynomials with signature 2|0.
GradedPolynomial planar_zero();
GradedPolynomial planar_x();
GradedPolynomial planar_y();
bool is_planar(const GradedPolynomial& f);
bool is_homogeneous(const GradedPolynomial& f);

struct PlanarField {
    GradedPolynomial f, g;

    PlanarField() : f(planar_zero()), g(planar_zero()) {}
    PlanarField(GradedPolynomial a, GradedPolynomial b) : f(std::move(a)), g(std::move(b)) {}

    bool is_zero() const { return f.is_zero() && g.is_zero(); }
    PlanarField operator+(const PlanarField& o) const { return {f + o.f, g + o.g}; }
    PlanarField operator-(const PlanarField& o) const { return {f - o.f, g - o.g}; }
    PlanarField operator*(const Rational& c) const { return {f * c, g * c}; }
    PlanarField scaled(const GradedPolynomial& a) const { return {a * f, a * g}; }
    bool operator==(const PlanarField& o) const { return f == o.f && g == o.g; }
};

PlanarField euler_field();  // E = (y, -x)
PlanarField grad(const GradedPolynomial& f);
GradedPolynomial div(const PlanarField& F);  // g_x - f_y
GradedPolynomial cross(const PlanarField& F, const PlanarField& G);  // f k - g h

// h with grad h = F and h(0) = 0; throws AlgebraError if Div F != 0.
GradedPolynomial gradient_potential(const PlanarField& F);

// a with G = a grad b; throws AlgebraError if G x grad b != 0 or the division fails.
GradedPolynomial koszul_divide(const PlanarField& G, const GradedPolynomial& b);

// Resultant of two binary forms of equal degree, via the Sylvester matrix.
Rational binary_form_resultant(const GradedPolynomial& p, const GradedPolynomial& q);

struct MilnorData {
    GradedPolynomial b;
    int degree = 0;
    int mu = 0;
    std::vector<GradedPolynomial> basis;  // monomials, ascending degree then grlex descending
    std::vector<int> basis_degree;
    int top_degree = -1;                  // largest degree carrying a basis element
    std::vector<int> quotient_dims;       // per degree 0..top_degree+1
};

// Validates b (non-constant, homogeneous, square-free) and computes the Milnor algebra basis.
MilnorData milnor_basis(const GradedPolynomial& b);

struct JacobianReduction {
    std::vector<Rational> lambda;  // length mu
    PlanarField G;                 // f = sum lambda_i u_i + grad b x G
};
JacobianReduction reduce_mod_jacobian(const GradedPolynomial& f, const MilnorData& data);

struct Sqfree2Decomposition {
    std::vector<UPoly> c;  // c_i as a polynomial in b
    GradedPolynomial h;    // f = sum c_i(b) u_i + grad h x grad b
};
Sqfree2Decomposition sqfree2_decompose(const GradedPolynomial& f, const MilnorData& data);

// Evaluates p(b) for a univariate p.
GradedPolynomial evaluate_in(const UPoly& p, const GradedPolynomial& b);

}  // namespace gp
