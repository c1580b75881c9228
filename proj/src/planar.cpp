#include "gp/planar.hpp"

#include <algorithm>

namespace gp {

GradedPolynomial planar_zero() { return GradedPolynomial(2, 0); }
GradedPolynomial planar_x() { return GradedPolynomial::variable(2, 0, 0); }
GradedPolynomial planar_y() { return GradedPolynomial::variable(2, 0, 1); }

bool is_planar(const GradedPolynomial& f) { return f.m() == 2 && f.n() == 0; }

bool is_homogeneous(const GradedPolynomial& f) { return f.is_zero() || f.degree() == f.min_degree(); }

namespace {

void require_planar(const GradedPolynomial& f, const char* what) {
    if (!is_planar(f)) throw AlgebraError(std::string(what) + ": expected a polynomial in K[x,y]");
}

GradedMonomial xy_mono(int i, int j) {
    GradedMonomial m(2);
    m.exps[0] = i;
    m.exps[1] = j;
    return m;
}

// monomials of degree t in grlex order x^t, x^{t-1}y, ..., y^t
std::vector<GradedMonomial> monomials_of_degree(int t) {
    std::vector<GradedMonomial> out;
    for (int i = t; i >= 0; --i) out.push_back(xy_mono(i, t - i));
    return out;
}

int index_in_degree(const GradedMonomial& m) { return static_cast<int>(m.exps[1]); }

std::vector<Rational> coefficients_in_degree(const GradedPolynomial& f, int t) {
    std::vector<Rational> v(t + 1, 0);
    for (const auto& [mono, c] : f.terms())
        if (mono.degree() == t) v[index_in_degree(mono)] = c;
    return v;
}

}  // namespace

PlanarField euler_field() { return {planar_y(), -planar_x()}; }

PlanarField grad(const GradedPolynomial& f) {
    require_planar(f, "grad");
    return {partial(f, 0), partial(f, 1)};
}

GradedPolynomial div(const PlanarField& F) { return partial(F.g, 0) - partial(F.f, 1); }

GradedPolynomial cross(const PlanarField& F, const PlanarField& G) { return F.f * G.g - F.g * G.f; }

GradedPolynomial gradient_potential(const PlanarField& F) {
    require_planar(F.f, "gradient_potential");
    require_planar(F.g, "gradient_potential");
    if (!div(F).is_zero()) throw AlgebraError("gradient_potential: Div F != 0");
    GradedPolynomial h = planar_zero();
    int top = std::max(F.f.degree(), F.g.degree());
    for (int n = 0; n <= top; ++n) {
        GradedPolynomial part = planar_x() * F.f.homogeneous_part(n) + planar_y() * F.g.homogeneous_part(n);
        h += part * Rational(1, n + 1);
    }
    if (!(grad(h) == F)) throw AlgebraError("gradient_potential: reconstruction failed");
    return h;
}

GradedPolynomial koszul_divide(const PlanarField& G, const GradedPolynomial& b) {
    require_planar(b, "koszul_divide");
    PlanarField gb = grad(b);
    if (gb.is_zero()) throw AlgebraError("koszul_divide: b is constant");
    if (!cross(G, gb).is_zero()) throw AlgebraError("koszul_divide: G x grad b != 0");
    std::optional<GradedPolynomial> a =
        !gb.f.is_zero() ? exact_divide(G.f, gb.f) : exact_divide(G.g, gb.g);
    if (!a || !(gb.scaled(*a) == G)) throw AlgebraError("koszul_divide: G is not a multiple of grad b");
    return *a;
}

Rational binary_form_resultant(const GradedPolynomial& p, const GradedPolynomial& q) {
    int d = std::max(p.degree(), q.degree());
    if (d <= 0) return (p.is_zero() || q.is_zero()) ? Rational(0) : Rational(1);
    auto a = coefficients_in_degree(p, d);
    auto c = coefficients_in_degree(q, d);
    Matrix S(2 * d, 2 * d);
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i) {
            S(r, r + i) = a[i];
            S(d + r, r + i) = c[i];
        }
    return determinant(S);
}

MilnorData milnor_basis(const GradedPolynomial& b) {
    require_planar(b, "milnor_basis");
    if (b.is_zero() || b.degree() <= 0) throw AlgebraError("milnor_basis: b is constant");
    if (!is_homogeneous(b)) throw AlgebraError("milnor_basis: b is not homogeneous");
    MilnorData data;
    data.b = b;
    data.degree = b.degree();
    const int d = data.degree;
    PlanarField gb = grad(b);
    if (d == 1) {
        data.quotient_dims = {0};
        return data;
    }
    if (binary_form_resultant(gb.f, gb.g) == 0) throw AlgebraError("milnor_basis: b is not square-free");

    const int bound = 2 * (d - 2) + 1;
    for (int t = 0; t <= bound; ++t) {
        std::vector<std::vector<Rational>> rows;
        if (t >= d - 1) {
            for (const auto& m : monomials_of_degree(t - d + 1)) {
                auto mp = GradedPolynomial::monomial(m, 1, 0);
                rows.push_back(coefficients_in_degree(mp * gb.f, t));
                rows.push_back(coefficients_in_degree(mp * gb.g, t));
            }
        }
        Matrix M(rows.size(), t + 1);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j <= t; ++j) M(i, j) = rows[i][j];
        std::vector<std::size_t> piv;
        if (!rows.empty()) rref(M, piv);
        std::vector<bool> is_pivot(t + 1, false);
        for (auto p : piv) is_pivot[p] = true;
        int q = 0;
        auto monos = monomials_of_degree(t);
        for (int j = 0; j <= t; ++j)
            if (!is_pivot[j]) {
                data.basis.push_back(GradedPolynomial::monomial(monos[j], 1, 0));
                data.basis_degree.push_back(t);
                ++q;
            }
        data.quotient_dims.push_back(q);
        if (q > 0) data.top_degree = t;
    }
    if (data.quotient_dims.back() != 0) throw AlgebraError("milnor_basis: quotient does not terminate");
    data.mu = static_cast<int>(data.basis.size());
    return data;
}

JacobianReduction reduce_mod_jacobian(const GradedPolynomial& f, const MilnorData& data) {
    require_planar(f, "reduce_mod_jacobian");
    JacobianReduction r;
    r.lambda.assign(data.mu, 0);
    const int d = data.degree;
    PlanarField gb = grad(data.b);
    if (f.is_zero()) return r;
    for (int t = f.min_degree(); t <= f.degree(); ++t) {
        GradedPolynomial ft = f.homogeneous_part(t);
        if (ft.is_zero()) continue;
        // unknowns: lambda_i for basis elements of degree t, then G1, G2 coefficients of degree s
        std::vector<int> lam;
        for (int i = 0; i < data.mu; ++i)
            if (data.basis_degree[i] == t) lam.push_back(i);
        const int s = t - d + 1;
        auto gm = s >= 0 ? monomials_of_degree(s) : std::vector<GradedMonomial>{};
        const std::size_t nu = lam.size() + 2 * gm.size();
        Matrix M(t + 1, nu + 1);
        std::size_t col = 0;
        for (int i : lam) {
            auto v = coefficients_in_degree(data.basis[i], t);
            for (int j = 0; j <= t; ++j) M(j, col) = v[j];
            ++col;
        }
        // grad b x (G1, G2) = b_x G2 - b_y G1
        for (const auto& m : gm) {
            auto mp = GradedPolynomial::monomial(m, 1, 0);
            auto v = coefficients_in_degree(-(gb.g * mp), t);
            for (int j = 0; j <= t; ++j) M(j, col) = v[j];
            ++col;
        }
        for (const auto& m : gm) {
            auto mp = GradedPolynomial::monomial(m, 1, 0);
            auto v = coefficients_in_degree(gb.f * mp, t);
            for (int j = 0; j <= t; ++j) M(j, col) = v[j];
            ++col;
        }
        auto rhs = coefficients_in_degree(ft, t);
        for (int j = 0; j <= t; ++j) M(j, nu) = rhs[j];
        std::vector<std::size_t> piv;
        Matrix R = rref(M, piv);
        std::vector<Rational> sol(nu, 0);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            if (piv[i] == nu) throw AlgebraError("reduce_mod_jacobian: inconsistent system");
            sol[piv[i]] = R(i, nu);
        }
        for (std::size_t i = 0; i < lam.size(); ++i) r.lambda[lam[i]] += sol[i];
        for (std::size_t k = 0; k < gm.size(); ++k) {
            r.G.f.add_term(gm[k], sol[lam.size() + k]);
            r.G.g.add_term(gm[k], sol[lam.size() + gm.size() + k]);
        }
    }
    return r;
}

GradedPolynomial evaluate_in(const UPoly& p, const GradedPolynomial& b) {
    GradedPolynomial r(b.m(), b.n());
    for (int j = static_cast<int>(p.size()) - 1; j >= 0; --j) {
        r = r * b;
        if (p[j] != 0) r += GradedPolynomial::constant(b.m(), b.n(), p[j]);
    }
    return r;
}

namespace {

void add_shifted(UPoly& acc, const UPoly& p, int shift, const Rational& c) {
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift, 0);
    for (std::size_t j = 0; j < p.size(); ++j) acc[j + shift] += c * p[j];
}

Sqfree2Decomposition decompose_homogeneous(const GradedPolynomial& f, int t, const MilnorData& data) {
    const int d = data.degree;
    Sqfree2Decomposition out;
    out.c.assign(data.mu, UPoly{});
    out.h = planar_zero();
    if (f.is_zero()) return out;
    auto red = reduce_mod_jacobian(f, data);
    for (int i = 0; i < data.mu; ++i)
        if (red.lambda[i] != 0) out.c[i] = UPoly{red.lambda[i]};
    // f = F x grad b + sum lambda u with F = -G
    PlanarField F = red.G * Rational(-1);
    if (F.is_zero()) return out;
    const int s = t - d + 1;
    if (s <= 0) {
        out.h = planar_x() * F.f + planar_y() * F.g;
        return out;
    }
    GradedPolynomial dv = div(F);
    PlanarField E = euler_field();
    PlanarField closed = E.scaled(dv) + F * Rational(s + 1);
    GradedPolynomial kappa = gradient_potential(closed);
    auto inner = decompose_homogeneous(dv, t - d, data);
    const Rational scale = Rational(d) / (s + 1);
    out.h = (kappa - data.b * inner.h * Rational(d)) * Rational(1, s + 1);
    for (int i = 0; i < data.mu; ++i)
        if (!inner.c[i].empty()) add_shifted(out.c[i], inner.c[i], 1, -scale);
    for (auto& ci : out.c) upoly_trim(ci);
    return out;
}

}  // namespace

Sqfree2Decomposition sqfree2_decompose(const GradedPolynomial& f, const MilnorData& data) {
    require_planar(f, "sqfree2_decompose");
    Sqfree2Decomposition out;
    out.c.assign(data.mu, UPoly{});
    out.h = planar_zero();
    if (f.is_zero()) return out;
    for (int t = f.min_degree(); t <= f.degree(); ++t) {
        GradedPolynomial ft = f.homogeneous_part(t);
        if (ft.is_zero()) continue;
        auto part = decompose_homogeneous(ft, t, data);
        out.h += part.h;
        for (int i = 0; i < data.mu; ++i)
            if (!part.c[i].empty()) add_shifted(out.c[i], part.c[i], 0, 1);
    }
    for (auto& ci : out.c) upoly_trim(ci);
    return out;
}

}  // namespace gp
