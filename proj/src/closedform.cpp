#include "gp/closedform.hpp"

#include <numeric>

namespace gp {

std::string to_string(ModuleType t) {
    switch (t) {
        case ModuleType::K: return "K";
        case ModuleType::Kx: return "K[x]";
        case ModuleType::KxQuotient: return "K[x]/(p)";
        case ModuleType::Kb: return "K[b]";
        case ModuleType::Kxy: return "K[x,y]";
    }
    return "?";
}

std::string to_string(Kind11 k) {
    switch (k) {
        case Kind11::FirstKind: return "first kind";
        case Kind11::SecondKind: return "second kind";
        case Kind11::NotCodifferential: return "not a codifferential";
    }
    return "?";
}

int Generator::dimension_at(int e) const {
    if (e < degree) return 0;
    switch (module) {
        case ModuleType::K: return e == degree ? 1 : 0;
        case ModuleType::Kx: return 1;
        case ModuleType::KxQuotient: return e < degree + upoly_degree(modulus) ? 1 : 0;
        case ModuleType::Kb: return (e - degree) % step == 0 ? 1 : 0;
        case ModuleType::Kxy: return e - degree + 1;
    }
    return 0;
}

MultiDerivation Generator::at(const GradedPolynomial& multiplier) const {
    if (action) return action(multiplier);
    return element.left_multiply(multiplier);
}

int CohomologySpace::dimension_at(int e) const {
    int t = 0;
    for (const auto& g : generators) t += g.dimension_at(e);
    return t;
}

const CohomologySpace* GeneratorList::find(int n, int parity) const {
    for (const auto& s : spaces)
        if (s.n == n && s.parity == parity) return &s;
    return nullptr;
}

namespace {

MultiDerivation term(int m, int n, std::uint32_t even_mask, int dth, const GradedPolynomial& coef) {
    ExteriorMonomial e(n);
    e.even_mask = even_mask;
    if (n > 0) e.odd_exps[0] = dth;
    MultiDerivation r(m, n);
    r.add(e, coef);
    return r;
}

Generator make(MultiDerivation el, ModuleType t, int degree) {
    Generator g;
    g.element = std::move(el);
    g.module = t;
    g.degree = degree;
    return g;
}

Generator quotient(MultiDerivation el, const UPoly& p, int degree) {
    Generator g = make(std::move(el), ModuleType::KxQuotient, degree);
    g.modulus = p;
    return g;
}

UPoly trimmed(UPoly p) {
    upoly_trim(p);
    return p;
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    upoly_divmod(a, b, q, r);
    if (!r.empty()) throw AlgebraError("exact_quotient: remainder");
    return q;
}

// 1|1 helpers
GradedPolynomial X11(const UPoly& p) { return from_upoly(p, 1, 1, 0); }
GradedPolynomial TH11() { return GradedPolynomial::variable(1, 1, 1); }

}  // namespace

// ---------------------------------------------------------------- 0|1

MultiDerivation psi_0_1(int k) {
    if (k < 0) throw AlgebraError("psi_0_1: k must be non-negative");
    return term(0, 1, 0, k, GradedPolynomial::constant(0, 1, 1));
}

Normal01 classify_0_1(const MultiDerivation& psi) {
    if (psi.m() != 0 || psi.n() != 1) throw AlgebraError("classify_0_1: expected signature 0|1");
    if (psi.is_zero()) throw AlgebraError("classify_0_1: psi is zero");
    if (psi.total_parity() != 1) throw AlgebraError("classify_0_1: psi must be odd");
    if (psi.min_symbols() < 1) throw AlgebraError("classify_0_1: C^0 terms are excluded");
    Normal01 r;
    r.order = psi.min_symbols();
    r.leading = psi.component(r.order).terms().begin()->second.leading_coeff();
    return r;
}

MultiDerivation eliminate_0_1(const MultiDerivation& psi, int max_symbols) {
    Normal01 nf = classify_0_1(psi);
    const int k = nf.order;
    MultiDerivation cur = psi.truncate(max_symbols);
    for (int l = k + 1; l <= max_symbols; ++l) {
        MultiDerivation comp = cur.component(l);
        if (comp.is_zero()) continue;
        Rational al = comp.terms().begin()->second.leading_coeff();
        Rational sign = ((k - 1) * (l - k)) % 2 == 0 ? 1 : -1;
        Rational c = -sign * al / (nf.leading * k);
        MultiDerivation phi = term(0, 1, 0, l - k + 1, GradedPolynomial::variable(0, 1, 0) * c);
        cur = apply_higher_automorphism(cur, phi, max_symbols);
    }
    return cur;
}

GeneratorList cohomology_0_1(int k, bool convention, int n_max) {
    if (k < 1) throw AlgebraError("cohomology_0_1: k must be >= 1");
    GeneratorList gl;
    gl.sig = AlgebraSignature(0, 1);
    gl.psi = psi_0_1(k);
    gl.deformation_convention = convention;
    for (int n = 0; n <= n_max; ++n) {
        CohomologySpace odd{n, 1};
        if (n < k - 1 || (n == k - 1 && convention)) odd.generators.push_back(make(psi_0_1(n), ModuleType::K, 0));
        gl.spaces.push_back(odd);
        gl.spaces.push_back(CohomologySpace{n, 0});
    }
    return gl;
}

// ---------------------------------------------------------------- 1|1

Kind11 classify_1_1(const MultiDerivation& psi) {
    if (psi.m() != 1 || psi.n() != 1) throw AlgebraError("classify_1_1: expected signature 1|1");
    if (psi.is_zero()) throw AlgebraError("classify_1_1: psi is zero");
    if (psi.min_symbols() < 1) throw AlgebraError("classify_1_1: C^0 terms are excluded");
    if (psi.total_parity() != 1) return Kind11::NotCodifferential;
    bool has_f = false, has_g = false;
    for (const auto& [e, c] : psi.terms()) (e.even_mask ? has_f : has_g) = true;
    if (has_f && has_g) return Kind11::NotCodifferential;
    return has_f ? Kind11::SecondKind : Kind11::FirstKind;
}

MultiDerivation first_kind_psi(const UPoly& g, int k) {
    if (k < 1) throw AlgebraError("first_kind_psi: k must be >= 1");
    return term(1, 1, 0, k, X11(trimmed(g)));
}

MultiDerivation second_kind_psi(const UPoly& f, int k) {
    if (k < 1) throw AlgebraError("second_kind_psi: k must be >= 1");
    return term(1, 1, 1, k - 1, X11(trimmed(f)) * TH11());
}

GeneratorList first_kind_cohomology_1_1(const UPoly& g_in, int k, bool convention, int n_max) {
    UPoly g = trimmed(g_in);
    if (g.empty()) throw AlgebraError("first_kind_cohomology_1_1: g is zero");
    if (k < 1) throw AlgebraError("first_kind_cohomology_1_1: k must be >= 1");
    UPoly dg = upoly_derivative(g);
    UPoly h = upoly_gcd(g, dg);
    UPoly p = exact_quotient(g, h);
    UPoly q = dg.empty() ? UPoly{} : exact_quotient(dg, h);

    GeneratorList gl;
    gl.sig = AlgebraSignature(1, 1);
    gl.psi = first_kind_psi(g, k);
    gl.deformation_convention = convention;
    const GradedPolynomial one = GradedPolynomial::constant(1, 1, 1);
    for (int n = 0; n <= n_max; ++n) {
        CohomologySpace odd{n, 1};
        MultiDerivation dn = term(1, 1, 0, n, one);
        if (n < k - 1 || (n == k - 1 && convention))
            odd.generators.push_back(make(dn, ModuleType::Kx, 0));
        else if (n == k - 1)
            odd.generators.push_back(quotient(dn, g, 0));
        else
            odd.generators.push_back(quotient(dn, h, 0));
        gl.spaces.push_back(odd);

        CohomologySpace even{n, 0};
        if (n > 0) {
            MultiDerivation gen = term(1, 1, 1, n - 1, X11(p) * Rational(k)) + term(1, 1, 0, n, X11(q) * TH11());
            int deg = upoly_degree(p);
            if (n < k)
                even.generators.push_back(make(gen, ModuleType::Kx, deg));
            else
                even.generators.push_back(quotient(gen, h, deg));
        }
        gl.spaces.push_back(even);
    }
    return gl;
}

GeneratorList second_kind_cohomology_1_1(const UPoly& f_in, int k, bool convention, int n_max) {
    UPoly f = trimmed(f_in);
    if (f.empty()) throw AlgebraError("second_kind_cohomology_1_1: f is zero");
    if (k < 1) throw AlgebraError("second_kind_cohomology_1_1: k must be >= 1");
    UPoly df = upoly_derivative(f);
    UPoly h = upoly_gcd(f, df);
    UPoly p = exact_quotient(f, h);
    UPoly q = df.empty() ? UPoly{} : exact_quotient(df, h);
    const UPoly q_minus_dp = upoly_sub(q, upoly_derivative(p));

    GeneratorList gl;
    gl.sig = AlgebraSignature(1, 1);
    gl.psi = second_kind_psi(f, k);
    gl.deformation_convention = convention;
    const GradedPolynomial one = GradedPolynomial::constant(1, 1, 1);
    for (int n = 0; n <= n_max; ++n) {
        CohomologySpace odd{n, 1};
        if (n == 0) {
            odd.generators.push_back(make(MultiDerivation::from_polynomial(one), ModuleType::K, 0));
        } else {
            MultiDerivation gen = term(1, 1, 1, n - 1, TH11());
            if (n < k - 1 || (n == k - 1 && convention))
                odd.generators.push_back(make(gen, ModuleType::Kx, 1));
            else if (n == k - 1)
                odd.generators.push_back(quotient(gen, f, 1));
            else if (n == 2 * (k - 1)) {
                odd.closed_form = false;
                odd.note = "no closed form: the coboundaries do not form an ideal";
            } else
                odd.generators.push_back(quotient(gen, h, 1));
        }
        gl.spaces.push_back(odd);

        CohomologySpace even{n, 0};
        if (n == k - 1) {
            if (k >= 2) even.generators.push_back(make(term(1, 1, 1, k - 2, X11(f)), ModuleType::K, upoly_degree(f)));
            even.generators.push_back(quotient(term(1, 1, 0, k - 1, TH11()), f, 1));
        } else if (n >= 1) {
            const int denom = k - n - 1;
            auto family = [p, q_minus_dp, denom, n](const GradedPolynomial& mpoly) {
                UPoly m = to_upoly(mpoly, 0);
                UPoly a = upoly_mul(m, p);
                UPoly b = upoly_sub(upoly_mul(m, q_minus_dp), upoly_mul(upoly_derivative(m), p));
                for (auto& c : b) c /= denom;
                return term(1, 1, 1, n - 1, X11(a)) + term(1, 1, 0, n, X11(b) * TH11());
            };
            Generator g;
            g.action = family;
            g.element = family(one);
            g.degree = upoly_degree(p);
            g.action_note = "m -> (m p) Dx Dth^(n-1) + ((m (q - p') - m' p)/(k-n-1)) th Dth^n";
            if (n < k - 1) {
                g.module = ModuleType::Kx;
            } else {
                g.module = ModuleType::KxQuotient;
                g.modulus = h;
            }
            even.generators.push_back(std::move(g));
        }
        gl.spaces.push_back(even);
    }
    return gl;
}

namespace {

std::optional<Rational> rational_root(const Rational& rho, int g) {
    if (g == 1) return rho;
    if (rho == 0) return Rational(0);
    bool neg = rho < 0;
    if (neg && g % 2 == 0) return std::nullopt;
    mpz_class num = abs(rho.get_num()), den = rho.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), g)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), g)) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

Rational rpow(const Rational& a, long e) {
    Rational r = 1;
    Rational b = e >= 0 ? a : Rational(1 / a);
    for (long i = 0; i < std::labs(e); ++i) r *= b;
    return r;
}

// p(x + t) made monic with zero x^{d-1} coefficient; returns (monic depressed, t, leading coefficient)
void depress(const UPoly& p, UPoly& out, Rational& t, Rational& lc) {
    int d = upoly_degree(p);
    lc = p[d];
    t = d >= 1 ? Rational(-p[d - 1] / (lc * d)) : Rational(0);
    out = upoly_compose_affine(p, 1, t);
    for (auto& c : out) c /= lc;
}

}  // namespace

Equivalence11 equivalent_1_1_first_kind(const UPoly& g1_in, const UPoly& g2_in, int k) {
    if (k < 1) throw AlgebraError("equivalent_1_1_first_kind: k must be >= 1");
    UPoly g1 = trimmed(g1_in), g2 = trimmed(g2_in);
    if (g1.empty() || g2.empty()) throw AlgebraError("equivalent_1_1_first_kind: zero polynomial");
    Equivalence11 r;
    int d = upoly_degree(g1);
    if (d != upoly_degree(g2)) {
        r.reason = "degrees differ";
        return r;
    }
    UPoly n1, n2;
    Rational t1, t2, lc1, lc2;
    depress(g1, n1, t1, lc1);
    depress(g2, n2, t2, lc2);
    // n2(z) = A^{-d} n1(A z): n1_j / n2_j = A^{d-j}
    long G = 0;
    Rational rho = 1;
    std::vector<std::pair<long, Rational>> constraints;
    for (int j = 0; j < d; ++j) {
        bool z1 = n1[j] == 0, z2 = n2[j] == 0;
        if (z1 != z2) {
            r.reason = "normal forms have different support";
            return r;
        }
        if (z1) continue;
        long e = d - j;
        Rational ratio = n1[j] / n2[j];
        constraints.emplace_back(e, ratio);
        if (G == 0) {
            G = e;
            rho = ratio;
        } else {
            // A^{gcd} = rho^s ratio^t with s G + t e = gcd
            long s0 = 1, s1 = 0, a = G, b = e, t0 = 0, t1b = 1;
            while (b != 0) {
                long qq = a / b;
                std::tie(a, b) = std::make_pair(b, a - qq * b);
                std::tie(s0, s1) = std::make_pair(s1, s0 - qq * s1);
                std::tie(t0, t1b) = std::make_pair(t1b, t0 - qq * t1b);
            }
            rho = rpow(rho, s0) * rpow(ratio, t0);
            G = a;
        }
    }
    for (const auto& [e, ratio] : constraints)
        if (rpow(rho, e / G) != ratio) {
            r.reason = "coefficient invariants are inconsistent";
            return r;
        }
    Rational A = 1;
    if (G > 0) {
        auto root = rational_root(rho, static_cast<int>(G));
        if (!root) {
            r.status = Equivalence11::Status::Unknown;
            r.reason = "no rational scaling; a witness may exist over an extension field";
            return r;
        }
        A = *root;
    }
    r.A = A;
    r.B = t1 - A * t2;
    r.C = lc2 / (lc1 * rpow(A, d));
    UPoly lhs = upoly_compose_affine(g1, r.A, r.B);
    for (auto& c : lhs) c *= r.C;
    if (!upoly_sub(lhs, g2).empty()) {
        r.reason = "witness verification failed";
        r.status = Equivalence11::Status::None;
        return r;
    }
    r.status = Equivalence11::Status::Equivalent;
    return r;
}

// ---------------------------------------------------------------- 2|1

GradedPolynomial lift_planar(const GradedPolynomial& f) {
    if (!is_planar(f)) throw AlgebraError("lift_planar: expected a polynomial in K[x,y]");
    GradedPolynomial r(2, 1);
    for (const auto& [mono, c] : f.terms()) r.add_term(mono, c);
    return r;
}

namespace {

GradedPolynomial TH21() { return GradedPolynomial::variable(2, 1, 2); }
constexpr std::uint32_t DX = 1, DY = 2;

}  // namespace

MultiDerivation odd_casimir_family(const GradedPolynomial& b) {
    PlanarField gb = grad(b);
    return term(2, 1, DX, 1, lift_planar(gb.g) * TH21()) - term(2, 1, DY, 1, lift_planar(gb.f) * TH21());
}

MultiDerivation build_psi_b(const GradedPolynomial& b) { return odd_casimir_family(b); }

MultiDerivation even_casimir_family(const GradedPolynomial& a) {
    PlanarField ga = grad(a);
    return term(2, 1, DX | DY, 0, lift_planar(a)) - term(2, 1, DX, 1, lift_planar(ga.g) * TH21()) +
           term(2, 1, DY, 1, lift_planar(ga.f) * TH21());
}

MultiDerivation dtheta2_family(const GradedPolynomial& k) { return term(2, 1, 0, 2, lift_planar(k)); }

MultiDerivation minus2k_family(const GradedPolynomial& k) {
    PlanarField gk = grad(k);
    return term(2, 1, DX | DY, 0, lift_planar(k) * Rational(-2)) - term(2, 1, DX, 1, lift_planar(gk.g) * TH21()) +
           term(2, 1, DY, 1, lift_planar(gk.f) * TH21()) + term(2, 1, 0, 2, lift_planar(k));
}

MultiDerivation casimir_residual(const MultiDerivation& psi, const GradedPolynomial& alpha) {
    if (!alpha.is_parity_homogeneous()) throw AlgebraError("casimir_residual: alpha must be parity homogeneous");
    return schouten_bracket(psi, MultiDerivation::from_polynomial(alpha));
}

GeneratorList psi_b_odd_cohomology(const MilnorData& data, bool convention, int n_max) {
    const GradedPolynomial& b = data.b;
    const int d = data.degree;
    GeneratorList gl;
    gl.sig = AlgebraSignature(2, 1);
    gl.psi = build_psi_b(b);
    gl.deformation_convention = convention;
    const GradedPolynomial one = GradedPolynomial::constant(2, 1, 1);
    const GradedPolynomial th = TH21();
    auto kb = [d](MultiDerivation el, int degree) {
        Generator g = make(std::move(el), ModuleType::Kb, degree);
        g.step = d;
        return g;
    };
    auto grad_form = [&](const GradedPolynomial& u, int dth) {
        PlanarField gu = grad(u);
        return term(2, 1, DX, dth, lift_planar(gu.g) * th) - term(2, 1, DY, dth, lift_planar(gu.f) * th);
    };
    for (int n = 0; n <= n_max; ++n) {
        CohomologySpace s{n, 1};
        if (n == 0) {
            s.generators.push_back(kb(MultiDerivation::from_polynomial(one), 0));
        } else if (n == 1) {
            if (convention) {
                PlanarField gb = grad(b);
                MultiDerivation gen = term(2, 1, DY, 0, lift_planar(gb.f) * th) - term(2, 1, DX, 0, lift_planar(gb.g) * th);
                s.generators.push_back(make(gen, ModuleType::Kxy, d));
            }
        } else if (n == 2) {
            s.generators.push_back(kb(term(2, 1, DX | DY, 0, one), 0));
            for (int i = 0; i < data.mu; ++i)
                if (data.basis_degree[i] == d - 2)
                    s.generators.push_back(kb(gl.psi.left_multiply(lift_planar(data.basis[i])), data.basis_degree[i] + d));
            MultiDerivation euler = term(2, 1, DX, 1, lift_planar(planar_x()) * th) + term(2, 1, DY, 1, lift_planar(planar_y()) * th);
            for (int j = 0; j < data.mu; ++j)
                s.generators.push_back(kb(euler.left_multiply(lift_planar(data.basis[j])), data.basis_degree[j] + 2));
            for (int i = 1; i < data.mu; ++i)
                if (data.basis_degree[i] != d - 2)
                    s.generators.push_back(kb(grad_form(data.basis[i], 1), data.basis_degree[i]));
            for (int j = 1; j < data.mu; ++j)
                if (data.basis_degree[j] == d - 2)
                    s.generators.push_back(make(grad_form(data.basis[j], 1), ModuleType::K, data.basis_degree[j]));
        } else {
            for (int i = 0; i < data.mu; ++i) {
                MultiDerivation gen = term(2, 1, DX | DY, n - 2, lift_planar(data.basis[i]) * Rational(n - 2)) +
                                      grad_form(data.basis[i], n - 1);
                s.generators.push_back(make(gen, ModuleType::K, data.basis_degree[i]));
            }
        }
        gl.spaces.push_back(std::move(s));
    }
    return gl;
}

GeneratorList psi_b_even_cohomology(const MilnorData& data, int n_max) {
    const GradedPolynomial& b = data.b;
    const int d = data.degree;
    GeneratorList gl;
    gl.sig = AlgebraSignature(2, 1);
    gl.psi = build_psi_b(b);
    const GradedPolynomial one = GradedPolynomial::constant(2, 1, 1);
    const GradedPolynomial th = TH21();
    auto kb = [d](MultiDerivation el, int degree) {
        Generator g = make(std::move(el), ModuleType::Kb, degree);
        g.step = d;
        return g;
    };
    for (int n = 0; n <= n_max; ++n) {
        CohomologySpace s{n, 0};
        if (n == 1) {
            if (d == 1) {
                s.generators.push_back(kb(term(2, 1, DX, 0, one), 0));
                s.generators.push_back(kb(term(2, 1, DY, 0, one), 0));
            } else {
                for (int i = 0; i < data.mu; ++i)
                    s.generators.push_back(kb(term(2, 1, 0, 1, lift_planar(data.basis[i]) * th), data.basis_degree[i] + 1));
                PlanarField gb = grad(b);
                s.generators.push_back(kb(term(2, 1, DY, 0, lift_planar(gb.f)) - term(2, 1, DX, 0, lift_planar(gb.g)), d - 1));
                if (d == 2)
                    s.generators.push_back(
                        kb(term(2, 1, DX, 0, lift_planar(planar_x())) + term(2, 1, DY, 0, lift_planar(planar_y())), 1));
            }
        } else if (n >= 2) {
            for (int i = 0; i < data.mu; ++i) {
                MultiDerivation gen = term(2, 1, DX | DY, n - 2, lift_planar(data.basis[i]) * th);
                if (n == 3)
                    s.generators.push_back(kb(gen, data.basis_degree[i] + 1));
                else
                    s.generators.push_back(make(gen, ModuleType::K, data.basis_degree[i] + 1));
            }
        }
        gl.spaces.push_back(std::move(s));
    }
    return gl;
}

}  // namespace gp

namespace gp {

std::optional<GradedPolynomial> psi_b_potential(const MultiDerivation& psi) {
    if (psi.m() != 2 || psi.n() != 1 || psi.is_zero()) return std::nullopt;
    ExteriorMonomial ex(1), ey(1);
    ex.even_mask = DX;
    ex.odd_exps[0] = 1;
    ey.even_mask = DY;
    ey.odd_exps[0] = 1;
    // coefficients b_y th and -b_x th
    auto strip = [](const GradedPolynomial& c) -> std::optional<GradedPolynomial> {
        GradedPolynomial r = planar_zero();
        for (const auto& [mono, q] : c.terms()) {
            if (mono.odd_mask != 1) return std::nullopt;
            GradedMonomial pm(2);
            pm.exps = mono.exps;
            r.add_term(pm, q);
        }
        return r;
    };
    auto by = strip(psi.coefficient(ex));
    auto mbx = strip(psi.coefficient(ey));
    if (!by || !mbx) return std::nullopt;
    PlanarField F(-*mbx, *by);
    if (F.is_zero() || !div(F).is_zero()) return std::nullopt;
    GradedPolynomial b = gradient_potential(F);
    if (!is_homogeneous(b) || !(build_psi_b(b) == psi)) return std::nullopt;
    return b;
}

ClosedFormMatch closed_form_for(const MultiDerivation& psi, bool convention, int n_max) {
    ClosedFormMatch r;
    if (psi.is_zero()) {
        r.reason = "psi is zero";
        return r;
    }
    if (psi.m() == 0 && psi.n() == 1) {
        if (psi.total_parity() != 1 || psi.min_symbols() < 1) {
            r.reason = "psi must be odd without C^0 terms";
            return r;
        }
        r.family = "0|1";
        r.k = classify_0_1(psi).order;
        r.list = cohomology_0_1(r.k, convention, n_max);
        return r;
    }
    if (psi.m() == 1 && psi.n() == 1) {
        if (psi.terms().size() != 1) {
            r.reason = "closed forms cover single-term 1|1 codifferentials only";
            return r;
        }
        const auto& [ext, coef] = *psi.terms().begin();
        int dth = static_cast<int>(ext.odd_exps[0]);
        bool th = false, plain = false;
        for (const auto& [mono, q] : coef.terms()) (mono.odd_mask ? th : plain) = true;
        if (ext.even_mask == 0 && !th && dth >= 1) {
            r.family = "1|1 first kind";
            r.k = dth;
            r.poly = to_upoly(coef, 0);
            r.list = first_kind_cohomology_1_1(r.poly, r.k, convention, n_max);
            return r;
        }
        if (ext.even_mask == 1 && !plain) {
            GradedPolynomial f(1, 1);
            for (const auto& [mono, q] : coef.terms()) {
                GradedMonomial pm(1);
                pm.exps = mono.exps;
                f.add_term(pm, q);
            }
            r.family = "1|1 second kind";
            r.k = dth + 1;
            r.poly = to_upoly(f, 0);
            r.list = second_kind_cohomology_1_1(r.poly, r.k, convention, n_max);
            return r;
        }
        r.reason = "not of the form g(x) Dth^k or f(x) th Dx Dth^(k-1)";
        return r;
    }
    if (psi.m() == 2 && psi.n() == 1) {
        auto b = psi_b_potential(psi);
        if (!b) {
            r.reason = "not of the form psi_b = b_y th Dx Dth - b_x th Dy Dth with b homogeneous";
            return r;
        }
        r.family = "2|1 psi_b";
        r.b = *b;
        auto md = milnor_basis(*b);
        GeneratorList odd = psi_b_odd_cohomology(md, convention, n_max);
        GeneratorList even = psi_b_even_cohomology(md, n_max);
        for (auto& s : even.spaces) odd.spaces.push_back(std::move(s));
        r.list = std::move(odd);
        return r;
    }
    r.reason = "no closed form for this signature";
    return r;
}

}  // namespace gp
