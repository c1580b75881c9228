// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime limit.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "gp/closedform.hpp"
#include "gp/cohomology.hpp"
#include "gp/planar.hpp"
#include "test_util.hpp"

using namespace gp;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// counts failures and keeps the first few descriptions
struct Tally {
    int checks = 0, failures = 0;
    std::ostringstream first;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (cond) return;
        if (failures < 3) first << (failures ? "; " : "") << what;
        ++failures;
    }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream s;
        s << summary << ", " << checks << " checks";
        if (failures) s << ", " << failures << " failed: " << first.str();
        return {failures == 0, s.str()};
    }
};

MultiDerivation M(const std::string& s, int m, int n) { return parse_multiderivation(s, AlgebraSignature(m, n)); }
GradedPolynomial P2(const std::string& s) { return parse_polynomial(s, AlgebraSignature(2, 0)); }
UPoly U(const std::string& s) { return to_upoly(parse_polynomial(s, AlgebraSignature(1, 0)), 0); }

MultiDerivation phi01(int k) { return psi_0_1(k).left_multiply(GradedPolynomial::variable(0, 1, 0)); }

// closed-form slice dimensions against the brute-force table; slices without a closed form are skipped
void compare_slices(Tally& t, const GeneratorList& gl, int nmax, int emax, const std::string& label) {
    CohomologyOptions o;
    o.deformation_convention = gl.deformation_convention;
    auto table = cohomology_table(gl.psi, nmax, emax, ParityFilter::Both, o);
    for (const auto& s : gl.spaces) {
        if (s.n > nmax || !s.closed_form) continue;
        for (int e = 0; e <= emax; ++e) {
            int brute = table.slices.at(SliceSpec{gl.psi.m(), gl.psi.n(), s.n, s.parity, e}).dim_h;
            std::ostringstream w;
            w << label << (gl.deformation_convention ? " conv" : "") << " n=" << s.n << " p=" << s.parity
              << " e=" << e << ": brute " << brute << " vs closed " << s.dimension_at(e);
            t.expect(brute == s.dimension_at(e), w.str());
        }
    }
}

int total_h(const MultiDerivation& psi, int n, int parity, int emax, bool convention = false) {
    CohomologyOptions o;
    o.deformation_convention = convention;
    return cohomology_table(psi, n, emax, parity ? ParityFilter::Odd : ParityFilter::Even, o).total(n, parity);
}

GradedPolynomial random_form(testing::Random& rnd, int t) {
    GradedPolynomial f = planar_zero();
    for (int i = 0; i <= t; ++i) {
        if (rnd.uniform(0, 2) == 0) continue;
        GradedMonomial m(2);
        m.exps[0] = i;
        m.exps[1] = t - i;
        f.add_term(m, rnd.rational());
    }
    return f;
}

GradedPolynomial random_planar(testing::Random& rnd, int max_degree) {
    GradedPolynomial f = planar_zero();
    for (int t = 0; t <= max_degree; ++t) f += random_form(rnd, t);
    return f;
}

// -- criteria --

Outcome bracket_tables() {
    Tally t;
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 6; ++n) {
            std::string at = " m=" + std::to_string(m) + " n=" + std::to_string(n);
            t.expect(schouten_bracket(psi_0_1(m), psi_0_1(n)).is_zero(), "[psi,psi]" + at);
            t.expect(schouten_bracket(psi_0_1(m), phi01(n)) == psi_0_1(m + n - 1) * Rational(m), "[psi,phi]" + at);
            t.expect(schouten_bracket(phi01(m), phi01(n)) == phi01(m + n - 1) * Rational(m - n), "[phi,phi]" + at);
            Rational s = ((m - 1) * (n + 1)) % 2 ? -1 : 1;
            t.expect(modified_bracket(psi_0_1(m), psi_0_1(n)).is_zero(), "{psi,psi}" + at);
            t.expect(modified_bracket(psi_0_1(m), phi01(n)) == psi_0_1(m + n - 1) * (s * m), "{psi,phi}" + at);
            t.expect(modified_bracket(phi01(m), phi01(n)) == phi01(m + n - 1) * (s * (m - n)), "{phi,phi}" + at);
        }
    return t.outcome("1<=m,n<=6");
}

Outcome oracle_equivalence() {
    Tally t;
    testing::Random rnd(1002);
    const int pairs = 240;
    for (int i = 0; i < pairs; ++i) {
        int m = rnd.uniform(0, 2), n = rnd.uniform(m == 0 ? 1 : 0, 2);
        // exterior degree <= 3, i.e. at most 4 symbols
        auto a = rnd.decomposable(m, n, rnd.symbols(m, n, 1, 4), 3);
        auto b = rnd.decomposable(m, n, rnd.symbols(m, n, 1, 4), 3);
        int len = a.max_symbols() + b.max_symbols() - 1;
        std::vector<GradedPolynomial> probe;
        for (int j = 0; j < len; ++j) probe.push_back(rnd.polynomial(m, n, 3, 2, rnd.uniform(0, n ? 1 : 0)));
        t.expect(evaluate(schouten_bracket(a, b), probe) == commutator_oracle(a, b, probe),
                 "pair " + std::to_string(i) + " in " + std::to_string(m) + "|" + std::to_string(n));
    }
    return t.outcome(std::to_string(pairs) + " pairs up to 2|2");
}

Outcome dichotomy_1_1() {
    Tally t;
    testing::Random rnd(1003);
    int mixed = 0, cases = 0;
    auto random_upoly = [&](bool allow_zero) {
        for (;;) {
            UPoly p(rnd.uniform(1, 4), Rational(0));
            for (auto& c : p)
                if (rnd.uniform(0, 2)) c = rnd.rational();
            upoly_trim(p);
            if (allow_zero || upoly_degree(p) >= 0) return p;
        }
    };
    while (cases < 150) {
        MultiDerivation psi(1, 1);
        bool any_f = false, any_g = false;
        // a third of the cases are pure first or second kind, the rest mixed
        int shape = cases % 3;
        for (int k = 1; k <= 4; ++k) {
            if (shape != 1 && rnd.uniform(0, 1)) {
                UPoly g = random_upoly(false);
                psi += first_kind_psi(g, k);
                any_g = true;
            }
            if (shape != 0 && rnd.uniform(0, 1)) {
                UPoly f = random_upoly(false);
                psi += second_kind_psi(f, k);
                any_f = true;
            }
        }
        if (psi.is_zero()) continue;
        ++cases;
        if (any_f && any_g) ++mixed;
        bool expect = !(any_f && any_g);
        t.expect(is_codifferential(psi, 8).ok == expect, "case " + std::to_string(cases));
    }
    return t.outcome(std::to_string(cases) + " codifferential candidates, " + std::to_string(mixed) + " mixed");
}

Outcome cohomology_01() {
    Tally t;
    for (int k = 1; k <= 5; ++k)
        for (bool conv : {false, true}) {
            CohomologyOptions o;
            o.deformation_convention = conv;
            auto table = cohomology_table(psi_0_1(k), 7, 1, ParityFilter::Both, o);
            for (int n = 0; n <= 7; ++n) {
                // <psi^n> for n < k-1; psi^{k-1} survives only under the convention
                int odd = (n < k - 1 || (conv && n == k - 1)) ? 1 : 0;
                std::string at = " k=" + std::to_string(k) + " n=" + std::to_string(n) + (conv ? " conv" : "");
                t.expect(table.total(n, 1) == odd, "odd" + at);
                t.expect(table.total(n, 0) == 0, "even" + at);
                if (odd) {
                    const auto& r = table.slices.at(SliceSpec{0, 1, n, 1, 0});
                    t.expect(r.dim_h == 1 && r.representatives.size() == 1 &&
                                 r.representatives[0].min_symbols() == n && r.representatives[0].term_count() == 1,
                             "generator" + at);
                }
            }
            compare_slices(t, cohomology_0_1(k, conv, 7), 7, 1, "0|1 k=" + std::to_string(k));
        }
    return t.outcome("k<=5, n<=7, both conventions");
}

Outcome closed_forms_1_1() {
    Tally t;
    const std::vector<std::string> psis = {"x^2*Dth", "x^3*Dth", "x^2*(x-1)*Dth", "x*th*Dx*Dth", "x^2*th*Dx*Dth^2"};
    for (const auto& s : psis)
        for (bool conv : {false, true}) {
            auto match = closed_form_for(M(s, 1, 1), conv, 5);
            t.expect(match.list.has_value(), s + ": no closed form");
            if (match.list) compare_slices(t, *match.list, 5, 10, s);
        }
    return t.outcome("5 codifferentials, n<=5, e<=10, both parities and conventions");
}

Outcome worked_examples() {
    Tally t;
    auto p1 = M("x^2*Dth + Dth^2", 1, 1);
    auto p2 = M("x^3*Dth + x*Dth^2", 1, 1);
    for (int emax : {6, 9}) {
        std::string at = " emax=" + std::to_string(emax);
        for (int k = 2; k <= 4; ++k) t.expect(total_h(p1, k, 1, emax) == 0, "x^2 Dth + Dth^2 H^" + std::to_string(k) + at);
        t.expect(total_h(p2, 2, 1, emax) == 1, "x^3 Dth + x Dth^2 H^2" + at);
        t.expect(total_h(p2, 3, 1, emax) == 0, "x^3 Dth + x Dth^2 H^3" + at);
    }
    // the surviving H^2 class has a constant leading coefficient: K[x]/(x)
    auto f = filtered_cohomology(p2, 2, 1, 9);
    t.expect(f.converged && f.consistent, "filtered engine did not converge");
    for (int e = 0; e <= 9; ++e) t.expect(f.cumulative_h[e] == 1, "F(" + std::to_string(e) + ") != 1");
    return t.outcome("truncations e<=6 and e<=9 agree");
}

// dim of degree-t part of <b_x, b_y>, by spanning monomial multiples
int ideal_dim(const GradedPolynomial& bx, const GradedPolynomial& by, int t) {
    const int s = t - (bx.degree() >= 0 ? bx.degree() : by.degree());
    if (s < 0) return 0;
    std::vector<std::vector<Rational>> cols;
    auto coords = [&](const GradedPolynomial& f) {
        std::vector<Rational> v(t + 1, 0);
        for (const auto& [mono, c] : f.terms()) v[mono.exps[0]] = c;
        return v;
    };
    for (int i = 0; i <= s; ++i) {
        auto mono = GradedPolynomial::variable(2, 0, 0).pow(i) * GradedPolynomial::variable(2, 0, 1).pow(s - i);
        cols.push_back(coords(mono * bx));
        cols.push_back(coords(mono * by));
    }
    return column_rank(cols, t + 1);
}

Outcome milnor_numbers() {
    Tally t;
    const std::vector<std::pair<std::string, int>> bs = {
        {"x*y", 2}, {"x^2+y^2", 2}, {"x^3+y^3", 3}, {"x*(x-y)*(x+y)", 3}, {"x^4+y^4", 4}, {"x^4-x*y^3", 4}, {"x^3*y+x*y^3", 4}};
    for (const auto& [s, d] : bs) {
        auto md = milnor_basis(P2(s));
        t.expect(md.mu == (d - 1) * (d - 1), s + ": mu " + std::to_string(md.mu));
        auto bx = partial(md.b, 0), by = partial(md.b, 1);
        int brute = 0;
        for (int deg = 0; deg <= 2 * d + 2; ++deg) {
            int q = deg + 1 - ideal_dim(bx, by, deg);
            brute += q;
            int listed = 0;
            for (int bd : md.basis_degree) listed += bd == deg;
            t.expect(listed == q, s + ": basis count in degree " + std::to_string(deg));
        }
        t.expect(brute == md.mu, s + ": brute-force mu " + std::to_string(brute));
        // basis monomials are independent modulo the ideal in each degree
        for (int deg = 0; deg <= md.top_degree; ++deg) {
            std::vector<std::vector<Rational>> cols;
            int s0 = deg - (d - 1), listed = 0;
            auto coords = [&](const GradedPolynomial& f) {
                std::vector<Rational> v(deg + 1, 0);
                for (const auto& [mono, c] : f.terms()) v[mono.exps[0]] = c;
                return v;
            };
            for (int i = 0; s0 >= 0 && i <= s0; ++i) {
                auto mono = GradedPolynomial::variable(2, 0, 0).pow(i) * GradedPolynomial::variable(2, 0, 1).pow(s0 - i);
                cols.push_back(coords(mono * bx));
                cols.push_back(coords(mono * by));
            }
            int r = column_rank(cols, deg + 1);
            for (std::size_t j = 0; j < md.basis.size(); ++j)
                if (md.basis_degree[j] == deg) {
                    cols.push_back(coords(md.basis[j]));
                    ++listed;
                }
            t.expect(column_rank(cols, deg + 1) == r + listed, s + ": dependent basis in degree " + std::to_string(deg));
        }
    }
    return t.outcome(std::to_string(bs.size()) + " binary forms of degree 2..4");
}

Outcome psi_b_cohomology() {
    Tally t;
    for (const auto& s : {"x*y", "x^2+y^2", "x^3+y^3", "x*(x-y)*(x+y)"}) {
        auto md = milnor_basis(P2(s));
        for (bool conv : {false, true}) compare_slices(t, psi_b_odd_cohomology(md, conv, 5), 5, 10, s);
        auto even = psi_b_even_cohomology(md, 5);
        compare_slices(t, even, 5, 10, s);
        // the Euler field is an H^1_e class exactly when deg b = 2
        bool euler = false;
        for (const auto& g : even.find(1, 0)->generators) euler = euler || g.element == M("x*Dx + y*Dy", 2, 1);
        t.expect(euler == (md.degree == 2), std::string(s) + ": Euler field branch");
    }
    return t.outcome("4 potentials, n<=5, e<=10, both parities");
}

Outcome exactness() {
    Tally t;
    testing::Random rnd(1009);
    const std::vector<std::string> bs = {"x*y", "x^2+y^2", "x^3+y^3", "x*(x-y)*(x+y)", "x^4+y^4", "x+2*y"};
    for (int i = 0; i < 500; ++i) {
        auto b = P2(bs[i % bs.size()]);
        auto a = random_planar(rnd, 8 - b.degree() + 1);
        t.expect(koszul_divide(grad(b).scaled(a), b) == a, "koszul " + std::to_string(i));
        auto h = random_planar(rnd, 8);
        h -= h.homogeneous_part(0);
        t.expect(gradient_potential(grad(h)) == h, "potential " + std::to_string(i));
    }
    for (int i = 0; i < 240; ++i) {
        auto md = milnor_basis(P2(bs[i % (bs.size() - 1)]));
        auto gb = grad(md.b);
        auto f = random_planar(rnd, 10);
        auto r = reduce_mod_jacobian(f, md);
        GradedPolynomial back = cross(gb, r.G);
        for (int j = 0; j < md.mu; ++j) back += md.basis[j] * r.lambda[j];
        t.expect(back == f, "reduce " + std::to_string(i));
        auto s = sqfree2_decompose(f, md);
        GradedPolynomial back2 = cross(grad(s.h), gb);
        for (int j = 0; j < md.mu; ++j) back2 += evaluate_in(s.c[j], md.b) * md.basis[j];
        t.expect(back2 == f, "sqfree2 " + std::to_string(i));
    }
    return t.outcome("500 Koszul and potential round trips, 240 reductions and decompositions");
}

Outcome automorphisms() {
    Tally t;
    for (int k = 1; k <= 5; ++k)
        for (int l = k + 1; l <= 8; ++l)
            for (auto [ak, al] : std::vector<std::pair<Rational, Rational>>{{3, -2}, {Rational(-1, 2), 5}}) {
                auto p = psi_0_1(k) * ak + psi_0_1(l) * al;
                Rational sign = ((k - 1) * (l - k)) % 2 ? -1 : 1;
                Rational c = -sign * al / (ak * k);
                auto q = apply_higher_automorphism(p, phi01(l - k + 1) * c, l + 2);
                t.expect(q.truncate(l) == psi_0_1(k) * ak, "eliminate k=" + std::to_string(k) + " l=" + std::to_string(l));
            }
    auto psi = M("x^2*Dth + x*Dth^2", 1, 1);
    auto out = apply_higher_automorphism(psi, M("1/2*Dx*Dth", 1, 1), 6);
    t.expect(out.truncate(2) == M("x^2*Dth", 1, 1), "absorption of x Dth^2");
    t.expect(is_codifferential(out, 8).ok, "absorbed codifferential");
    return t.outcome("0|1 elimination for k<l<=8 and the 1|1 absorption");
}

Outcome complex_identities() {
    Tally t;
    testing::Random rnd(1011);
    std::vector<MultiDerivation> corpus = {
        M("x^2*Dth + Dth^2", 1, 1), M("x^3*Dth + x*Dth^2 - 2*Dth^4", 1, 1), M("x^2*th*Dx*Dth + (x-1)*th*Dx*Dth^3", 1, 1),
        M("3*Dth^2 + 5*Dth^4", 0, 1), build_psi_b(P2("x^3+y^3")), dtheta2_family(P2("x*y+1")),
        even_casimir_family(P2("x^2-y")), minus2k_family(P2("x+y^2")),
        M("x*y*Dx*Dy + Dth1*Dth2", 2, 2), M("Dth1^2 + Dth2^3 + x*Dth2", 1, 2), M("x*Dx*Dy + th1*Dy*Dth1 + th2*Dy*Dth2", 2, 2),
        M("y*th1*Dx*Dth1 - x*th1*Dy*Dth1 + (x^2+y^2)*Dth2^2", 2, 2)};
    int d2 = 0;
    for (const auto& psi : corpus) {
        t.expect(is_codifferential(psi, 12).ok, "corpus member is not a codifferential");
        for (int i = 0; i < 50; ++i, ++d2) {
            auto phi = rnd.homogeneous(psi.m(), psi.n(), rnd.symbols(psi.m(), psi.n(), 0, 3), rnd.uniform(0, 1), 3, 3);
            t.expect(coboundary(psi, coboundary(psi, phi)).is_zero(), "D^2 in " + std::to_string(psi.m()) + "|" +
                                                                          std::to_string(psi.n()));
        }
    }
    const int jacobi = 520;
    for (int i = 0; i < jacobi; ++i) {
        int m = rnd.uniform(0, 2), n = rnd.uniform(m == 0 ? 1 : 0, 2);
        auto a = rnd.homogeneous(m, n, rnd.symbols(m, n, 0, 3), rnd.uniform(0, 1), 2, 2);
        auto b = rnd.homogeneous(m, n, rnd.symbols(m, n, 0, 3), rnd.uniform(0, 1), 2, 2);
        auto c = rnd.homogeneous(m, n, rnd.symbols(m, n, 0, 2), rnd.uniform(0, 1), 2, 2);
        Rational s = (a.total_parity() * b.total_parity()) % 2 ? -1 : 1;
        auto lhs = modified_bracket(a, modified_bracket(b, c));
        auto rhs = modified_bracket(modified_bracket(a, b), c) + modified_bracket(b, modified_bracket(a, c)) * s;
        t.expect(lhs == rhs, "Jacobi " + std::to_string(i));
        t.expect(modified_bracket(a, b) == -(modified_bracket(b, a) * s), "antisymmetry " + std::to_string(i));
    }
    return t.outcome(std::to_string(d2) + " D^2 instances, " + std::to_string(jacobi) + " Jacobi triples");
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "bracket tables", 1, bracket_tables},
        {2, "oracle equivalence", 30, oracle_equivalence},
        {3, "1|1 codifferential dichotomy", 10, dichotomy_1_1},
        {4, "0|1 cohomology", 1, cohomology_01},
        {5, "1|1 closed forms vs brute force", 120, closed_forms_1_1},
        {6, "worked examples", 60, worked_examples},
        {7, "Milnor numbers", 5, milnor_numbers},
        {8, "psi_b cohomology vs brute force", 600, psi_b_cohomology},
        {9, "exactness subroutines", 60, exactness},
        {10, "automorphism identities", 1, automorphisms},
        {11, "D^2 = 0 and graded Jacobi", 60, complex_identities},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < c.limit_s;
        bool pass = o.ok && in_time;
        if (!pass) ++failed;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3fs / limit %.0fs", secs, c.limit_s);
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
                  << timing << (in_time ? "" : ", over time") << "]" << std::endl;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
    return failed ? 1 : 0;
}
