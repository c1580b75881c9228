#include "gp/schouten.hpp"

#include <algorithm>
#include <numeric>

namespace gp {

int ExteriorMonomial::symbol_count() const {
    int k = __builtin_popcount(even_mask);
    for (auto a : odd_exps) k += static_cast<int>(a);
    return k;
}

int ExteriorMonomial::odd_symbols() const {
    int k = 0;
    for (auto a : odd_exps) k += static_cast<int>(a);
    return k;
}

std::vector<int> ExteriorMonomial::symbols(int m) const {
    std::vector<int> w;
    for (int i = 0; i < m; ++i)
        if (even_mask >> i & 1u) w.push_back(i);
    for (std::size_t j = 0; j < odd_exps.size(); ++j)
        for (std::uint32_t t = 0; t < odd_exps[j]; ++t) w.push_back(m + static_cast<int>(j));
    return w;
}

int compare_exterior(const ExteriorMonomial& a, const ExteriorMonomial& b) {
    int ka = a.symbol_count(), kb = b.symbol_count();
    if (ka != kb) return ka < kb ? -1 : 1;
    // more Dx factors first, then by index
    int pa = __builtin_popcount(a.even_mask), pb = __builtin_popcount(b.even_mask);
    if (pa != pb) return pa > pb ? -1 : 1;
    if (a.even_mask != b.even_mask) {
        for (int i = 0; i < 32; ++i) {
            bool ia = a.even_mask >> i & 1u, ib = b.even_mask >> i & 1u;
            if (ia != ib) return ia ? -1 : 1;
        }
    }
    for (std::size_t j = 0; j < a.odd_exps.size() && j < b.odd_exps.size(); ++j)
        if (a.odd_exps[j] != b.odd_exps[j]) return a.odd_exps[j] > b.odd_exps[j] ? -1 : 1;
    return 0;
}

int canonicalize_symbols(std::vector<int> w, int m, int n, ExteriorMonomial& out) {
    int sign = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
            // swapping two Dth's is free, anything involving a Dx flips the sign
            if (!(w[j - 1] >= m && w[j] >= m)) sign = -sign;
            std::swap(w[j - 1], w[j]);
        }
    }
    out = ExteriorMonomial(n);
    for (std::size_t i = 0; i < w.size(); ++i) {
        int v = w[i];
        if (v < 0 || v >= m + n) throw AlgebraError("unknown derivation symbol");
        if (v < m) {
            if (out.even_mask >> v & 1u) return 0;
            out.even_mask |= 1u << v;
        } else {
            out.odd_exps[v - m] += 1;
        }
    }
    return sign;
}

MultiDerivation MultiDerivation::from_polynomial(const GradedPolynomial& f) {
    MultiDerivation r(f.m(), f.n());
    r.add(ExteriorMonomial(f.n()), f);
    return r;
}

std::size_t MultiDerivation::term_count() const {
    std::size_t c = 0;
    for (const auto& [e, f] : terms_) c += f.size();
    return c;
}

void MultiDerivation::add(const ExteriorMonomial& e, const GradedPolynomial& f) {
    if (f.is_zero()) return;
    if (f.m() != m_ || f.n() != n_) throw AlgebraError("signature mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
}

void MultiDerivation::add(const ExteriorMonomial& e, const GradedMonomial& mono, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) it = terms_.emplace(e, GradedPolynomial(m_, n_)).first;
    it->second.add_term(mono, c);
    if (it->second.is_zero()) terms_.erase(it);
}

GradedPolynomial MultiDerivation::coefficient(const ExteriorMonomial& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GradedPolynomial(m_, n_) : it->second;
}

void MultiDerivation::for_each_atom(
    const std::function<void(const ExteriorMonomial&, const GradedMonomial&, const Rational&)>& fn) const {
    for (const auto& [e, f] : terms_)
        for (const auto& [mono, c] : f.terms()) fn(e, mono, c);
}

int MultiDerivation::min_symbols() const {
    int k = -1;
    for (const auto& [e, f] : terms_)
        if (k < 0 || e.symbol_count() < k) k = e.symbol_count();
    return k;
}

int MultiDerivation::max_symbols() const {
    int k = -1;
    for (const auto& [e, f] : terms_) k = std::max(k, e.symbol_count());
    return k;
}

MultiDerivation MultiDerivation::component(int symbols) const {
    MultiDerivation r(m_, n_);
    for (const auto& [e, f] : terms_)
        if (e.symbol_count() == symbols) r.terms_.emplace(e, f);
    return r;
}

MultiDerivation MultiDerivation::truncate(int max_symbols) const {
    MultiDerivation r(m_, n_);
    for (const auto& [e, f] : terms_)
        if (e.symbol_count() <= max_symbols) r.terms_.emplace(e, f);
    return r;
}

MultiDerivation MultiDerivation::total_parity_part(int p) const {
    MultiDerivation r(m_, n_);
    for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& mono, const Rational& c) {
        int tp = (e.symbol_count() - 1 + mono.parity() + e.odd_symbols()) & 1;
        if (tp == p) r.add(e, mono, c);
    });
    return r;
}

int MultiDerivation::total_parity() const {
    int p = -2;
    bool mixed = false;
    for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& mono, const Rational&) {
        int tp = (e.symbol_count() - 1 + mono.parity() + e.odd_symbols()) & 1;
        if (p == -2)
            p = tp;
        else if (p != tp)
            mixed = true;
    });
    return (p == -2 || mixed) ? -1 : p;
}

std::optional<Bidegree> MultiDerivation::bidegree() const {
    std::optional<Bidegree> b;
    bool ok = true;
    for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& mono, const Rational&) {
        Bidegree d{e.symbol_count() - 1, (mono.parity() + e.odd_symbols()) & 1};
        if (!b)
            b = d;
        else if (!(*b == d))
            ok = false;
    });
    if (!ok) return std::nullopt;
    return b;
}

void check_same_signature(const MultiDerivation& a, const MultiDerivation& b) {
    if (a.m() != b.m() || a.n() != b.n()) throw AlgebraError("signature mismatch");
}

MultiDerivation& MultiDerivation::operator+=(const MultiDerivation& o) {
    check_same_signature(*this, o);
    for (const auto& [e, f] : o.terms_) add(e, f);
    return *this;
}

MultiDerivation& MultiDerivation::operator-=(const MultiDerivation& o) {
    check_same_signature(*this, o);
    for (const auto& [e, f] : o.terms_) add(e, -f);
    return *this;
}

MultiDerivation MultiDerivation::operator+(const MultiDerivation& o) const {
    MultiDerivation r = *this;
    r += o;
    return r;
}

MultiDerivation MultiDerivation::operator-(const MultiDerivation& o) const {
    MultiDerivation r = *this;
    r -= o;
    return r;
}

MultiDerivation MultiDerivation::operator-() const {
    MultiDerivation r = *this;
    for (auto& [e, f] : r.terms_) f = -f;
    return r;
}

MultiDerivation MultiDerivation::operator*(const Rational& c) const {
    if (c == 0) return MultiDerivation(m_, n_);
    MultiDerivation r = *this;
    for (auto& [e, f] : r.terms_) f = f * c;
    return r;
}

MultiDerivation MultiDerivation::left_multiply(const GradedPolynomial& g) const {
    if (g.m() != m_ || g.n() != n_) throw AlgebraError("signature mismatch");
    MultiDerivation r(m_, n_);
    for (const auto& [e, f] : terms_) r.add(e, g * f);
    return r;
}

MultiDerivation derivation_word(int m, int n, const std::vector<int>& word, const GradedPolynomial& coeff) {
    MultiDerivation r(m, n);
    ExteriorMonomial e;
    int s = canonicalize_symbols(word, m, n, e);
    if (s != 0) r.add(e, s > 0 ? coeff : -coeff);
    return r;
}

MultiDerivation wedge(const MultiDerivation& a, const MultiDerivation& b) {
    check_same_signature(a, b);
    const int m = a.m(), n = a.n();
    MultiDerivation r(m, n);
    GradedMonomial prod;
    a.for_each_atom([&](const ExteriorMonomial& ea, const GradedMonomial& fa, const Rational& ca) {
        std::vector<int> wa = ea.symbols(m);
        b.for_each_atom([&](const ExteriorMonomial& eb, const GradedMonomial& fb, const Rational& cb) {
            int s = monomial_mul(fa, fb, prod);
            if (s == 0) return;
            // move fb to the left past the symbols of ea
            if ((ea.odd_symbols() * fb.parity()) & 1) s = -s;
            std::vector<int> w = wa;
            std::vector<int> wb = eb.symbols(m);
            w.insert(w.end(), wb.begin(), wb.end());
            ExteriorMonomial e;
            int s2 = canonicalize_symbols(w, m, n, e);
            if (s2 == 0) return;
            Rational c = ca * cb;
            if (s * s2 < 0) c = -c;
            r.add(e, prod, c);
        });
    });
    return r;
}

namespace {

struct Atom {
    ExteriorMonomial ext;
    std::vector<int> syms;
    GradedMonomial mono;
    Rational c;
    int k = 0;
    int internal_parity = 0;
};

std::vector<Atom> atoms_of(const MultiDerivation& a) {
    std::vector<Atom> out;
    a.for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& mono, const Rational& c) {
        Atom t;
        t.ext = e;
        t.syms = e.symbols(a.m());
        t.mono = mono;
        t.c = c;
        t.k = static_cast<int>(t.syms.size());
        t.internal_parity = (mono.parity() + e.odd_symbols()) & 1;
        out.push_back(std::move(t));
    });
    return out;
}

struct MonoTerm {
    GradedMonomial mono;
    Rational c;
};

// The evaluation formula for f Du_1..Du_k on monomial arguments.
void eval_atom(const GradedMonomial& f, const Rational& cf, const std::vector<int>& u, int m,
               const std::vector<GradedMonomial>& g, GradedPolynomial& acc) {
    const int k = static_cast<int>(u.size());
    std::vector<int> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    GradedMonomial d, prod, tmp;
    do {
        int sign = 1;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q)
                if (sigma[p] > sigma[q]) {
                    // swap in Lambda(A): -(-1)^{|a||b|}
                    if (!(g[sigma[p]].parity() & g[sigma[q]].parity())) sign = -sign;
                }
        int gs = 0, passed = 0;
        for (int i = 0; i < k; ++i) {
            if (u[i] >= m) gs += passed;
            passed += g[sigma[i]].parity();
        }
        if (gs & 1) sign = -sign;
        Rational c = cf;
        prod = f;
        bool zero = false;
        for (int i = 0; i < k && !zero; ++i) {
            Rational s = partial_monomial(g[sigma[i]], u[i], m, d);
            if (s == 0) {
                zero = true;
                break;
            }
            c *= s;
            int s2 = monomial_mul(prod, d, tmp);
            if (s2 == 0) {
                zero = true;
                break;
            }
            if (s2 < 0) c = -c;
            prod = tmp;
        }
        if (zero) continue;
        if (sign < 0) c = -c;
        acc.add_term(prod, c);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

// expand polynomial arguments into monomial words
std::vector<std::pair<Rational, std::vector<GradedMonomial>>> expand_words(const std::vector<GradedPolynomial>& args) {
    std::vector<std::pair<Rational, std::vector<GradedMonomial>>> words{{Rational(1), {}}};
    for (const auto& a : args) {
        std::vector<std::pair<Rational, std::vector<GradedMonomial>>> next;
        for (const auto& [c, w] : words)
            for (const auto& [mono, ca] : a.terms()) {
                auto w2 = w;
                w2.push_back(mono);
                next.emplace_back(c * ca, std::move(w2));
            }
        words = std::move(next);
    }
    return words;
}

void bracket_atoms(const Atom& A, const Atom& B, int m, int n, MultiDerivation& out) {
    const auto& u = A.syms;
    const auto& v = B.syms;
    const int ku = A.k, kv = B.k;
    const int fpar = A.mono.parity(), gpar = B.mono.parity();
    auto odd = [m](int s) { return s >= m ? 1 : 0; };
    int usum = 0;
    for (int s : u) usum += odd(s);
    GradedMonomial d, prod;
    ExteriorMonomial e;
    std::vector<int> w;
    w.reserve(ku + kv);

    int before = 0;
    for (int i = 0; i < ku; ++i) {
        int ui = odd(u[i]);
        int star = ui * before + gpar * (usum - ui);
        int expo = (ku - (i + 1)) + star;
        before += ui;
        Rational s1 = partial_monomial(B.mono, u[i], m, d);
        if (s1 == 0) continue;
        int s2 = monomial_mul(A.mono, d, prod);
        if (s2 == 0) continue;
        w.assign(u.begin(), u.end());
        w.erase(w.begin() + i);
        w.insert(w.end(), v.begin(), v.end());
        int s3 = canonicalize_symbols(w, m, n, e);
        if (s3 == 0) continue;
        Rational c = A.c * B.c * s1;
        if ((s2 * s3 < 0) != ((expo & 1) == 1)) c = -c;
        out.add(e, prod, c);
    }
    int vbefore = 0;
    for (int j = 0; j < kv; ++j) {
        int vj = odd(v[j]);
        int star2 = (fpar + usum) * (vj + gpar) + vj * vbefore;
        int expo = (j + 1) + star2;
        vbefore += vj;
        Rational s1 = partial_monomial(A.mono, v[j], m, d);
        if (s1 == 0) continue;
        int s2 = monomial_mul(B.mono, d, prod);
        if (s2 == 0) continue;
        w.assign(u.begin(), u.end());
        w.insert(w.end(), v.begin(), v.end());
        w.erase(w.begin() + ku + j);
        int s3 = canonicalize_symbols(w, m, n, e);
        if (s3 == 0) continue;
        Rational c = A.c * B.c * s1;
        if ((s2 * s3 < 0) != ((expo & 1) == 1)) c = -c;
        out.add(e, prod, c);
    }
}

// alpha o beta as coderivations of Lambda(A), on a monomial word whose length is ka + kb - 1.
void compose_atoms(const Atom& a, const Atom& b, int m, const std::vector<GradedMonomial>& word, const Rational& cw,
                   GradedPolynomial& acc) {
    const int N = static_cast<int>(word.size());
    const int kb = b.k;
    if (kb > N) return;
    // enumerate subsets of size kb (unshuffles) by bitmask
    for (std::uint32_t S = 0; S < (1u << N); ++S) {
        if (__builtin_popcount(S) != kb) continue;
        std::vector<int> order;
        for (int i = 0; i < N; ++i)
            if (S >> i & 1u) order.push_back(i);
        for (int i = 0; i < N; ++i)
            if (!(S >> i & 1u)) order.push_back(i);
        int sign = 1;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q)
                if (order[p] > order[q] && !(word[order[p]].parity() & word[order[q]].parity())) sign = -sign;
        std::vector<GradedMonomial> inner;
        for (int i = 0; i < kb; ++i) inner.push_back(word[order[i]]);
        GradedPolynomial val(word.empty() ? 0 : static_cast<int>(word[0].exps.size()), 0);
        // n of the polynomial is irrelevant for accumulation of monomials here; use acc's signature
        val = GradedPolynomial(acc.m(), acc.n());
        eval_atom(b.mono, b.c, b.syms, m, inner, val);
        for (const auto& [mono, c] : val.terms()) {
            std::vector<GradedMonomial> outer{mono};
            for (int i = kb; i < N; ++i) outer.push_back(word[order[i]]);
            Rational coef = cw * c;
            if (sign < 0) coef = -coef;
            eval_atom(a.mono, a.c * coef, a.syms, m, outer, acc);
        }
    }
}

}  // namespace

GradedPolynomial evaluate(const MultiDerivation& alpha, const std::vector<GradedPolynomial>& args) {
    const int m = alpha.m(), n = alpha.n();
    for (const auto& a : args) {
        if (a.m() != m || a.n() != n) throw AlgebraError("signature mismatch");
        if (!a.is_parity_homogeneous()) throw AlgebraError("evaluate: inhomogeneous argument");
    }
    GradedPolynomial acc(m, n);
    if (alpha.is_zero()) return acc;
    if (alpha.min_symbols() != alpha.max_symbols() || alpha.min_symbols() != static_cast<int>(args.size()))
        throw AlgebraError("evaluate: arity mismatch");
    auto words = expand_words(args);
    for (const auto& atom : atoms_of(alpha))
        for (const auto& [cw, w] : words) eval_atom(atom.mono, atom.c * cw, atom.syms, m, w, acc);
    return acc;
}

MultiDerivation schouten_bracket(const MultiDerivation& a, const MultiDerivation& b) {
    check_same_signature(a, b);
    MultiDerivation out(a.m(), a.n());
    auto aa = atoms_of(a), bb = atoms_of(b);
    for (const auto& x : aa)
        for (const auto& y : bb) bracket_atoms(x, y, a.m(), a.n(), out);
    return out;
}

MultiDerivation modified_bracket(const MultiDerivation& a, const MultiDerivation& b) {
    check_same_signature(a, b);
    MultiDerivation out(a.m(), a.n());
    auto aa = atoms_of(a), bb = atoms_of(b);
    for (const auto& x : aa)
        for (const auto& y : bb) {
            if (((x.k - 1) & y.internal_parity & 1) == 0) {
                bracket_atoms(x, y, a.m(), a.n(), out);
            } else {
                Atom y2 = y;
                y2.c = -y2.c;
                bracket_atoms(x, y2, a.m(), a.n(), out);
            }
        }
    return out;
}

GradedPolynomial coderivation_compose(const MultiDerivation& a, const MultiDerivation& b,
                                      const std::vector<GradedPolynomial>& probe) {
    check_same_signature(a, b);
    GradedPolynomial acc(a.m(), a.n());
    auto words = expand_words(probe);
    for (const auto& x : atoms_of(a))
        for (const auto& y : atoms_of(b)) {
            if (x.k + y.k - 1 != static_cast<int>(probe.size())) continue;
            for (const auto& [cw, w] : words) compose_atoms(x, y, a.m(), w, cw, acc);
        }
    return acc;
}

GradedPolynomial commutator_oracle(const MultiDerivation& a, const MultiDerivation& b,
                                   const std::vector<GradedPolynomial>& probe) {
    check_same_signature(a, b);
    const int m = a.m(), n = a.n();
    for (const auto& g : probe)
        if (!g.is_parity_homogeneous()) throw AlgebraError("commutator_oracle: inhomogeneous probe");
    const int N = static_cast<int>(probe.size());
    GradedPolynomial acc(m, n);
    auto words = expand_words(probe);
    auto aa = atoms_of(a), bb = atoms_of(b);
    bool any = false;
    for (const auto& x : aa)
        for (const auto& y : bb) {
            if (x.k + y.k - 1 != N) continue;
            any = true;
            // graded commutator (-1)^{dd+pp}, times the (-1)^{dd} of the word-reversal normalization
            const bool flip_xy = ((x.k - 1) * (y.k - 1)) & 1;
            const bool flip_yx = (x.internal_parity * y.internal_parity) & 1;
            GradedPolynomial xy(m, n), yx(m, n);
            for (const auto& [cw, w] : words) {
                compose_atoms(x, y, m, w, cw, xy);
                compose_atoms(y, x, m, w, cw, yx);
            }
            if (flip_xy)
                acc -= xy;
            else
                acc += xy;
            if (flip_yx)
                acc += yx;
            else
                acc -= yx;
        }
    if (!any && !aa.empty() && !bb.empty()) {
        bool arity_ok = false;
        for (const auto& x : aa)
            for (const auto& y : bb)
                if (x.k + y.k - 1 == N) arity_ok = true;
        if (!arity_ok) throw AlgebraError("commutator_oracle: arity mismatch");
    }
    return acc;
}

CodifferentialCheck is_codifferential(const MultiDerivation& psi, int max_symbols) {
    if (psi.is_zero()) return {true, psi, -1};
    if (psi.total_parity() != 1) throw AlgebraError("is_codifferential: psi must be odd in total degree");
    if (psi.min_symbols() < 1) throw AlgebraError("is_codifferential: C^0 terms are excluded");
    CodifferentialCheck r;
    r.residual = (modified_bracket(psi, psi) * Rational(1, 2)).truncate(max_symbols);
    r.ok = r.residual.is_zero();
    r.first_nonzero_symbols = r.residual.min_symbols();
    return r;
}

MultiDerivation coboundary(const MultiDerivation& psi, const MultiDerivation& phi) { return modified_bracket(psi, phi); }

MultiDerivation maurer_cartan_residual(const MultiDerivation& psi, const MultiDerivation& alpha, int max_symbols) {
    if (!alpha.is_zero() && alpha.total_parity() != 1)
        throw AlgebraError("maurer_cartan_residual: alpha must be odd");
    MultiDerivation r = modified_bracket(psi, alpha) + modified_bracket(alpha, alpha) * Rational(1, 2);
    return r.truncate(max_symbols);
}

MultiDerivation apply_linear_automorphism(const MultiDerivation& psi, const AffineSubstitution& s) {
    const int m = psi.m(), n = psi.n();
    if (s.m() != m || s.n() != n) throw AlgebraError("automorphism signature mismatch");
    AffineSubstitution inv = s.inverse();
    // D_u o lambda = lambda o sum_w M[w][u] D_w
    auto column = [&](int u) {
        std::vector<std::pair<int, Rational>> col;
        if (u < m) {
            for (int w = 0; w < m; ++w)
                if (s.A[w][u] != 0) col.emplace_back(w, s.A[w][u]);
        } else {
            for (int w = 0; w < n; ++w)
                if (s.C[w][u - m] != 0) col.emplace_back(m + w, s.C[w][u - m]);
        }
        return col;
    };
    MultiDerivation out(m, n);
    for (const auto& [e, f] : psi.terms()) {
        GradedPolynomial fi = substitute_linear(f, inv);
        std::vector<std::pair<Rational, std::vector<int>>> words{{Rational(1), {}}};
        for (int u : e.symbols(m)) {
            std::vector<std::pair<Rational, std::vector<int>>> next;
            for (const auto& [c, w] : words)
                for (const auto& [v, mv] : column(u)) {
                    auto w2 = w;
                    w2.push_back(v);
                    next.emplace_back(c * mv, std::move(w2));
                }
            words = std::move(next);
        }
        for (const auto& [c, w] : words) {
            ExteriorMonomial ce;
            int sg = canonicalize_symbols(w, m, n, ce);
            if (sg == 0) continue;
            out.add(ce, fi * (sg > 0 ? c : Rational(-c)));
        }
    }
    return out;
}

MultiDerivation apply_higher_automorphism(const MultiDerivation& psi, const MultiDerivation& phi, int max_symbols) {
    check_same_signature(psi, phi);
    if (phi.is_zero()) return psi.truncate(max_symbols);
    if (phi.min_symbols() < 2)
        throw AlgebraError("apply_higher_automorphism: phi has C^0/C^1 terms; use apply_linear_automorphism");
    if (phi.total_parity() != 0) throw AlgebraError("apply_higher_automorphism: phi must be even");
    MultiDerivation result = psi.truncate(max_symbols);
    MultiDerivation term = result;
    for (int j = 1; !term.is_zero(); ++j) {
        term = (modified_bracket(term, phi) * Rational(1, j)).truncate(max_symbols);
        result += term;
    }
    return result;
}

}  // namespace gp
