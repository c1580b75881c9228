#include "gp/superalgebra.hpp"

#include <algorithm>

namespace gp {

namespace {

std::vector<std::string> default_names(int m, int n) {
    std::vector<std::string> out;
    static const char* small[] = {"x", "y", "z"};
    for (int i = 0; i < m; ++i)
        out.push_back(m <= 3 ? std::string(small[i]) : "x" + std::to_string(i + 1));
    for (int j = 0; j < n; ++j)
        out.push_back(n == 1 ? std::string("th") : "th" + std::to_string(j + 1));
    return out;
}

bool invert_square(std::vector<std::vector<Rational>> M, std::vector<std::vector<Rational>>& inv) {
    const std::size_t k = M.size();
    inv.assign(k, std::vector<Rational>(k, 0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        while (p < k && M[p][c] == 0) ++p;
        if (p == k) return false;
        std::swap(M[p], M[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = M[c][c];
        for (std::size_t j = 0; j < k; ++j) {
            M[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Rational f = M[r][c];
            for (std::size_t j = 0; j < k; ++j) {
                M[r][j] -= f * M[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return true;
}

}  // namespace

AlgebraSignature::AlgebraSignature(int m_, int n_) : m(m_), n(n_), names(default_names(m_, n_)) {
    if (m < 0 || n < 0) throw AlgebraError("negative signature");
    if (n > 31) throw AlgebraError("at most 31 odd variables supported");
}

std::optional<int> AlgebraSignature::index_of(const std::string& s) const {
    for (int v = 0; v < nvars(); ++v)
        if (names[v] == s) return v;
    // generic spellings x1.., th1.. are always accepted
    if (s.size() > 1 && s[0] == 'x' && std::all_of(s.begin() + 1, s.end(), ::isdigit)) {
        int i = std::stoi(s.substr(1));
        if (i >= 1 && i <= m) return i - 1;
    }
    if (s.size() > 2 && s.rfind("th", 0) == 0 && std::all_of(s.begin() + 2, s.end(), ::isdigit)) {
        int j = std::stoi(s.substr(2));
        if (j >= 1 && j <= n) return m + j - 1;
    }
    return std::nullopt;
}

int GradedMonomial::even_degree() const {
    int d = 0;
    for (auto e : exps) d += static_cast<int>(e);
    return d;
}

bool GradedMonomial::is_one() const {
    return odd_mask == 0 && std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

int compare_grlex(const GradedMonomial& a, const GradedMonomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.exps.size() && i < b.exps.size(); ++i)
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
    if (a.odd_mask != b.odd_mask) {
        // th_1 ranks above th_2: compare bit-reversed masks
        for (int j = 0; j < 32; ++j) {
            bool ia = a.odd_mask >> j & 1u, ib = b.odd_mask >> j & 1u;
            if (ia != ib) return ia ? 1 : -1;
        }
    }
    return 0;
}

int monomial_mul(const GradedMonomial& a, const GradedMonomial& b, GradedMonomial& out) {
    if (a.odd_mask & b.odd_mask) return 0;
    int inv = 0;
    for (std::uint32_t t = b.odd_mask; t; t &= t - 1) {
        int j = __builtin_ctz(t);
        inv += __builtin_popcount(a.odd_mask >> (j + 1));
    }
    out.exps.resize(a.exps.size());
    for (std::size_t i = 0; i < a.exps.size(); ++i) out.exps[i] = a.exps[i] + b.exps[i];
    out.odd_mask = a.odd_mask | b.odd_mask;
    return (inv & 1) ? -1 : 1;
}

GradedPolynomial GradedPolynomial::constant(int m, int n, const Rational& c) {
    GradedPolynomial p(m, n);
    p.add_term(GradedMonomial(m), c);
    return p;
}

GradedPolynomial GradedPolynomial::variable(int m, int n, int v) {
    if (v < 0 || v >= m + n) throw AlgebraError("unknown variable index " + std::to_string(v));
    GradedMonomial mono(m);
    if (v < m)
        mono.exps[v] = 1;
    else
        mono.odd_mask = 1u << (v - m);
    GradedPolynomial p(m, n);
    p.add_term(mono, 1);
    return p;
}

GradedPolynomial GradedPolynomial::monomial(const GradedMonomial& mono, const Rational& c, int n) {
    GradedPolynomial p(static_cast<int>(mono.exps.size()), n);
    p.add_term(mono, c);
    return p;
}

void GradedPolynomial::add_term(const GradedMonomial& mono, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational GradedPolynomial::coeff(const GradedMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
}

int GradedPolynomial::parity_or_inhomogeneous() const {
    if (terms_.empty()) return -1;
    int p = terms_.begin()->first.parity();
    for (const auto& [mono, c] : terms_)
        if (mono.parity() != p) return -1;
    return p;
}

int GradedPolynomial::degree() const {
    return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

int GradedPolynomial::min_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

bool GradedPolynomial::is_odd_free() const {
    for (const auto& [mono, c] : terms_)
        if (mono.odd_mask) return false;
    return true;
}

const GradedMonomial& GradedPolynomial::leading_monomial() const {
    if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& GradedPolynomial::leading_coeff() const {
    if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
    return terms_.begin()->second;
}

GradedPolynomial GradedPolynomial::homogeneous_part(int d) const {
    GradedPolynomial out(m_, n_);
    for (const auto& [mono, c] : terms_)
        if (mono.degree() == d) out.terms_.emplace_hint(out.terms_.end(), mono, c);
    return out;
}

void check_same_signature(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (a.m() != b.m() || a.n() != b.n()) throw AlgebraError("signature mismatch");
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
    check_same_signature(*this, o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
    check_same_signature(*this, o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
}

GradedPolynomial GradedPolynomial::operator+(const GradedPolynomial& o) const {
    GradedPolynomial r = *this;
    r += o;
    return r;
}

GradedPolynomial GradedPolynomial::operator-(const GradedPolynomial& o) const {
    GradedPolynomial r = *this;
    r -= o;
    return r;
}

GradedPolynomial GradedPolynomial::operator-() const {
    GradedPolynomial r = *this;
    for (auto& [mono, c] : r.terms_) c = -c;
    return r;
}

GradedPolynomial GradedPolynomial::operator*(const Rational& c) const {
    if (c == 0) return GradedPolynomial(m_, n_);
    GradedPolynomial r = *this;
    for (auto& [mono, v] : r.terms_) v *= c;
    return r;
}

GradedPolynomial GradedPolynomial::operator*(const GradedPolynomial& o) const {
    check_same_signature(*this, o);
    GradedPolynomial r(m_, n_);
    GradedMonomial prod;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            int s = monomial_mul(ma, mb, prod);
            if (s == 0) continue;
            Rational c = ca * cb;
            if (s < 0) c = -c;
            r.add_term(prod, c);
        }
    return r;
}

GradedPolynomial GradedPolynomial::pow(unsigned e) const {
    GradedPolynomial r = constant(m_, n_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

GradedPolynomial poly_mul(const GradedPolynomial& a, const GradedPolynomial& b) { return a * b; }

Rational partial_monomial(const GradedMonomial& mono, int v, int m, GradedMonomial& out) {
    if (v < m) {
        if (mono.exps[v] == 0) return 0;
        out = mono;
        out.exps[v] -= 1;
        return Rational(static_cast<long>(mono.exps[v]));
    }
    int j = v - m;
    if (!(mono.odd_mask >> j & 1u)) return 0;
    out = mono;
    out.odd_mask &= ~(1u << j);
    int before = __builtin_popcount(mono.odd_mask & ((1u << j) - 1));
    return (before & 1) ? Rational(-1) : Rational(1);
}

GradedPolynomial partial(const GradedPolynomial& f, int v) {
    if (v < 0 || v >= f.m() + f.n()) throw AlgebraError("unknown variable index " + std::to_string(v));
    GradedPolynomial r(f.m(), f.n());
    GradedMonomial out;
    for (const auto& [mono, c] : f.terms()) {
        Rational s = partial_monomial(mono, v, f.m(), out);
        if (s != 0) r.add_term(out, s * c);
    }
    return r;
}

AffineSubstitution AffineSubstitution::identity(int m, int n) {
    AffineSubstitution s;
    s.A.assign(m, std::vector<Rational>(m, 0));
    s.B.assign(m, 0);
    s.C.assign(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < m; ++i) s.A[i][i] = 1;
    for (int j = 0; j < n; ++j) s.C[j][j] = 1;
    return s;
}

bool AffineSubstitution::invertible() const {
    std::vector<std::vector<Rational>> tmp;
    return invert_square(A, tmp) && invert_square(C, tmp);
}

AffineSubstitution AffineSubstitution::inverse() const {
    AffineSubstitution s;
    if (!invert_square(A, s.A) || !invert_square(C, s.C)) throw AlgebraError("non-invertible substitution");
    s.B.assign(B.size(), 0);
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) s.B[i] -= s.A[i][j] * B[j];
    return s;
}

AffineSubstitution compose(const AffineSubstitution& outer, const AffineSubstitution& inner) {
    const int m = outer.m(), n = outer.n();
    if (inner.m() != m || inner.n() != n) throw AlgebraError("signature mismatch");
    AffineSubstitution s;
    s.A.assign(m, std::vector<Rational>(m, 0));
    s.B = outer.B;
    s.C.assign(n, std::vector<Rational>(n, 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) s.A[i][k] += outer.A[i][j] * inner.A[j][k];
            s.B[i] += outer.A[i][j] * inner.B[j];
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s.C[i][k] += outer.C[i][j] * inner.C[j][k];
    return s;
}

GradedPolynomial substitute_linear(const GradedPolynomial& f, const AffineSubstitution& s) {
    const int m = f.m(), n = f.n();
    if (s.m() != m || s.n() != n) throw AlgebraError("substitution signature mismatch");
    if (!s.invertible()) throw AlgebraError("non-invertible substitution");
    std::vector<GradedPolynomial> img;
    for (int i = 0; i < m; ++i) {
        GradedPolynomial p = GradedPolynomial::constant(m, n, s.B[i]);
        for (int j = 0; j < m; ++j) p += GradedPolynomial::variable(m, n, j) * s.A[i][j];
        img.push_back(p);
    }
    for (int i = 0; i < n; ++i) {
        GradedPolynomial p(m, n);
        for (int j = 0; j < n; ++j) p += GradedPolynomial::variable(m, n, m + j) * s.C[i][j];
        img.push_back(p);
    }
    GradedPolynomial r(m, n);
    for (const auto& [mono, c] : f.terms()) {
        GradedPolynomial t = GradedPolynomial::constant(m, n, c);
        for (int i = 0; i < m; ++i) t = t * img[i].pow(mono.exps[i]);
        for (int j = 0; j < n; ++j)
            if (mono.odd_mask >> j & 1u) t = t * img[m + j];
        r += t;
    }
    return r;
}

void upoly_trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int upoly_degree(const UPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

UPoly upoly_derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    upoly_trim(d);
    return d;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    upoly_trim(r);
    return r;
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    upoly_trim(r);
    return r;
}

void upoly_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    int db = upoly_degree(b);
    if (db < 0) throw AlgebraError("division by zero polynomial");
    r = a;
    upoly_trim(r);
    q.assign(std::max<int>(0, upoly_degree(r) - db + 1), 0);
    while (upoly_degree(r) >= db) {
        int dr = upoly_degree(r);
        Rational c = r[dr] / b[db];
        q[dr - db] = c;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= c * b[i];
        upoly_trim(r);
    }
    upoly_trim(q);
}

UPoly upoly_monic(const UPoly& p) {
    int d = upoly_degree(p);
    if (d < 0) return {};
    UPoly r(p.begin(), p.begin() + d + 1);
    Rational lc = r[d];
    for (auto& c : r) c /= lc;
    return r;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    upoly_trim(a);
    upoly_trim(b);
    while (!b.empty()) {
        UPoly q, r;
        upoly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return upoly_monic(a);
}

UPoly upoly_compose_affine(const UPoly& p, const Rational& A, const Rational& B) {
    // Horner in (A x + B)
    UPoly r;
    UPoly lin = {B, A};
    upoly_trim(lin);
    for (int i = upoly_degree(p); i >= 0; --i) {
        r = upoly_mul(r, lin);
        if (r.empty()) r.push_back(0);
        r[0] += p[i];
        upoly_trim(r);
    }
    return r;
}

std::optional<int> univariate_variable(const GradedPolynomial& f) {
    int v = -1;
    for (const auto& [mono, c] : f.terms()) {
        if (mono.odd_mask) return std::nullopt;
        for (int i = 0; i < f.m(); ++i) {
            if (mono.exps[i] == 0) continue;
            if (v >= 0 && v != i) return std::nullopt;
            v = i;
        }
    }
    return v < 0 ? 0 : v;
}

UPoly to_upoly(const GradedPolynomial& f, int v) {
    UPoly r;
    for (const auto& [mono, c] : f.terms()) {
        if (mono.odd_mask) throw AlgebraError("odd variable in univariate polynomial");
        for (int i = 0; i < f.m(); ++i)
            if (i != v && mono.exps[i]) throw AlgebraError("multivariate input");
        std::size_t d = f.m() ? mono.exps[v] : 0;
        if (r.size() <= d) r.resize(d + 1, 0);
        r[d] += c;
    }
    upoly_trim(r);
    return r;
}

GradedPolynomial from_upoly(const UPoly& p, int m, int n, int v) {
    GradedPolynomial r(m, n);
    for (std::size_t d = 0; d < p.size(); ++d) {
        if (p[d] == 0) continue;
        GradedMonomial mono(m);
        if (d > 0) mono.exps.at(v) = static_cast<std::uint32_t>(d);
        r.add_term(mono, p[d]);
    }
    return r;
}

GradedPolynomial gcd_univariate(const GradedPolynomial& a, const GradedPolynomial& b) {
    check_same_signature(a, b);
    auto va = univariate_variable(a), vb = univariate_variable(b);
    if (!va || !vb) throw AlgebraError("gcd_univariate: multivariate input");
    int v = a.degree() > 0 ? *va : *vb;
    if (a.degree() > 0 && b.degree() > 0 && *va != *vb) throw AlgebraError("gcd_univariate: different variables");
    return from_upoly(upoly_gcd(to_upoly(a, v), to_upoly(b, v)), a.m(), a.n(), v);
}

std::optional<GradedPolynomial> exact_divide(const GradedPolynomial& a, const GradedPolynomial& b) {
    check_same_signature(a, b);
    if (b.is_zero()) throw AlgebraError("division by zero polynomial");
    if (!a.is_odd_free() || !b.is_odd_free()) throw AlgebraError("exact_divide expects odd-free polynomials");
    GradedPolynomial r = a, q(a.m(), a.n());
    const GradedMonomial& lb = b.leading_monomial();
    const Rational& cb = b.leading_coeff();
    while (!r.is_zero()) {
        const GradedMonomial& lr = r.leading_monomial();
        GradedMonomial t(a.m());
        for (int i = 0; i < a.m(); ++i) {
            if (lr.exps[i] < lb.exps[i]) return std::nullopt;
            t.exps[i] = lr.exps[i] - lb.exps[i];
        }
        GradedPolynomial term = GradedPolynomial::monomial(t, r.leading_coeff() / cb, a.n());
        q += term;
        r -= term * b;
    }
    return q;
}

}  // namespace gp
