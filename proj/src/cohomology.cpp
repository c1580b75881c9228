#include "gp/cohomology.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace gp {

namespace {

struct KeyLess {
    bool operator()(const BasisElement& a, const BasisElement& b) const {
        int c = compare_exterior(a.ext, b.ext);
        if (c != 0) return c < 0;
        return compare_grlex(a.mono, b.mono) > 0;
    }
};

using KeyIndex = std::map<BasisElement, std::size_t, KeyLess>;

std::size_t binom(long a, long b) {
    if (b < 0 || a < b || a < 0) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    return r.get_ui();
}

void odd_compositions(int n, int total, std::vector<std::uint32_t>& cur, int idx,
                      std::vector<std::vector<std::uint32_t>>& out) {
    if (idx == n) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int a = total; a >= 0; --a) {
        cur[idx] = a;
        odd_compositions(n, total - a, cur, idx + 1, out);
    }
    cur[idx] = 0;
}

void even_exponents(int m, int total, std::vector<std::uint32_t>& cur, int idx,
                    std::vector<std::vector<std::uint32_t>>& out) {
    if (idx == m) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int a = total; a >= 0; --a) {
        cur[idx] = a;
        even_exponents(m, total - a, cur, idx + 1, out);
    }
    cur[idx] = 0;
}

std::vector<ExteriorMonomial> exterior_monomials(int m, int n, int symbols) {
    std::vector<ExteriorMonomial> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        int j = __builtin_popcount(mask);
        if (j > symbols) continue;
        std::vector<std::vector<std::uint32_t>> comps;
        std::vector<std::uint32_t> cur(n, 0);
        if (n == 0) {
            if (symbols == j) comps.push_back({});
        } else {
            odd_compositions(n, symbols - j, cur, 0, comps);
        }
        for (auto& c : comps) {
            ExteriorMonomial e(n);
            e.even_mask = mask;
            e.odd_exps = c;
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end(), ExteriorOrder{});
    return out;
}

std::vector<GradedMonomial> coefficient_monomials(int m, int n, int degree) {
    std::vector<GradedMonomial> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int s = __builtin_popcount(mask);
        if (s > degree) continue;
        std::vector<std::vector<std::uint32_t>> ex;
        std::vector<std::uint32_t> cur(m, 0);
        if (m == 0) {
            if (degree == s) ex.push_back({});
        } else {
            even_exponents(m, degree - s, cur, 0, ex);
        }
        for (auto& e : ex) {
            GradedMonomial g(m);
            g.exps = e;
            g.odd_mask = mask;
            out.push_back(g);
        }
    }
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

int total_parity_of(const ExteriorMonomial& e, const GradedMonomial& g) {
    return (e.symbol_count() - 1 + g.parity() + e.odd_symbols()) & 1;
}

std::vector<BasisElement> basis_upto(int m, int n, int symbols, int parity, int max_e) {
    std::vector<BasisElement> out;
    if (symbols < 0) return out;
    for (int e = 0; e <= max_e; ++e) {
        auto s = slice_basis(SliceSpec{m, n, symbols, parity, e});
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

MultiDerivation apply_d(const MultiDerivation& psi, const BasisElement& b) {
    return modified_bracket(psi, basis_cochain(b, psi.m(), psi.n()));
}

}  // namespace

std::vector<BasisElement> slice_basis(const SliceSpec& spec) {
    std::vector<BasisElement> out;
    if (spec.exterior_degree < 0 || spec.internal_degree < 0) return out;
    auto exts = exterior_monomials(spec.m, spec.n_odd, spec.exterior_degree);
    auto monos = coefficient_monomials(spec.m, spec.n_odd, spec.internal_degree);
    for (const auto& e : exts)
        for (const auto& g : monos)
            if (total_parity_of(e, g) == (spec.parity & 1)) out.push_back({e, g});
    return out;
}

std::size_t slice_dimension(const SliceSpec& spec) {
    const int m = spec.m, n = spec.n_odd, k = spec.exterior_degree, e = spec.internal_degree;
    if (k < 0 || e < 0) return 0;
    std::size_t total = 0;
    for (int j = 0; j <= std::min(m, k); ++j) {
        int odd_syms = k - j;
        std::size_t ext_count = binom(m, j) * (n == 0 ? (odd_syms == 0 ? 1 : 0) : binom(odd_syms + n - 1, n - 1));
        if (ext_count == 0) continue;
        for (int s = 0; s <= std::min(n, e); ++s) {
            if (((k - 1 + s + odd_syms) & 1) != (spec.parity & 1)) continue;
            int dx = e - s;
            std::size_t even_count = m == 0 ? (dx == 0 ? 1 : 0) : binom(dx + m - 1, m - 1);
            total += ext_count * binom(n, s) * even_count;
        }
    }
    return total;
}

MultiDerivation basis_cochain(const BasisElement& b, int m, int n) {
    MultiDerivation r(m, n);
    r.add(b.ext, b.mono, 1);
    return r;
}

InternalHomogeneity internal_homogeneity(const MultiDerivation& psi) {
    InternalHomogeneity h;
    bool first = true;
    h.homogeneous = true;
    psi.for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& g, const Rational&) {
        if (first) {
            h.symbols = e.symbol_count();
            h.coef_degree = g.degree();
            first = false;
        } else if (h.symbols != e.symbol_count() || h.coef_degree != g.degree()) {
            h.homogeneous = false;
        }
    });
    if (first) h.homogeneous = false;
    return h;
}

SliceSpec d_target(const MultiDerivation& psi, const SliceSpec& source) {
    auto h = internal_homogeneity(psi);
    if (!h.homogeneous) throw AlgebraError("d_matrix: psi is not internally homogeneous");
    SliceSpec t = source;
    t.exterior_degree = source.exterior_degree + h.symbols - 1;
    t.parity = 1 - (source.parity & 1);
    t.internal_degree = source.internal_degree + h.coef_degree - 1;
    return t;
}

Matrix d_matrix(const MultiDerivation& psi, const SliceSpec& source) {
    SliceSpec target = d_target(psi, source);
    auto src = slice_basis(source);
    auto tgt = slice_basis(target);
    KeyIndex idx;
    for (std::size_t i = 0; i < tgt.size(); ++i) idx.emplace(tgt[i], i);
    Matrix M(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        MultiDerivation img = apply_d(psi, src[j]);
        img.for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& g, const Rational& c) {
            auto it = idx.find(BasisElement{e, g});
            if (it == idx.end()) throw AlgebraError("d_matrix: image leaves the target slice");
            M(it->second, j) += c;
        });
    }
    return M;
}

SliceResult slice_cohomology(const MultiDerivation& psi, const SliceSpec& spec, const CohomologyOptions& opt) {
    auto h = internal_homogeneity(psi);
    if (!h.homogeneous) throw AlgebraError("slice_cohomology: psi is not internally homogeneous");
    SliceResult r;
    auto basis = slice_basis(spec);
    const std::size_t dim = basis.size();
    if (dim == 0) return r;

    std::vector<std::vector<Rational>> zvecs;
    SliceSpec tgt = d_target(psi, spec);
    if (tgt.internal_degree < 0 || tgt.exterior_degree < 0) {
        for (std::size_t i = 0; i < dim; ++i) {
            std::vector<Rational> v(dim, 0);
            v[i] = 1;
            zvecs.push_back(std::move(v));
        }
    } else {
        zvecs = nullspace(d_matrix(psi, spec));
    }
    r.dim_z = static_cast<int>(zvecs.size());

    SliceSpec src = spec;
    src.exterior_degree = spec.exterior_degree - h.symbols + 1;
    src.parity = 1 - (spec.parity & 1);
    src.internal_degree = spec.internal_degree - h.coef_degree + 1;
    Matrix in;
    bool has_in = src.exterior_degree >= 0 && src.internal_degree >= 0;
    if (opt.deformation_convention && (spec.parity & 1) == 1 && src.exterior_degree == 0) has_in = false;
    if (has_in) in = d_matrix(psi, src);
    int rb = has_in ? rank(in) : 0;
    r.dim_b = rb;
    r.dim_h = r.dim_z - r.dim_b;

    // representatives: pivot columns of [B | Z] beyond the coboundary block
    std::size_t nb = has_in ? in.cols : 0;
    Matrix aug(dim, nb + zvecs.size());
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t i = 0; i < dim; ++i) aug(i, j) = in(i, j);
    for (std::size_t j = 0; j < zvecs.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) aug(i, nb + j) = zvecs[j][i];
    std::vector<std::size_t> piv;
    rref(aug, piv);
    for (auto c : piv) {
        if (c < nb) continue;
        MultiDerivation rep(psi.m(), psi.n());
        const auto& v = zvecs[c - nb];
        for (std::size_t i = 0; i < dim; ++i)
            if (v[i] != 0) rep.add(basis[i].ext, basis[i].mono, v[i]);
        r.representatives.push_back(std::move(rep));
    }
    return r;
}

namespace {

struct FilteredRaw {
    std::vector<int> h, z, b;
    bool consistent = true;
};

// dim of span(vecs) intersected with the coordinates whose flag is false
int dim_inside(const std::vector<std::vector<Rational>>& vecs, const std::vector<bool>& outside, std::size_t len) {
    if (vecs.empty()) return 0;
    int full = column_rank(vecs, len);
    std::vector<std::vector<Rational>> proj;
    std::size_t out_len = 0;
    for (bool f : outside) out_len += f;
    for (const auto& v : vecs) {
        std::vector<Rational> p;
        p.reserve(out_len);
        for (std::size_t i = 0; i < len; ++i)
            if (outside[i]) p.push_back(v[i]);
        proj.push_back(std::move(p));
    }
    return full - (out_len ? column_rank(proj, out_len) : 0);
}

std::vector<std::vector<Rational>> vectors_inside(const std::vector<std::vector<Rational>>& vecs,
                                                  const std::vector<bool>& outside, std::size_t len) {
    std::size_t out_len = 0;
    for (bool f : outside) out_len += f;
    Matrix P(out_len, vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j) {
        std::size_t r = 0;
        for (std::size_t i = 0; i < len; ++i)
            if (outside[i]) P(r++, j) = vecs[j][i];
    }
    std::vector<std::vector<Rational>> out;
    for (const auto& c : nullspace(P)) {
        std::vector<Rational> v(len, 0);
        for (std::size_t j = 0; j < vecs.size(); ++j)
            if (c[j] != 0)
                for (std::size_t i = 0; i < len; ++i) v[i] += c[j] * vecs[j][i];
        out.push_back(std::move(v));
    }
    return out;
}

FilteredRaw filtered_raw(const MultiDerivation& psi, int n, int parity, int e_max, int coef_slack, int ext_slack,
                         bool convention) {
    const int m = psi.m(), no = psi.n();
    const int kmin = psi.min_symbols();
    const int E = e_max + coef_slack;
    const int T = ext_slack;

    // coordinates on C^n (parity fixed by the target)
    KeyIndex cn;
    std::vector<int> cn_deg;
    auto cn_index = [&](const BasisElement& k) {
        auto [it, ins] = cn.emplace(k, cn.size());
        if (ins) cn_deg.push_back(k.mono.degree());
        return it->second;
    };

    // cocycles: leading part in C^n plus tails in C^{n+1..n+T}
    auto u0 = basis_upto(m, no, n, parity, E);
    for (const auto& b : u0) cn_index(b);
    std::vector<BasisElement> unknowns = u0;
    for (int j = 1; j <= T; ++j) {
        auto t = basis_upto(m, no, n + j, parity, E);
        unknowns.insert(unknowns.end(), t.begin(), t.end());
    }
    const int zlimit = n + T + kmin - 1;
    KeyIndex zrows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> zcols(unknowns.size());
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
        apply_d(psi, unknowns[j]).for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& g, const Rational& c) {
            if (e.symbol_count() > zlimit) return;
            auto [it, ins] = zrows.emplace(BasisElement{e, g}, zrows.size());
            zcols[j].emplace_back(it->second, c);
        });
    }
    Matrix Mz(zrows.size(), unknowns.size());
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        for (const auto& [i, c] : zcols[j]) Mz(i, j) += c;
    std::vector<std::vector<Rational>> zlead;
    for (const auto& v : nullspace(Mz)) zlead.emplace_back(v.begin(), v.begin() + u0.size());

    // coboundaries landing in FC^n
    std::vector<BasisElement> sources;
    int j0 = (convention && parity == 1) ? 1 : 0;
    for (int j = j0; j <= n - kmin + 1; ++j) {
        auto s = basis_upto(m, no, j, 1 - parity, E);
        sources.insert(sources.end(), s.begin(), s.end());
    }
    KeyIndex lowrows;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> lowcols(sources.size()), ncols(sources.size());
    for (std::size_t j = 0; j < sources.size(); ++j) {
        apply_d(psi, sources[j]).for_each_atom([&](const ExteriorMonomial& e, const GradedMonomial& g, const Rational& c) {
            int s = e.symbol_count();
            if (s < n) {
                auto [it, ins] = lowrows.emplace(BasisElement{e, g}, lowrows.size());
                lowcols[j].emplace_back(it->second, c);
            } else if (s == n) {
                ncols[j].emplace_back(cn_index(BasisElement{e, g}), c);
            }
        });
    }
    Matrix Ml(lowrows.size(), sources.size());
    for (std::size_t j = 0; j < sources.size(); ++j)
        for (const auto& [i, c] : lowcols[j]) Ml(i, j) += c;
    std::vector<std::vector<Rational>> kernel;
    if (lowrows.empty()) {
        for (std::size_t j = 0; j < sources.size(); ++j) {
            std::vector<Rational> v(sources.size(), 0);
            v[j] = 1;
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = nullspace(Ml);
    }
    const std::size_t len = cn.size();
    std::vector<std::vector<Rational>> w;
    for (const auto& kv : kernel) {
        std::vector<Rational> v(len, 0);
        for (std::size_t j = 0; j < sources.size(); ++j)
            if (kv[j] != 0)
                for (const auto& [i, c] : ncols[j]) v[i] += kv[j] * c;
        w.push_back(std::move(v));
    }
    for (auto& v : zlead) v.resize(len, 0);

    FilteredRaw raw;
    for (int e = 0; e <= e_max; ++e) {
        std::vector<bool> outside(len);
        for (std::size_t i = 0; i < len; ++i) outside[i] = cn_deg[i] > e;
        int dz = dim_inside(zlead, outside, len);
        int db = dim_inside(w, outside, len);
        raw.z.push_back(dz);
        raw.b.push_back(db);
        raw.h.push_back(dz - db);
        if (e == e_max && db > 0) {
            auto bz = vectors_inside(w, outside, len);
            auto zz = vectors_inside(zlead, outside, len);
            auto both = zz;
            both.insert(both.end(), bz.begin(), bz.end());
            if (column_rank(both, len) != dz) raw.consistent = false;
        }
    }
    return raw;
}

}  // namespace

FilteredResult filtered_cohomology(const MultiDerivation& psi, int n, int parity, int e_max,
                                   const CohomologyOptions& opt) {
    if (psi.is_zero()) throw AlgebraError("filtered_cohomology: psi is zero");
    if (psi.min_symbols() < 1) throw AlgebraError("filtered_cohomology: C^0 terms are excluded");
    int dmin = 1 << 30, dmax = -1;
    psi.for_each_atom([&](const ExteriorMonomial&, const GradedMonomial& g, const Rational&) {
        dmin = std::min(dmin, g.degree());
        dmax = std::max(dmax, g.degree());
    });
    const bool multi_ext = psi.min_symbols() != psi.max_symbols();
    int cs = opt.coef_slack >= 0 ? opt.coef_slack : 2 * n + 4 + 2 * (dmax - dmin);
    int es = opt.ext_slack >= 0 ? opt.ext_slack : (multi_ext ? 2 : 0);
    auto a = filtered_raw(psi, n, parity, e_max, cs, es, opt.deformation_convention);
    auto b = filtered_raw(psi, n, parity, e_max, cs + 2, multi_ext ? es + 1 : es, opt.deformation_convention);
    FilteredResult r;
    r.cumulative_h = a.h;
    r.cumulative_z = a.z;
    r.cumulative_b = a.b;
    r.converged = a.h == b.h;
    r.consistent = a.consistent && b.consistent;
    return r;
}

int CohomologyTable::total(int n, int parity) const {
    int t = 0;
    for (const auto& [spec, res] : slices)
        if (spec.exterior_degree == n && spec.parity == parity) t += res.dim_h;
    return t;
}

CohomologyTable cohomology_table(const MultiDerivation& psi, int n_max, int e_max, ParityFilter filter,
                                 const CohomologyOptions& opt) {
    if (n_max < 0 || e_max < 0) throw AlgebraError("cohomology_table: bounds must be non-negative");
    CohomologyTable table;
    std::vector<int> parities;
    if (filter != ParityFilter::Even) parities.push_back(1);
    if (filter != ParityFilter::Odd) parities.push_back(0);
    auto h = internal_homogeneity(psi);
    const int m = psi.m(), no = psi.n();

    if (h.homogeneous) {
        std::vector<SliceSpec> specs;
        for (int n = 0; n <= n_max; ++n)
            for (int p : parities)
                for (int e = 0; e <= e_max; ++e) specs.push_back(SliceSpec{m, no, n, p, e});
        unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
        std::vector<SliceResult> results(specs.size());
        std::vector<std::future<void>> jobs;
        for (unsigned t = 0; t < threads; ++t)
            jobs.push_back(std::async(std::launch::async, [&, t] {
                for (std::size_t i = t; i < specs.size(); i += threads)
                    results[i] = slice_cohomology(psi, specs[i], opt);
            }));
        for (auto& j : jobs) j.get();
        for (std::size_t i = 0; i < specs.size(); ++i) table.slices.emplace(specs[i], std::move(results[i]));
        for (int n = 0; n <= n_max; ++n)
            for (int p : parities)
                table.unstable_in_e[{n, p}] = e_max > 0 && table.slices[SliceSpec{m, no, n, p, e_max}].dim_h != 0;
        return table;
    }

    table.filtered = true;
    for (int n = 0; n <= n_max; ++n)
        for (int p : parities) {
            auto f = filtered_cohomology(psi, n, p, e_max, opt);
            for (int e = 0; e <= e_max; ++e) {
                SliceResult s;
                s.dim_h = f.cumulative_h[e] - (e ? f.cumulative_h[e - 1] : 0);
                s.dim_z = f.cumulative_z[e] - (e ? f.cumulative_z[e - 1] : 0);
                s.dim_b = f.cumulative_b[e] - (e ? f.cumulative_b[e - 1] : 0);
                s.converged = f.converged && f.consistent;
                table.slices.emplace(SliceSpec{m, no, n, p, e}, std::move(s));
            }
            table.unstable_in_e[{n, p}] = e_max > 0 && f.cumulative_h[e_max] != f.cumulative_h[e_max - 1];
        }
    return table;
}

}  // namespace gp
