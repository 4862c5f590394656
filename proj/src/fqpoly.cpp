#include "klt/fqpoly.hpp"

#include "klt/error.hpp"

#include <algorithm>
#include <random>

namespace klt {

FqPoly fq_poly(const FieldCtx& ctx, const std::vector<long long>& coeffs) {
    FqPoly f;
    f.c.reserve(coeffs.size());
    for (long long v : coeffs) f.c.push_back(ctx.from_residues({v}));
    fq_trim(f);
    return f;
}

FqPoly fq_lift_modp(const FieldCtx& ctx, const std::vector<uint32_t>& coeffs) {
    FqPoly f;
    f.c.reserve(coeffs.size());
    for (uint32_t v : coeffs) f.c.push_back(ctx.from_residues({(long long)v}));
    fq_trim(f);
    return f;
}

std::vector<long long> fq_to_residues(const FieldCtx& ctx, const FqPoly& f) {
    if (ctx.m != 1) fail(errc::invalid_argument, "fq_to_residues requires a prime field");
    std::vector<long long> out;
    out.reserve(f.c.size());
    for (const auto& e : f.c) out.push_back(e.c[0]);
    return out;
}

void fq_trim(FqPoly& f) {
    while (!f.c.empty() && f.c.back().is_zero()) f.c.pop_back();
}

FqPoly fq_add(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    FqPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), ctx.zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
        const FFElem& av = i < a.c.size() ? a.c[i] : ctx.zero();
        r.c[i] = i < b.c.size() ? ctx.add(av, b.c[i]) : av;
    }
    fq_trim(r);
    return r;
}

FqPoly fq_sub(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    FqPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), ctx.zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
        FFElem av = i < a.c.size() ? a.c[i] : ctx.zero();
        FFElem bv = i < b.c.size() ? b.c[i] : ctx.zero();
        r.c[i] = ctx.sub(av, bv);
    }
    fq_trim(r);
    return r;
}

FqPoly fq_mul(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    FqPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, ctx.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = ctx.add(r.c[i + j], ctx.mul(a.c[i], b.c[j]));
    }
    fq_trim(r);
    return r;
}

FqPoly fq_monic(const FieldCtx& ctx, FqPoly f) {
    fq_trim(f);
    if (f.is_zero() || f.c.back() == ctx.one()) return f;
    FFElem ic = ctx.inv(f.c.back());
    for (auto& e : f.c) e = ctx.mul(e, ic);
    return f;
}

void fq_divmod(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b, FqPoly& quo, FqPoly& rem) {
    if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
    rem = a;
    fq_trim(rem);
    quo = FqPoly{};
    if (rem.c.size() >= b.c.size()) quo.c.assign(rem.c.size() - b.c.size() + 1, ctx.zero());
    FFElem lc_inv = ctx.inv(b.c.back());
    while (!rem.is_zero() && rem.c.size() >= b.c.size()) {
        FFElem coef = ctx.mul(rem.c.back(), lc_inv);
        size_t shift = rem.c.size() - b.c.size();
        quo.c[shift] = coef;
        for (size_t i = 0; i < b.c.size(); ++i)
            rem.c[shift + i] = ctx.sub(rem.c[shift + i], ctx.mul(coef, b.c[i]));
        fq_trim(rem);
    }
    fq_trim(quo);
}

FqPoly fq_mod(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    fq_divmod(ctx, a, b, q, r);
    return r;
}

FqPoly fq_div_exact(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    fq_divmod(ctx, a, b, q, r);
    if (!r.is_zero()) fail(errc::invalid_argument, "inexact polynomial division");
    return q;
}

FqPoly fq_gcd(const FieldCtx& ctx, FqPoly a, FqPoly b) {
    fq_trim(a);
    fq_trim(b);
    while (!b.is_zero()) {
        FqPoly r = fq_mod(ctx, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fq_monic(ctx, a);
}

FqPoly fq_powmod(const FieldCtx& ctx, FqPoly base, uint64_t e, const FqPoly& mod) {
    FqPoly r;
    r.c = {ctx.one()};
    base = fq_mod(ctx, base, mod);
    while (e) {
        if (e & 1) r = fq_mod(ctx, fq_mul(ctx, r, base), mod);
        e >>= 1;
        if (e) base = fq_mod(ctx, fq_mul(ctx, base, base), mod);
    }
    return r;
}

FqPoly fq_derivative(const FieldCtx& ctx, const FqPoly& f) {
    FqPoly r;
    if (f.c.size() < 2) return r;
    r.c.resize(f.c.size() - 1, ctx.zero());
    for (size_t i = 1; i < f.c.size(); ++i) {
        long long k = (long long)(i % ctx.p);
        FFElem scale = ctx.from_residues({k});
        r.c[i - 1] = ctx.mul(f.c[i], scale);
    }
    fq_trim(r);
    return r;
}

FFElem fq_eval(const FieldCtx& ctx, const FqPoly& f, const FFElem& x) {
    FFElem acc = ctx.zero();
    for (size_t i = f.c.size(); i-- > 0;) acc = ctx.add(ctx.mul(acc, x), f.c[i]);
    return acc;
}

bool fq_equal(const FqPoly& a, const FqPoly& b) { return a.c == b.c; }

// ---------------------------------------------------------------------------
// factorization

namespace {

// p-th root of a polynomial of the form g(x^p): inverse Frobenius on coefficients.
FqPoly pth_root(const FieldCtx& ctx, const FqPoly& f) {
    FqPoly g;
    g.c.resize((f.c.size() + ctx.p - 1) / ctx.p, ctx.zero());
    uint64_t inv_frob = 1;
    for (uint32_t i = 0; i + 1 < ctx.m; ++i) inv_frob *= ctx.p; // p^{m-1}
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (i % ctx.p == 0)
            g.c[i / ctx.p] = ctx.m == 1 ? f.c[i] : ctx.pow(f.c[i], inv_frob);
        else if (!f.c[i].is_zero())
            fail(errc::invalid_argument, "not a p-th power polynomial");
    }
    fq_trim(g);
    return g;
}

bool poly_is_one(const FieldCtx& ctx, const FqPoly& f) {
    return f.c.size() == 1 && f.c[0] == ctx.one();
}

// (squarefree monic part, multiplicity) pairs
void squarefree_decompose(const FieldCtx& ctx, FqPoly f, int mult,
                          std::vector<std::pair<FqPoly, int>>& out) {
    fq_trim(f);
    if (f.c.size() <= 1) return;
    FqPoly d = fq_derivative(ctx, f);
    if (d.is_zero()) {
        squarefree_decompose(ctx, pth_root(ctx, f), mult * (int)ctx.p, out);
        return;
    }
    FqPoly c = fq_gcd(ctx, f, d);
    FqPoly w = fq_div_exact(ctx, f, c);
    int i = 1;
    while (!poly_is_one(ctx, w)) {
        FqPoly y = fq_gcd(ctx, w, c);
        FqPoly z = fq_div_exact(ctx, w, y);
        if (z.c.size() > 1) out.emplace_back(fq_monic(ctx, z), mult * i);
        w = std::move(y);
        c = fq_div_exact(ctx, c, w);
        ++i;
    }
    // what remains is a p-th power; the recursion's zero-derivative branch
    // accounts for the extra multiplicity factor
    if (c.c.size() > 1) squarefree_decompose(ctx, c, mult, out);
}

// x^{q^i} mod f for i = 1.. via iterated q-th powers
FqPoly frobenius_step(const FieldCtx& ctx, const FqPoly& h, const FqPoly& f) {
    return fq_powmod(ctx, h, ctx.q, f);
}

// r^{(q^d - 1)/2} mod g computed as norm followed by (q-1)/2 power (odd q).
FqPoly half_power(const FieldCtx& ctx, const FqPoly& r, int d, const FqPoly& g) {
    FqPoly norm = r, t = r;
    for (int i = 1; i < d; ++i) {
        t = frobenius_step(ctx, t, g);
        norm = fq_mod(ctx, fq_mul(ctx, norm, t), g);
    }
    return fq_powmod(ctx, norm, (ctx.q - 1) / 2, g);
}

// trace map to F_2: r + r^2 + ... + r^{2^{dm-1}} mod g
FqPoly trace_map2(const FieldCtx& ctx, const FqPoly& r, int d, const FqPoly& g) {
    uint32_t bits = d * ctx.m;
    FqPoly acc = r, t = r;
    for (uint32_t i = 1; i < bits; ++i) {
        t = fq_powmod(ctx, t, 2, g);
        acc = fq_add(ctx, acc, t);
    }
    return fq_mod(ctx, acc, g);
}

FqPoly random_poly(const FieldCtx& ctx, size_t max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
    FqPoly r;
    r.c.resize(max_deg, ctx.zero());
    for (auto& e : r.c) e = ctx.from_index(dist(rng));
    fq_trim(r);
    return r;
}

void equal_degree_split(const FieldCtx& ctx, FqPoly g, int d, std::mt19937_64& rng,
                        std::vector<FqPoly>& out) {
    if (g.degree() == d) {
        out.push_back(std::move(g));
        return;
    }
    for (;;) {
        FqPoly r = random_poly(ctx, g.c.size() - 1, rng);
        if (r.degree() < 1 && g.degree() > d) {
            // constant probes cannot split; draw again
            continue;
        }
        FqPoly h = ctx.p == 2 ? trace_map2(ctx, r, d, g) : half_power(ctx, r, d, g);
        if (ctx.p != 2) h = fq_sub(ctx, h, FqPoly{{ctx.one()}});
        FqPoly u = fq_gcd(ctx, h, g);
        if (u.c.size() > 1 && u.c.size() < g.c.size()) {
            FqPoly v = fq_div_exact(ctx, g, u);
            equal_degree_split(ctx, std::move(u), d, rng, out);
            equal_degree_split(ctx, fq_monic(ctx, std::move(v)), d, rng, out);
            return;
        }
    }
}

bool poly_less(const FieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (size_t i = a.c.size(); i-- > 0;) {
        uint64_t ia = ctx.to_index(a.c[i]), ib = ctx.to_index(b.c[i]);
        if (ia != ib) return ia < ib;
    }
    return false;
}

} // namespace

std::vector<FqFactor> fq_factor(const FieldCtx& ctx, FqPoly f, uint64_t seed) {
    fq_trim(f);
    if (f.c.size() < 2) fail(errc::invalid_argument, "cannot factor a constant polynomial");
    f = fq_monic(ctx, std::move(f));

    std::vector<std::pair<FqPoly, int>> squarefree;
    squarefree_decompose(ctx, f, 1, squarefree);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<FqFactor> out;
    for (auto& [sf, mult] : squarefree) {
        // distinct-degree splitting
        FqPoly rest = sf;
        FqPoly h = fq_mod(ctx, fq_poly(ctx, {0, 1}), rest);
        std::vector<std::pair<FqPoly, int>> by_degree;
        for (int d = 1; 2 * d <= rest.degree(); ++d) {
            h = frobenius_step(ctx, h, rest);
            FqPoly diff = fq_sub(ctx, h, fq_mod(ctx, fq_poly(ctx, {0, 1}), rest));
            FqPoly g = fq_gcd(ctx, diff, rest);
            if (g.c.size() > 1) {
                by_degree.emplace_back(g, d);
                rest = fq_div_exact(ctx, rest, g);
                h = fq_mod(ctx, h, rest);
            }
        }
        if (rest.c.size() > 1) by_degree.emplace_back(rest, rest.degree());

        for (auto& [g, d] : by_degree) {
            std::vector<FqPoly> irred;
            equal_degree_split(ctx, fq_monic(ctx, g), d, rng, irred);
            for (auto& fac : irred) out.push_back(FqFactor{std::move(fac), mult});
        }
    }
    std::sort(out.begin(), out.end(),
              [&](const FqFactor& a, const FqFactor& b) { return poly_less(ctx, a.poly, b.poly); });
    return out;
}

bool fq_is_irreducible(const FieldCtx& ctx, const FqPoly& f) {
    if (f.c.size() < 2) return false;
    int d = f.degree();
    if (d == 1) return true;
    FqPoly x = fq_mod(ctx, fq_poly(ctx, {0, 1}), f);
    std::vector<FqPoly> frob(d + 1);
    FqPoly h = x;
    for (int i = 1; i <= d; ++i) {
        h = frobenius_step(ctx, h, f);
        frob[i] = h;
    }
    if (!fq_equal(frob[d], x)) return false;
    for (uint64_t ell : prime_factors_u64((uint64_t)d)) {
        FqPoly diff = fq_sub(ctx, frob[d / ell], x);
        if (fq_gcd(ctx, diff, f).c.size() != 1) return false;
    }
    return true;
}

std::vector<FFElem> fq_roots(const FieldCtx& ctx, const FqPoly& f, uint64_t seed) {
    std::vector<FFElem> roots;
    for (const auto& fac : fq_factor(ctx, f, seed))
        if (fac.poly.degree() == 1) roots.push_back(ctx.neg(fac.poly.c[0]));
    std::sort(roots.begin(), roots.end(),
              [&](const FFElem& a, const FFElem& b) { return ctx.to_index(a) < ctx.to_index(b); });
    return roots;
}

// ---------------------------------------------------------------------------
// embeddings

FFElem Embedding::map(const FFElem& x) const {
    FFElem acc = big.zero();
    for (uint32_t i = 0; i < small.m; ++i) {
        if (!x.c[i]) continue;
        FFElem term = big.mul(root_powers[i], big.from_residues({(long long)x.c[i]}));
        acc = big.add(acc, term);
    }
    return acc;
}

uint64_t invmod_u64(uint64_t a, uint64_t n) {
    __int128 t = 0, newt = 1;
    __int128 r = n, newr = a % n;
    while (newr != 0) {
        __int128 quo = r / newr;
        std::swap(t -= quo * newt, newt);
        std::swap(r -= quo * newr, newr);
    }
    if (r != 1) fail(errc::invalid_argument, "invmod of non-invertible element");
    if (t < 0) t += n;
    return (uint64_t)t;
}

Embedding make_embedding(const FieldCtx& small, const FieldCtx& big) {
    if (small.p != big.p || big.m % small.m != 0)
        fail(errc::invalid_argument, "no embedding: incompatible field degrees");

    Embedding emb;
    emb.small = small;
    emb.big = big;

    FqPoly modsmall = fq_lift_modp(big, small.modulus);
    std::vector<FFElem> roots = fq_roots(big, modsmall, 0);
    if (roots.empty()) fail(errc::invalid_argument, "small modulus has no root in big field");
    if (roots.size() == 1) {
        emb.root = roots[0];
    } else {
        uint64_t best = ~0ull;
        for (const auto& r : roots) {
            uint64_t dl = big.dlog(r);
            if (dl < best) {
                best = dl;
                emb.root = r;
            }
        }
    }

    emb.root_powers.resize(small.m);
    for (uint32_t i = 0; i < small.m; ++i) emb.root_powers[i] = big.pow(emb.root, i);

    // Index factor for lifting multiplicative characters through the norm:
    // Norm(G_big) = G_big^{ratio} pulls back to g_small^{1/w} where
    // map(g_small) = G_big^{ratio*w}.
    if (small.q <= 2) {
        emb.norm_index = 1;
    } else {
        uint64_t ratio = (big.q - 1) / (small.q - 1);
        uint64_t u = big.dlog(emb.map(small.generator));
        if (u % ratio != 0) fail(errc::invalid_argument, "embedded generator has wrong order");
        emb.norm_index = invmod_u64(u / ratio, small.q - 1);
    }
    return emb;
}

Embedding identity_embedding(const FieldCtx& ctx) {
    Embedding emb;
    emb.small = ctx;
    emb.big = ctx;
    if (ctx.m == 1) {
        emb.root = ctx.from_residues({(long long)ctx.p - ctx.modulus[0]});
    } else {
        emb.root = ctx.from_index(ctx.p); // the modulus root
    }
    emb.root_powers.resize(ctx.m);
    for (uint32_t i = 0; i < ctx.m; ++i) emb.root_powers[i] = ctx.pow(emb.root, i);
    emb.norm_index = 1;
    return emb;
}

CharSpec lift_char_spec(const CharSpec& spec, const Embedding& emb) {
    CharSpec out = spec;
    uint64_t qs1 = emb.small.q - 1, qb1 = emb.big.q - 1;
    if (qs1 == 0) qs1 = 1;
    uint64_t ratio = qb1 / qs1;
    for (auto& j : out.mult_indices) {
        uint64_t reduced = qs1 == 1 ? 0 : mulmod_u64(j % qs1, emb.norm_index, qs1);
        j = reduced * ratio;
    }
    return out;
}

} // namespace klt
