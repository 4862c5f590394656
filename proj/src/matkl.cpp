#include "klt/matkl.hpp"

#include "klt/accum.hpp"
#include "klt/error.hpp"

#include <cmath>

namespace klt {

std::complex<double> alg1_jordan(const FieldCtx& ctx, const FqPoly& minpoly, const Partition& mu,
                                 const CharSpec& spec, const SumOptions& opts) {
    if (!fq_is_irreducible(ctx, minpoly))
        fail(errc::reducible_modulus, "Jordan block formula needs an irreducible minimal polynomial");
    int d = minpoly.degree();
    int r = mu.size();
    if (r == 0) return {1.0, 0.0};
    long long n = (long long)d * r;

    // signed normalized classical sums S(d*s) for every part size s
    std::vector<std::complex<double>> part_sum(r + 1);
    for (int s = 1; s <= r; ++s) {
        uint32_t degree = ctx.m * (uint32_t)d * (uint32_t)s;
        FieldCtx ext;
        Embedding emb;
        if (degree == ctx.m) {
            ext = ctx;
            emb = identity_embedding(ctx);
        } else {
            ext = ff_make_auto(ctx.p, degree);
            emb = make_embedding(ctx, ext);
        }
        FqPoly mapped;
        mapped.c.reserve(minpoly.c.size());
        for (const auto& coef : minpoly.c) mapped.c.push_back(emb.map(coef));
        std::vector<FFElem> roots = fq_roots(ext, mapped, 0);
        if (roots.empty()) fail(errc::overflow, "minimal polynomial has no root in the extension");
        FFElem xi = roots[0];
        if (roots.size() > 1) {
            uint64_t best = ~0ull;
            for (const auto& rt : roots) {
                uint64_t dl = ext.dlog(rt);
                if (dl < best) {
                    best = dl;
                    xi = rt;
                }
            }
        }
        CharSpec lifted = lift_char_spec(spec, emb);
        part_sum[s] = kl_normalize(kl_signed(ext, lifted, xi, opts)).value;
    }

    uint64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= ctx.q;

    std::complex<double> total = 0.0;
    for (const Partition& lam : partitions(r)) {
        IntPoly green = green_polynomial(lam, mu);
        long double gval = 0.0L;
        for (size_t i = green.c.size(); i-- > 0;) gval = gval * (long double)qd + green.c[i];
        std::complex<double> prod = 1.0;
        for (int part : lam.parts) prod *= part_sum[part];
        total += prod * (double)(gval / (long double)lam.z());
    }
    bool flip = (spec.k - 1) % 2 == 1 && n % 2 == 1;
    return flip ? -total : total;
}

MatKlResult alg2_general(const MatrixFq& y, const CharSpec& spec, const SumOptions& opts) {
    MatKlResult res;
    res.n = y.n();
    res.q = y.ctx().q;
    res.k = spec.k;
    res.class_data = conj_class_data(y, opts.factor_seed);
    res.value = {1.0, 0.0};
    for (const auto& block : res.class_data.blocks) {
        std::complex<double> bv = alg1_jordan(y.ctx(), block.minpoly, block.mu, spec, opts);
        res.per_block.push_back(bv);
        res.value *= bv;
    }
    return res;
}

unsigned __int128 gl_order(uint64_t q, int n) {
    unsigned __int128 qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    unsigned __int128 order = 1, qi = 1;
    for (int i = 0; i < n; ++i) {
        order *= qn - qi;
        qi *= q;
    }
    return order;
}

void for_each_gl(const FieldCtx& ctx, int n, const std::function<void(const MatrixFq&)>& fn) {
    size_t cells = (size_t)n * n;
    std::vector<uint64_t> idx(cells, 0);
    MatrixFq m(ctx, n);
    bool done = false;
    while (!done) {
        for (size_t c = 0; c < cells; ++c) m.at((int)(c / n), (int)(c % n)) = ctx.from_index(idx[c]);
        if (m.is_invertible()) fn(m);
        done = true;
        for (size_t pos = cells; pos-- > 0;) {
            if (++idx[pos] < ctx.q) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
    }
}

MatrixFq random_gl(const FieldCtx& ctx, int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
    for (;;) {
        MatrixFq m(ctx, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = ctx.from_index(dist(rng));
        if (m.is_invertible()) return m;
    }
}

std::complex<double> brute_force_matkl(const MatrixFq& y, const CharSpec& spec,
                                       uint64_t oracle_budget) {
    const FieldCtx& ctx = y.ctx();
    int n = y.n(), k = spec.k;
    if (!y.is_invertible()) fail(errc::singular_matrix, "matrix Kloosterman sum needs invertible y");

    unsigned __int128 tuples = 1;
    unsigned __int128 order = gl_order(ctx.q, n);
    for (int i = 0; i + 1 < k; ++i) {
        tuples *= order;
        if (tuples > oracle_budget)
            fail(errc::budget_exceeded, "brute-force oracle exceeds the tuple budget");
    }

    KahanComplex acc;
    // enumerate (g_1..g_{k-1}); g_k = (g_1...g_{k-1})^{-1} y is then invertible
    auto rec = [&](auto&& self, int depth, const MatrixFq& prod, std::complex<double> charprod,
                   const FFElem& trsum) -> void {
        for_each_gl(ctx, n, [&](const MatrixFq& g) {
            std::complex<double> cp = charprod * mult_char(ctx, spec, depth, g.det());
            FFElem ts = ctx.add(trsum, g.trace_elem());
            MatrixFq p = prod.mul(g);
            if (depth + 2 == k) {
                MatrixFq gk = p.inverse().mul(y);
                std::complex<double> term = cp * mult_char(ctx, spec, k - 1, gk.det());
                term *= add_char(ctx, spec, ctx.add(ts, gk.trace_elem()));
                acc.add(term);
            } else {
                self(self, depth + 1, p, cp, ts);
            }
        });
    };
    rec(rec, 0, MatrixFq::identity(ctx, n), {1.0, 0.0}, ctx.zero());

    long double norm = std::pow((long double)ctx.q, (long double)(k - 1) * n * n / 2.0L);
    std::complex<double> v = acc.sum();
    return {(double)((long double)v.real() / norm), (double)((long double)v.imag() / norm)};
}

} // namespace klt
