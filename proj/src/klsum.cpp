#include "klt/klsum.hpp"

#include "klt/accum.hpp"
#include "klt/error.hpp"

#include <cmath>
#include <thread>

namespace klt {

namespace {

void validate_spec(const FieldCtx& ctx, const CharSpec& spec) {
    if (spec.k < 2) fail(errc::invalid_argument, "character rank k must be >= 2");
    if ((int)spec.mult_indices.size() != spec.k)
        fail(errc::invalid_argument, "need one multiplicative index per slot");
    if (spec.additive_scale % ctx.p == 0)
        fail(errc::invalid_argument, "additive scale must be nonzero mod p");
}

uint64_t tuple_count(uint64_t group_order, int k, uint64_t budget) {
    unsigned __int128 terms = 1;
    for (int i = 0; i + 1 < k; ++i) {
        terms *= group_order;
        if (terms > budget) fail(errc::budget_exceeded, "Kloosterman sum exceeds the term budget");
    }
    return (uint64_t)terms;
}

// exact integer path: p = 2, trivial multiplicative characters, any k
long long kl2_exact_range(const FieldCtx& ctx, const FFElem& xi, int k, uint64_t lo, uint64_t hi) {
    uint64_t g = ctx.pack2(ctx.generator);
    uint64_t ginv = ctx.inv2(g);
    uint64_t xib = ctx.pack2(xi);
    long long acc = 0;

    if (k == 2) {
        uint64_t t = ctx.pow2(g, lo);
        uint64_t u = ctx.mul2(xib, ctx.pow2(ginv, lo));
        for (uint64_t l = lo; l < hi; ++l) {
            acc += ctx.trace2(t ^ u) ? -1 : 1;
            t = ctx.mul2(t, g);
            u = ctx.mul2(u, ginv);
        }
        return acc;
    }

    // odometer over (t_1..t_{k-1}); depth 0 covers [lo, hi)
    uint64_t ord = ctx.q - 1;
    auto rec = [&](auto&& self, int depth, uint64_t sum_prev, uint64_t uinv_prev) -> void {
        uint64_t first = depth == 0 ? lo : 0;
        uint64_t last = depth == 0 ? hi : ord;
        uint64_t tv = ctx.pow2(g, first);
        uint64_t uv = ctx.mul2(uinv_prev, ctx.pow2(ginv, first));
        for (uint64_t l = first; l < last; ++l) {
            if (depth + 2 == k) {
                acc += ctx.trace2(sum_prev ^ tv ^ uv) ? -1 : 1;
            } else {
                self(self, depth + 1, sum_prev ^ tv, uv);
            }
            tv = ctx.mul2(tv, g);
            uv = ctx.mul2(uv, ginv);
        }
    };
    rec(rec, 0, 0, xib);
    return acc;
}

// generic complex path over a t_1 sub-range
std::complex<double> kl_generic_range(const FieldCtx& ctx, const CharSpec& spec, const FFElem& xi,
                                      uint64_t dlog_xi, uint64_t lo, uint64_t hi) {
    uint64_t ord = ctx.q - 1;
    int k = spec.k;
    FFElem g = ctx.generator;
    FFElem ginv = ctx.inv(g);
    bool need_last_char = ord > 1 && spec.mult_indices[k - 1] % ord != 0;

    KahanComplex acc;
    if (k == 2) {
        uint64_t j1 = ord > 1 ? spec.mult_indices[0] % ord : 0;
        FFElem t = ctx.pow(g, lo);
        FFElem u = ctx.mul(xi, ctx.pow(ginv, lo % ord));
        for (uint64_t l = lo; l < hi; ++l) {
            std::complex<double> term = add_char(ctx, spec, ctx.add(t, u));
            if (j1) term *= mult_char_at_dlog(ctx, j1, l);
            if (need_last_char)
                term *= mult_char_at_dlog(ctx, spec.mult_indices[1], (dlog_xi + ord - l % ord) % ord);
            acc.add(term);
            t = ctx.mul(t, g);
            u = ctx.mul(u, ginv);
        }
        return acc.sum();
    }

    auto rec = [&](auto&& self, int depth, const FFElem& sum_prev, const FFElem& uinv_prev,
                   uint64_t dlog_sum, std::complex<double> char_prev) -> void {
        uint64_t first = depth == 0 ? lo : 0;
        uint64_t last = depth == 0 ? hi : ord;
        uint64_t j = ord > 1 ? spec.mult_indices[depth] % ord : 0;
        FFElem tv = ctx.pow(g, first);
        FFElem uv = ctx.mul(uinv_prev, ctx.pow(ginv, first % ord));
        for (uint64_t l = first; l < last; ++l) {
            std::complex<double> cp = char_prev;
            if (j) cp *= mult_char_at_dlog(ctx, j, l);
            FFElem s = ctx.add(sum_prev, tv);
            if (depth + 2 == k) {
                std::complex<double> term = cp * add_char(ctx, spec, ctx.add(s, uv));
                if (need_last_char)
                    term *= mult_char_at_dlog(ctx, spec.mult_indices[k - 1],
                                              (dlog_xi + ord - (dlog_sum + l) % ord) % ord);
                acc.add(term);
            } else {
                self(self, depth + 1, s, uv, (dlog_sum + l) % ord, cp);
            }
            tv = ctx.mul(tv, g);
            uv = ctx.mul(uv, ginv);
        }
    };
    rec(rec, 0, ctx.zero(), xi, 0, {1.0, 0.0});
    return acc.sum();
}

} // namespace

KlValue kl_plain(const FieldCtx& ctx, const CharSpec& spec, const FFElem& xi,
                 const SumOptions& opts) {
    validate_spec(ctx, spec);
    if (xi.is_zero()) fail(errc::zero_point, "Kloosterman sum requires xi != 0");
    uint64_t ord = ctx.q - 1;
    tuple_count(ord, spec.k, opts.term_budget);

    KlValue out;
    out.field_size = ctx.q;
    out.q = ctx.q;
    out.d = 1;
    out.k = spec.k;
    out.convention = KlConvention::plain;

    bool exact2 = ctx.p == 2 && spec.all_mult_trivial();
    int workers = std::max(1, opts.workers);
    if ((uint64_t)workers > ord) workers = (int)ord;

    if (exact2) {
        std::vector<long long> partial(workers, 0);
        auto run = [&](int w) {
            uint64_t lo = ord * (uint64_t)w / workers;
            uint64_t hi = ord * (uint64_t)(w + 1) / workers;
            partial[w] = kl2_exact_range(ctx, xi, spec.k, lo, hi);
        };
        if (workers == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
            for (auto& th : pool) th.join();
        }
        long long total = 0;
        for (long long v : partial) total += v;
        out.exact_num = total;
        out.value = {(double)total, 0.0};
        return out;
    }

    uint64_t dlog_xi = 0;
    bool need_xi_dlog = ord > 1 && spec.mult_indices[spec.k - 1] % ord != 0;
    if (need_xi_dlog) dlog_xi = ctx.dlog(xi);

    std::vector<std::complex<double>> partial(workers);
    auto run = [&](int w) {
        uint64_t lo = ord * (uint64_t)w / workers;
        uint64_t hi = ord * (uint64_t)(w + 1) / workers;
        partial[w] = kl_generic_range(ctx, spec, xi, dlog_xi, lo, hi);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    KahanComplex acc;
    for (const auto& v : partial) acc.add(v); // fixed worker-index order
    out.value = acc.sum();
    return out;
}

KlValue kl_signed(const FieldCtx& ctx, const CharSpec& spec, const FFElem& xi,
                  const SumOptions& opts) {
    KlValue v = kl_plain(ctx, spec, xi, opts);
    if (spec.k % 2 == 0) {
        v.value = -v.value;
        if (v.exact_num) v.exact_num = -*v.exact_num;
    }
    v.convention = KlConvention::signed_trace;
    return v;
}

KlValue kl_normalize(const KlValue& v) {
    if (v.normalized) fail(errc::already_normalized, "value is already normalized");
    KlValue out = v;
    out.normalized = true;
    if (v.exact_num) {
        int e = 0;
        uint64_t fs = v.field_size;
        while (fs > 1) {
            fs >>= 1;
            ++e;
        }
        out.pow2_half = e * (v.k - 1);
        double denom = std::ldexp(1.0, out.pow2_half / 2);
        if (out.pow2_half % 2) denom *= std::sqrt(2.0);
        out.value = {(double)*v.exact_num / denom, 0.0};
    } else {
        long double norm = std::pow((long double)v.field_size, (long double)(v.k - 1) / 2.0L);
        out.value = {(double)((long double)v.value.real() / norm),
                     (double)((long double)v.value.imag() / norm)};
    }
    return out;
}

std::vector<KlValue> kl_sequence(const FieldCtx& base, const CharSpec& spec, const FFElem& xi,
                                 int rmax, const SumOptions& opts) {
    if (xi.is_zero()) fail(errc::zero_point, "Kloosterman tower requires xi != 0");
    validate_spec(base, spec);
    std::vector<KlValue> out;
    out.reserve(rmax);
    for (int r = 1; r <= rmax; ++r) {
        KlValue v;
        if (r == 1) {
            v = kl_normalize(kl_plain(base, spec, xi, opts));
        } else {
            FieldCtx ext = ff_make_auto(base.p, base.m * r);
            Embedding emb = make_embedding(base, ext);
            CharSpec lifted = lift_char_spec(spec, emb);
            v = kl_normalize(kl_plain(ext, lifted, emb.map(xi), opts));
        }
        v.q = base.q;
        v.d = r;
        out.push_back(v);
    }
    return out;
}

double kl_tower_eigen(double k1_signed_normalized, int m) {
    if (std::abs(k1_signed_normalized) > 2.0 + 1e-6)
        fail(errc::deligne_violation, "|K_1| exceeds the Deligne bound 2");
    double c = std::clamp(k1_signed_normalized / 2.0, -1.0, 1.0);
    double theta = std::acos(c);
    return 2.0 * std::cos((double)m * theta);
}

} // namespace klt
