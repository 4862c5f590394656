#include "klt/lfunc.hpp"

#include "klt/error.hpp"
#include "klt/matkl.hpp"

#include <algorithm>
#include <cmath>

namespace klt {

LPoly newton_coeffs(const std::vector<std::complex<double>>& K, int k) {
    LPoly out;
    out.k = k;
    out.coeffs.resize(K.size() + 1);
    out.coeffs[0] = 1.0;
    for (int r = 1; r <= (int)K.size(); ++r) {
        std::complex<double> acc = 0.0;
        for (const Partition& lam : partitions(r)) {
            std::complex<double> prod = 1.0;
            for (int part : lam.parts) prod *= K[part - 1];
            if ((k * lam.length()) % 2) prod = -prod;
            acc += prod / (double)lam.z();
        }
        out.coeffs[r] = acc;
    }
    return out;
}

std::vector<std::complex<double>> lpoly_roots(const LPoly& L) {
    int k = L.k;
    if ((int)L.coeffs.size() < k + 1)
        fail(errc::invalid_argument, "need coefficients up to degree k");
    for (size_t r = k + 1; r < L.coeffs.size(); ++r)
        if (std::abs(L.coeffs[r]) > 1e-4)
            fail(errc::degree_check_failed, "L-polynomial coefficient beyond degree k is nonzero");

    std::vector<std::complex<double>> c(L.coeffs.begin(), L.coeffs.begin() + k + 1);
    if (std::abs(c[k]) < 1e-12)
        fail(errc::degree_check_failed, "leading L-polynomial coefficient vanishes");

    // Durand-Kerner on the degree-k truncation
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
        return acc;
    };
    std::vector<std::complex<double>> roots(k);
    std::complex<double> seed(0.4, 0.9);
    roots[0] = seed;
    for (int i = 1; i < k; ++i) roots[i] = roots[i - 1] * seed;
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < k; ++i) {
            std::complex<double> denom = c[k];
            for (int j = 0; j < k; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            std::complex<double> delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-15) break;
    }
    std::vector<std::complex<double>> w(k);
    for (int i = 0; i < k; ++i) w[i] = 1.0 / roots[i];
    // fixed output order for reproducibility
    std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return w;
}

std::vector<KlValue> kl_tower_at_root(const FieldCtx& ctx, const FqPoly& minpoly, int rmax,
                                      const CharSpec& spec, const SumOptions& opts) {
    if (!fq_is_irreducible(ctx, minpoly))
        fail(errc::reducible_modulus, "tower base polynomial must be irreducible");
    int d = minpoly.degree();
    FieldCtx based;
    Embedding emb;
    if (d == 1) {
        based = ctx;
        emb = identity_embedding(ctx);
    } else {
        based = ff_make_auto(ctx.p, ctx.m * (uint32_t)d);
        emb = make_embedding(ctx, based);
    }
    FqPoly mapped;
    mapped.c.reserve(minpoly.c.size());
    for (const auto& coef : minpoly.c) mapped.c.push_back(emb.map(coef));
    std::vector<FFElem> roots = fq_roots(based, mapped, 0);
    if (roots.empty()) fail(errc::overflow, "no root of the base polynomial in its splitting field");
    FFElem xi = roots[0];
    if (roots.size() > 1) {
        uint64_t best = ~0ull;
        for (const auto& rt : roots) {
            uint64_t dl = based.dlog(rt);
            if (dl < best) {
                best = dl;
                xi = rt;
            }
        }
    }
    return kl_sequence(based, lift_char_spec(spec, emb), xi, rmax, opts);
}

double genfun_check(const FieldCtx& ctx, const FqPoly& minpoly, int nmax, const CharSpec& spec,
                    const SumOptions& opts) {
    if (nmax > 8) fail(errc::size_limit, "generating-function check supported for nmax <= 8");
    int d = minpoly.degree();
    int k = spec.k;

    std::vector<KlValue> K = kl_tower_at_root(ctx, minpoly, k, spec, opts);
    std::vector<std::complex<double>> kv;
    for (const auto& v : K) kv.push_back(v.value);
    std::vector<std::complex<double>> w = lpoly_roots(newton_coeffs(kv, k));

    double dev = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        std::complex<double> lhs = 1.0;
        if (n > 0) {
            lhs = alg1_jordan(ctx, minpoly, Partition({n}), spec, opts);
            if (((k - 1) * d * n) % 2) lhs = -lhs;
        }
        std::complex<double> rhs = complete_h_eval(n, w);
        dev = std::max(dev, std::abs(lhs - rhs));
    }
    return dev;
}

} // namespace klt
