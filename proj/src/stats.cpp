#include "klt/stats.hpp"

#include "klt/accum.hpp"
#include "klt/error.hpp"
#include "klt/lfunc.hpp"
#include "klt/matkl.hpp"

#include <algorithm>
#include <cmath>

namespace klt {

double density_ref(RefDensity kind, double x) {
    if (kind == RefDensity::semicircle_trace) {
        if (x < -2.0 || x > 2.0) fail(errc::out_of_domain, "trace density defined on [-2, 2]");
        return std::sqrt(4.0 - x * x) / (2.0 * M_PI);
    }
    if (x < 0.0 || x > M_PI) fail(errc::out_of_domain, "angle density defined on [0, pi]");
    double s = std::sin(x);
    return 2.0 / M_PI * s * s;
}

double cdf_ref(RefDensity kind, double x) {
    if (kind == RefDensity::semicircle_trace) {
        if (x <= -2.0) return 0.0;
        if (x >= 2.0) return 1.0;
        return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * M_PI) + std::asin(x / 2.0) / M_PI;
    }
    if (x <= 0.0) return 0.0;
    if (x >= M_PI) return 1.0;
    return x / M_PI - std::sin(2.0 * x) / (2.0 * M_PI);
}

double angle_transform(double x) {
    if (std::abs(x) > 2.0 + 1e-9) fail(errc::out_of_range, "trace value outside [-2, 2]");
    return std::acos(std::clamp(x / 2.0, -1.0, 1.0));
}

Histogram make_histogram(const std::vector<double>& sample, RefDensity domain, int bins) {
    if (bins < 1) fail(errc::invalid_argument, "need at least one bin");
    double lo = domain == RefDensity::semicircle_trace ? -2.0 : 0.0;
    double hi = domain == RefDensity::semicircle_trace ? 2.0 : M_PI;
    Histogram h;
    h.domain = domain;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
    h.counts.assign(bins, 0);
    for (double v : sample) {
        int b = (int)((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[b];
        ++h.total;
    }
    return h;
}

double ks_pvalue_asymptotic(double d, long long n) {
    double sn = std::sqrt((double)n);
    double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

GofReport gof(std::vector<double> sample, RefDensity kind) {
    if (sample.size() < 5) fail(errc::too_few_samples, "goodness of fit needs at least 5 samples");
    std::sort(sample.begin(), sample.end());
    long long n = (long long)sample.size();

    GofReport rep;
    rep.n = n;
    for (long long i = 0; i < n; ++i) {
        double f = cdf_ref(kind, sample[i]);
        rep.ks_stat = std::max(rep.ks_stat, f - (double)i / n);
        rep.ks_stat = std::max(rep.ks_stat, (double)(i + 1) / n - f);
    }
    rep.pvalue_ks = ks_pvalue_asymptotic(rep.ks_stat, n);

    // Pearson chi^2 over equal-probability bins
    int bins = std::max<long long>(5, n / 20);
    double lo = kind == RefDensity::semicircle_trace ? -2.0 : 0.0;
    double hi = kind == RefDensity::semicircle_trace ? 2.0 : M_PI;
    std::vector<double> edges(bins + 1);
    edges[0] = lo;
    edges[bins] = hi;
    for (int b = 1; b < bins; ++b) {
        double target = (double)b / bins, a = lo, c = hi;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (a + c);
            (cdf_ref(kind, mid) < target ? a : c) = mid;
        }
        edges[b] = 0.5 * (a + c);
    }
    std::vector<long long> counts(bins, 0);
    size_t idx = 0;
    for (int b = 0; b < bins; ++b) {
        while (idx < sample.size() && (b == bins - 1 || sample[idx] <= edges[b + 1])) {
            ++counts[b];
            ++idx;
        }
    }
    double expect = (double)n / bins;
    for (int b = 0; b < bins; ++b) {
        double diff = (double)counts[b] - expect;
        rep.chi2 += diff * diff / expect;
    }
    return rep;
}

std::vector<uint32_t> primes_2_mod_3(int count) {
    std::vector<uint32_t> out;
    for (uint32_t p = 2; (int)out.size() < count; ++p)
        if (p % 3 == 2 && is_prime_u64(p)) out.push_back(p);
    return out;
}

namespace {

void check_sweep_prime(uint32_t p) {
    if (!is_prime_u64(p) || p % 3 != 2)
        fail(errc::bad_prime, "sweep primes must be congruent to 2 mod 3");
}

MatrixFq sweep_matrix(const FieldCtx& ctx, SweepMatrix y) {
    // companion of T^2 - t*T + dt
    return MatrixFq::from_residues(ctx, {{0, -y.dt}, {1, y.t}});
}

} // namespace

std::vector<double> sweep_primes(const std::vector<uint32_t>& primes, SweepMatrix y,
                                 const SumOptions& opts) {
    std::vector<double> out;
    out.reserve(primes.size());
    CharSpec spec = CharSpec::trivial(2);
    for (uint32_t p : primes) {
        check_sweep_prime(p);
        FieldCtx ctx = ff_make_prime(p);
        out.push_back(alg2_general(sweep_matrix(ctx, y), spec, opts).value.real());
    }
    return out;
}

std::vector<double> sweep_vertical(uint32_t p, VerticalMode mode, SweepMatrix y) {
    check_sweep_prime(p);
    if ((uint64_t)p * p - 1 > (1ull << 26))
        fail(errc::budget_exceeded, "vertical sweep table would exceed the term budget");
    FieldCtx base = ff_make_prime(p);
    FieldCtx ext = ff_make_auto(p, 2);
    Embedding emb = make_embedding(base, ext);

    FqPoly charpoly = fq_poly(base, {y.dt, -y.t, 1});
    if (!fq_is_irreducible(base, charpoly))
        fail(errc::bad_prime, "vertical sweep matrix must be regular elliptic at p");
    FqPoly mapped;
    for (const auto& c : charpoly.c) mapped.c.push_back(emb.map(c));
    std::vector<FFElem> roots = fq_roots(ext, mapped, 0);
    FFElem xi = roots[0];
    if (roots.size() > 1 && ext.dlog(roots[1]) < ext.dlog(roots[0])) xi = roots[1];

    // one enumeration pass: traces of G^l + xi G^{-l}
    uint64_t ord = ext.q - 1;
    std::vector<uint32_t> trace_of(ord);
    FFElem g = ext.generator, ginv = ext.inv(g);
    FFElem t = ext.one(), u = xi;
    for (uint64_t l = 0; l < ord; ++l) {
        trace_of[l] = ext.trace(ext.add(t, u));
        t = ext.mul(t, g);
        u = ext.mul(u, ginv);
    }

    std::vector<std::complex<double>> wp(p);
    for (uint32_t c = 0; c < p; ++c) wp[c] = unit_root(c, p);

    std::vector<double> out;
    out.reserve(p - 1);
    if (mode == VerticalMode::scale) {
        std::vector<long long> hist(p, 0);
        for (uint64_t l = 0; l < ord; ++l) ++hist[trace_of[l]];
        for (uint32_t a = 1; a < p; ++a) {
            KahanComplex acc;
            for (uint32_t c = 0; c < p; ++c)
                acc.add((double)hist[c] * wp[(uint64_t)a * c % p]);
            out.push_back(-acc.sum().real() / (double)p);
        }
    } else {
        std::vector<std::complex<double>> wq;
        if (ord <= (1ull << 22)) {
            wq.resize(ord);
            for (uint64_t i = 0; i < ord; ++i) wq[i] = unit_root(i, ord);
        }
        for (uint32_t j = 1; j < p; ++j) {
            CharSpec spec{2, {j, 0}, 1};
            uint64_t jl = lift_char_spec(spec, emb).mult_indices[0] % ord;
            KahanComplex acc;
            for (uint64_t l = 0; l < ord; ++l) {
                uint64_t e = mulmod_u64(jl, l, ord);
                acc.add((wq.empty() ? unit_root(e, ord) : wq[e]) * wp[trace_of[l]]);
            }
            out.push_back(-acc.sum().real() / (double)p);
        }
    }
    return out;
}

std::vector<double> sweep_tower(int lmax) {
    if (lmax < 1 || lmax > 64) fail(errc::size_limit, "tower sweep supports 1 <= L <= 64");
    FieldCtx f2 = ff_make_prime(2);
    FqPoly quad = fq_poly(f2, {1, 1, 1});
    std::vector<KlValue> k1 = kl_tower_at_root(f2, quad, 1, CharSpec::trivial(2));
    double signed_k1 = -k1[0].value.real(); // k = 2
    std::vector<double> out;
    out.reserve(lmax);
    for (int m = 1; m <= lmax; ++m) out.push_back(kl_tower_eigen(signed_k1, m));
    return out;
}

} // namespace klt
