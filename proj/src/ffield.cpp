#include "klt/ffield.hpp"

#include "klt/error.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace klt {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t mod) {
    return (uint64_t)((unsigned __int128)a * b % mod);
}

uint64_t powmod_u64(uint64_t base, uint64_t e, uint64_t mod) {
    uint64_t r = 1 % mod;
    base %= mod;
    while (e) {
        if (e & 1) r = mulmod_u64(r, base, mod);
        base = mulmod_u64(base, base, mod);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    uint64_t d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin bases for n < 2^64.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

uint64_t pollard_rho(uint64_t n) {
    if (!(n & 1)) return 2;
    for (uint64_t c = 1;; ++c) {
        auto step = [&](uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

} // namespace

std::vector<uint64_t> prime_factors_u64(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p <= 1000000 && p * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    std::vector<uint64_t> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        uint64_t v = stack.back();
        stack.pop_back();
        if (v == 1) continue;
        if (is_prime_u64(v)) {
            out.push_back(v);
            continue;
        }
        uint64_t d = pollard_rho(v);
        stack.push_back(d);
        stack.push_back(v / d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// F_p[T] helpers used before a FieldCtx exists (modulus checking/search).

namespace {

using PPoly = std::vector<uint32_t>; // constant first, trimmed

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

uint32_t inv_modp(uint32_t a, uint32_t p) { return (uint32_t)powmod_u64(a, p - 2, p); }

PPoly pmul(const PPoly& a, const PPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (uint32_t)((r[i + j] + (uint64_t)a[i] * b[j]) % p);
    }
    ptrim(r);
    return r;
}

PPoly psub(const PPoly& a, const PPoly& b, uint32_t p) {
    PPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint32_t av = i < a.size() ? a[i] : 0;
        uint32_t bv = i < b.size() ? b[i] : 0;
        r[i] = (av + p - bv) % p;
    }
    ptrim(r);
    return r;
}

PPoly pmonic(PPoly f, uint32_t p) {
    ptrim(f);
    if (f.empty() || f.back() == 1) return f;
    uint64_t ic = inv_modp(f.back(), p);
    for (auto& c : f) c = (uint32_t)(c * ic % p);
    return f;
}

// f mod g, g monic nonconstant
PPoly pmod(PPoly f, const PPoly& g, uint32_t p) {
    ptrim(f);
    while (f.size() >= g.size()) {
        uint64_t c = f.back();
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i < g.size(); ++i) {
            uint64_t sub = c * g[i] % p;
            f[shift + i] = (uint32_t)((f[shift + i] + p - sub) % p);
        }
        ptrim(f);
    }
    return f;
}

PPoly pgcd(PPoly a, PPoly b, uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PPoly bm = pmonic(b, p);
        PPoly r = pmod(a, bm, p);
        a = bm;
        b = r;
    }
    return pmonic(a, p);
}

PPoly ppowmod(PPoly base, uint64_t e, const PPoly& f, uint32_t p) {
    PPoly r{1};
    base = pmod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = pmod(pmul(r, base, p), f, p);
        e >>= 1;
        if (e) base = pmod(pmul(base, base, p), f, p);
    }
    return r;
}

bool irreducible_modp(const PPoly& f, uint32_t p) {
    if (f.size() < 2) return false;
    size_t d = f.size() - 1;
    if (d == 1) return true;
    PPoly x{0, 1};
    PPoly xr = pmod(x, f, p);
    std::vector<PPoly> frob(d + 1);
    PPoly h = xr;
    for (size_t i = 1; i <= d; ++i) {
        h = ppowmod(h, p, f, p);
        frob[i] = h;
    }
    if (frob[d] != xr) return false;
    for (uint64_t ell : prime_factors_u64(d)) {
        PPoly diff = psub(frob[d / ell], xr, p);
        if (pgcd(diff, f, p).size() != 1) return false;
    }
    return true;
}

} // namespace

std::vector<long long> find_irreducible_modp(uint32_t p, uint32_t degree) {
    if (degree == 0) fail(errc::invalid_argument, "degree must be >= 1");
    for (uint64_t counter = 0;; ++counter) {
        PPoly f(degree + 1, 0);
        uint64_t c = counter;
        for (uint32_t i = 0; i < degree; ++i) {
            f[i] = (uint32_t)(c % p);
            c /= p;
        }
        if (c) fail(errc::reducible_modulus, "no irreducible polynomial found"); // unreachable
        f[degree] = 1;
        if (irreducible_modp(f, p)) return std::vector<long long>(f.begin(), f.end());
    }
}

// ---------------------------------------------------------------------------
// FieldCtx

namespace detail {
struct DlogCache {
    std::mutex mu;
    bool built = false;
    uint64_t bcount = 0;
    std::unordered_map<uint64_t, uint64_t> baby;
    FFElem giant;
};
} // namespace detail

FFElem FieldCtx::one() const {
    FFElem e = zero();
    e.c[0] = 1;
    return e;
}

FFElem FieldCtx::from_residues(const std::vector<long long>& v) const {
    if (v.size() > m) fail(errc::invalid_argument, "too many coefficients for field element");
    FFElem e = zero();
    for (size_t i = 0; i < v.size(); ++i) e.c[i] = (uint32_t)(((v[i] % p) + p) % p);
    return e;
}

FFElem FieldCtx::from_index(uint64_t idx) const {
    FFElem e = zero();
    for (uint32_t i = 0; i < m && idx; ++i) {
        e.c[i] = (uint32_t)(idx % p);
        idx /= p;
    }
    return e;
}

uint64_t FieldCtx::to_index(const FFElem& x) const {
    uint64_t idx = 0;
    for (uint32_t i = m; i-- > 0;) idx = idx * p + x.c[i];
    return idx;
}

FFElem FieldCtx::add(const FFElem& a, const FFElem& b) const {
    FFElem r = zero();
    for (uint32_t i = 0; i < m; ++i) {
        uint32_t s = a.c[i] + b.c[i];
        r.c[i] = s >= p ? s - p : s;
    }
    return r;
}

FFElem FieldCtx::sub(const FFElem& a, const FFElem& b) const {
    FFElem r = zero();
    for (uint32_t i = 0; i < m; ++i) {
        uint32_t s = a.c[i] + p - b.c[i];
        r.c[i] = s >= p ? s - p : s;
    }
    return r;
}

FFElem FieldCtx::neg(const FFElem& a) const { return sub(zero(), a); }

FFElem FieldCtx::mul(const FFElem& a, const FFElem& b) const {
    std::vector<uint64_t> prod(2 * m - 1, 0);
    for (uint32_t i = 0; i < m; ++i) {
        if (!a.c[i]) continue;
        for (uint32_t j = 0; j < m; ++j)
            prod[i + j] = (prod[i + j] + (uint64_t)a.c[i] * b.c[j]) % p;
    }
    // reduce by the monic modulus
    for (uint32_t i = 2 * m - 2; i >= m && i < 2 * m; --i) {
        uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (uint32_t j = 0; j < m; ++j)
            prod[i - m + j] = (prod[i - m + j] + (uint64_t)(p - modulus[j]) * c) % p;
    }
    FFElem r = zero();
    for (uint32_t i = 0; i < m; ++i) r.c[i] = (uint32_t)prod[i];
    return r;
}

FFElem FieldCtx::pow(const FFElem& a, uint64_t e) const {
    FFElem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

FFElem FieldCtx::inv(const FFElem& a) const {
    if (a.is_zero()) fail(errc::division_by_zero, "inverse of zero field element");
    return pow(a, q - 2);
}

uint32_t FieldCtx::trace(const FFElem& x) const {
    uint64_t t = 0;
    for (uint32_t i = 0; i < m; ++i) t = (t + (uint64_t)x.c[i] * trace_basis_[i]) % p;
    return (uint32_t)t;
}

uint64_t FieldCtx::pack2(const FFElem& x) const {
    uint64_t bits = 0;
    for (uint32_t i = 0; i < m; ++i) bits |= (uint64_t)(x.c[i] & 1) << i;
    return bits;
}

FFElem FieldCtx::unpack2(uint64_t bits) const {
    FFElem e = zero();
    for (uint32_t i = 0; i < m; ++i) e.c[i] = (bits >> i) & 1;
    return e;
}

uint64_t FieldCtx::mul2(uint64_t a, uint64_t b) const {
    unsigned __int128 acc = 0;
    while (b) {
        acc ^= (unsigned __int128)a << __builtin_ctzll(b);
        b &= b - 1;
    }
    for (int i = 2 * (int)m - 2; i >= (int)m; --i)
        if ((acc >> i) & 1) acc ^= (unsigned __int128)mod_mask_ << (i - m);
    return (uint64_t)acc;
}

uint64_t FieldCtx::pow2(uint64_t a, uint64_t e) const {
    uint64_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul2(r, b);
        e >>= 1;
        if (e) b = mul2(b, b);
    }
    return r;
}

uint64_t FieldCtx::inv2(uint64_t a) const {
    if (!a) fail(errc::division_by_zero, "inverse of zero field element");
    return pow2(a, q - 2);
}

uint64_t FieldCtx::dlog(const FFElem& x) const {
    if (x.is_zero()) fail(errc::zero_argument, "discrete log of zero");
    if (q == 2) return 0;
    auto& cache = *dlog_cache_;
    std::lock_guard<std::mutex> lock(cache.mu);
    if (!cache.built) {
        if (q - 1 > (1ull << 40))
            fail(errc::size_limit, "field too large for baby-step/giant-step dlog");
        uint64_t b = (uint64_t)std::ceil(std::sqrt((double)(q - 1)));
        cache.bcount = std::max<uint64_t>(b, 1);
        FFElem y = one();
        cache.baby.reserve(cache.bcount * 2);
        for (uint64_t j = 0; j < cache.bcount; ++j) {
            cache.baby.emplace(to_index(y), j);
            y = mul(y, generator);
        }
        cache.giant = inv(pow(generator, cache.bcount));
        cache.built = true;
    }
    FFElem y = x;
    for (uint64_t i = 0; i * cache.bcount <= q - 1; ++i) {
        auto it = cache.baby.find(to_index(y));
        if (it != cache.baby.end()) return (i * cache.bcount + it->second) % (q - 1);
        y = mul(y, cache.giant);
    }
    fail(errc::zero_argument, "discrete log failed; element outside the group");
}

FieldCtx ff_make(uint32_t p, const std::vector<long long>& modulus_in) {
    if (p < 2 || p > (1u << 20) || !is_prime_u64(p))
        fail(errc::not_prime, "p must be a prime <= 2^20");
    if (modulus_in.size() < 2) fail(errc::invalid_argument, "modulus must have degree >= 1");

    FieldCtx ctx;
    ctx.p = p;
    ctx.m = (uint32_t)(modulus_in.size() - 1);
    ctx.modulus.resize(modulus_in.size());
    for (size_t i = 0; i < modulus_in.size(); ++i)
        ctx.modulus[i] = (uint32_t)(((modulus_in[i] % p) + p) % p);
    if (ctx.modulus.back() != 1) fail(errc::invalid_argument, "modulus must be monic");

    unsigned __int128 q = 1;
    for (uint32_t i = 0; i < ctx.m; ++i) {
        q *= p;
        if (q >= ((unsigned __int128)1 << 63)) fail(errc::field_too_large, "p^m must be < 2^63");
    }
    ctx.q = (uint64_t)q;

    if (!irreducible_modp(PPoly(ctx.modulus.begin(), ctx.modulus.end()), p))
        fail(errc::reducible_modulus, "modulus factors over F_p");

    // trace of the power basis
    ctx.trace_basis_.resize(ctx.m);
    FFElem xi = ctx.from_index(p % ctx.q); // the modulus root (== p as an index); for m=1 this is 0
    if (ctx.m == 1) {
        ctx.trace_basis_[0] = 1;
    } else {
        for (uint32_t j = 0; j < ctx.m; ++j) {
            FFElem b = ctx.pow(xi, j);
            FFElem acc = b, t = b;
            for (uint32_t i = 1; i < ctx.m; ++i) {
                t = ctx.pow(t, p);
                acc = ctx.add(acc, t);
            }
            for (uint32_t i = 1; i < ctx.m; ++i)
                if (acc.c[i]) fail(errc::overflow, "trace left the prime field"); // unreachable
            ctx.trace_basis_[j] = acc.c[0];
        }
    }

    if (p == 2) {
        for (uint32_t i = 0; i <= ctx.m; ++i) ctx.mod_mask_ |= (uint64_t)ctx.modulus[i] << i;
        for (uint32_t j = 0; j < ctx.m; ++j) ctx.trace_mask_ |= (uint64_t)ctx.trace_basis_[j] << j;
    }

    ctx.q1_prime_factors = ctx.q > 2 ? prime_factors_u64(ctx.q - 1) : std::vector<uint64_t>{};

    // first primitive element in enumeration order
    for (uint64_t idx = 1; idx < ctx.q; ++idx) {
        FFElem g = ctx.from_index(idx);
        bool primitive = true;
        for (uint64_t ell : ctx.q1_prime_factors) {
            if (ctx.pow(g, (ctx.q - 1) / ell) == ctx.one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            ctx.generator = g;
            break;
        }
    }

    ctx.dlog_cache_ = std::make_shared<detail::DlogCache>();
    return ctx;
}

FieldCtx ff_make_prime(uint32_t p) { return ff_make(p, {0, 1}); }

FieldCtx ff_make_auto(uint32_t p, uint32_t degree) {
    return ff_make(p, find_irreducible_modp(p, degree));
}

std::complex<double> unit_root(uint64_t num, uint64_t den) {
    num %= den;
    if (num == 0) return {1.0, 0.0};
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return num == 2 ? std::complex<double>{-1.0, 0.0}
                                  : std::complex<double>{0.0, num == 1 ? 1.0 : -1.0};
    double ang = 2.0 * M_PI * (double)num / (double)den;
    return {std::cos(ang), std::sin(ang)};
}

std::complex<double> mult_char_at_dlog(const FieldCtx& ctx, uint64_t index, uint64_t dlog_x) {
    uint64_t ord = ctx.q - 1;
    if (ord == 0 || index % ord == 0) return {1.0, 0.0};
    return unit_root(mulmod_u64(index % ord, dlog_x % ord, ord), ord);
}

std::complex<double> mult_char(const FieldCtx& ctx, const CharSpec& spec, int slot,
                               const FFElem& x) {
    if (x.is_zero()) fail(errc::zero_argument, "multiplicative character at zero");
    uint64_t j = spec.mult_indices.at(slot);
    if (ctx.q == 2 || j % (ctx.q - 1) == 0) return {1.0, 0.0};
    return mult_char_at_dlog(ctx, j, ctx.dlog(x));
}

std::complex<double> add_char(const FieldCtx& ctx, const CharSpec& spec, const FFElem& x) {
    uint64_t a = spec.additive_scale % ctx.p;
    return unit_root(a * ctx.trace(x) % ctx.p, ctx.p);
}

} // namespace klt
