#include "klt/ffield.hpp"

#include "klt/error.hpp"

#include <doctest.h>

#include <random>
#include <thread>

using namespace klt;

namespace {
const FieldCtx& f8() {
    static FieldCtx ctx = ff_make(2, {1, 1, 0, 1}); // T^3 + T + 1
    return ctx;
}
const FieldCtx& f4() {
    static FieldCtx ctx = ff_make(2, {1, 1, 1});
    return ctx;
}
} // namespace

TEST_CASE("context construction") {
    CHECK(f8().q == 8);
    CHECK(f8().m == 3);
    CHECK_THROWS_AS(ff_make(2, {1, 0, 1}), Error);     // T^2+1 = (T+1)^2 over F_2
    CHECK_THROWS_AS(ff_make(4, {1, 1}), Error);        // 4 not prime
    CHECK_THROWS_AS(ff_make(2, std::vector<long long>(64, 1)), Error); // 2^63 too large

    FieldCtx f3 = ff_make(3, {0, 1}); // degree-1 modulus: F_3 itself
    CHECK(f3.q == 3);
    CHECK(f3.generator == f3.from_residues({2}));

    // deterministic: same inputs give the same generator
    FieldCtx again = ff_make(2, {1, 1, 0, 1});
    CHECK(again.generator == f8().generator);
}

TEST_CASE("arithmetic matches the defining relations") {
    const FieldCtx& ctx = f8();
    FFElem xi = ctx.from_index(2); // the modulus root
    FFElem xi3 = ctx.mul(ctx.mul(xi, xi), xi);
    CHECK(xi3 == ctx.add(xi, ctx.one())); // xi^3 = xi + 1

    // inv(xi) = xi^2 + 1
    FFElem expect = ctx.add(ctx.mul(xi, xi), ctx.one());
    CHECK(ctx.inv(xi) == expect);

    const FieldCtx& c4 = f4();
    FFElem w = c4.from_index(2);
    CHECK(c4.mul(w, c4.mul(w, w)) == c4.one()); // w^3 = 1

    CHECK_THROWS_AS(ctx.inv(ctx.zero()), Error);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(11);
    for (const FieldCtx& ctx : {ff_make(5, {0, 1}), ff_make(3, {1, 2, 0, 1}), f8()}) {
        std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
        for (int i = 0; i < 1000; ++i) {
            FFElem a = ctx.from_index(dist(rng));
            FFElem b = ctx.from_index(dist(rng));
            FFElem c = ctx.from_index(dist(rng));
            CHECK(ctx.mul(a, ctx.mul(b, c)) == ctx.mul(ctx.mul(a, b), c));
            CHECK(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
            if (!a.is_zero()) CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
        }
    }
}

TEST_CASE("absolute trace") {
    CHECK(f8().trace(f8().one()) == 1);            // 3-fold sum of 1 over F_2
    CHECK(f8().trace(f8().from_index(2)) == 0);    // Tr(xi) = 0
    CHECK(f4().trace(f4().from_index(2)) == 1);    // Tr(w) = 1

    // additivity and Frobenius invariance
    std::mt19937_64 rng(5);
    FieldCtx f27 = ff_make(3, {1, 2, 0, 1});
    for (const FieldCtx& ctx : {f8(), f27}) {
        std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
        for (int i = 0; i < 300; ++i) {
            FFElem a = ctx.from_index(dist(rng)), b = ctx.from_index(dist(rng));
            CHECK((ctx.trace(a) + ctx.trace(b)) % ctx.p == ctx.trace(ctx.add(a, b)));
            CHECK(ctx.trace(ctx.pow(a, ctx.p)) == ctx.trace(a));
        }
    }
}

TEST_CASE("discrete logarithm") {
    for (const FieldCtx& ctx : {f8(), ff_make(101, {0, 1}), ff_make(3, {2, 2, 1})}) {
        CHECK(ctx.dlog(ctx.one()) == 0);
        CHECK(ctx.dlog(ctx.generator) == 1);
        uint64_t limit = std::min<uint64_t>(ctx.q - 1, 10000);
        FFElem g = ctx.one();
        for (uint64_t n = 0; n < limit; ++n) {
            CHECK(ctx.dlog(g) == n);
            g = ctx.mul(g, ctx.generator);
        }
    }
    // homomorphism: dlog(xi^2) = 2 dlog(xi) mod 7
    uint64_t d = f8().dlog(f8().from_index(2));
    CHECK(f8().dlog(f8().mul(f8().from_index(2), f8().from_index(2))) == 2 * d % 7);
    CHECK_THROWS_AS(f8().dlog(f8().zero()), Error);
}

TEST_CASE("characters") {
    CharSpec spec = CharSpec::trivial(2);
    // trivial index: alpha(x) = 1
    for (uint64_t i = 1; i < 8; ++i)
        CHECK(mult_char(f8(), spec, 0, f8().from_index(i)) == std::complex<double>(1.0, 0.0));

    // p = 2: psi = +-1
    for (uint64_t i = 0; i < 8; ++i) {
        auto v = add_char(f8(), spec, f8().from_index(i));
        CHECK(std::abs(std::abs(v.real()) - 1.0) < 1e-15);
        CHECK(v.imag() == 0.0);
    }

    // p = 5, a = 1, x = 1: e^{2 pi i/5}
    FieldCtx f5 = ff_make(5, {0, 1});
    auto v = add_char(f5, spec, f5.one());
    CHECK(v.real() == doctest::Approx(std::cos(2 * M_PI / 5)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(std::sin(2 * M_PI / 5)).epsilon(1e-14));

    // unit modulus
    CharSpec twisted{2, {3, 1}, 2};
    for (uint64_t i = 1; i < 25; ++i) {
        FieldCtx f25 = ff_make(5, {2, 0, 1});
        auto av = mult_char(f25, twisted, 0, f25.from_index(i % 25 ? i % 25 : 1));
        CHECK(std::abs(std::abs(av) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(mult_char(f8(), twisted, 0, f8().zero()), Error);
}

TEST_CASE("character sums vanish for nontrivial characters") {
    for (const FieldCtx& ctx : {ff_make(7, {0, 1}), f8(), ff_make(3, {2, 2, 1})}) {
        CharSpec spec = CharSpec::trivial(2);
        std::complex<double> psi_sum = 0.0;
        for (uint64_t i = 0; i < ctx.q; ++i) psi_sum += add_char(ctx, spec, ctx.from_index(i));
        if (ctx.p == 2)
            CHECK(psi_sum.real() == 0.0);
        else
            CHECK(std::abs(psi_sum) < 1e-9 * (double)ctx.q);

        if (ctx.q > 2) {
            std::complex<double> alpha_sum = 0.0;
            CharSpec nt{2, {1, 0}, 1};
            FFElem g = ctx.one();
            for (uint64_t i = 0; i + 1 < ctx.q; ++i) {
                alpha_sum += mult_char_at_dlog(ctx, 1, i);
                g = ctx.mul(g, ctx.generator);
            }
            CHECK(std::abs(alpha_sum) < 1e-9 * (double)ctx.q);
        }
    }
}

TEST_CASE("packed-bit path is bit-identical to the generic path") {
    FieldCtx ctx = ff_make_auto(2, 10);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
    for (int i = 0; i < 500; ++i) {
        FFElem a = ctx.from_index(dist(rng)), b = ctx.from_index(dist(rng));
        CHECK(ctx.pack2(ctx.mul(a, b)) == ctx.mul2(ctx.pack2(a), ctx.pack2(b)));
        CHECK(ctx.trace2(ctx.pack2(a)) == ctx.trace(a));
        if (!a.is_zero()) CHECK(ctx.pack2(ctx.inv(a)) == ctx.inv2(ctx.pack2(a)));
    }
}

TEST_CASE("contexts are safely shareable across threads") {
    FieldCtx ctx = ff_make_auto(3, 5); // F_243, dlog cache built lazily under contention
    std::vector<std::thread> pool;
    std::vector<int> bad(4, 0);
    for (int w = 0; w < 4; ++w)
        pool.emplace_back([&, w] {
            FFElem g = ctx.one();
            for (uint64_t n = 0; n < ctx.q - 1; ++n) {
                if (ctx.dlog(g) != n) ++bad[w];
                g = ctx.mul(g, ctx.generator);
            }
        });
    for (auto& th : pool) th.join();
    for (int w = 0; w < 4; ++w) CHECK(bad[w] == 0);
}

TEST_CASE("prime factorization utility") {
    CHECK(prime_factors_u64(1) == std::vector<uint64_t>{});
    CHECK(prime_factors_u64(2ull * 2 * 3 * 3 * 5) == std::vector<uint64_t>{2, 3, 5});
    CHECK(prime_factors_u64((1ull << 24) - 1) == std::vector<uint64_t>{3, 5, 7, 13, 17, 241});
    // cofactor beyond the trial-division bound
    CHECK(prime_factors_u64(1000003ull * 1000033ull) ==
          std::vector<uint64_t>{1000003, 1000033});
}
