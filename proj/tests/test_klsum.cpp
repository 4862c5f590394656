#include "klt/klsum.hpp"

#include "klt/error.hpp"
#include "klt/lfunc.hpp"
#include "klt/symfunc.hpp"

#include <doctest.h>

using namespace klt;

TEST_CASE("plain sum anchors") {
    FieldCtx f2 = ff_make_prime(2);
    KlValue v = kl_plain(f2, CharSpec::trivial(2), f2.one());
    CHECK(v.value.real() == 1.0); // single term psi(1+1) = 1
    CHECK(*v.exact_num == 1);

    FieldCtx f4 = ff_make(2, {1, 1, 1});
    v = kl_plain(f4, CharSpec::trivial(2), f4.from_index(2)); // xi = omega
    CHECK(*v.exact_num == -1);

    FieldCtx f8 = ff_make(2, {1, 1, 0, 1});
    KlValue k1 = kl_normalize(kl_plain(f8, CharSpec::trivial(2), f8.from_index(2)));
    CHECK(k1.value.real() == doctest::Approx(-0.3535533906).epsilon(1e-9));

    CHECK_THROWS_AS(kl_plain(f8, CharSpec::trivial(2), f8.zero()), Error);
    SumOptions tiny{4, 1};
    CHECK_THROWS_AS(kl_plain(f8, CharSpec::trivial(2), f8.one(), tiny), Error);
}

TEST_CASE("signed values and normalization bookkeeping") {
    FieldCtx f4 = ff_make(2, {1, 1, 1});
    FFElem omega = f4.from_index(2);
    KlValue plain = kl_plain(f4, CharSpec::trivial(2), omega);
    KlValue sgn = kl_signed(f4, CharSpec::trivial(2), omega);
    CHECK(sgn.value.real() == -plain.value.real());
    CHECK(sgn.value.real() == 1.0);

    // k = 3: signed = +plain
    KlValue s3 = kl_signed(f4, CharSpec::trivial(3), omega);
    KlValue p3 = kl_plain(f4, CharSpec::trivial(3), omega);
    CHECK(s3.value == p3.value);

    KlValue nrm = kl_normalize(plain);
    CHECK(nrm.value.real() == doctest::Approx(-0.5)); // divide by 2
    CHECK_THROWS_AS(kl_normalize(nrm), Error);        // already normalized

    // k = 3 over F_{q^d}: divide by q^d
    KlValue nrm3 = kl_normalize(p3);
    CHECK(nrm3.value.real() == doctest::Approx(p3.value.real() / 4.0));
}

TEST_CASE("Table 1 tower with exact dyadic values") {
    FieldCtx f2 = ff_make_prime(2);
    FqPoly P = fq_poly(f2, {1, 1, 0, 1});
    auto K = kl_tower_at_root(f2, P, 4, CharSpec::trivial(2));
    CHECK(K[0].value.real() == doctest::Approx(-0.3535533906).epsilon(1e-9));
    CHECK(K[1].value.real() == 1.875); // exact dyadic
    CHECK(*K[1].exact_num == 15);
    CHECK(K[2].value.real() == doctest::Approx(1.016465998).epsilon(1e-8));
    CHECK(K[3].value.real() == -1.515625); // exact dyadic
    CHECK(*K[3].exact_num == -97);
    for (const auto& v : K) CHECK(v.convention == KlConvention::plain);
}

TEST_CASE("tower sequence r = 1 is consistent with the direct sum") {
    FieldCtx f4 = ff_make(2, {1, 1, 1});
    FFElem omega = f4.from_index(2);
    auto seq = kl_sequence(f4, CharSpec::trivial(2), omega, 1);
    KlValue direct = kl_normalize(kl_plain(f4, CharSpec::trivial(2), omega));
    CHECK(seq[0].value.real() == direct.value.real());
}

TEST_CASE("p = 2 sums are exact integers; Galois invariance") {
    FieldCtx f8 = ff_make(2, {1, 1, 0, 1});
    CharSpec spec = CharSpec::trivial(2);
    for (uint64_t i = 1; i < 8; ++i) {
        FFElem xi = f8.from_index(i);
        KlValue v = kl_plain(f8, spec, xi);
        REQUIRE(v.exact_num.has_value());
        // Frobenius conjugate gives the identical integer
        KlValue w = kl_plain(f8, spec, f8.pow(xi, 2));
        CHECK(*v.exact_num == *w.exact_num);
    }

    FieldCtx f9 = ff_make(3, {2, 2, 1});
    for (uint64_t i = 1; i < 9; ++i) {
        FFElem xi = f9.from_index(i);
        auto v = kl_plain(f9, spec, xi);
        auto w = kl_plain(f9, spec, f9.pow(xi, 3));
        CHECK(std::abs(v.value - w.value) < 1e-9);
    }
}

TEST_CASE("Deligne bound and reality for k = 2 trivial characters") {
    for (const FieldCtx& ctx : {ff_make_prime(7), ff_make(3, {2, 2, 1}), ff_make(2, {1, 1, 0, 1})}) {
        for (uint64_t i = 1; i < ctx.q; ++i) {
            FFElem xi = ctx.from_index(i);
            if (xi.is_zero()) continue;
            KlValue v = kl_normalize(kl_plain(ctx, CharSpec::trivial(2), xi));
            CHECK(std::abs(v.value) <= 2.0 + 1e-6);
            CHECK(std::abs(v.value.imag()) < 1e-9);
        }
    }
    // rank 3: bound 3
    FieldCtx f5 = ff_make_prime(5);
    for (uint64_t i = 1; i < 5; ++i) {
        KlValue v = kl_normalize(kl_plain(f5, CharSpec::trivial(3), f5.from_index(i)));
        CHECK(std::abs(v.value) <= 3.0 + 1e-6);
    }
}

TEST_CASE("eigenvalue tower matches direct summation") {
    // base F_2 / T^2+T+1 (the F_4 data)
    FieldCtx f4 = ff_make(2, {1, 1, 1});
    FFElem omega = f4.from_index(2);
    CharSpec spec = CharSpec::trivial(2);
    auto seq = kl_sequence(f4, spec, omega, 4);
    double k1_signed = -seq[0].value.real();
    CHECK(kl_tower_eigen(k1_signed, 1) == doctest::Approx(k1_signed).epsilon(1e-12));
    for (int m = 1; m <= 4; ++m) {
        double eig = kl_tower_eigen(k1_signed, m);
        double direct = -seq[m - 1].value.real(); // signed = -plain for k = 2
        CHECK(eig == doctest::Approx(direct).epsilon(1e-9));
        CHECK(std::abs(eig) <= 2.0);
    }

    // base F_3 at the generator
    FieldCtx f3 = ff_make_prime(3);
    auto seq3 = kl_sequence(f3, spec, f3.generator, 4);
    double k1s3 = -seq3[0].value.real();
    for (int m = 1; m <= 4; ++m)
        CHECK(kl_tower_eigen(k1s3, m) == doctest::Approx(-seq3[m - 1].value.real()).epsilon(1e-9));

    CHECK_THROWS_AS(kl_tower_eigen(2.5, 3), Error);
}

TEST_CASE("Newton consistency of the tower") {
    FieldCtx f3 = ff_make_prime(3);
    auto seq = kl_sequence(f3, CharSpec::trivial(2), f3.generator, 4);
    double k1_signed = -seq[0].value.real();
    double theta = std::acos(std::clamp(k1_signed / 2.0, -1.0, 1.0));
    std::vector<std::complex<double>> w{std::polar(1.0, theta), std::polar(1.0, -theta)};
    for (int m = 1; m <= 4; ++m) {
        double pm = power_sum_eval(Partition({m}), w).real();
        CHECK(kl_tower_eigen(k1_signed, m) == doctest::Approx(pm).epsilon(1e-10));
    }
}

TEST_CASE("worker splitting is reproducible and consistent") {
    FieldCtx f13 = ff_make_prime(13);
    FieldCtx f212 = ff_make_auto(2, 12);
    CharSpec spec = CharSpec::trivial(2);
    for (const FieldCtx& ctx : {f13, f212}) {
        FFElem xi = ctx.generator;
        SumOptions w1{1ull << 26, 1}, w3{1ull << 26, 3}, w4{1ull << 26, 4};
        KlValue a = kl_plain(ctx, spec, xi, w1);
        KlValue b = kl_plain(ctx, spec, xi, w3);
        KlValue c = kl_plain(ctx, spec, xi, w4);
        CHECK(std::abs(a.value - b.value) < 1e-10);
        CHECK(std::abs(a.value - c.value) < 1e-10);
        KlValue b2 = kl_plain(ctx, spec, xi, w3);
        CHECK(b.value.real() == b2.value.real()); // bit-identical for fixed worker count
        CHECK(b.value.imag() == b2.value.imag());
    }
    // twisted characters across worker counts
    FieldCtx f49 = ff_make_auto(7, 2);
    CharSpec twisted{2, {5, 3}, 2};
    KlValue t1 = kl_plain(f49, twisted, f49.generator, SumOptions{1ull << 26, 1});
    KlValue t4 = kl_plain(f49, twisted, f49.generator, SumOptions{1ull << 26, 4});
    CHECK(std::abs(t1.value - t4.value) < 1e-10);
}
