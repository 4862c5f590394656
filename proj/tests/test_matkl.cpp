#include "klt/matkl.hpp"

#include "klt/error.hpp"

#include <doctest.h>

#include <random>

using namespace klt;

TEST_CASE("Jordan-type block anchors over F_2") {
    FieldCtx f2 = ff_make_prime(2);
    CharSpec spec = CharSpec::trivial(2);
    FqPoly linear = fq_poly(f2, {1, 1}); // T + 1, root 1

    // unipotent J_2(1): -0.5
    CHECK(alg1_jordan(f2, linear, Partition({2}), spec).real() == doctest::Approx(-0.5));
    // regular elliptic companion of T^2+T+1: +0.5
    FqPoly quad = fq_poly(f2, {1, 1, 1});
    CHECK(alg1_jordan(f2, quad, Partition({1}), spec).real() == doctest::Approx(0.5));

    CHECK_THROWS_AS(alg1_jordan(f2, fq_poly(f2, {1, 0, 1}), Partition({1}), spec), Error);
}

TEST_CASE("brute force normalization anchor at n = 1") {
    FieldCtx f2 = ff_make_prime(2);
    MatrixFq one = MatrixFq::identity(f2, 1);
    auto v = brute_force_matkl(one, CharSpec::trivial(2));
    CHECK(v.real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("oracle equivalence: exhaustive small groups") {
    CharSpec trivial = CharSpec::trivial(2);

    FieldCtx f2 = ff_make_prime(2);
    int count = 0;
    for_each_gl(f2, 2, [&](const MatrixFq& y) {
        ++count;
        CHECK(std::abs(brute_force_matkl(y, trivial) - alg2_general(y, trivial).value) < 1e-9);
    });
    CHECK(count == 6);

    FieldCtx f3 = ff_make_prime(3);
    CharSpec twisted{2, {1, 0}, 2};
    count = 0;
    for_each_gl(f3, 2, [&](const MatrixFq& y) {
        ++count;
        CHECK(std::abs(brute_force_matkl(y, trivial) - alg2_general(y, trivial).value) < 1e-9);
        CHECK(std::abs(brute_force_matkl(y, twisted) - alg2_general(y, twisted).value) < 1e-9);
    });
    CHECK(count == 48);
}

TEST_CASE("oracle equivalence: sampled GL_2(F_5) and GL_2(F_4)") {
    std::mt19937_64 rng(99);
    FieldCtx f5 = ff_make_prime(5);
    CharSpec twisted{2, {1, 0}, 2};
    for (int i = 0; i < 20; ++i) {
        MatrixFq y = random_gl(f5, 2, rng);
        CHECK(std::abs(brute_force_matkl(y, CharSpec::trivial(2)) -
                       alg2_general(y, CharSpec::trivial(2)).value) < 1e-9);
        CHECK(std::abs(brute_force_matkl(y, twisted) - alg2_general(y, twisted).value) < 1e-9);
    }
    FieldCtx f4 = ff_make(2, {1, 1, 1});
    CharSpec t4{2, {1, 2}, 1};
    for (int i = 0; i < 20; ++i) {
        MatrixFq y = random_gl(f4, 2, rng);
        CHECK(std::abs(brute_force_matkl(y, t4) - alg2_general(y, t4).value) < 1e-9);
    }
}

TEST_CASE("oracle equivalence at rank 3") {
    CharSpec k3 = CharSpec::trivial(3);
    FieldCtx f2 = ff_make_prime(2);
    for_each_gl(f2, 2, [&](const MatrixFq& y) {
        CHECK(std::abs(brute_force_matkl(y, k3) - alg2_general(y, k3).value) < 1e-9);
    });
    FieldCtx f5 = ff_make_prime(5);
    CharSpec k3t{3, {1, 3, 0}, 2};
    for_each_gl(f5, 1, [&](const MatrixFq& y) {
        CHECK(std::abs(brute_force_matkl(y, k3t) - alg2_general(y, k3t).value) < 1e-9);
    });
}

TEST_CASE("direct-sum multiplicativity on block diagonals") {
    std::mt19937_64 rng(7);
    CharSpec spec = CharSpec::trivial(2);
    for (uint32_t p : {3u, 5u}) {
        FieldCtx ctx = ff_make_prime(p);
        for (int trial = 0; trial < 30; ++trial) {
            // two 1x1 blocks with distinct eigenvalues
            uint64_t a = 1 + rng() % (p - 1);
            uint64_t b = 1 + rng() % (p - 1);
            if (a == b) b = b % (p - 1) + 1;
            MatrixFq y(ctx, 2);
            y.at(0, 0) = ctx.from_index(a);
            y.at(1, 1) = ctx.from_index(b);
            auto whole = alg2_general(y, spec).value;
            MatrixFq ba(ctx, 1), bb(ctx, 1);
            ba.at(0, 0) = ctx.from_index(a);
            bb.at(0, 0) = ctx.from_index(b);
            auto prod = alg2_general(ba, spec).value * alg2_general(bb, spec).value;
            CHECK(std::abs(whole - prod) < 1e-9);
            // cross-check against the definitional sum
            CHECK(std::abs(whole - brute_force_matkl(y, spec)) < 1e-9);
        }
    }
}

TEST_CASE("class function property") {
    std::mt19937_64 rng(12);
    CharSpec spec{2, {1, 0}, 1};
    FieldCtx f5 = ff_make_prime(5);
    for (int i = 0; i < 20; ++i) {
        MatrixFq y = random_gl(f5, 2, rng);
        MatrixFq g = random_gl(f5, 2, rng);
        auto a = alg2_general(y, spec).value;
        auto b = alg2_general(g.mul(y).mul(g.inverse()), spec).value;
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("regular blocks are bounded independently of q") {
    // mu = (r): |value| = |h_r(w~)| <= r + 1 for k = 2
    CharSpec spec = CharSpec::trivial(2);
    for (uint32_t q : {2u, 3u, 5u, 7u}) {
        FieldCtx ctx = ff_make_prime(q);
        FqPoly linear;
        linear.c = {ctx.neg(ctx.generator), ctx.one()};
        for (int r = 1; r <= 4; ++r) {
            auto v = alg1_jordan(ctx, linear, Partition({r}), spec);
            CHECK(std::abs(v) <= r + 1 + 1e-6);
        }
    }
}

TEST_CASE("scalar blocks grow like q^{r(r-1)/2}") {
    CharSpec spec = CharSpec::trivial(2);
    for (uint32_t q : {3u, 5u, 7u}) {
        FieldCtx ctx = ff_make_prime(q);
        FqPoly linear;
        linear.c = {ctx.neg(ctx.one()), ctx.one()}; // eigenvalue 1
        for (int r = 2; r <= 3; ++r) {
            Partition ones(std::vector<int>(r, 1));
            double v = std::abs(alg1_jordan(ctx, linear, ones, spec));
            double scale = std::pow((double)q, r * (r - 1) / 2.0);
            double slack = (double)partitions(r).size() * (r + 1);
            CHECK(v <= scale * slack);
            CHECK(v >= scale / slack / 8.0);
        }
    }
}

TEST_CASE("block normalization exponents telescope") {
    // 2 * [sum_j C(n_j,2) + sum_{i<j} n_i n_j + sum_j n_j/2 * 1] == n^2, so
    // the product of per-block normalized values needs no cross-term factor.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int s = 1 + (int)(rng() % 4);
        long long n = 0, twice_lhs = 0;
        std::vector<long long> sizes(s);
        for (auto& v : sizes) {
            v = 1 + (long long)(rng() % 5);
            n += v;
        }
        for (int j = 0; j < s; ++j) {
            twice_lhs += sizes[j] * (sizes[j] - 1); // 2*C(n_j,2)
            twice_lhs += sizes[j];                  // 2*(n_j/2)
            for (int i = 0; i < j; ++i) twice_lhs += 2 * sizes[i] * sizes[j];
        }
        CHECK(twice_lhs == n * n);
    }
}

TEST_CASE("budget enforcement in the oracle") {
    FieldCtx f5 = ff_make_prime(5);
    MatrixFq y = MatrixFq::identity(f5, 2);
    CHECK_THROWS_AS(brute_force_matkl(y, CharSpec::trivial(2), 10), Error);
    MatrixFq sing(f5, 2);
    CHECK_THROWS_AS(brute_force_matkl(sing, CharSpec::trivial(2)), Error);
}
