#include "klt/matfq.hpp"

#include "klt/error.hpp"
#include "klt/matkl.hpp"

#include <doctest.h>

#include <random>

using namespace klt;

TEST_CASE("matrix arithmetic basics") {
    FieldCtx f5 = ff_make_prime(5);
    MatrixFq y = MatrixFq::from_residues(f5, {{0, -1}, {1, -1}});
    CHECK(y.trace_elem() == f5.from_residues({4}));
    CHECK(y.det() == f5.one());
    CHECK(MatrixFq::identity(f5, 3).det() == f5.one());
    CHECK(y.mul(y.inverse()) == MatrixFq::identity(f5, 2));

    FieldCtx f2 = ff_make_prime(2);
    MatrixFq c = companion(f2, fq_poly(f2, {1, 1, 1}));
    // inverse of companion(T^2+T+1) equals its square (y^3 = I)
    CHECK(c.inverse() == c.mul(c));
    CHECK(c.mul(c).mul(c) == MatrixFq::identity(f2, 2));

    MatrixFq sing = MatrixFq::from_residues(f5, {{1, 2}, {2, 4}});
    CHECK_THROWS_AS(sing.inverse(), Error);
}

TEST_CASE("characteristic polynomial") {
    for (uint32_t p : {2u, 5u, 11u}) {
        FieldCtx ctx = ff_make_prime(p);
        MatrixFq y = MatrixFq::from_residues(ctx, {{0, -1}, {1, -1}});
        CHECK(fq_equal(char_poly(y), fq_poly(ctx, {1, 1, 1})));
    }
    FieldCtx f3 = ff_make_prime(3);
    // (T-1)^2 = T^2 + T + 1 over F_3
    CHECK(fq_equal(char_poly(MatrixFq::identity(f3, 2)), fq_poly(f3, {1, 1, 1})));

    // companion round trip over several fields and degrees
    std::mt19937_64 rng(2);
    for (const FieldCtx& ctx : {ff_make_prime(2), ff_make_prime(7), ff_make(2, {1, 1, 1})}) {
        std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
        for (int deg = 1; deg <= 5; ++deg) {
            FqPoly P;
            P.c.resize(deg + 1, ctx.zero());
            for (int i = 0; i < deg; ++i) P.c[i] = ctx.from_index(dist(rng));
            if (P.c[0].is_zero()) P.c[0] = ctx.one();
            P.c[deg] = ctx.one();
            CHECK(fq_equal(char_poly(companion(ctx, P)), P));
        }
    }
    CHECK_THROWS_AS(companion(f3, fq_poly(f3, {0, 1, 1})), Error); // zero constant term
}

TEST_CASE("Cayley-Hamilton on random matrices") {
    std::mt19937_64 rng(17);
    for (const FieldCtx& ctx : {ff_make_prime(2), ff_make_prime(3), ff_make_prime(5),
                                ff_make(2, {1, 1, 1})}) {
        for (int trial = 0; trial < 200; ++trial) {
            int n = 1 + (int)(rng() % 3);
            MatrixFq y(ctx, n);
            std::uniform_int_distribution<uint64_t> dist(0, ctx.q - 1);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) y.at(i, j) = ctx.from_index(dist(rng));
            FqPoly cp = char_poly(y);
            // evaluate cp(y) with Horner
            MatrixFq acc(ctx, n);
            for (size_t i = cp.c.size(); i-- > 0;) {
                acc = acc.mul(y);
                for (int d = 0; d < n; ++d) acc.at(d, d) = ctx.add(acc.at(d, d), cp.c[i]);
            }
            CHECK(acc == MatrixFq(ctx, n));
        }
    }
}

TEST_CASE("conjugacy class data of the named examples") {
    FieldCtx f3 = ff_make_prime(3);
    ConjClassData d = conj_class_data(MatrixFq::identity(f3, 2));
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].d == 1);
    CHECK(d.blocks[0].mu.parts == std::vector<int>{1, 1});

    d = conj_class_data(MatrixFq::from_residues(f3, {{1, 1}, {0, 1}}));
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].mu.parts == std::vector<int>{2});

    FieldCtx f2 = ff_make_prime(2);
    d = conj_class_data(companion(f2, fq_poly(f2, {1, 1, 1})));
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].d == 2);
    CHECK(d.blocks[0].mu.parts == std::vector<int>{1});

    CHECK_THROWS_AS(conj_class_data(MatrixFq(f3, 2)), Error); // singular
}

TEST_CASE("conjugacy data is a class function and balances the dimension") {
    std::mt19937_64 rng(23);
    for (const FieldCtx& ctx : {ff_make_prime(2), ff_make_prime(3), ff_make_prime(5)}) {
        for (int trial = 0; trial < 60; ++trial) {
            int n = 2 + (int)(rng() % 2);
            MatrixFq y = random_gl(ctx, n, rng);
            MatrixFq g = random_gl(ctx, n, rng);
            ConjClassData dy = conj_class_data(y);
            ConjClassData dc = conj_class_data(g.mul(y).mul(g.inverse()));

            long long total = 0;
            for (const auto& b : dy.blocks) total += (long long)b.d * b.mu.size();
            CHECK(total == n);

            REQUIRE(dy.blocks.size() == dc.blocks.size());
            for (size_t i = 0; i < dy.blocks.size(); ++i) {
                CHECK(fq_equal(dy.blocks[i].minpoly, dc.blocks[i].minpoly));
                CHECK(dy.blocks[i].mu == dc.blocks[i].mu);
            }

            // factor multiplicity equals |mu|
            FqPoly cp = char_poly(y);
            for (const auto& fac : fq_factor(ctx, cp)) {
                for (const auto& b : dy.blocks)
                    if (fq_equal(b.minpoly, fac.poly)) CHECK(b.mu.size() == fac.multiplicity);
            }
        }
    }
}

TEST_CASE("higher nilpotency partitions") {
    FieldCtx f2 = ff_make_prime(2);
    // J_2(1) + J_1(1): partition (2,1) for the factor T+1
    MatrixFq y = MatrixFq::from_residues(f2, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
    ConjClassData d = conj_class_data(y);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].mu.parts == std::vector<int>{2, 1});
}
