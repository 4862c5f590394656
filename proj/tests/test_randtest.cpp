#include "klt/randtest.hpp"

#include "klt/error.hpp"
#include "klt/json_io.hpp"
#include "klt/matkl.hpp"

#include <doctest.h>

#include <random>

using namespace klt;

namespace {

std::vector<uint8_t> bytes_for_residues(const std::vector<uint32_t>& residues) {
    return std::vector<uint8_t>(residues.begin(), residues.end()); // residues < p < 212: accepted
}

} // namespace

TEST_CASE("encoding") {
    SequenceInput seq;
    seq.p = 5;
    seq.min_samples = 1;

    seq.bytes = bytes_for_residues({0, 1});
    auto mats = encode(seq);
    REQUIRE(mats.size() == 1);
    FieldCtx f5 = ff_make_prime(5);
    CHECK(mats[0] == MatrixFq::from_residues(f5, {{0, -1}, {1, 0}}));
    CHECK(fq_equal(char_poly(mats[0]), fq_poly(f5, {1, 0, 1}))); // T^2 + 1

    // (t, dt) = (4, 1) gives the standard experiment matrix
    seq.bytes = bytes_for_residues({4, 1});
    mats = encode(seq);
    CHECK(mats[0] == MatrixFq::from_residues(f5, {{0, -1}, {1, -1}}));

    // dt = 0 pairs are skipped
    seq.bytes = bytes_for_residues({3, 0, 2, 1});
    auto pairs = encode_pairs(seq);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<uint32_t, uint32_t>{2, 1});

    // rejection sampling: byte 255 at p = 53 is dropped entirely
    SequenceInput seq53{{255, 10, 20}, 53, 1};
    auto p53 = encode_pairs(seq53);
    REQUIRE(p53.size() == 1);
    CHECK(p53[0] == std::pair<uint32_t, uint32_t>{10, 20});

    CHECK_THROWS_AS(encode(SequenceInput{{1, 2}, 7, 1}), Error);  // 7 = 1 mod 3
    CHECK_THROWS_AS(encode(SequenceInput{{}, 53, 100}), Error);   // insufficient data
}

TEST_CASE("rejection sampling removes modular bias") {
    std::mt19937_64 rng(5);
    SequenceInput seq;
    seq.p = 53;
    seq.bytes.resize(60000);
    for (auto& b : seq.bytes) b = (uint8_t)(rng() & 0xff);
    auto pairs = encode_pairs(seq);
    std::vector<long long> counts(53, 0);
    long long n = 0;
    for (auto [t, dt] : pairs) {
        ++counts[t];
        ++counts[dt];
        n += 2;
    }
    double tol = 4.0 / std::sqrt((double)n * 53);
    for (uint32_t r = 1; r < 53; ++r)
        CHECK(std::abs((double)counts[r] / n - 1.0 / 53) < tol);
}

TEST_CASE("reference bit tests") {
    // alternating bits: frequency passes, runs fails
    std::vector<uint8_t> alt(100, 0x55);
    ReferenceResult r = reference_tests(alt);
    CHECK(r.freq_pvalue > 0.05);
    CHECK(r.runs_pvalue < 1e-6);

    // all ones: frequency fails
    std::vector<uint8_t> ones(100, 0xff);
    r = reference_tests(ones);
    CHECK(r.freq_pvalue < 1e-6);

    // seeded uniform: both pass at roughly the nominal rate
    std::mt19937_64 rng(3);
    int fails_f = 0, fails_r = 0, trials = 200;
    for (int t = 0; t < trials; ++t) {
        std::vector<uint8_t> buf(500);
        for (auto& b : buf) b = (uint8_t)(rng() & 0xff);
        ReferenceResult rr = reference_tests(buf);
        fails_f += rr.freq_pvalue < 0.05;
        fails_r += rr.runs_pvalue < 0.05;
    }
    CHECK(fails_f < trials / 10);
    CHECK(fails_r < trials / 10);

    CHECK_THROWS_AS(reference_tests(std::vector<uint8_t>(10, 0)), Error);
}

TEST_CASE("engine agrees with the general algorithm at p = 11") {
    MatklEngine eng(11);
    FieldCtx f11 = ff_make_prime(11);
    for (uint32_t t = 0; t < 11; ++t)
        for (uint32_t dt = 1; dt < 11; ++dt) {
            MatrixFq y = MatrixFq::from_residues(f11, {{0, -(long long)dt}, {1, (long long)t}});
            auto full = alg2_general(y, CharSpec::trivial(2));
            CHECK(eng.value(t, dt) == doctest::Approx(full.value.real()).epsilon(1e-10));
            ConjClassData data = conj_class_data(y);
            MatClass cls = eng.classify(t, dt);
            if (data.blocks.size() == 1 && data.blocks[0].d == 2)
                CHECK(cls == MatClass::elliptic);
            else if (data.blocks.size() == 2)
                CHECK(cls == MatClass::split);
            else
                CHECK(cls == MatClass::repeated);
        }

    double fe, fs, fr;
    eng.expected_fractions(fe, fs, fr);
    CHECK(fe == doctest::Approx(0.5)); // (p^2-p)/2 of p(p-1)
    CHECK(fr == doctest::Approx(1.0 / 11));
    CHECK(fe + fs + fr == doctest::Approx(1.0));
}

TEST_CASE("degenerate streams fail, uniform streams mostly pass") {
    MatklEngine eng(53);

    SequenceInput constant{make_generator_bytes(GeneratorKind::constant, 0, 5000), 53, 100};
    TestReport rep = run_test(constant, 0.05, &eng);
    CHECK_FALSE(rep.pass);
    CHECK(rep.trace_gof.ks_stat >= 0.5);
    CHECK(rep.n_elliptic == rep.n_total);

    SequenceInput uniform{make_generator_bytes(GeneratorKind::random, 11, 6000), 53, 100};
    rep = run_test(uniform, 0.05, &eng);
    CHECK(rep.n_total == rep.n_elliptic + rep.n_split + rep.n_scalar);

    // observed class fractions sit within 4 sigma of the exact ones
    double fe, fs, fr;
    eng.expected_fractions(fe, fs, fr);
    double sigma = std::sqrt(fe * (1 - fe) / rep.n_total);
    CHECK(std::abs((double)rep.n_elliptic / rep.n_total - fe) < 4 * sigma);
}

TEST_CASE("determinism: identical bytes give identical reports") {
    auto bytes = make_generator_bytes(GeneratorKind::random, 99, 6000);
    TestReport a = run_test(SequenceInput{bytes, 53, 100}, 0.05);
    TestReport b = run_test(SequenceInput{bytes, 53, 100}, 0.05);
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("the byte-level low-multiplier LCG is detected") {
    // x <- 3x + 1 mod 256, bytes emitted directly
    MatklEngine eng(53);
    int fails = 0, trials = 100;
    for (int t = 0; t < trials; ++t) {
        std::vector<uint8_t> bytes(6000);
        uint8_t x = (uint8_t)(2 * t + 1);
        for (auto& b : bytes) {
            x = (uint8_t)(3 * x + 1);
            b = x;
        }
        try {
            fails += !run_test(SequenceInput{bytes, 53, 100}, 0.05, &eng).pass;
        } catch (const Error&) {
            ++fails;
        }
    }
    CHECK(fails > trials / 2);
}

TEST_CASE("canned generators have the right shape") {
    auto c = make_generator_bytes(GeneratorKind::constant, 1, 16);
    CHECK(c == std::vector<uint8_t>(16, 0x01));
    auto a = make_generator_bytes(GeneratorKind::alternating, 1, 16);
    CHECK(a == std::vector<uint8_t>(16, 0x55));
    auto l1 = make_generator_bytes(GeneratorKind::lcg, 4, 64);
    auto l2 = make_generator_bytes(GeneratorKind::lcg, 4, 64);
    CHECK(l1 == l2); // seeded determinism
    // every lcg byte reduces into the residue walk x <- 3x + 1 mod 53
    for (size_t i = 0; i + 1 < l1.size(); ++i)
        CHECK((3 * (l1[i] % 53) + 1) % 53 == l1[i + 1] % 53);
}

TEST_CASE("quick calibration sanity (the acceptance suite runs the full 200)") {
    DetectionRates rates = detection_benchmark(40, 0.05, 53, 1000, 5);
    REQUIRE(rates.rows.size() == 4);
    CHECK(rates.rows[0].generator == "random");
    CHECK(rates.rows[0].matrix_rate <= 0.25);
    CHECK(rates.rows[1].matrix_rate == 1.0); // constant
    CHECK(rates.rows[2].matrix_rate == 1.0); // alternating
    CHECK(rates.rows[3].matrix_rate > 0.5);  // lcg
    CHECK(rates.rows[3].matrix_rate > rates.rows[3].runs_rate);
}
