#pragma once

#include "klt/matfq.hpp"
#include "klt/stats.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace klt {

/// Byte stream plus encoding parameters. Bytes are consumed two residues at
/// a time by rejection sampling mod p; each pair (t, dt) with dt != 0 yields
/// the companion matrix of T^2 - t*T + dt.
struct SequenceInput {
    std::vector<uint8_t> bytes;
    uint32_t p = 53;
    size_t min_samples = 100;
};

enum class MatClass { elliptic, split, repeated };

struct TestReport {
    long long n_total = 0;
    long long n_elliptic = 0;
    long long n_split = 0;
    long long n_scalar = 0; // repeated-eigenvalue (non-semisimple) class
    double expected_elliptic = 0, expected_split = 0, expected_scalar = 0;
    GofReport trace_gof;
    GofReport angle_gof;
    double freq_pvalue = 1.0;
    double runs_pvalue = 1.0;
    double alpha = 0.05;
    bool pass = true; // verdict: FAIL when a Bonferroni-corrected GoF p-value is below alpha/2
};

/// Rejection-sampled (t, dt) pairs; dt == 0 pairs are skipped.
std::vector<std::pair<uint32_t, uint32_t>> encode_pairs(const SequenceInput& seq);

/// The encoded companion matrices. errc::insufficient_data when fewer than
/// min_samples matrices result.
std::vector<MatrixFq> encode(const SequenceInput& seq);

/// Cached evaluator for normalized 2x2 matrix Kloosterman values over F_p
/// (trivial characters): classifies (t, dt) and computes the value through
/// the block formulas with per-point memoization. Matches alg2_general.
class MatklEngine {
public:
    explicit MatklEngine(uint32_t p);

    MatClass classify(uint32_t t, uint32_t dt);
    double value(uint32_t t, uint32_t dt);
    /// Exact class proportions among all (t, dt), dt != 0, at this p.
    void expected_fractions(double& elliptic, double& split, double& repeated);
    uint32_t p() const { return p_; }

private:
    uint32_t p_;
    FieldCtx base_, ext_;
    Embedding emb_;
    std::vector<std::complex<double>> wp_;   // additive character table
    std::vector<double> plain1_;             // normalized plain F_p sums by residue
    std::map<uint64_t, double> plain2_;      // normalized plain F_{p^2} sums by element index
    std::map<uint64_t, double> value_memo_;  // matrix values by (t, dt)
    std::map<uint64_t, std::vector<uint32_t>> roots_; // quadratic roots memo

    double plain2_at(const FFElem& xi);
    const std::vector<uint32_t>& quad_roots(uint32_t t, uint32_t dt);
};

/// Full spectral randomness test: encode, classify, evaluate, compare the
/// regular elliptic subsample against the Sato-Tate references, and attach
/// the classical reference statistics. errc::too_few_samples when fewer than
/// min_samples elliptic values are available.
TestReport run_test(const SequenceInput& seq, double alpha, MatklEngine* engine = nullptr);

struct ReferenceResult {
    double freq_pvalue;
    double runs_pvalue;
};

/// Simplified monobit and runs statistics on the bit stream (MSB first),
/// with two-sided normal p-values.
ReferenceResult reference_tests(const std::vector<uint8_t>& bytes);

enum class GeneratorKind { random, constant, alternating, lcg };
const char* generator_name(GeneratorKind kind);
std::vector<uint8_t> make_generator_bytes(GeneratorKind kind, uint64_t seed, size_t len,
                                          uint32_t p = 53);

struct DetectionRow {
    std::string generator;
    double matrix_rate = 0;
    double freq_rate = 0;
    double runs_rate = 0;
};

struct DetectionRates {
    int trials = 0;
    double alpha = 0.05;
    uint32_t p = 53;
    std::vector<DetectionRow> rows;
};

/// Seeded detection-rate table over the canned generators.
DetectionRates detection_benchmark(int trials, double alpha, uint32_t p = 53,
                                   size_t samples_per_trial = 2000, uint64_t seed = 1);

} // namespace klt
