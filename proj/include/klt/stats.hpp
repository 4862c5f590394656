#pragma once

#include "klt/klsum.hpp"

#include <vector>

namespace klt {

enum class RefDensity { sato_tate_angle, semicircle_trace };

/// f_ST(theta) = (2/pi) sin^2(theta) on [0, pi];
/// f_trace(x) = sqrt(4 - x^2)/(2 pi) on [-2, 2].
double density_ref(RefDensity kind, double x);
/// Closed-form reference CDFs for the same densities.
double cdf_ref(RefDensity kind, double x);

/// theta = arccos(x/2); clamps |x| <= 2 within 1e-9 slack, errors beyond.
double angle_transform(double x);

struct Histogram {
    std::vector<double> edges;
    std::vector<long long> counts;
    long long total = 0;
    RefDensity domain = RefDensity::semicircle_trace;
};

Histogram make_histogram(const std::vector<double>& sample, RefDensity domain, int bins = 20);

struct GofReport {
    double ks_stat = 0.0;
    double chi2 = 0.0;
    double pvalue_ks = 1.0;
    long long n = 0;
};

/// One-sample Kolmogorov-Smirnov against the exact reference CDF plus a
/// Pearson chi^2 over max(5, N/20) equal-probability bins.
GofReport gof(std::vector<double> sample, RefDensity kind);

double ks_pvalue_asymptotic(double d, long long n);

/// The `count` smallest primes congruent to 2 mod 3.
std::vector<uint32_t> primes_2_mod_3(int count);

/// Evaluation matrix descriptor: companion of T^2 - t*T + dt reduced mod p.
struct SweepMatrix {
    long long t = -1;
    long long dt = 1;
};

/// Experiment 1: fixed matrix, varying prime. Real normalized values via the
/// general algorithm, one per prime. Every prime must be 2 mod 3.
std::vector<double> sweep_primes(const std::vector<uint32_t>& primes, SweepMatrix y = {},
                                 const SumOptions& opts = {});

enum class VerticalMode { scale, char_index };

/// Experiment 2: fixed prime, p-1 values obtained by scaling the additive
/// character (mode scale, the default) or by twisting slot 1 through the
/// multiplicative characters j = 1..p-1 (mode char_index).
std::vector<double> sweep_vertical(uint32_t p, VerticalMode mode = VerticalMode::scale,
                                   SweepMatrix y = {});

/// Experiment 3: signed normalized tower values 2 cos(m theta), m = 1..lmax,
/// over the base F_2 / T^2+T+1 data.
std::vector<double> sweep_tower(int lmax);

} // namespace klt
