#pragma once

#include "klt/klsum.hpp"
#include "klt/symfunc.hpp"

#include <complex>
#include <vector>

namespace klt {

/// Coefficients C_0..C_rmax of L(T)^{(-1)^k} together with the base data.
struct LPoly {
    std::vector<std::complex<double>> coeffs;
    int k = 2;
    uint64_t base_field_size = 0;
    std::vector<uint32_t> xi; // coefficient vector of the evaluation point
};

/// C_r = sum over multiplicity vectors with sum i*s_i = r of
/// prod K_i^{s_i} (-1)^{k sum s_i} / prod(s_i! i^{s_i}), enumerated by
/// partitions. K holds the plain normalized K_1..K_rmax.
LPoly newton_coeffs(const std::vector<std::complex<double>>& K, int k);

/// Inverse roots of the degree-k truncation: the normalized Frobenius
/// eigenvalues. Throws DegreeCheckFailed when some |C_r| > 1e-4 for r > k.
std::vector<std::complex<double>> lpoly_roots(const LPoly& L);

/// Generating-function identity check for a regular elliptic base point:
/// compares (-1)^{(k-1)dn} Kl~(J_(n)(y)) against h_n(w~_1..w~_k) for
/// n = 0..nmax and returns the maximum absolute deviation.
double genfun_check(const FieldCtx& ctx, const FqPoly& minpoly, int nmax, const CharSpec& spec,
                    const SumOptions& opts = {});

/// Plain normalized K_1..K_rmax at the root of an irreducible polynomial
/// over ctx (the Table-1 style tower inputs).
std::vector<KlValue> kl_tower_at_root(const FieldCtx& ctx, const FqPoly& minpoly, int rmax,
                                      const CharSpec& spec, const SumOptions& opts = {});

} // namespace klt
