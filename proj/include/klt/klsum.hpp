#pragma once

#include "klt/ffield.hpp"
#include "klt/fqpoly.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace klt {

enum class KlConvention { plain, signed_trace };

/// A (hyper-)Kloosterman sum value with its bookkeeping. For p = 2 with
/// trivial multiplicative characters the sum is an exact integer; exact_num
/// carries it and normalized values are exact dyadic rationals
/// exact_num / 2^{pow2_half/2}.
struct KlValue {
    std::complex<double> value{0.0, 0.0};
    uint64_t field_size = 0; // q^d of the summation field
    uint64_t q = 0;          // base field size
    int d = 1;               // extension degree over the base, field_size = q^d
    int k = 2;
    bool normalized = false;
    KlConvention convention = KlConvention::plain;
    std::optional<long long> exact_num;
    int pow2_half = 0;
};

struct SumOptions {
    uint64_t term_budget = 1ull << 26;
    int workers = 1;
    uint64_t factor_seed = 0; // equal-degree splitting seed
};

/// Plain rank-k Kloosterman sum over the context field at xi != 0:
/// sum over t_1..t_k with product xi of alpha_1(t_1)...alpha_k(t_k) psi(sum t_i),
/// without the (-1)^{k-1} prefactor. Deterministic enumeration; data-parallel
/// over the t_1 range with fixed-order combination. Accumulation is
/// compensated; the absolute rounding budget is ~1e-9 * sqrt(#terms), and
/// the p = 2 trivial-character path is exact integer arithmetic.
KlValue kl_plain(const FieldCtx& ctx, const CharSpec& spec, const FFElem& xi,
                 const SumOptions& opts = {});

/// (-1)^{k-1} times the plain sum (Frobenius-trace convention).
KlValue kl_signed(const FieldCtx& ctx, const CharSpec& spec, const FFElem& xi,
                  const SumOptions& opts = {});

/// Divide an unnormalized value by q^{d(k-1)/2}.
KlValue kl_normalize(const KlValue& v);

/// K_1..K_rmax: normalized plain sums over the tower F_{q^{dr}} at the
/// embedded xi, with characters lifted through norm and trace.
std::vector<KlValue> kl_sequence(const FieldCtx& base, const CharSpec& spec, const FFElem& xi,
                                 int rmax, const SumOptions& opts = {});

/// k = 2, trivial multiplicative characters: solves z^2 - K1 z + 1 for the
/// unit eigenvalues and returns the signed normalized K_m = 2 cos(m*theta).
double kl_tower_eigen(double k1_signed_normalized, int m);

} // namespace klt
