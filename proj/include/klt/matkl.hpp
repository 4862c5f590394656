#pragma once

#include "klt/klsum.hpp"
#include "klt/matfq.hpp"
#include "klt/symfunc.hpp"

#include <functional>
#include <random>

namespace klt {

struct MatKlResult {
    std::complex<double> value{0.0, 0.0}; // normalized by q^{-(k-1)n^2/2}
    int n = 0;
    uint64_t q = 0;
    int k = 2;
    ConjClassData class_data;
    std::vector<std::complex<double>> per_block; // normalized block contributions
};

/// Normalized matrix Kloosterman sum of the Jordan-type block J_mu(y0),
/// where y0 is regular elliptic with the given irreducible minimal polynomial
/// over ctx: (-1)^{(k-1)n} sum_{lam |- r} Q_lam^mu(q^d)/z_lam prod_j S(d*lam_j)
/// with S the signed normalized classical sum at the embedded root.
std::complex<double> alg1_jordan(const FieldCtx& ctx, const FqPoly& minpoly, const Partition& mu,
                                 const CharSpec& spec, const SumOptions& opts = {});

/// Normalized matrix Kloosterman sum of an arbitrary invertible matrix via
/// conjugacy class data and the product of block values (cross-term
/// normalization factors telescope).
MatKlResult alg2_general(const MatrixFq& y, const CharSpec& spec, const SumOptions& opts = {});

/// Definitional oracle: the literal sum over factorizations g_1...g_k = y
/// in GL_n(F_q) of prod alpha_i(det g_i) psi(Tr sum g_i), normalized.
/// Enumeration is a row-major odometer over matrix entries.
std::complex<double> brute_force_matkl(const MatrixFq& y, const CharSpec& spec,
                                       uint64_t oracle_budget = 10000000);

unsigned __int128 gl_order(uint64_t q, int n);

/// Visit every invertible n x n matrix over ctx in odometer order.
void for_each_gl(const FieldCtx& ctx, int n, const std::function<void(const MatrixFq&)>& fn);

/// Seeded random invertible matrix by rejection.
MatrixFq random_gl(const FieldCtx& ctx, int n, std::mt19937_64& rng);

} // namespace klt
