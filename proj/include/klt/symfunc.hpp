#pragma once

#include "klt/bigint.hpp"
#include "klt/partition.hpp"

#include <complex>
#include <string>
#include <vector>

namespace klt {

/// Symmetric group character chi^rho at cycle type lam, by recursive
/// border-strip removal (memoized). Requires |rho| == |lam|.
long long sn_character(const Partition& rho, const Partition& lam);

/// Kostka-Foulkes polynomial K_{rho,mu}(t) = sum over SSYT(rho, mu) of
/// t^charge. Zero when rho does not dominate mu; K_{rho,rho} = 1.
IntPoly kostka_foulkes(const Partition& rho, const Partition& mu);

/// Classical Kostka number through an independent counting recursion
/// (horizontal-strip peeling, no tableau construction).
long long kostka_number(const Partition& rho, const Partition& mu);

/// X_lam^mu(t) = sum_rho chi^rho_lam K_{rho,mu}(t).
IntPoly hl_transition_X(const Partition& lam, const Partition& mu);

/// Green polynomial Q_lam^mu(t) = t^{n(mu)} X_lam^mu(1/t). Exact integer
/// coefficients, degree <= n(mu); memoized process-wide. |lam| <= 12.
IntPoly green_polynomial(const Partition& lam, const Partition& mu);

/// Independent evaluation/interpolation oracle for X_lam^mu(t): evaluates
/// Hall-Littlewood P polynomials by the S_r symmetrization formula at exact
/// rational points, solves the transition system, and interpolates in t.
/// No character or charge machinery is involved. r <= 6.
IntPoly hl_oracle_X(const Partition& lam, const Partition& mu);

/// Exact Hall-Littlewood evaluation P_mu(x_1..x_n; t) at integer points
/// (exposed for tests).
Rational hl_eval_exact(const Partition& mu, const std::vector<long long>& xs, long long t);

std::complex<double> power_sum_eval(const Partition& lam,
                                    const std::vector<std::complex<double>>& vals);

/// h_n(vals) via the Newton recurrence n h_n = sum p_i h_{n-i}.
std::complex<double> complete_h_eval(int n, const std::vector<std::complex<double>>& vals);
/// Same quantity through sum_{lam |- n} p_lam / z_lam (cross-check route).
std::complex<double> complete_h_via_power_sums(int n,
                                               const std::vector<std::complex<double>>& vals);

/// Compute the full table for rank r and write it as versioned JSON
/// (single writer, atomic replace).
void green_table_save(int r, const std::string& path);
/// Load a table written by green_table_save into the process memo.
/// Returns the table rank.
int green_table_load(const std::string& path);

} // namespace klt
