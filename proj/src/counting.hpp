// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form quantities: exact counts of fixed-rank matrices over GF(q)
// and their exponential-order sandwich, the all-measurements-vanish
// probability for sparse sensing, entropies, measurement thresholds for
// the noiseless/noisy regimes, reliability decay curves, and moment
// bounds for random rank-metric codes. Exact counts use GMP integers;
// bound comparisons work in the log domain (q^{n^2} overflows any fixed
// width long before desk scale ends).

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>

namespace rankmin {

// Number of n x n matrices over GF(q) of rank exactly r:
// prod_{i<r}(q^n - q^i)^2 / prod_{i<r}(q^r - q^i).
mpz_class count_rank_exact(uint32_t n, uint32_t r, uint32_t q);

// Number of n x n matrices of rank at most r.
mpz_class count_rank_atmost(uint32_t n, uint32_t r, uint32_t q);

// Number of r-dimensional subspaces of GF(q)^N (Gaussian binomial).
mpz_class subspace_count(uint32_t n_dim, uint32_t r, uint32_t q);

// q^{(2n-2)r - r^2} <= exact <= 4 q^{2nr - r^2};
// q^{2nr - r^2} <= atmost <= 4 q^{2nr - r^2}. Stated for r >= 1 only.
struct RankCountBounds {
  mpz_class exact_lo, exact_hi, atmost_lo, atmost_hi;
};
RankCountBounds rank_count_bounds(uint32_t n, uint32_t r, uint32_t q);

// log2 of a positive big integer, via mantissa + exponent split.
double log2_mpz(const mpz_class& z);

// Probability that k independent sensing matrices with iid
// delta-sparse entries all measure zero against a fixed pattern of d
// nonzero cells: [1/q + (1 - 1/q)(1 - delta/(1 - 1/q))^d]^k.
double vanish_prob(uint32_t d, double delta, uint32_t q, uint32_t k);

// Reference implementation of the same probability by direct d-fold
// convolution of the sparse single-symbol pmf over the additive group of
// GF(q); agreement with vanish_prob is a tested invariant.
double vanish_prob_convolved(uint32_t d, double delta, uint32_t q, uint32_t k);

// Binary entropy in bits / in base-q digits (endpoints give 0). The
// base-q form divides by log2(q); it is the two-point entropy, not the
// q-ary entropy function with its log(q-1) term.
double entropy2(double p);
double entropyq(double p, double q);

enum class ThresholdKind { Converse, Achievable, Strong };

// Measurement counts (absolute k) for weak/strong recovery at rank ratio
// gamma = r/n: (2 -+ eps) gamma (1 - gamma/2) n^2, and
// (4 + eps) gamma (1 - gamma) n^2 for the strong variant.
double threshold_noiseless(uint32_t n, double gamma, double eps, ThresholdKind kind);

// Normalized measurement rate k/n^2 sufficient under exact-weight noise
// of level sigma. Throws std::domain_error when the formula is infeasible
// at this q (denominator <= 0 or entropy argument > 1).
double threshold_noisy_det(double gamma, double sigma, double q, double eps);

// Converse rate under iid crossover noise: 2 gamma (1 - gamma/2) / (1 - H_q(p)).
double alpha_converse_noisy(double gamma, double p, double q);

// Margin function whose crossing of (2 + eps) gamma (1 - gamma/2) defines
// the achievable measurement scaling under crossover noise:
// alpha [1 - log_q(2) H2(p + gamma/alpha) - 2p(1 - gamma)] + alpha^2 p^2.
double noisy_achievable_margin(double alpha, double p, double gamma, double q);

// Smallest alpha in (gamma/(1-p), 1] whose margin reaches the target;
// 1e-4 grid scan then bisection to 1e-6 (the margin need not be
// monotone). Throws std::domain_error when no alpha <= 1 qualifies.
double critical_alpha(double p, double gamma, double q, double eps);

// Error-probability decay rate of min-rank decoding at rate R and
// normalized decoding radius gamma_t: |(1 - R) - 2 gamma_t(1 - gamma_t/2)|+.
double reliability_decay(double rate, double gamma_t);

// Decay-rate pairs (rank errors / crisscross errors) for the reference
// code families compared against random min-rank codes.
struct ExponentTable {
  double gabidulin_e1, gabidulin_e2;
  double error_trap_e1, error_trap_e2;
  double gab_error_trap_e1, gab_error_trap_e2;
  double random_minrank_e1, random_minrank_e2;
};
ExponentTable error_exponents(double rate, double gamma);

// Gilbert-Varshamov relative rank distance 1 - sqrt(R).
double gv_distance(double rate);

// Sandwich on the expected number of rank-r codewords of a random code
// with k uniform checks: [q^{-k+2rn-r^2-2r}, 4 q^{-k+2rn-r^2}]. r >= 1.
std::pair<double, double> codeword_count_bounds(uint32_t n, uint32_t r, uint32_t q,
                                                uint32_t k);

}  // namespace rankmin
