/* Copyright 2026 The rankmin Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the rankmin library: finite-field arithmetic, matrices
 * over GF(q), min-rank decoding, analytic thresholds, and seeded Monte
 * Carlo campaigns emitting CSV.
 *
 * Conventions:
 *  - Every fallible call returns rm_status; RM_OK is 0. On failure,
 *    rm_last_error() returns a message for the calling thread.
 *  - Objects are opaque handles created into out-parameters and released
 *    with their _free function. Strings returned through char** are owned
 *    by the caller and released with rm_str_free.
 *  - All campaign functions are deterministic in their arguments,
 *    including the worker count.
 */

#ifndef RANKMIN_H_
#define RANKMIN_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define RM_VERSION "1.0.0"

typedef enum rm_status {
  RM_OK = 0,
  RM_EINVAL = 1,   /* invalid argument or malformed input */
  RM_EDOMAIN = 2,  /* value outside the mathematical domain */
  RM_EIO = 3,      /* file or format error */
  RM_ELIMIT = 4,   /* a work cap was exceeded */
  RM_EINTERNAL = 5 /* unexpected failure */
} rm_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* rm_last_error(void);

void rm_str_free(char* s);

/* ---- fields ------------------------------------------------------- */

typedef struct rm_field rm_field;

/* GF(p^m) with the default (lexicographically smallest) modulus. */
rm_status rm_field_create(uint32_t p, uint32_t m, rm_field** out);
/* modulus lists c_0..c_m of a monic irreducible of degree m over GF(p). */
rm_status rm_field_create_with_modulus(uint32_t p, uint32_t m,
                                       const uint32_t* modulus, size_t len,
                                       rm_field** out);
rm_status rm_field_from_order(uint32_t q, rm_field** out);
void rm_field_free(rm_field* f);

uint32_t rm_field_order(const rm_field* f);
rm_status rm_field_add(const rm_field* f, uint32_t a, uint32_t b, uint32_t* out);
rm_status rm_field_sub(const rm_field* f, uint32_t a, uint32_t b, uint32_t* out);
rm_status rm_field_mul(const rm_field* f, uint32_t a, uint32_t b, uint32_t* out);
rm_status rm_field_inv(const rm_field* f, uint32_t a, uint32_t* out);
rm_status rm_field_pow(const rm_field* f, uint32_t a, uint64_t e, uint32_t* out);

/* ---- matrices ----------------------------------------------------- */

typedef struct rm_mat rm_mat;

rm_status rm_mat_create(const rm_field* f, size_t rows, size_t cols,
                        rm_mat** out);
void rm_mat_free(rm_mat* m);

size_t rm_mat_rows(const rm_mat* m);
size_t rm_mat_cols(const rm_mat* m);
/* Order of the field the matrix lives over; 0 on a null handle. */
uint32_t rm_mat_field_order(const rm_mat* m);
rm_status rm_mat_set(rm_mat* m, size_t i, size_t j, uint32_t v);
rm_status rm_mat_get(const rm_mat* m, size_t i, size_t j, uint32_t* out);
rm_status rm_mat_rank(const rm_mat* m, size_t* out);
rm_status rm_mat_equal(const rm_mat* a, const rm_mat* b, int* out);

/* Text format: header "rows cols q", then one line of entries per row.
 * Files may hold several concatenated blocks; the array form loads all of
 * them. Arrays from rm_mats_read_file are released with rm_mats_free. */
rm_status rm_mat_read_file(const char* path, rm_mat** out);
rm_status rm_mat_write_file(const rm_mat* m, const char* path);
rm_status rm_mat_to_text(const rm_mat* m, char** out); /* rm_str_free */
rm_status rm_mats_read_file(const char* path, rm_mat*** out, size_t* count);
void rm_mats_free(rm_mat** ms, size_t count);

/* ---- decoding ------------------------------------------------------ */

typedef enum rm_decode_status {
  RM_DECODE_UNIQUE = 0,
  RM_DECODE_AMBIGUOUS = 1,
  RM_DECODE_INFEASIBLE = 2
} rm_decode_status;

typedef struct rm_decode_result rm_decode_result;

/* hs is an array of k matrix handles over one field; y has k entries.
 * Finds a minimum-rank matrix consistent with <H_a, X> = y_a. */
rm_status rm_minrank_reduced(const rm_mat* const* hs, size_t k,
                             const uint32_t* y, rm_decode_result** out);
/* Brute force over all candidates; capped at 2^26 of them. */
rm_status rm_minrank_oracle(const rm_mat* const* hs, size_t k,
                            const uint32_t* y, rm_decode_result** out);
/* Minimizes rank(X) + lambda * ||w||_0 over X and noise w = y - <H, X>,
 * scanning noise weights up to max_noise_weight. Returns a result with
 * status RM_DECODE_INFEASIBLE when the cap cannot certify optimality. */
rm_status rm_minrank_noisy(const rm_mat* const* hs, size_t k,
                           const uint32_t* y, double lambda,
                           size_t max_noise_weight, rm_decode_result** out);

void rm_decode_result_free(rm_decode_result* r);
rm_decode_status rm_decode_get_status(const rm_decode_result* r);
size_t rm_decode_get_rank(const rm_decode_result* r);
size_t rm_decode_get_noise_weight(const rm_decode_result* r);
/* Count of optimum solutions found, saturating at 2. */
size_t rm_decode_get_minimizers(const rm_decode_result* r);
uint64_t rm_decode_get_examined(const rm_decode_result* r);
/* Copy of the recovered matrix; RM_EINVAL when the status is not unique. */
rm_status rm_decode_get_solution(const rm_decode_result* r, rm_mat** out);
/* Recovered noise vector (unique noisy decodes); buf holds len entries. */
rm_status rm_decode_get_noise(const rm_decode_result* r, uint32_t* buf,
                              size_t len);

/* ---- counting and thresholds -------------------------------------- */

/* Exact count of n x n matrices over GF(q) of rank exactly (or at most) r,
 * as a decimal string. */
rm_status rm_count_rank_exact_str(uint32_t n, uint32_t r, uint32_t q,
                                  char** out);
rm_status rm_count_rank_atmost_str(uint32_t n, uint32_t r, uint32_t q,
                                   char** out);
rm_status rm_count_rank_exact_log2(uint32_t n, uint32_t r, uint32_t q,
                                   double* out);

/* Probability that a sparse(delta) sensing stack of k matrices vanishes on
 * a fixed matrix with d nonzero entries; _convolved is the slow oracle. */
rm_status rm_vanish_prob(uint32_t d, double delta, uint32_t q, uint32_t k,
                         double* out);
rm_status rm_vanish_prob_convolved(uint32_t d, double delta, uint32_t q,
                                   uint32_t k, double* out);

typedef enum rm_threshold_kind {
  RM_THRESHOLD_CONVERSE = 0,
  RM_THRESHOLD_ACHIEVABLE = 1,
  RM_THRESHOLD_STRONG = 2
} rm_threshold_kind;

/* Measurement-count thresholds (absolute k at block length n). */
rm_status rm_threshold_noiseless(uint32_t n, double gamma, double eps,
                                 rm_threshold_kind kind, double* out);
/* Rate threshold k/n^2 for deterministic noise of relative weight sigma. */
rm_status rm_threshold_noisy_det(double gamma, double sigma, double q,
                                 double eps, double* out);
/* Converse and achievable measurement-rate limits under iid noise. */
rm_status rm_alpha_converse_noisy(double gamma, double p, double q,
                                  double* out);
rm_status rm_critical_alpha(double p, double gamma, double q, double eps,
                            double* out);

/* ---- campaigns (CSV out) ------------------------------------------ */

/* ensemble: uniform when uniform != 0, else sparse with the given delta. */
rm_status rm_run_weak_sweep_csv(size_t n, uint32_t q, size_t r, int uniform,
                                double delta, const size_t* k_grid,
                                size_t k_count, size_t trials, uint64_t seed,
                                unsigned jobs, char** csv);

/* Uniform and sparse(delta) curves on shared seeds; optionally a third
 * curve at delta_low (pass has_delta_low = 0 to skip). */
rm_status rm_run_sparse_compare_csv(size_t n, uint32_t q, size_t r,
                                    double delta, int has_delta_low,
                                    double delta_low, const size_t* k_grid,
                                    size_t k_count, size_t trials,
                                    uint64_t seed, unsigned jobs, char** csv);

typedef enum rm_noise_kind {
  RM_NOISE_NONE = 0,
  RM_NOISE_DET_WEIGHT = 1,
  RM_NOISE_IID = 2
} rm_noise_kind;

/* sigma_or_p is the support fraction (det) or crossover probability (iid).
 * overlays_csv (optional, may be NULL) receives label,value lines with the
 * analytic threshold markers for the configured noise. */
rm_status rm_run_noisy_sweep_csv(size_t n, uint32_t q, size_t r,
                                 rm_noise_kind noise, double sigma_or_p,
                                 double lambda, size_t max_noise_weight,
                                 const size_t* k_grid, size_t k_count,
                                 size_t trials, uint64_t seed, unsigned jobs,
                                 char** csv, char** overlays_csv);

rm_status rm_run_distance_csv(size_t n, uint32_t q, size_t k, int uniform,
                              double delta, size_t trials, uint64_t seed,
                              unsigned jobs, char** csv);

rm_status rm_run_reliability_csv(size_t n, size_t r, uint32_t q, size_t k,
                                 size_t trials, uint64_t seed, unsigned jobs,
                                 char** csv);

rm_status rm_thresholds_csv(size_t n, uint32_t q, double gamma, double sigma,
                            double p, double eps, char** csv);

/* Cross-check micro-suite; *ok becomes nonzero when everything passes and
 * log_out receives one line per check. */
rm_status rm_selftest(char** log_out, int* ok);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RANKMIN_H_ */
