// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Rank-metric code analytics for codes cut out by trace-inner-product
// constraints: enumeration, rank spectrum, minimum rank distance, rate,
// injectivity-style recovery checks, and probability-bound utilities.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mat.hpp"

namespace rankmin {

// The code {X : <H_a, X> = 0 for all a}, a linear space containing 0 with
// |C| = q^{rows*cols - stacked_dim}. Enumeration results are cached; the
// cache is not thread safe, so share CodeSpec instances per worker only.
struct CodeSpec {
  FieldPtr f;
  size_t n = 0;  // codewords are n x n
  std::vector<Mat> parity_checks;

  mutable std::optional<std::vector<Mat>> cached_codewords;
};

CodeSpec make_code(FieldPtr f, size_t n, std::vector<Mat> parity_checks);

// All codewords, via a nullspace basis of the stacked constraint system and
// span enumeration. Caps the code size at 2^20 elements.
const std::vector<Mat>& enumerate_codewords(const CodeSpec& code);

// Codeword count per rank, index r = 0..n.
std::vector<uint64_t> rank_spectrum(const CodeSpec& code);

// |{C in code : rank(C) = r}|; always 1 at r = 0.
uint64_t ncr_count(const CodeSpec& code, size_t r);

// Minimum rank over nonzero codewords; the trivial code {0} has none.
size_t min_rank_distance(const CodeSpec& code);

// (n^2 - k) / n^2.
double code_rate(size_t n, size_t k);

// True iff no nonzero codeword of the code cut out by hs has rank <= 2r,
// i.e. the measurement map separates every pair of rank-<=r matrices.
// The first form allows an empty check list (the code is all of F^{n x n}).
bool strong_recovery_check(const FieldPtr& f, size_t n,
                           const std::vector<Mat>& hs, size_t r);
bool strong_recovery_check(const std::vector<Mat>& hs, size_t r);

// Lower bound on P(union of events) from singleton and pairwise
// probabilities: sum_m p_m^2 / sum_m' pair[m][m']. pair must be symmetric
// with diagonal equal to event_probs; rows of zero mass with p_m > 0 are
// rejected.
double de_caen_bound(const std::vector<double>& event_probs,
                     const std::vector<std::vector<double>>& pair_probs);

struct IndependenceReport {
  bool exhaustive = false;
  // Exhaustive mode: every tested probability equals its target as an exact
  // rational (count * q^k == total, count * q^{2k} == total).
  bool exact = false;
  uint64_t samples = 0;  // sensing tuples inspected (total or Monte Carlo)
  uint64_t pairs_tested = 0;
  double expected_single = 0.0;  // q^{-k}
  double expected_pair = 0.0;    // q^{-2k}
  double max_dev_single = 0.0;   // worst |empirical - expected|
  double max_dev_pair = 0.0;
};

// Checks that for nonzero differences Z, Z' with linearly independent
// vectorizations, the vanish events {<H_a, Z> = 0 for all a} have
// probability q^{-k} each and q^{-2k} jointly under uniform sensing.
// Exhaustive over all q^{k n^2} sensing tuples when that count is <= 2^20;
// Monte Carlo otherwise (mc_pairs sampled pairs, mc_trials shared samples).
IndependenceReport pairwise_independence_check(const FieldPtr& f, size_t n,
                                               size_t k,
                                               size_t mc_pairs = 16,
                                               uint64_t mc_trials = 20000,
                                               uint64_t seed = 1);

}  // namespace rankmin
