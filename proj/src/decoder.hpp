// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Min-rank decoding. Three entry points with one outcome type:
//  - minrank_oracle: brute force over all q^{n^2} candidates;
//  - minrank_reduced: rank-by-rank search that enumerates one basis per
//    column space (reduced column echelon forms) and solves the remaining
//    linear system in the right factor;
//  - minrank_noisy: exact minimizer of rank + lambda * noise weight, by
//    increasing noise weight with objective pruning.
// All searches are sequential and deterministic; ambiguity is detected by
// counting minimizers at the achieved objective with early exit at two.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mat.hpp"

namespace rankmin {

enum class DecodeStatus { Unique, Ambiguous, Infeasible };

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::Infeasible;
  std::optional<Mat> x_star;      // set when Unique
  std::optional<ElemVec> w_star;  // set when Unique (noisy search)
  size_t achieved_rank = 0;
  size_t achieved_noise_weight = 0;
  size_t minimizers_found = 0;  // saturates at 2
  uint64_t solutions_examined = 0;
};

// Full enumeration; candidate count q^{rows*cols} is capped at 2^26.
// r_cap restricts the candidate set to rank <= r_cap.
DecodeOutcome minrank_oracle(const ElemVec& y, const std::vector<Mat>& hs,
                             std::optional<size_t> r_cap = std::nullopt);

// The k x (n^2 + 1) stack of [vectorized H_a | y_a] rows. A homogeneous
// solution [x; x2] with x2 != 0 maps back to a solution of the original
// inhomogeneous constraints as -inv(x2) * X1; x2 = 0 solutions are
// codewords of the sensing stack. Callers apply that recovery rule.
Mat coset_augment(const ElemVec& y, const std::vector<Mat>& hs);

// One full-rank n_dim x r representative per r-dimensional column space,
// in a fixed order: pivot-row subsets lexicographically, free entries in
// odometer order. The representative is the unique member of its class in
// reduced column echelon form; the class count is the Gaussian binomial.
class BasisClassIter {
 public:
  BasisClassIter(FieldPtr f, size_t n_dim, size_t r);
  // Writes the next representative (shape n_dim x r); false when done.
  bool next(Mat& out);

 private:
  bool advance_subset();
  void reset_free_positions();

  FieldPtr f_;
  size_t n_, r_;
  std::vector<size_t> piv_;
  std::vector<std::pair<size_t, size_t>> free_pos_;  // (row, col)
  std::vector<uint16_t> vals_;
  bool done_ = false;
  bool emitted_any_in_subset_ = false;
};

// Rank-by-rank search; identical classification to minrank_oracle on every
// consistent instance. r_cap makes the search report Infeasible instead of
// exploring ranks beyond the cap.
DecodeOutcome minrank_reduced(const ElemVec& y, const std::vector<Mat>& hs,
                              std::optional<size_t> r_cap = std::nullopt);

// Exact minimizer of rank(X) + lambda * ||w||_0 subject to the measurements,
// over noise weights 0..max_noise_weight. Returns Infeasible when the weight
// cap cannot certify global optimality of the best pair found (candidates
// with weight cap+1 could still tie or beat it); raising the cap to k always
// certifies.
DecodeOutcome minrank_noisy(const ElemVec& y, const std::vector<Mat>& hs,
                            double lambda, size_t max_noise_weight = 3);

// Joint brute force over all (X, w = y - measurements(X)); the reference
// for minrank_noisy.
DecodeOutcome minrank_noisy_oracle(const ElemVec& y, const std::vector<Mat>& hs,
                                   double lambda);

}  // namespace rankmin
