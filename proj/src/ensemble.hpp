// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Random generation under the measurement model: sensing matrices with
// iid uniform or delta-sparse entries, low-rank unknowns uniform over
// their rank class, exact-weight or iid-crossover noise, and the linear
// measurement map itself. All sampling is driven by explicit Rng streams.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mat.hpp"
#include "rng.hpp"

namespace rankmin {

// delta is the probability an entry is nonzero, spread uniformly over the
// q-1 nonzero symbols; delta = (q-1)/q recovers the uniform law exactly.
struct EnsembleSpec {
  uint32_t q = 2;
  bool uniform = true;
  double delta = 0.0;  // meaningful when !uniform

  static EnsembleSpec make_uniform(uint32_t q) { return {q, true, 0.0}; }
  static EnsembleSpec make_sparse(uint32_t q, double delta);
  double effective_delta() const {
    return uniform ? 1.0 - 1.0 / static_cast<double>(q) : delta;
  }
  std::string name() const { return uniform ? "uniform" : "sparse"; }
};

struct NoiseSpec {
  enum class Kind { None, DetWeight, IidCrossover };
  Kind kind = Kind::None;
  double sigma = 0.0;  // DetWeight: support size floor(sigma * n^2)
  double p = 0.0;      // IidCrossover: per-symbol corruption probability

  static NoiseSpec none() { return {}; }
  static NoiseSpec det_weight(double sigma);
  static NoiseSpec iid_crossover(double p);
  std::string name() const;
};

// k matrices of shape n x n with iid entries from the ensemble pmf.
std::vector<Mat> sample_sensing(const FieldPtr& f, uint32_t n, uint32_t k,
                                const EnsembleSpec& spec, Rng& rng);

enum class LowRankMode { Exact, AtMost };

// Exact mode: uniform over rank-exactly-r matrices, built as U V^T from
// rejection-sampled full-rank n x r factors (every rank-r matrix has the
// same number of factorizations, so the law is uniform). AtMost mode first
// picks the rank with probability proportional to the exact rank counts.
Mat sample_low_rank(const FieldPtr& f, uint32_t n, uint32_t r, LowRankMode mode,
                    Rng& rng);

// Noise vector of length k; DetWeight places floor(sigma*n^2) uniform
// nonzero symbols on a uniform support, IidCrossover corrupts each entry
// independently with probability p.
ElemVec sample_noise(uint32_t k, uint32_t n, const NoiseSpec& spec, const FieldPtr& f,
                     Rng& rng);

// y_a = <H_a, X> (+ w_a). Only the first y_len entries of hs are used when
// y_len < hs.size() (nested measurement prefixes share one sensing draw).
ElemVec measure(const Mat& x, const std::vector<Mat>& hs, const ElemVec* w = nullptr,
                size_t y_len = SIZE_MAX);

}  // namespace rankmin
