// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "counting.hpp"
#include "errors.hpp"

namespace rankmin {

EnsembleSpec EnsembleSpec::make_sparse(uint32_t q, double delta) {
  double cap = 1.0 - 1.0 / static_cast<double>(q);
  if (delta <= 0.0 || delta > cap + 1e-12)
    throw std::invalid_argument("sparsity must lie in (0, (q-1)/q]");
  return {q, false, delta};
}

NoiseSpec NoiseSpec::det_weight(double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("noise level must be positive");
  NoiseSpec s;
  s.kind = Kind::DetWeight;
  s.sigma = sigma;
  return s;
}

NoiseSpec NoiseSpec::iid_crossover(double p) {
  if (p <= 0.0 || p >= 0.5) throw std::invalid_argument("crossover must lie in (0, 1/2)");
  NoiseSpec s;
  s.kind = Kind::IidCrossover;
  s.p = p;
  return s;
}

std::string NoiseSpec::name() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::DetWeight: return "det";
    case Kind::IidCrossover: return "iid";
  }
  return "none";
}

namespace {

uint16_t sample_entry(const EnsembleSpec& spec, uint32_t q, Rng& rng) {
  if (spec.uniform) return static_cast<uint16_t>(rng.below(q));
  if (rng.unit() < spec.delta) return static_cast<uint16_t>(1 + rng.below(q - 1));
  return 0;
}

Mat sample_full_rank_factor(const FieldPtr& f, uint32_t n, uint32_t r, Rng& rng) {
  constexpr int kMaxAttempts = 10000;
  const uint32_t q = f->q();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Mat u(f, n, r);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < r; ++j) u.set(i, j, rng.below(q));
    if (u.rank() == r) return u;
  }
  throw LimitError("full-rank rejection sampling exceeded 10^4 attempts");
}

}  // namespace

std::vector<Mat> sample_sensing(const FieldPtr& f, uint32_t n, uint32_t k,
                                const EnsembleSpec& spec, Rng& rng) {
  if (n < 1 || k < 1) throw std::invalid_argument("need n >= 1 and k >= 1");
  if (f->q() != spec.q) throw std::invalid_argument("ensemble/field order mismatch");
  std::vector<Mat> hs;
  hs.reserve(k);
  for (uint32_t a = 0; a < k; ++a) {
    Mat h(f, n, n);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) h.set(i, j, sample_entry(spec, spec.q, rng));
    hs.push_back(std::move(h));
  }
  return hs;
}

Mat sample_low_rank(const FieldPtr& f, uint32_t n, uint32_t r, LowRankMode mode,
                    Rng& rng) {
  if (r > n) throw std::invalid_argument("rank exceeds dimension");
  uint32_t target = r;
  if (mode == LowRankMode::AtMost && r > 0) {
    // rank l with probability (count of rank-l) / (count of rank<=r)
    mpz_class total = count_rank_atmost(n, r, f->q());
    double u = rng.unit(), acc = 0.0;
    target = r;
    for (uint32_t l = 0; l <= r; ++l) {
      mpq_class frac(count_rank_exact(n, l, f->q()), total);
      acc += frac.get_d();
      if (u < acc) { target = l; break; }
    }
  }
  if (target == 0) return Mat(f, n, n);
  Mat u = sample_full_rank_factor(f, n, target, rng);
  Mat v = sample_full_rank_factor(f, n, target, rng);
  return u.matmul(v.transpose());
}

ElemVec sample_noise(uint32_t k, uint32_t n, const NoiseSpec& spec, const FieldPtr& f,
                     Rng& rng) {
  ElemVec w(k, 0);
  const uint32_t q = f->q();
  switch (spec.kind) {
    case NoiseSpec::Kind::None:
      break;
    case NoiseSpec::Kind::DetWeight: {
      uint32_t weight = static_cast<uint32_t>(std::floor(spec.sigma * n * n));
      if (weight > k) throw std::invalid_argument("noise weight exceeds measurement count");
      // partial Fisher-Yates gives a uniform size-weight support
      std::vector<uint32_t> idx(k);
      for (uint32_t i = 0; i < k; ++i) idx[i] = i;
      for (uint32_t i = 0; i < weight; ++i) {
        uint32_t j = i + rng.below(k - i);
        std::swap(idx[i], idx[j]);
        w[idx[i]] = static_cast<uint16_t>(1 + rng.below(q - 1));
      }
      break;
    }
    case NoiseSpec::Kind::IidCrossover:
      for (uint32_t i = 0; i < k; ++i)
        if (rng.unit() < spec.p) w[i] = static_cast<uint16_t>(1 + rng.below(q - 1));
      break;
  }
  return w;
}

ElemVec measure(const Mat& x, const std::vector<Mat>& hs, const ElemVec* w,
                size_t y_len) {
  size_t k = std::min(y_len, hs.size());
  if (w && w->size() < k) throw std::invalid_argument("noise vector too short");
  ElemVec y(k);
  const Field& f = *x.field();
  for (size_t a = 0; a < k; ++a) {
    uint32_t v = mat_inner(hs[a], x);
    if (w) v = f.add(v, (*w)[a]);
    y[a] = static_cast<uint16_t>(v);
  }
  return y;
}

}  // namespace rankmin
