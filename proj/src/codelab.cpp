// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "codelab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "rng.hpp"

namespace rankmin {

namespace {
constexpr uint64_t kEnumerationCap = uint64_t{1} << 20;
}

CodeSpec make_code(FieldPtr f, size_t n, std::vector<Mat> parity_checks) {
  if (n == 0) throw std::invalid_argument("code dimension must be positive");
  for (const Mat& h : parity_checks) {
    if (h.rows() != n || h.cols() != n)
      throw std::invalid_argument("parity check shape mismatch");
    if (!h.field()->same(*f))
      throw std::invalid_argument("parity check field mismatch");
  }
  CodeSpec code;
  code.f = std::move(f);
  code.n = n;
  code.parity_checks = std::move(parity_checks);
  return code;
}

const std::vector<Mat>& enumerate_codewords(const CodeSpec& code) {
  if (code.cached_codewords) return *code.cached_codewords;
  const FieldPtr& f = code.f;
  const size_t n = code.n, dim = n * n;
  const uint32_t q = f->q();

  // Nullspace basis of the stacked constraint system.
  std::vector<ElemVec> basis;
  if (code.parity_checks.empty()) {
    for (size_t i = 0; i < dim; ++i) {
      ElemVec b(dim, 0);
      b[i] = 1;
      basis.push_back(std::move(b));
    }
  } else {
    Mat stacked = stack_vectorized(code.parity_checks);
    auto sol = solve_affine(stacked, ElemVec(code.parity_checks.size(), 0));
    basis = std::move(sol->nullspace);  // homogeneous: always consistent
  }

  const size_t d = basis.size();
  if (d * std::log2(double(q)) > 20.0 + 1e-9)
    throw LimitError("codeword enumeration exceeds 2^20 elements");
  uint64_t total = 1;
  for (size_t i = 0; i < d; ++i) total *= q;
  if (total > kEnumerationCap)
    throw LimitError("codeword enumeration exceeds 2^20 elements");

  std::vector<Mat> words;
  words.reserve(total);
  // Span enumeration with running partial sums per digit; digit d-1 moves
  // fastest so each step updates one suffix.
  std::vector<uint16_t> coef(d, 0);
  std::vector<ElemVec> partial(d + 1, ElemVec(dim, 0));
  auto refresh_from = [&](size_t level) {
    for (size_t j = level; j < d; ++j) {
      const ElemVec& prev = partial[j];
      ElemVec& cur = partial[j + 1];
      if (coef[j] == 0) {
        cur = prev;
      } else {
        for (size_t t = 0; t < dim; ++t)
          cur[t] = static_cast<uint16_t>(
              f->add(prev[t], f->mul(coef[j], basis[j][t])));
      }
    }
  };
  refresh_from(0);
  for (uint64_t idx = 0;; ++idx) {
    words.push_back(Mat::unvectorize(f, partial[d], n, n));
    // odometer increment
    size_t j = d;
    bool advanced = false;
    while (j-- > 0) {
      if (++coef[j] < q) {
        advanced = true;
        refresh_from(j);
        break;
      }
      coef[j] = 0;
    }
    if (!advanced) break;
  }
  code.cached_codewords = std::move(words);
  return *code.cached_codewords;
}

std::vector<uint64_t> rank_spectrum(const CodeSpec& code) {
  std::vector<uint64_t> counts(code.n + 1, 0);
  for (const Mat& w : enumerate_codewords(code)) ++counts[w.rank()];
  return counts;
}

uint64_t ncr_count(const CodeSpec& code, size_t r) {
  if (r > code.n) return 0;
  return rank_spectrum(code)[r];
}

size_t min_rank_distance(const CodeSpec& code) {
  auto spectrum = rank_spectrum(code);
  for (size_t r = 1; r <= code.n; ++r)
    if (spectrum[r] > 0) return r;
  throw std::domain_error("trivial code has no minimum rank distance");
}

double code_rate(size_t n, size_t k) {
  if (k > n * n) throw std::invalid_argument("more checks than matrix entries");
  return 1.0 - double(k) / double(n * n);
}

bool strong_recovery_check(const FieldPtr& f, size_t n,
                           const std::vector<Mat>& hs, size_t r) {
  CodeSpec code = make_code(f, n, hs);
  auto spectrum = rank_spectrum(code);
  const size_t top = std::min(code.n, 2 * r);
  for (size_t t = 1; t <= top; ++t)
    if (spectrum[t] > 0) return false;
  return true;
}

bool strong_recovery_check(const std::vector<Mat>& hs, size_t r) {
  if (hs.empty()) throw std::invalid_argument("no parity checks");
  const size_t n = hs.front().rows();
  if (hs.front().cols() != n)
    throw std::invalid_argument("strong recovery needs square matrices");
  return strong_recovery_check(hs.front().field(), n, hs, r);
}

double de_caen_bound(const std::vector<double>& event_probs,
                     const std::vector<std::vector<double>>& pair_probs) {
  const size_t m = event_probs.size();
  if (pair_probs.size() != m)
    throw std::invalid_argument("pair matrix size mismatch");
  constexpr double kTol = 1e-12;
  for (size_t i = 0; i < m; ++i) {
    if (pair_probs[i].size() != m)
      throw std::invalid_argument("pair matrix size mismatch");
    if (event_probs[i] < -kTol || event_probs[i] > 1.0 + kTol)
      throw std::invalid_argument("event probability out of [0,1]");
    if (std::fabs(pair_probs[i][i] - event_probs[i]) > kTol)
      throw std::invalid_argument("pair matrix diagonal must match events");
    for (size_t j = 0; j < m; ++j) {
      if (pair_probs[i][j] < -kTol || pair_probs[i][j] > 1.0 + kTol)
        throw std::invalid_argument("pair probability out of [0,1]");
      if (std::fabs(pair_probs[i][j] - pair_probs[j][i]) > kTol)
        throw std::invalid_argument("pair matrix must be symmetric");
    }
  }
  double bound = 0.0;
  for (size_t i = 0; i < m; ++i) {
    if (event_probs[i] <= 0.0) continue;
    double denom = 0.0;
    for (size_t j = 0; j < m; ++j) denom += pair_probs[i][j];
    if (denom <= 0.0)
      throw std::invalid_argument("positive event with zero pair mass");
    bound += event_probs[i] * event_probs[i] / denom;
  }
  return bound;
}

namespace {

// vect(Z) over all nonzero Z, paired only when linearly independent
// (dependent differences generate the same vanish event).
bool vec_independent(const Field& f, const ElemVec& a, const ElemVec& b) {
  // both nonzero; dependent iff b == c*a for some scalar c
  size_t lead = a.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) { lead = i; break; }
  if (lead == a.size()) return true;  // a == 0 never happens here
  if (b[lead] == 0) return true;      // c would be 0, but b != 0
  uint32_t c = f.mul(b[lead], f.inv(a[lead]));
  for (size_t i = 0; i < a.size(); ++i)
    if (b[i] != f.mul(c, a[i])) return true;
  return false;
}

uint32_t dot(const Field& f, const ElemVec& a, const ElemVec& b) {
  uint32_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace

IndependenceReport pairwise_independence_check(const FieldPtr& f, size_t n,
                                               size_t k, size_t mc_pairs,
                                               uint64_t mc_trials,
                                               uint64_t seed) {
  if (n == 0 || k == 0) throw std::invalid_argument("need n >= 1 and k >= 1");
  const uint32_t q = f->q();
  const size_t dim = n * n;
  IndependenceReport rep;
  rep.expected_single = std::pow(double(q), -double(k));
  rep.expected_pair = rep.expected_single * rep.expected_single;

  const double log_tuples = double(k) * dim * std::log2(double(q));
  if (log_tuples <= 20.0 + 1e-9) {
    rep.exhaustive = true;
    uint64_t total = 1;
    for (size_t i = 0; i < k * dim; ++i) total *= q;
    rep.samples = total;

    // All nonzero vectorized differences.
    std::vector<ElemVec> zs;
    {
      ElemVec z(dim, 0);
      for (;;) {
        size_t i = 0;
        while (i < dim && ++z[i] == q) z[i++] = 0;
        if (i == dim) break;
        zs.push_back(z);
      }
    }
    uint64_t qk = 1, q2k = 1;
    for (size_t i = 0; i < k; ++i) qk *= q;
    q2k = qk * qk;

    std::vector<uint64_t> singles(zs.size(), 0);
    // Pair counts only for independent pairs; iterate tuples once.
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < zs.size(); ++i)
      for (size_t j = i + 1; j < zs.size(); ++j)
        if (vec_independent(*f, zs[i], zs[j])) pairs.emplace_back(i, j);
    std::vector<uint64_t> joint(pairs.size(), 0);

    std::vector<ElemVec> tuple(k, ElemVec(dim, 0));
    std::vector<uint8_t> vanish(zs.size());
    for (uint64_t t = 0;; ++t) {
      for (size_t zi = 0; zi < zs.size(); ++zi) {
        bool all = true;
        for (size_t a = 0; a < k && all; ++a)
          all = dot(*f, tuple[a], zs[zi]) == 0;
        vanish[zi] = all;
        if (all) ++singles[zi];
      }
      for (size_t pi = 0; pi < pairs.size(); ++pi)
        if (vanish[pairs[pi].first] && vanish[pairs[pi].second]) ++joint[pi];
      // advance the k*dim odometer
      size_t a = 0, i = 0;
      bool advanced = false;
      for (a = 0; a < k && !advanced; ++a)
        for (i = 0; i < dim; ++i) {
          if (++tuple[a][i] < q) { advanced = true; break; }
          tuple[a][i] = 0;
        }
      if (!advanced) break;
    }

    rep.pairs_tested = pairs.size();
    rep.exact = true;
    for (size_t zi = 0; zi < zs.size(); ++zi) {
      if (singles[zi] * qk != total) rep.exact = false;
      rep.max_dev_single =
          std::max(rep.max_dev_single,
                   std::fabs(double(singles[zi]) / double(total) -
                             rep.expected_single));
    }
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
      if (joint[pi] * q2k != total) rep.exact = false;
      rep.max_dev_pair = std::max(
          rep.max_dev_pair,
          std::fabs(double(joint[pi]) / double(total) - rep.expected_pair));
    }
    return rep;
  }

  // Monte Carlo: sample independent difference pairs, then share one batch
  // of uniform sensing tuples across all pairs.
  rep.exhaustive = false;
  rep.samples = mc_trials;
  Rng rng(derive_seed(seed, kStreamMisc));
  auto random_nonzero = [&]() {
    ElemVec z(dim);
    for (;;) {
      bool nz = false;
      for (size_t i = 0; i < dim; ++i) {
        z[i] = static_cast<uint16_t>(rng.below(q));
        nz = nz || z[i] != 0;
      }
      if (nz) return z;
    }
  };
  std::vector<std::pair<ElemVec, ElemVec>> pairs;
  while (pairs.size() < mc_pairs) {
    ElemVec a = random_nonzero(), b = random_nonzero();
    if (vec_independent(*f, a, b)) pairs.emplace_back(std::move(a), std::move(b));
  }
  rep.pairs_tested = pairs.size();

  std::vector<uint64_t> single_hits(pairs.size(), 0), pair_hits(pairs.size(), 0);
  std::vector<ElemVec> tuple(k, ElemVec(dim));
  for (uint64_t t = 0; t < mc_trials; ++t) {
    for (size_t a = 0; a < k; ++a)
      for (size_t i = 0; i < dim; ++i)
        tuple[a][i] = static_cast<uint16_t>(rng.below(q));
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
      bool va = true, vb = true;
      for (size_t a = 0; a < k && (va || vb); ++a) {
        if (va) va = dot(*f, tuple[a], pairs[pi].first) == 0;
        if (vb) vb = dot(*f, tuple[a], pairs[pi].second) == 0;
      }
      if (va) ++single_hits[pi];
      if (va && vb) ++pair_hits[pi];
    }
  }
  for (size_t pi = 0; pi < pairs.size(); ++pi) {
    rep.max_dev_single = std::max(
        rep.max_dev_single, std::fabs(double(single_hits[pi]) / double(mc_trials) -
                                      rep.expected_single));
    rep.max_dev_pair = std::max(
        rep.max_dev_pair, std::fabs(double(pair_hits[pi]) / double(mc_trials) -
                                    rep.expected_pair));
  }
  return rep;
}

}  // namespace rankmin
