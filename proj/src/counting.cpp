// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "counting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace rankmin {
namespace {

mpz_class mpz_pow(uint32_t base, uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

void require_rank_args(uint32_t n, uint32_t r, uint32_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  if (r > n) throw std::invalid_argument("rank exceeds matrix dimension");
}

}  // namespace

mpz_class count_rank_exact(uint32_t n, uint32_t r, uint32_t q) {
  require_rank_args(n, r, q);
  mpz_class num = 1, den = 1;
  for (uint32_t i = 0; i < r; ++i) {
    mpz_class t = mpz_pow(q, n) - mpz_pow(q, i);
    num *= t * t;
    den *= mpz_pow(q, r) - mpz_pow(q, i);
  }
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

mpz_class count_rank_atmost(uint32_t n, uint32_t r, uint32_t q) {
  require_rank_args(n, r, q);
  mpz_class s = 0;
  for (uint32_t l = 0; l <= r; ++l) s += count_rank_exact(n, l, q);
  return s;
}

mpz_class subspace_count(uint32_t n_dim, uint32_t r, uint32_t q) {
  if (r > n_dim) throw std::invalid_argument("subspace dimension exceeds ambient");
  mpz_class num = 1, den = 1;
  for (uint32_t i = 0; i < r; ++i) {
    num *= mpz_pow(q, n_dim) - mpz_pow(q, i);
    den *= mpz_pow(q, r) - mpz_pow(q, i);
  }
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

RankCountBounds rank_count_bounds(uint32_t n, uint32_t r, uint32_t q) {
  require_rank_args(n, r, q);
  if (r == 0) throw std::invalid_argument("bounds are stated for r >= 1 only");
  RankCountBounds b;
  // (2n-2)r - r^2 < 0 only at n = r = 1, where q^{exp} < 1; round down to 0.
  const uint64_t lo_pos = static_cast<uint64_t>(2 * n - 2) * r;
  b.exact_lo = lo_pos < static_cast<uint64_t>(r) * r
                   ? 0
                   : mpz_pow(q, lo_pos - static_cast<uint64_t>(r) * r);
  b.exact_hi = 4 * mpz_pow(q, static_cast<uint64_t>(2 * n) * r - static_cast<uint64_t>(r) * r);
  b.atmost_lo = mpz_pow(q, static_cast<uint64_t>(2 * n) * r - static_cast<uint64_t>(r) * r);
  b.atmost_hi = b.exact_hi;
  return b;
}

double log2_mpz(const mpz_class& z) {
  if (z <= 0) throw std::domain_error("log of non-positive integer");
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp2);
}

double vanish_prob(uint32_t d, double delta, uint32_t q, uint32_t k) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  double cap = 1.0 - 1.0 / q;
  if (delta < 0.0 || delta > cap + 1e-12)
    throw std::invalid_argument("sparsity out of (0, (q-1)/q]");
  double inner = 1.0 - delta / cap;
  double bracket = 1.0 / q + cap * std::pow(inner, static_cast<double>(d));
  return std::pow(bracket, static_cast<double>(k));
}

double vanish_prob_convolved(uint32_t d, double delta, uint32_t q, uint32_t k) {
  if (d > 10000) throw std::invalid_argument("convolution depth cap is 10^4");
  double cap = 1.0 - 1.0 / q;
  if (delta < 0.0 || delta > cap + 1e-12)
    throw std::invalid_argument("sparsity out of (0, (q-1)/q]");
  // pmf of one weighted entry: mass 1-delta at 0, delta spread over the
  // nonzero symbols; convolve d times over the field's additive group
  FieldPtr f = Field::from_order(q);
  std::vector<double> pmf(q, delta / (q - 1));
  pmf[0] = 1.0 - delta;
  std::vector<double> acc(q, 0.0);
  acc[0] = 1.0;
  for (uint32_t step = 0; step < d; ++step) {
    std::vector<double> next(q, 0.0);
    for (uint32_t x = 0; x < q; ++x) {
      if (acc[x] == 0.0) continue;
      for (uint32_t h = 0; h < q; ++h) next[f->add(x, h)] += acc[x] * pmf[h];
    }
    acc.swap(next);
  }
  return std::pow(acc[0], static_cast<double>(k));
}

double entropy2(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("entropy argument outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropyq(double p, double q) {
  if (q <= 1.0) throw std::invalid_argument("entropy base must exceed 1");
  return entropy2(p) / std::log2(q);
}

double threshold_noiseless(uint32_t n, double gamma, double eps, ThresholdKind kind) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma outside [0,1]");
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  double nn = static_cast<double>(n) * n;
  switch (kind) {
    case ThresholdKind::Converse:
      return (2.0 - eps) * gamma * (1.0 - gamma / 2.0) * nn;
    case ThresholdKind::Achievable:
      return (2.0 + eps) * gamma * (1.0 - gamma / 2.0) * nn;
    case ThresholdKind::Strong:
      return (4.0 + eps) * gamma * (1.0 - gamma) * nn;
  }
  throw std::invalid_argument("unknown threshold kind");
}

double threshold_noisy_det(double gamma, double sigma, double q, double eps) {
  double s = gamma + sigma;
  if (s < 0.0 || s >= 3.0) throw std::invalid_argument("gamma + sigma outside [0,3)");
  double arg = 1.0 / (3.0 - s);
  if (arg > 1.0) throw std::domain_error("entropy argument exceeds 1");
  double den = 1.0 - entropy2(arg) * (std::log(2.0) / std::log(q));
  if (den <= 0.0) throw std::domain_error("infeasible: field too small for this noise level");
  return (3.0 + eps) * s * (1.0 - s / 3.0) / den;
}

double alpha_converse_noisy(double gamma, double p, double q) {
  double h = entropyq(p, q);
  if (h >= 1.0) throw std::domain_error("noise entropy reaches one base-q digit");
  return 2.0 * gamma * (1.0 - gamma / 2.0) / (1.0 - h);
}

double noisy_achievable_margin(double alpha, double p, double gamma, double q) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  double arg = p + gamma / alpha;
  if (arg > 1.0) throw std::domain_error("entropy argument exceeds 1");
  double logq2 = std::log(2.0) / std::log(q);
  return alpha * (1.0 - logq2 * entropy2(arg) - 2.0 * p * (1.0 - gamma)) +
         alpha * alpha * p * p;
}

double critical_alpha(double p, double gamma, double q, double eps) {
  const double target = (2.0 + eps) * gamma * (1.0 - gamma / 2.0);
  const double lo_edge = gamma / (1.0 - p);  // below this the entropy argument exceeds 1
  const double step = 1e-4;
  auto feasible = [&](double a) {
    if (a <= lo_edge || a > 1.0) return false;
    return noisy_achievable_margin(a, p, gamma, q) >= target;
  };
  double found = -1.0, prev = lo_edge;
  for (double a = std::ceil(lo_edge / step) * step; a <= 1.0 + 1e-12; a += step) {
    if (feasible(a)) { found = a; break; }
    prev = a;
  }
  if (found < 0.0) throw std::domain_error("no alpha <= 1 reaches the target margin");
  double lo = prev, hi = found;
  while (hi - lo > 1e-6) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

double reliability_decay(double rate, double gamma_t) {
  if (rate < 0.0 || rate > 1.0 || gamma_t < 0.0 || gamma_t > 1.0)
    throw std::invalid_argument("arguments outside [0,1]");
  double v = (1.0 - rate) - 2.0 * gamma_t * (1.0 - gamma_t / 2.0);
  return v > 0.0 ? v : 0.0;
}

ExponentTable error_exponents(double rate, double gamma) {
  if (rate < 0.0 || rate > 1.0 || gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("arguments outside [0,1]");
  const double inf = std::numeric_limits<double>::infinity();
  ExponentTable t{};
  double gab = rate <= 1.0 - 2.0 * gamma ? inf : 0.0;
  t.gabidulin_e1 = t.gabidulin_e2 = gab;
  double et = 1.0 - gamma - std::sqrt(rate);
  t.error_trap_e1 = et > 0.0 ? et : 0.0;
  t.error_trap_e2 = 0.0;
  double gt = 1.0 - gamma - rate / (1.0 - gamma);
  t.gab_error_trap_e1 = gt > 0.0 ? gt : 0.0;
  t.gab_error_trap_e2 = 0.0;
  t.random_minrank_e1 = rate <= (1.0 - gamma) * (1.0 - gamma) ? inf : 0.0;
  t.random_minrank_e2 = reliability_decay(rate, gamma);
  return t;
}

double gv_distance(double rate) {
  if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("rate outside [0,1]");
  return 1.0 - std::sqrt(rate);
}

std::pair<double, double> codeword_count_bounds(uint32_t n, uint32_t r, uint32_t q,
                                                uint32_t k) {
  require_rank_args(n, r, q);
  if (r == 0) throw std::invalid_argument("rank-0 codeword count is exactly 1");
  double log2q = std::log2(static_cast<double>(q));
  double e = static_cast<double>(2.0 * n * r) - static_cast<double>(r) * r -
             static_cast<double>(k);
  double lo = std::exp2((e - 2.0 * r) * log2q);
  double hi = 4.0 * std::exp2(e * log2q);
  return {lo, hi};
}

}  // namespace rankmin
