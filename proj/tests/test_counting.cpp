// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "counting.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "field.hpp"
#include "mat.hpp"

using namespace rankmin;

TEST_CASE("rank class sizes match hand-computed values") {
  CHECK(count_rank_exact(2, 0, 2) == 1);
  CHECK(count_rank_exact(2, 1, 2) == 9);
  CHECK(count_rank_exact(2, 2, 2) == 6);
  CHECK(count_rank_exact(4, 1, 2) == 225);
  CHECK(count_rank_exact(4, 2, 2) == 7350);
  CHECK(count_rank_exact(2, 1, 3) == 32);
  CHECK(count_rank_exact(2, 2, 3) == 48);
  CHECK(count_rank_exact(5, 3, 2) == 4036200);
  CHECK(count_rank_exact(6, 1, 2) == 3969);
  CHECK(count_rank_exact(6, 2, 2) == 2542806);

  CHECK(count_rank_atmost(4, 1, 2) == 226);
  CHECK(count_rank_atmost(2, 2, 2) == 16);

  CHECK_THROWS_AS(count_rank_exact(2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(count_rank_exact(2, 1, 1), std::invalid_argument);
}

TEST_CASE("rank classes partition the full matrix space") {
  for (uint32_t q : {2u, 3u, 4u}) {
    for (uint32_t n = 1; n <= 6; ++n) {
      mpz_class total = 0;
      for (uint32_t r = 0; r <= n; ++r) total += count_rank_exact(n, r, q);
      mpz_class expect;
      mpz_ui_pow_ui(expect.get_mpz_t(), q, uint64_t(n) * n);
      CHECK(total == expect);
      CHECK(count_rank_atmost(n, n, q) == expect);
    }
  }
}

TEST_CASE("rank class sizes match brute-force enumeration") {
  for (uint32_t q : {2u, 3u}) {
    FieldPtr f = Field::from_order(q);
    for (uint32_t n = 1; n <= 3; ++n) {
      std::vector<uint64_t> hist(n + 1, 0);
      Mat m(f, n, n);
      std::vector<uint16_t> e(size_t(n) * n, 0);
      for (;;) {
        std::copy(e.begin(), e.end(), m.mutable_data());
        ++hist[m.rank()];
        size_t pos = 0;
        while (pos < e.size() && ++e[pos] == q) e[pos++] = 0;
        if (pos == e.size()) break;
      }
      for (uint32_t r = 0; r <= n; ++r)
        CHECK(count_rank_exact(n, r, q) == hist[r]);
    }
  }
}

TEST_CASE("subspace counts match hand values and symmetry") {
  CHECK(subspace_count(2, 1, 2) == 3);
  CHECK(subspace_count(3, 1, 2) == 7);
  CHECK(subspace_count(3, 2, 2) == 7);
  CHECK(subspace_count(8, 2, 2) == 10795);
  CHECK(subspace_count(4, 2, 3) == 130);
  CHECK(subspace_count(5, 0, 2) == 1);
  CHECK(subspace_count(5, 5, 2) == 1);
  for (uint32_t n = 1; n <= 7; ++n)
    for (uint32_t r = 0; r <= n; ++r)
      CHECK(subspace_count(n, r, 2) == subspace_count(n, n - r, 2));
  CHECK_THROWS_AS(subspace_count(2, 3, 2), std::invalid_argument);
}

TEST_CASE("exponential-order sandwich holds at desk scale") {
  for (uint32_t q : {2u, 3u, 4u}) {
    for (uint32_t n = 1; n <= 6; ++n) {
      for (uint32_t r = 1; r <= n; ++r) {
        RankCountBounds b = rank_count_bounds(n, r, q);
        mpz_class exact = count_rank_exact(n, r, q);
        mpz_class atmost = count_rank_atmost(n, r, q);
        CHECK(b.exact_lo <= exact);
        CHECK(exact <= b.exact_hi);
        CHECK(b.atmost_lo <= atmost);
        CHECK(atmost <= b.atmost_hi);
      }
    }
  }
  CHECK_THROWS_AS(rank_count_bounds(3, 0, 2), std::invalid_argument);
}

TEST_CASE("log2 of big integers is accurate") {
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 100);
  CHECK(log2_mpz(big) == doctest::Approx(100.0).epsilon(1e-12));
  mpz_ui_pow_ui(big.get_mpz_t(), 3, 10);
  CHECK(log2_mpz(big) == doctest::Approx(15.8496250072).epsilon(1e-9));
  CHECK(log2_mpz(count_rank_exact(4, 1, 2)) ==
        doctest::Approx(std::log2(225.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log2_mpz(mpz_class(0)), std::domain_error);
}

TEST_CASE("per-entry density of low-rank classes thins as n grows") {
  double prev = 1.0;
  for (uint32_t n : {4u, 8u, 12u, 16u, 24u, 32u}) {
    double dens = log2_mpz(count_rank_atmost(n, 1, 2)) /
                  (static_cast<double>(n) * n);
    CHECK(dens < prev);
    prev = dens;
  }
}

TEST_CASE("vanish probability matches the convolution oracle") {
  double worst = 0.0;
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    double cap = 1.0 - 1.0 / q;
    for (double delta : {0.1, 0.3, cap}) {
      for (uint32_t k : {1u, 5u, 20u}) {
        for (uint32_t d = 1; d <= 20; ++d) {
          double a = vanish_prob(d, delta, q, k);
          double b = vanish_prob_convolved(d, delta, q, k);
          worst = std::max(worst, std::fabs(a - b));
        }
      }
    }
  }
  CHECK(worst <= 1e-12);

  // uniform sensing hits q^{-k} exactly for every pattern size
  CHECK(vanish_prob(3, 0.5, 2, 4) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(vanish_prob(7, 0.75, 4, 2) ==
        doctest::Approx(1.0 / 16.0).epsilon(1e-13));

  // decreasing in the pattern weight d and in the stack height k
  for (uint32_t d = 2; d <= 10; ++d)
    CHECK(vanish_prob(d, 0.2, 3, 4) < vanish_prob(d - 1, 0.2, 3, 4));
  CHECK(vanish_prob(5, 0.2, 3, 6) < vanish_prob(5, 0.2, 3, 5));

  CHECK_THROWS_AS(vanish_prob(3, 0.9, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(vanish_prob(3, -0.1, 2, 1), std::invalid_argument);
}

TEST_CASE("entropies have frozen values") {
  CHECK(entropy2(0.0) == 0.0);
  CHECK(entropy2(1.0) == 0.0);
  CHECK(entropy2(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy2(0.02) == doctest::Approx(0.14144054).epsilon(1e-7));
  CHECK(entropyq(0.02, 256.0) ==
        doctest::Approx(0.14144054 / 8.0).epsilon(1e-7));
  CHECK(entropyq(0.5, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(entropy2(1.5), std::invalid_argument);
  CHECK_THROWS_AS(entropyq(0.2, 1.0), std::invalid_argument);
}

TEST_CASE("noiseless thresholds follow the closed forms") {
  // gamma = 0.2, n = 10: 2 * 0.2 * 0.9 * 100 = 36
  CHECK(threshold_noiseless(10, 0.2, 0.0, ThresholdKind::Converse) ==
        doctest::Approx(36.0).epsilon(1e-12));
  CHECK(threshold_noiseless(10, 0.2, 0.0, ThresholdKind::Achievable) ==
        doctest::Approx(36.0).epsilon(1e-12));
  CHECK(threshold_noiseless(10, 0.2, 0.5, ThresholdKind::Achievable) ==
        doctest::Approx(45.0).epsilon(1e-12));
  // 4 * 0.2 * 0.8 * 100 = 64
  CHECK(threshold_noiseless(10, 0.2, 0.0, ThresholdKind::Strong) ==
        doctest::Approx(64.0).epsilon(1e-12));
  CHECK(threshold_noiseless(10, 0.2, 0.1, ThresholdKind::Converse) <
        threshold_noiseless(10, 0.2, 0.0, ThresholdKind::Converse));
  CHECK_THROWS_AS(threshold_noiseless(10, 1.5, 0.0, ThresholdKind::Converse),
                  std::invalid_argument);
}

TEST_CASE("deterministic-noise rate threshold has frozen values") {
  // gamma = sigma = 0.1: s = 0.2, H2(1/2.8) = 0.94028542,
  // q = 256: 0.56 / (1 - 0.94028542/8) = 0.63458634
  CHECK(threshold_noisy_det(0.1, 0.1, 256.0, 0.0) ==
        doctest::Approx(0.63458634).epsilon(1e-6));
  // q = 2: 0.56 / 0.05971458 = 9.3779
  CHECK(threshold_noisy_det(0.1, 0.1, 2.0, 0.0) ==
        doctest::Approx(9.37794).epsilon(1e-4));
  // monotone in the noise level
  CHECK(threshold_noisy_det(0.1, 0.2, 256.0, 0.0) >
        threshold_noisy_det(0.1, 0.1, 256.0, 0.0));
  // H2(1/2) = 1 kills the denominator at q = 2
  CHECK_THROWS_AS(threshold_noisy_det(0.5, 0.5, 2.0, 0.0), std::domain_error);
  // entropy argument above 1
  CHECK_THROWS_AS(threshold_noisy_det(1.0, 1.5, 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(threshold_noisy_det(1.5, 1.6, 2.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("iid-noise limits have frozen values") {
  CHECK(alpha_converse_noisy(0.05, 0.02, 2.0) ==
        doctest::Approx(0.113562).epsilon(5e-5));
  CHECK(alpha_converse_noisy(0.05, 0.02, 256.0) ==
        doctest::Approx(0.099255).epsilon(5e-5));
  // p = 0 reduces to the noiseless converse rate
  CHECK(alpha_converse_noisy(0.05, 0.0, 2.0) ==
        doctest::Approx(2.0 * 0.05 * 0.975).epsilon(1e-12));
  CHECK_THROWS_AS(alpha_converse_noisy(0.05, 0.5, 2.0), std::domain_error);

  double a2 = critical_alpha(0.02, 0.05, 2.0, 1e-6);
  CHECK(a2 > 0.30);
  CHECK(a2 < 0.34);
  double a256 = critical_alpha(0.02, 0.05, 256.0, 1e-6);
  CHECK(a256 > 0.104);
  CHECK(a256 < 0.124);
  // achievability never beats the converse
  CHECK(a2 >= alpha_converse_noisy(0.05, 0.02, 2.0));
  CHECK(a256 >= alpha_converse_noisy(0.05, 0.02, 256.0));
  // the returned point actually reaches the target margin
  double target = (2.0 + 1e-6) * 0.05 * 0.975;
  CHECK(noisy_achievable_margin(a256, 0.02, 0.05, 256.0) >= target - 1e-9);
  CHECK_THROWS_AS(critical_alpha(0.2, 0.4, 2.0, 0.0), std::domain_error);
}

TEST_CASE("reliability decay and exponents at the reference point") {
  CHECK(reliability_decay(0.5, 0.1) == doctest::Approx(0.31).epsilon(1e-12));
  CHECK(reliability_decay(0.9, 0.5) == 0.0);
  CHECK(reliability_decay(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  ExponentTable t = error_exponents(0.5, 0.1);
  CHECK(std::isinf(t.gabidulin_e1));  // 0.5 <= 1 - 2*0.1
  CHECK(std::isinf(t.gabidulin_e2));
  CHECK(t.error_trap_e1 == doctest::Approx(0.19289322).epsilon(1e-7));
  CHECK(t.error_trap_e2 == 0.0);
  CHECK(t.gab_error_trap_e1 == doctest::Approx(0.34444444).epsilon(1e-7));
  CHECK(t.gab_error_trap_e2 == 0.0);
  CHECK(std::isinf(t.random_minrank_e1));  // 0.5 <= 0.81
  CHECK(t.random_minrank_e2 == doctest::Approx(0.31).epsilon(1e-12));

  // past the planted-rank wall both infinite exponents collapse
  ExponentTable hi = error_exponents(0.9, 0.1);
  CHECK(hi.gabidulin_e1 == 0.0);
  CHECK(hi.random_minrank_e1 == 0.0);
}

TEST_CASE("gv distance and codeword-count sandwich") {
  CHECK(gv_distance(0.25) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gv_distance(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gv_distance(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gv_distance(0.2) > gv_distance(0.3));

  auto [lo, hi] = codeword_count_bounds(4, 1, 2, 12);
  CHECK(lo == doctest::Approx(std::exp2(-7.0)).epsilon(1e-12));
  CHECK(hi == doctest::Approx(std::exp2(-3.0)).epsilon(1e-12));
  // the true expectation 225 * 2^-12 sits inside
  double mean = 225.0 / 4096.0;
  CHECK(lo <= mean);
  CHECK(mean <= hi);
  CHECK_THROWS_AS(codeword_count_bounds(4, 0, 2, 12), std::invalid_argument);
}
