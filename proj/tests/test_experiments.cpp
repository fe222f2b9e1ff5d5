// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "counting.hpp"
#include "doctest.h"
#include "ensemble.hpp"

using namespace rankmin;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t nl = s.find('\n', pos);
    REQUIRE(nl != std::string::npos);  // every line LF-terminated
    lines.push_back(s.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::string first_field(const std::string& line) {
  return line.substr(0, line.find(','));
}

bool cells_equal(const std::vector<KCell>& a, const std::vector<KCell>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].k != b[i].k || a[i].successes != b[i].successes ||
        a[i].ambiguous != b[i].ambiguous || a[i].wrong != b[i].wrong ||
        a[i].cap_hits != b[i].cap_hits || a[i].ci_lo != b[i].ci_lo ||
        a[i].ci_hi != b[i].ci_hi)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("clopper-pearson interval endpoints and duality") {
  auto ci = binomial_ci(20, 0);
  CHECK(ci.first == 0.0);
  // 1 - (alpha/2)^(1/n)
  CHECK(ci.second == doctest::Approx(0.1684334710).epsilon(1e-7));
  ci = binomial_ci(20, 20);
  CHECK(ci.first == doctest::Approx(0.8315665290).epsilon(1e-7));
  CHECK(ci.second == 1.0);
  ci = binomial_ci(10, 5);
  CHECK(ci.first == doctest::Approx(0.187086).epsilon(1e-4));
  CHECK(ci.second == doctest::Approx(0.812914).epsilon(1e-4));
  ci = binomial_ci(1, 0);
  CHECK(ci.second == doctest::Approx(0.975).epsilon(1e-9));
  ci = binomial_ci(1, 1);
  CHECK(ci.first == doctest::Approx(0.025).epsilon(1e-9));

  // swapping successes and failures mirrors the interval
  auto a = binomial_ci(37, 11);
  auto b = binomial_ci(37, 26);
  CHECK(a.first == doctest::Approx(1.0 - b.second).epsilon(1e-8));
  CHECK(a.second == doctest::Approx(1.0 - b.first).epsilon(1e-8));

  CHECK_THROWS_AS(binomial_ci(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(binomial_ci(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(binomial_ci(5, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(binomial_ci(5, 2, 1.0), std::invalid_argument);
}

TEST_CASE("weak sweep bookkeeping and monotone success in k") {
  SweepConfig cfg;
  cfg.n = 2;
  cfg.q = 2;
  cfg.r = 1;
  cfg.k_grid = {0, 1, 2, 4};
  cfg.trials = 40;
  cfg.seed = 3;
  SweepResult res = run_weak_sweep(cfg);
  REQUIRE(res.cells.size() == 4);

  // no constraints: always ambiguous
  CHECK(res.cells[0].k == 0);
  CHECK(res.cells[0].ambiguous == 40);
  CHECK(res.cells[0].successes == 0);
  CHECK(res.cells[0].wrong == 0);

  for (const KCell& c : res.cells) {
    CHECK(c.successes + c.ambiguous + c.wrong == 40);
    CHECK(c.cap_hits <= c.wrong);
    double rate = double(c.successes) / 40.0;
    CHECK(c.ci_lo <= rate + 1e-12);
    CHECK(c.ci_hi >= rate - 1e-12);
  }
  // trials share sensing prefixes, so per-trial success never degrades as
  // constraints are appended; aggregated counts inherit that
  for (size_t i = 1; i < res.cells.size(); ++i)
    CHECK(res.cells[i].successes >= res.cells[i - 1].successes);
}

TEST_CASE("sweep results are independent of the worker count") {
  SweepConfig cfg;
  cfg.n = 3;
  cfg.q = 2;
  cfg.r = 1;
  cfg.k_grid = {3, 6, 9};
  cfg.trials = 30;
  cfg.seed = 11;
  cfg.jobs = 1;
  SweepResult one = run_weak_sweep(cfg);
  cfg.jobs = 3;
  SweepResult three = run_weak_sweep(cfg);
  CHECK(cells_equal(one.cells, three.cells));
  CHECK(sweep_csv({one}) == sweep_csv({three}));
}

TEST_CASE("sweep csv layout matches the cell data") {
  SweepConfig cfg;
  cfg.n = 2;
  cfg.q = 2;
  cfg.r = 1;
  cfg.k_grid = {2};
  cfg.trials = 10;
  cfg.seed = 5;
  SweepResult res = run_weak_sweep(cfg);
  std::string csv = sweep_csv({res});
  auto lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "n,q,r,k,ensemble,delta,noise,p_or_sigma,lambda,trials,successes,"
        "ambiguous,wrong,ci_lo,ci_hi,seed");
  char expect[256];
  std::snprintf(expect, sizeof expect,
                "2,2,1,2,uniform,0.5,none,0,0,10,%llu,%llu,%llu,%.10g,%.10g,5",
                static_cast<unsigned long long>(res.cells[0].successes),
                static_cast<unsigned long long>(res.cells[0].ambiguous),
                static_cast<unsigned long long>(res.cells[0].wrong),
                res.cells[0].ci_lo, res.cells[0].ci_hi);
  CHECK(lines[1] == expect);
}

TEST_CASE("sweep config validation") {
  SweepConfig cfg;
  cfg.k_grid = {1};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_weak_sweep(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.k_grid.clear();
  CHECK_THROWS_AS(run_weak_sweep(cfg), std::invalid_argument);
  cfg.k_grid = {17};  // n = 4 has only 16 entries
  CHECK_THROWS_AS(run_weak_sweep(cfg), std::invalid_argument);
  cfg.k_grid = {1};
  cfg.r = 5;
  CHECK_THROWS_AS(run_weak_sweep(cfg), std::invalid_argument);
  cfg.r = 1;
  cfg.q = 3;  // ensemble still carries q = 2
  CHECK_THROWS_AS(run_weak_sweep(cfg), std::invalid_argument);
}

TEST_CASE("sparse comparison aligns curves over the same grid") {
  SweepConfig base;
  base.n = 2;
  base.q = 2;
  base.r = 1;
  base.k_grid = {2, 4};
  base.trials = 25;
  base.seed = 9;
  auto two = run_sparse_compare(base, 0.4, std::nullopt);
  REQUIRE(two.size() == 2);
  CHECK(two[0].cfg.ensemble.name() == "uniform");
  CHECK(two[1].cfg.ensemble.name() == "sparse");
  CHECK(two[1].cfg.ensemble.effective_delta() == doctest::Approx(0.4));
  auto three = run_sparse_compare(base, 0.4, 0.1);
  REQUIRE(three.size() == 3);
  CHECK(three[2].cfg.ensemble.effective_delta() == doctest::Approx(0.1));
  for (const auto& r : three) {
    REQUIRE(r.cells.size() == 2);
    CHECK(r.cells[0].k == 2);
    CHECK(r.cells[1].k == 4);
  }
  // the dense curve is shared between both calls
  CHECK(cells_equal(two[0].cells, three[0].cells));
}

TEST_CASE("noisy sweep with no noise reduces to the plain sweep") {
  SweepConfig cfg;
  cfg.n = 2;
  cfg.q = 2;
  cfg.r = 1;
  cfg.k_grid = {1, 3};
  cfg.trials = 20;
  cfg.seed = 7;
  NoisySweepResult noisy = run_noisy_sweep(cfg);
  SweepResult plain = run_weak_sweep(cfg);
  CHECK(noisy.overlays.empty());
  CHECK(cells_equal(noisy.sweep.cells, plain.cells));
}

TEST_CASE("deterministic-weight noisy sweep bookkeeping and overlay") {
  SweepConfig cfg;
  cfg.n = 2;
  cfg.q = 2;
  cfg.r = 1;
  cfg.noise = NoiseSpec::det_weight(0.3);  // weight floor(0.3*4) = 1
  cfg.lambda = 0.5;
  cfg.max_noise_weight = 2;
  cfg.k_grid = {2, 4};
  cfg.trials = 25;
  cfg.seed = 13;
  NoisySweepResult res = run_noisy_sweep(cfg);
  REQUIRE(res.sweep.cells.size() == 2);
  for (const KCell& c : res.sweep.cells)
    CHECK(c.successes + c.ambiguous + c.wrong == 25);
  REQUIRE(res.overlays.size() == 1);
  CHECK(res.overlays[0].first == "det_rate");
  CHECK(res.overlays[0].second ==
        doctest::Approx(threshold_noisy_det(0.5, 0.3, 2.0, 0.0))
            .epsilon(1e-12));

  cfg.jobs = 2;
  NoisySweepResult res2 = run_noisy_sweep(cfg);
  CHECK(cells_equal(res.sweep.cells, res2.sweep.cells));
  CHECK(res.overlays == res2.overlays);
}

TEST_CASE("crossover noisy sweep reports both alpha overlays") {
  // k = 0 skips decoding, so a large field exercises only the overlays
  SweepConfig cfg;
  cfg.n = 20;
  cfg.q = 256;
  cfg.r = 1;  // gamma = 0.05
  cfg.ensemble = EnsembleSpec::make_uniform(256);
  cfg.noise = NoiseSpec::iid_crossover(0.02);
  cfg.k_grid = {0};
  cfg.trials = 5;
  cfg.seed = 1;
  NoisySweepResult res = run_noisy_sweep(cfg);
  REQUIRE(res.sweep.cells.size() == 1);
  CHECK(res.sweep.cells[0].ambiguous == 5);
  REQUIRE(res.overlays.size() == 2);
  CHECK(res.overlays[0].first == "converse_alpha");
  CHECK(res.overlays[0].second ==
        doctest::Approx(alpha_converse_noisy(0.05, 0.02, 256.0))
            .epsilon(1e-12));
  CHECK(res.overlays[0].second == doctest::Approx(0.099255).epsilon(2e-3));
  CHECK(res.overlays[1].first == "achievable_alpha");
  CHECK(res.overlays[1].second ==
        doctest::Approx(critical_alpha(0.02, 0.05, 256.0, 0.0))
            .epsilon(1e-12));
  CHECK(res.overlays[1].second > 0.10);
  CHECK(res.overlays[1].second < 0.13);
  // the achievable marker never undercuts the converse
  CHECK(res.overlays[1].second >= res.overlays[0].second);
}

TEST_CASE("distance profile aggregates spectra against the sandwich") {
  auto prof = run_distance_profile(3, 2, 4, EnsembleSpec::make_uniform(2), 60,
                                   21);
  CHECK(prof.n == 3);
  CHECK(prof.k == 4);
  REQUIRE(prof.cells.size() == 4);
  CHECK(prof.cells[0].mean_ncr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prof.cells[0].var_ncr == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(prof.cells[0].bound_lo == doctest::Approx(1.0));
  CHECK(prof.cells[0].bound_hi == doctest::Approx(1.0));
  for (size_t r = 1; r <= 3; ++r) {
    auto b = codeword_count_bounds(3, static_cast<uint32_t>(r), 2, 4);
    CHECK(prof.cells[r].r == r);
    CHECK(prof.cells[r].bound_lo == doctest::Approx(b.first).epsilon(1e-12));
    CHECK(prof.cells[r].bound_hi == doctest::Approx(b.second).epsilon(1e-12));
  }
  // rank-1 population: 49 matrices, each kept w.p. 2^-4; 60 codes put the
  // sample mean many sigmas inside [0.5, 8]
  CHECK(prof.cells[1].mean_ncr >= prof.cells[1].bound_lo);
  CHECK(prof.cells[1].mean_ncr <= prof.cells[1].bound_hi);

  REQUIRE(prof.dr_hist.size() == 4);
  uint64_t hist_sum = 0;
  for (size_t r = 1; r <= 3; ++r) hist_sum += prof.dr_hist[r];
  CHECK(prof.dr_hist[0] == 0);
  CHECK(hist_sum + prof.trivial_codes == 60);
  CHECK(prof.rate == doctest::Approx(5.0 / 9.0).epsilon(1e-12));
  CHECK(prof.gv_gamma ==
        doctest::Approx(1.0 - std::sqrt(5.0 / 9.0)).epsilon(1e-12));

  auto prof2 = run_distance_profile(3, 2, 4, EnsembleSpec::make_uniform(2), 60,
                                    21, 2);
  CHECK(distance_csv(prof) == distance_csv(prof2));

  auto lines = split_lines(distance_csv(prof));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "n,q,k,r,mean_ncr,var_ncr,bound_lo,bound_hi,trials,seed");

  CHECK_THROWS_AS(
      run_distance_profile(3, 2, 10, EnsembleSpec::make_uniform(2), 5, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      run_distance_profile(3, 2, 4, EnsembleSpec::make_uniform(2), 0, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      run_distance_profile(3, 3, 4, EnsembleSpec::make_uniform(2), 5, 1),
      std::invalid_argument);
}

TEST_CASE("reliability probe counts misleading candidates") {
  ReliabilityResult res = run_reliability_probe(3, 1, 2, 6, 150, 5);
  CHECK(res.trials == 150);
  CHECK(res.failures <= 150);
  CHECK(res.p_emp == doctest::Approx(double(res.failures) / 150.0));
  CHECK(res.ci_lo <= res.p_emp + 1e-12);
  CHECK(res.ci_hi >= res.p_emp - 1e-12);
  // e = 2nr - r^2 = 5: upper 4 q^{e-k}, lower (q^e - 1) q^{-k} / (1 + 4 q^{e-k})
  CHECK(res.bound_hi == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(res.bound_lo == doctest::Approx((31.0 / 64.0) / 3.0).epsilon(1e-12));

  ReliabilityResult res2 = run_reliability_probe(3, 1, 2, 6, 150, 5, 2);
  CHECK(reliability_csv(res) == reliability_csv(res2));
  auto lines = split_lines(reliability_csv(res));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "n,q,r,k,trials,failures,p_emp,ci_lo,ci_hi,bound_lo,bound_hi,seed");

  CHECK_THROWS_AS(run_reliability_probe(3, 0, 2, 6, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_reliability_probe(3, 4, 2, 6, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_reliability_probe(3, 1, 2, 6, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("threshold table rows and noiseless golden values") {
  // gamma 0.2, n 10: converse/achievable collapse to 2*0.2*0.9*100 = 36 at
  // eps 0, strong is 4*0.2*0.8*100 = 64
  std::string csv = thresholds_csv(10, 2, 0.2, 0.0, 0.0, 0.0);
  CHECK(csv ==
        "kind,value,n,q,gamma,sigma,p,epsilon\n"
        "converse_k,36,10,2,0.2,0,0,0\n"
        "achievable_k,36,10,2,0.2,0,0,0\n"
        "strong_k,64,10,2,0.2,0,0,0\n");

  auto lines = split_lines(thresholds_csv(10, 2, 0.2, 0.1, 0.0, 0.0));
  REQUIRE(lines.size() == 5);
  CHECK(first_field(lines[4]) == "det_rate");

  lines = split_lines(thresholds_csv(10, 2, 0.05, 0.0, 0.02, 0.0));
  REQUIRE(lines.size() == 6);
  CHECK(first_field(lines[4]) == "converse_alpha");
  CHECK(first_field(lines[5]) == "achievable_alpha");

  // infeasible achievable marker is skipped, the converse one survives
  lines = split_lines(thresholds_csv(10, 2, 0.2, 0.0, 0.4, 0.0));
  REQUIRE(lines.size() == 5);
  CHECK(first_field(lines[4]) == "converse_alpha");
}

TEST_CASE("selftest runs clean") {
  std::ostringstream log;
  CHECK(selftest(log));
  std::string s = log.str();
  CHECK(s.find("ok   ") != std::string::npos);
  CHECK(s.find("FAIL") == std::string::npos);
}
