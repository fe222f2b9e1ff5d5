// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo campaigns: recovery sweeps over measurement counts,
// sparse-vs-dense ensemble comparison, noisy decoding sweeps with analytic
// overlay values, code distance profiles, and a direct error-event probe.
//
/// Determinism contract: a campaign's output depends only on its config
// (including the master seed), never on the worker count. Per-trial streams
// are derived as (seed, stream, trial[, k]); sensing matrices for a trial
// are drawn once at the largest k and consumed as nested prefixes, so one
// trial's instances are coupled across the k grid.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ensemble.hpp"

namespace rankmin {

struct SweepConfig {
  size_t n = 4;
  uint32_t q = 2;
  size_t r = 1;  // true rank of the planted unknown
  EnsembleSpec ensemble = EnsembleSpec::make_uniform(2);
  NoiseSpec noise = NoiseSpec::none();
  double lambda = 0.0;          // noisy objective weight
  size_t max_noise_weight = 3;  // noisy decoder scan cap
  std::vector<size_t> k_grid;
  size_t trials = 100;
  uint64_t seed = 1;
  unsigned jobs = 1;
};

struct KCell {
  size_t k = 0;
  uint64_t successes = 0;
  uint64_t ambiguous = 0;
  uint64_t wrong = 0;      // wrong unique answers plus infeasible outcomes
  uint64_t cap_hits = 0;   // decoder gave up under a work or weight cap
  double ci_lo = 0.0, ci_hi = 1.0;  // exact 95% interval for the success rate
};

struct SweepResult {
  SweepConfig cfg;
  std::vector<KCell> cells;  // one per k_grid entry, in order
};

// Success means the decoder returned Unique and the recovered matrix equals
// the planted one (noisy runs additionally require the recovered noise).
SweepResult run_weak_sweep(const SweepConfig& cfg);

// Same trials under the uniform ensemble and under sparse(delta), sharing
// the unknown stream; optionally a third curve at delta_low.
std::vector<SweepResult> run_sparse_compare(const SweepConfig& base,
                                            double delta,
                                            std::optional<double> delta_low);

struct NoisySweepResult {
  SweepResult sweep;
  // (label, value) pairs of the analytic thresholds relevant to the noise
  // model, for plotting as vertical markers.
  std::vector<std::pair<std::string, double>> overlays;
};

// Noise-model sweep with minrank_noisy; reduces exactly to run_weak_sweep
// when the noise kind is None.
NoisySweepResult run_noisy_sweep(const SweepConfig& cfg);

struct DistanceProfile {
  size_t n = 0;
  uint32_t q = 2;
  size_t k = 0;
  EnsembleSpec ensemble = EnsembleSpec::make_uniform(2);
  uint64_t trials = 0;
  uint64_t seed = 0;
  struct Cell {
    size_t r = 0;
    double mean_ncr = 0.0;
    double var_ncr = 0.0;   // unbiased sample variance
    double bound_lo = 0.0;  // analytic sandwich on the mean
    double bound_hi = 0.0;
  };
  std::vector<Cell> cells;          // r = 0..n
  std::vector<uint64_t> dr_hist;    // minimum-distance histogram, index 1..n
  uint64_t trivial_codes = 0;       // trials whose code was {0}
  double rate = 0.0;
  double gv_gamma = 0.0;
};

DistanceProfile run_distance_profile(size_t n, uint32_t q, size_t k,
                                     const EnsembleSpec& ensemble,
                                     uint64_t trials, uint64_t seed,
                                     unsigned jobs = 1);

struct ReliabilityResult {
  size_t n = 0, r = 0, k = 0;
  uint32_t q = 2;
  uint64_t trials = 0;
  uint64_t failures = 0;  // trials with a misleading same-or-lower-rank matrix
  double p_emp = 0.0;
  double ci_lo = 0.0, ci_hi = 1.0;
  double bound_lo = 0.0;  // pairwise lower bound on the failure probability
  double bound_hi = 0.0;  // union upper bound
  uint64_t seed = 0;
};

// Plants a rank-r unknown, then checks directly whether any other matrix of
// rank <= r satisfies all measurements (enumerating the rank-<=r ball once).
ReliabilityResult run_reliability_probe(size_t n, size_t r, uint32_t q,
                                        size_t k, uint64_t trials,
                                        uint64_t seed, unsigned jobs = 1);

// Exact (Clopper-Pearson) two-sided interval for a binomial proportion.
std::pair<double, double> binomial_ci(uint64_t trials, uint64_t successes,
                                      double alpha = 0.05);

// CSV emitters; LF line endings, header row first, doubles as %.10g.
std::string sweep_csv(const std::vector<SweepResult>& results);
std::string distance_csv(const DistanceProfile& p);
std::string reliability_csv(const ReliabilityResult& r);
/// Analytic threshold table: kind,value,n,q,gamma,sigma,p,epsilon.
std::string thresholds_csv(size_t n, uint32_t q, double gamma, double sigma,
                           double p, double epsilon);

// Fast micro-suite of cross-checks (field axioms, counting identities,
// vanish-probability oracle, decoder-vs-oracle, independence, intervals).
// Logs one line per check; returns true when everything holds.
bool selftest(std::ostream& log);

}  // namespace rankmin
