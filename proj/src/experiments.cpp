// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "codelab.hpp"
#include "counting.hpp"
#include "decoder.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace rankmin {

namespace {

std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Runs body(t) for t in [0, trials); worker count never affects results
// because bodies only touch preallocated per-trial slots.
template <typename Body>
void for_each_trial(uint64_t trials, unsigned jobs, const Body& body) {
  if (jobs <= 1 || trials <= 1) {
    for (uint64_t t = 0; t < trials; ++t) body(t);
    return;
  }
  const unsigned workers =
      static_cast<unsigned>(std::min<uint64_t>(jobs, trials));
  std::atomic<uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) return;
        try {
          body(t);
        } catch (...) {
          std::lock_guard<std::mutex> g(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Per-(trial, k) outcome codes.
enum : uint8_t {
  kOutSuccess = 0,
  kOutAmbiguous = 1,
  kOutWrong = 2,
  kOutWrongCapped = 3,
};

void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.k_grid.empty()) throw std::invalid_argument("k grid is empty");
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (cfg.r > cfg.n) throw std::invalid_argument("rank exceeds dimension");
  if (cfg.ensemble.q != cfg.q)
    throw std::invalid_argument("ensemble field order mismatch");
  for (size_t k : cfg.k_grid)
    if (k > cfg.n * cfg.n)
      throw std::invalid_argument("k exceeds the ambient dimension n^2");
}

std::vector<KCell> aggregate_cells(const SweepConfig& cfg,
                                   const std::vector<std::vector<uint8_t>>& outcomes) {
  std::vector<KCell> cells(cfg.k_grid.size());
  for (size_t gi = 0; gi < cfg.k_grid.size(); ++gi) {
    KCell& c = cells[gi];
    c.k = cfg.k_grid[gi];
    for (size_t t = 0; t < cfg.trials; ++t) {
      switch (outcomes[t][gi]) {
        case kOutSuccess: ++c.successes; break;
        case kOutAmbiguous: ++c.ambiguous; break;
        case kOutWrongCapped: ++c.cap_hits; [[fallthrough]];
        default: ++c.wrong; break;
      }
    }
    auto ci = binomial_ci(cfg.trials, c.successes);
    c.ci_lo = ci.first;
    c.ci_hi = ci.second;
  }
  return cells;
}

}  // namespace

SweepResult run_weak_sweep(const SweepConfig& cfg) {
  validate_sweep_config(cfg);
  const FieldPtr f = Field::from_order(cfg.q);
  const size_t kmax = *std::max_element(cfg.k_grid.begin(), cfg.k_grid.end());

  std::vector<std::vector<uint8_t>> outcomes(
      cfg.trials, std::vector<uint8_t>(cfg.k_grid.size(), kOutWrong));
  for_each_trial(cfg.trials, cfg.jobs, [&](uint64_t t) {
    Rng rng_x(derive_seed(cfg.seed, kStreamUnknown, t));
    const Mat x = sample_low_rank(f, cfg.n, cfg.r, LowRankMode::Exact, rng_x);
    std::vector<Mat> hs;
    ElemVec y;
    if (kmax > 0) {
      Rng rng_h(derive_seed(cfg.seed, kStreamSensing, t));
      hs = sample_sensing(f, cfg.n, kmax, cfg.ensemble, rng_h);
      y = measure(x, hs);
    }
    for (size_t gi = 0; gi < cfg.k_grid.size(); ++gi) {
      const size_t k = cfg.k_grid[gi];
      if (k == 0) {
        // No constraints: every matrix is feasible, never unique.
        outcomes[t][gi] = kOutAmbiguous;
        continue;
      }
      std::vector<Mat> hsk(hs.begin(), hs.begin() + k);
      ElemVec yk(y.begin(), y.begin() + k);
      uint8_t code = kOutWrong;
      try {
        DecodeOutcome out = minrank_reduced(yk, hsk);
        if (out.status == DecodeStatus::Unique)
          code = (*out.x_star == x) ? kOutSuccess : kOutWrong;
        else if (out.status == DecodeStatus::Ambiguous)
          code = kOutAmbiguous;
      } catch (const LimitError&) {
        code = kOutWrongCapped;
      }
      outcomes[t][gi] = code;
    }
  });

  SweepResult res;
  res.cfg = cfg;
  res.cells = aggregate_cells(cfg, outcomes);
  return res;
}

std::vector<SweepResult> run_sparse_compare(const SweepConfig& base,
                                            double delta,
                                            std::optional<double> delta_low) {
  std::vector<SweepResult> out;
  SweepConfig cfg = base;
  cfg.ensemble = EnsembleSpec::make_uniform(base.q);
  out.push_back(run_weak_sweep(cfg));
  cfg.ensemble = EnsembleSpec::make_sparse(base.q, delta);
  out.push_back(run_weak_sweep(cfg));
  if (delta_low) {
    cfg.ensemble = EnsembleSpec::make_sparse(base.q, *delta_low);
    out.push_back(run_weak_sweep(cfg));
  }
  return out;
}

NoisySweepResult run_noisy_sweep(const SweepConfig& cfg) {
  NoisySweepResult res;
  const double gamma = double(cfg.r) / double(cfg.n);
  if (cfg.noise.kind == NoiseSpec::Kind::DetWeight) {
    try {
      res.overlays.emplace_back(
          "det_rate", threshold_noisy_det(gamma, cfg.noise.sigma, cfg.q, 0.0));
    } catch (const std::domain_error&) {
    }
  } else if (cfg.noise.kind == NoiseSpec::Kind::IidCrossover) {
    try {
      res.overlays.emplace_back(
          "converse_alpha", alpha_converse_noisy(gamma, cfg.noise.p, cfg.q));
    } catch (const std::domain_error&) {
    }
    try {
      res.overlays.emplace_back(
          "achievable_alpha", critical_alpha(cfg.noise.p, gamma, cfg.q, 0.0));
    } catch (const std::domain_error&) {
    }
  }

  if (cfg.noise.kind == NoiseSpec::Kind::None) {
    // The noiseless limit of both noise models is the plain sweep.
    res.sweep = run_weak_sweep(cfg);
    return res;
  }

  validate_sweep_config(cfg);
  const FieldPtr f = Field::from_order(cfg.q);
  const size_t kmax = *std::max_element(cfg.k_grid.begin(), cfg.k_grid.end());

  std::vector<std::vector<uint8_t>> outcomes(
      cfg.trials, std::vector<uint8_t>(cfg.k_grid.size(), kOutWrong));
  for_each_trial(cfg.trials, cfg.jobs, [&](uint64_t t) {
    Rng rng_x(derive_seed(cfg.seed, kStreamUnknown, t));
    const Mat x = sample_low_rank(f, cfg.n, cfg.r, LowRankMode::Exact, rng_x);
    std::vector<Mat> hs;
    if (kmax > 0) {
      Rng rng_h(derive_seed(cfg.seed, kStreamSensing, t));
      hs = sample_sensing(f, cfg.n, kmax, cfg.ensemble, rng_h);
    }
    for (size_t gi = 0; gi < cfg.k_grid.size(); ++gi) {
      const size_t k = cfg.k_grid[gi];
      if (k == 0) {
        outcomes[t][gi] = kOutAmbiguous;
        continue;
      }
      uint8_t code = kOutWrong;
      try {
        Rng rng_w(derive_seed(cfg.seed, kStreamNoise, t, k));
        const ElemVec w = sample_noise(k, cfg.n, cfg.noise, f, rng_w);
        const ElemVec y = measure(x, hs, &w, k);
        std::vector<Mat> hsk(hs.begin(), hs.begin() + k);
        DecodeOutcome out =
            minrank_noisy(y, hsk, cfg.lambda, cfg.max_noise_weight);
        if (out.status == DecodeStatus::Unique)
          code = (*out.x_star == x && *out.w_star == w) ? kOutSuccess
                                                        : kOutWrong;
        else if (out.status == DecodeStatus::Ambiguous)
          code = kOutAmbiguous;
        else
          code = kOutWrongCapped;  // only the weight-cap certificate fails
      } catch (const LimitError&) {
        code = kOutWrongCapped;
      }
      outcomes[t][gi] = code;
    }
  });

  res.sweep.cfg = cfg;
  res.sweep.cells = aggregate_cells(cfg, outcomes);
  return res;
}

DistanceProfile run_distance_profile(size_t n, uint32_t q, size_t k,
                                     const EnsembleSpec& ensemble,
                                     uint64_t trials, uint64_t seed,
                                     unsigned jobs) {
  if (n < 1 || trials < 1) throw std::invalid_argument("bad profile size");
  if (ensemble.q != q) throw std::invalid_argument("ensemble field order mismatch");
  if (k > n * n) throw std::invalid_argument("k exceeds the ambient dimension n^2");
  const FieldPtr f = Field::from_order(q);

  std::vector<std::vector<uint64_t>> spectra(trials);
  for_each_trial(trials, jobs, [&](uint64_t t) {
    Rng rng_h(derive_seed(seed, kStreamSensing, t));
    std::vector<Mat> hs;
    if (k > 0) hs = sample_sensing(f, n, k, ensemble, rng_h);
    CodeSpec code = make_code(f, n, std::move(hs));
    spectra[t] = rank_spectrum(code);
  });

  DistanceProfile prof;
  prof.n = n;
  prof.q = q;
  prof.k = k;
  prof.ensemble = ensemble;
  prof.trials = trials;
  prof.seed = seed;
  prof.rate = code_rate(n, k);
  prof.gv_gamma = gv_distance(prof.rate);
  prof.cells.resize(n + 1);
  prof.dr_hist.assign(n + 1, 0);
  for (size_t r = 0; r <= n; ++r) {
    auto& cell = prof.cells[r];
    cell.r = r;
    double sum = 0.0, sumsq = 0.0;
    for (uint64_t t = 0; t < trials; ++t) {
      const double v = double(spectra[t][r]);
      sum += v;
      sumsq += v * v;
    }
    cell.mean_ncr = sum / double(trials);
    cell.var_ncr = trials > 1 ? (sumsq - sum * sum / double(trials)) /
                                    double(trials - 1)
                              : 0.0;
    if (r == 0) {
      cell.bound_lo = cell.bound_hi = 1.0;
    } else {
      auto b = codeword_count_bounds(static_cast<uint32_t>(n),
                                     static_cast<uint32_t>(r), q,
                                     static_cast<uint32_t>(k));
      cell.bound_lo = b.first;
      cell.bound_hi = b.second;
    }
  }
  for (uint64_t t = 0; t < trials; ++t) {
    size_t dr = 0;
    for (size_t r = 1; r <= n; ++r)
      if (spectra[t][r] > 0) { dr = r; break; }
    if (dr == 0)
      ++prof.trivial_codes;
    else
      ++prof.dr_hist[dr];
  }
  return prof;
}

namespace {

// Misleading-candidate list: every matrix of rank <= r, enumerated once per
// probe via echelon classes times right factors.
std::vector<Mat> rank_ball(const FieldPtr& f, size_t n, size_t r) {
  mpz_class total = count_rank_atmost(static_cast<uint32_t>(n),
                                      static_cast<uint32_t>(r), f->q());
  if (total > (1 << 20))
    throw LimitError("rank ball exceeds 2^20 candidates");
  std::vector<Mat> ball;
  ball.reserve(total.get_ui());
  ball.emplace_back(f, n, n);  // rank 0
  const uint32_t q = f->q();
  for (size_t rho = 1; rho <= r; ++rho) {
    Mat u(f, n, rho);
    BasisClassIter it(f, n, rho);
    while (it.next(u)) {
      // V runs over all full-column-rank n x rho matrices; each rank-rho X
      // factors uniquely as U V^T with U the echelon basis of its column
      // space, so no duplicates arise.
      std::vector<uint16_t> ve(n * rho, 0);
      Mat v(f, n, rho);
      for (;;) {
        size_t i = 0;
        while (i < ve.size() && ++ve[i] == q) ve[i++] = 0;
        if (i == ve.size()) break;
        std::copy(ve.begin(), ve.end(), v.mutable_data());
        if (v.rank() == rho) ball.push_back(u.matmul(v.transpose()));
      }
    }
  }
  return ball;
}

}  // namespace

ReliabilityResult run_reliability_probe(size_t n, size_t r, uint32_t q,
                                        size_t k, uint64_t trials,
                                        uint64_t seed, unsigned jobs) {
  if (n < 1 || r < 1 || r > n) throw std::invalid_argument("bad probe rank");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const FieldPtr f = Field::from_order(q);
  const EnsembleSpec ens = EnsembleSpec::make_uniform(q);
  const std::vector<Mat> ball = rank_ball(f, n, r);

  // GF(2) path: matrices as entry bitmasks, constraints as parities.
  const bool bits = (q == 2 && n * n <= 64);
  std::vector<uint64_t> ball_bits;
  if (bits) {
    ball_bits.reserve(ball.size());
    for (const Mat& z : ball) {
      uint64_t m = 0;
      for (size_t i = 0; i < n * n; ++i)
        m |= uint64_t(z.data()[i] & 1) << i;
      ball_bits.push_back(m);
    }
  }

  std::vector<uint8_t> failed(trials, 0);
  for_each_trial(trials, jobs, [&](uint64_t t) {
    Rng rng_x(derive_seed(seed, kStreamUnknown, t));
    const Mat x = sample_low_rank(f, n, r, LowRankMode::Exact, rng_x);
    std::vector<Mat> hs;
    if (k > 0) {
      Rng rng_h(derive_seed(seed, kStreamSensing, t));
      hs = sample_sensing(f, n, static_cast<uint32_t>(k), ens, rng_h);
    }
    bool fail = false;
    if (bits) {
      uint64_t xm = 0;
      for (size_t i = 0; i < n * n; ++i)
        xm |= uint64_t(x.data()[i] & 1) << i;
      std::vector<uint64_t> hm(k);
      std::vector<uint8_t> y(k);
      for (size_t a = 0; a < k; ++a) {
        uint64_t m = 0;
        for (size_t i = 0; i < n * n; ++i)
          m |= uint64_t(hs[a].data()[i] & 1) << i;
        hm[a] = m;
        y[a] = static_cast<uint8_t>(__builtin_parityll(m & xm));
      }
      for (size_t zi = 0; zi < ball_bits.size() && !fail; ++zi) {
        const uint64_t zm = ball_bits[zi];
        if (zm == xm) continue;
        bool consistent = true;
        for (size_t a = 0; a < k && consistent; ++a)
          consistent = __builtin_parityll(hm[a] & zm) == y[a];
        fail = consistent;
      }
    } else {
      const ElemVec y = measure(x, hs);
      for (const Mat& z : ball) {
        if (z == x) continue;
        bool consistent = true;
        for (size_t a = 0; a < k && consistent; ++a)
          consistent = mat_inner(hs[a], z) == y[a];
        if (consistent) { fail = true; break; }
      }
    }
    failed[t] = fail ? 1 : 0;
  });

  ReliabilityResult res;
  res.n = n;
  res.r = r;
  res.k = k;
  res.q = q;
  res.trials = trials;
  res.seed = seed;
  for (uint64_t t = 0; t < trials; ++t) res.failures += failed[t];
  res.p_emp = double(res.failures) / double(trials);
  auto ci = binomial_ci(trials, res.failures);
  res.ci_lo = ci.first;
  res.ci_hi = ci.second;
  const double e = double(2 * n * r) - double(r) * double(r);
  const double lq = std::log2(double(q));
  const double big = std::exp2(e * lq);               // q^{2nr - r^2}
  const double ratio = std::exp2((e - double(k)) * lq);  // q^{2nr - r^2 - k}
  res.bound_hi = 4.0 * ratio;
  res.bound_lo = (big - 1.0) * std::exp2(-double(k) * lq) / (1.0 + 4.0 * ratio);
  return res;
}

std::pair<double, double> binomial_ci(uint64_t trials, uint64_t successes,
                                      double alpha) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");

  const double n = double(trials);
  const double target = std::log(alpha / 2.0);
  // log P(Bin(trials, p) >= s), s >= 1, p in (0,1); truncated streaming sum.
  // Callers only compare the value against target, and the partial sums
  // grow monotonically, so the sum stops once that comparison is settled.
  auto log_upper_tail = [&](uint64_t s, double p) {
    const double lp = std::log(p), lq = std::log1p(-p);
    double lt = std::lgamma(n + 1.0) - std::lgamma(double(s) + 1.0) -
                std::lgamma(n - double(s) + 1.0) +
                double(s) * lp + (n - double(s)) * lq;
    double lse = lt;
    for (uint64_t i = s + 1; i <= trials; ++i) {
      if (lse > target + 1e-9) break;
      lt += std::log(n - double(i) + 1.0) + lp - std::log(double(i)) - lq;
      lse = lse > lt ? lse + std::log1p(std::exp(lt - lse))
                     : lt + std::log1p(std::exp(lse - lt));
      if (double(i) > n * p && lt < lse - 45.0) break;
    }
    return std::min(lse, 0.0);
  };

  double lo = 0.0, hi = 1.0;
  if (successes > 0) {
    // Largest p with P(X >= s) <= alpha/2; the tail grows with p.
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
      double mid = 0.5 * (a + b);
      (log_upper_tail(successes, mid) <= target ? a : b) = mid;
    }
    lo = a;
  }
  if (successes < trials) {
    // Smallest p with P(X <= s) <= alpha/2, via the failure-count tail.
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
      double mid = 0.5 * (a + b);
      (log_upper_tail(trials - successes, 1.0 - mid) <= target ? b : a) = mid;
    }
    hi = b;
  }
  return {lo, hi};
}

std::string sweep_csv(const std::vector<SweepResult>& results) {
  std::ostringstream out;
  out << "n,q,r,k,ensemble,delta,noise,p_or_sigma,lambda,trials,successes,"
         "ambiguous,wrong,ci_lo,ci_hi,seed\n";
  for (const SweepResult& res : results) {
    const SweepConfig& c = res.cfg;
    double p_or_sigma = 0.0;
    if (c.noise.kind == NoiseSpec::Kind::DetWeight) p_or_sigma = c.noise.sigma;
    if (c.noise.kind == NoiseSpec::Kind::IidCrossover) p_or_sigma = c.noise.p;
    for (const KCell& cell : res.cells) {
      out << c.n << ',' << c.q << ',' << c.r << ',' << cell.k << ','
          << c.ensemble.name() << ',' << fmt_g(c.ensemble.effective_delta())
          << ',' << c.noise.name() << ',' << fmt_g(p_or_sigma) << ','
          << fmt_g(c.lambda) << ',' << c.trials << ',' << cell.successes << ','
          << cell.ambiguous << ',' << cell.wrong << ',' << fmt_g(cell.ci_lo)
          << ',' << fmt_g(cell.ci_hi) << ',' << c.seed << '\n';
    }
  }
  return out.str();
}

std::string distance_csv(const DistanceProfile& p) {
  std::ostringstream out;
  out << "n,q,k,r,mean_ncr,var_ncr,bound_lo,bound_hi,trials,seed\n";
  for (const auto& cell : p.cells) {
    out << p.n << ',' << p.q << ',' << p.k << ',' << cell.r << ','
        << fmt_g(cell.mean_ncr) << ',' << fmt_g(cell.var_ncr) << ','
        << fmt_g(cell.bound_lo) << ',' << fmt_g(cell.bound_hi) << ','
        << p.trials << ',' << p.seed << '\n';
  }
  return out.str();
}

std::string reliability_csv(const ReliabilityResult& r) {
  std::ostringstream out;
  out << "n,q,r,k,trials,failures,p_emp,ci_lo,ci_hi,bound_lo,bound_hi,seed\n";
  out << r.n << ',' << r.q << ',' << r.r << ',' << r.k << ',' << r.trials
      << ',' << r.failures << ',' << fmt_g(r.p_emp) << ',' << fmt_g(r.ci_lo)
      << ',' << fmt_g(r.ci_hi) << ',' << fmt_g(r.bound_lo) << ','
      << fmt_g(r.bound_hi) << ',' << r.seed << '\n';
  return out.str();
}

std::string thresholds_csv(size_t n, uint32_t q, double gamma, double sigma,
                           double p, double epsilon) {
  std::ostringstream out;
  out << "kind,value,n,q,gamma,sigma,p,epsilon\n";
  auto row = [&](const char* kind, double value) {
    out << kind << ',' << fmt_g(value) << ',' << n << ',' << q << ','
        << fmt_g(gamma) << ',' << fmt_g(sigma) << ',' << fmt_g(p) << ','
        << fmt_g(epsilon) << '\n';
  };
  row("converse_k", threshold_noiseless(static_cast<uint32_t>(n), gamma,
                                        epsilon, ThresholdKind::Converse));
  row("achievable_k", threshold_noiseless(static_cast<uint32_t>(n), gamma,
                                          epsilon, ThresholdKind::Achievable));
  row("strong_k", threshold_noiseless(static_cast<uint32_t>(n), gamma, epsilon,
                                      ThresholdKind::Strong));
  if (sigma > 0.0) {
    try {
      row("det_rate", threshold_noisy_det(gamma, sigma, double(q), epsilon));
    } catch (const std::domain_error&) {
    }
  }
  if (p > 0.0) {
    try {
      row("converse_alpha", alpha_converse_noisy(gamma, p, double(q)));
    } catch (const std::domain_error&) {
    }
    try {
      row("achievable_alpha", critical_alpha(p, gamma, double(q), epsilon));
    } catch (const std::domain_error&) {
    }
  }
  return out.str();
}

bool selftest(std::ostream& log) {
  bool all_ok = true;
  auto check = [&](const char* name, bool ok) {
    log << (ok ? "ok   " : "FAIL ") << name << '\n';
    all_ok = all_ok && ok;
  };

  {
    auto f4 = Field::make(2, 2);
    auto f9 = Field::make(3, 2);
    check("field tables",
          f4->mul(2, 2) == 3 && f4->inv(2) == 3 && f4->mul(3, 3) == 2 &&
              f9->mul(3, 3) == 2 && f9->inv(3) == 6 && f9->add(4, 5) == 6);
  }
  {
    bool ok = true;
    for (uint32_t q : {2u, 3u}) {
      for (uint32_t n = 1; n <= 4; ++n) {
        mpz_class sum = 0;
        for (uint32_t r = 0; r <= n; ++r) sum += count_rank_exact(n, r, q);
        mpz_class full;
        mpz_ui_pow_ui(full.get_mpz_t(), q, n * n);
        ok = ok && sum == full;
      }
    }
    check("rank counts partition the matrix space", ok);
  }
  {
    bool ok = true;
    for (uint32_t q : {2u, 3u})
      for (uint32_t d = 1; d <= 6 && ok; ++d)
        ok = std::fabs(vanish_prob(d, 0.3, q, 3) -
                       vanish_prob_convolved(d, 0.3, q, 3)) <= 1e-12;
    ok = ok && std::fabs(vanish_prob(3, 0.5, 2, 4) - std::pow(2.0, -4.0)) <= 1e-12;
    check("vanish probability matches convolution oracle", ok);
  }
  {
    auto f = Field::from_order(2);
    auto rep = pairwise_independence_check(f, 2, 1);
    check("pairwise independence, exhaustive",
          rep.exhaustive && rep.exact && rep.max_dev_single == 0.0 &&
              rep.max_dev_pair == 0.0);
  }
  {
    auto f = Field::from_order(2);
    bool ok = true;
    for (uint64_t t = 0; t < 20 && ok; ++t) {
      Rng rng_x(derive_seed(99, kStreamUnknown, t));
      const size_t r = t % 3;
      Mat x = sample_low_rank(f, 3, static_cast<uint32_t>(r),
                              LowRankMode::Exact, rng_x);
      Rng rng_h(derive_seed(99, kStreamSensing, t));
      auto hs = sample_sensing(f, 3, static_cast<uint32_t>(4 + t % 6),
                               EnsembleSpec::make_uniform(2), rng_h);
      ElemVec y = measure(x, hs);
      DecodeOutcome fast = minrank_reduced(y, hs);
      DecodeOutcome slow = minrank_oracle(y, hs);
      ok = fast.status == slow.status &&
           fast.achieved_rank == slow.achieved_rank;
      if (ok && fast.status == DecodeStatus::Unique)
        ok = *fast.x_star == *slow.x_star;
    }
    check("reduced decoder matches brute force", ok);
  }
  {
    auto ci0 = binomial_ci(20, 0);
    auto ci5 = binomial_ci(10, 5);
    check("binomial interval endpoints",
          std::fabs(ci0.second - (1.0 - std::pow(0.025, 1.0 / 20.0))) < 1e-9 &&
              ci0.first == 0.0 && std::fabs(ci5.first - 0.187086) < 1e-4 &&
              std::fabs(ci5.second - 0.812914) < 1e-4);
  }
  return all_ok;
}

}  // namespace rankmin
