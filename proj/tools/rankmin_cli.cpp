// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the rankmin C API. All result data goes to
// stdout as CSV (decode additionally prints the recovered matrix in the
// text interchange format); logs and notes go to stderr. Exit codes:
// 0 success, 1 validation or I/O error, 2 work cap exceeded.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rankmin.h"

namespace {

int exit_code_for(rm_status st) {
  if (st == RM_OK) return 0;
  std::fprintf(stderr, "error: %s\n", rm_last_error());
  return st == RM_ELIMIT ? 2 : 1;
}

int emit_and_free(rm_status st, char* csv) {
  if (st == RM_OK && csv) {
    std::fputs(csv, stdout);
    rm_str_free(csv);
    return 0;
  }
  return exit_code_for(st);
}

struct SweepArgs {
  size_t n = 4;
  uint32_t q = 2;
  size_t r = 1;
  std::string ensemble = "uniform";
  double delta = 0.0;
  std::vector<size_t> k_grid;
  size_t trials = 100;
  uint64_t seed = 0;
  unsigned jobs = 1;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& a, bool with_rank = true) {
  cmd->add_option("--n", a.n, "matrix side length")->check(CLI::PositiveNumber);
  cmd->add_option("--q", a.q, "field order")->check(CLI::PositiveNumber);
  if (with_rank) cmd->add_option("--r", a.r, "true rank of the unknown");
  cmd->add_option("--k-grid", a.k_grid, "measurement counts")
      ->required()
      ->delimiter(',');
  cmd->add_option("--trials", a.trials, "trials per grid point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "master seed")->required();
  cmd->add_option("--jobs", a.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank minimization over finite fields"};
  app.set_config("--config", "", "read options from a TOML/INI file");
  app.require_subcommand(1);

  // thresholds
  struct {
    size_t n = 100;
    uint32_t q = 2;
    double gamma = 0.1, sigma = 0.0, p = 0.0, epsilon = 0.0;
  } th;
  auto* cmd_th = app.add_subcommand("thresholds", "analytic threshold table");
  cmd_th->add_option("--n", th.n)->check(CLI::PositiveNumber);
  cmd_th->add_option("--q", th.q)->check(CLI::PositiveNumber);
  cmd_th->add_option("--gamma", th.gamma, "rank ratio r/n")->required();
  cmd_th->add_option("--sigma", th.sigma, "deterministic noise fraction");
  cmd_th->add_option("--p", th.p, "iid crossover probability");
  cmd_th->add_option("--epsilon", th.epsilon, "threshold slack");

  // decode
  struct {
    std::string h_path, y_path, out_path;
    uint32_t q = 0;
    bool oracle = false, noisy = false;
    double lambda = 0.0;
    size_t max_weight = 3;
  } dec;
  auto* cmd_dec = app.add_subcommand("decode", "min-rank decode one instance");
  cmd_dec->add_option("--H", dec.h_path, "sensing matrices (concatenated blocks)")
      ->required();
  cmd_dec->add_option("--y", dec.y_path, "measurement column (k x 1 block)")
      ->required();
  cmd_dec->add_option("--q", dec.q,
                      "expected field order, checked against the files");
  cmd_dec->add_option("--out", dec.out_path, "write the solution here");
  cmd_dec->add_flag("--oracle", dec.oracle, "use the brute-force search");
  cmd_dec->add_flag("--noisy", dec.noisy, "rank + lambda * weight objective");
  cmd_dec->add_option("--lambda", dec.lambda, "noise weight multiplier");
  cmd_dec->add_option("--max-weight", dec.max_weight, "noise weight scan cap");

  // sweep
  SweepArgs sw;
  auto* cmd_sw = app.add_subcommand("sweep", "weak-recovery success sweep");
  add_sweep_options(cmd_sw, sw);
  cmd_sw->add_option("--ensemble", sw.ensemble, "uniform or sparse")
      ->check(CLI::IsMember({"uniform", "sparse"}));
  cmd_sw->add_option("--delta", sw.delta, "sparse nonzero probability");

  // sparse-compare
  SweepArgs sc;
  double sc_delta = 0.25;
  double sc_delta_low = -1.0;
  auto* cmd_sc = app.add_subcommand(
      "sparse-compare", "uniform vs sparse curves on shared seeds");
  add_sweep_options(cmd_sc, sc);
  cmd_sc->add_option("--delta", sc_delta, "sparse nonzero probability")
      ->required();
  cmd_sc->add_option("--delta-low", sc_delta_low,
                     "extra curve at this smaller delta");

  // noisy-sweep
  SweepArgs nsw;
  std::string noise_kind = "det";
  double noise_level = 0.0;
  double nsw_lambda = 0.25;
  size_t nsw_max_weight = 3;
  auto* cmd_nsw = app.add_subcommand("noisy-sweep", "noisy decoding sweep");
  add_sweep_options(cmd_nsw, nsw);
  cmd_nsw->add_option("--noise", noise_kind, "noise model")
      ->check(CLI::IsMember({"none", "det", "iid"}));
  cmd_nsw->add_option("--level", noise_level,
                      "sigma (det) or crossover probability (iid)");
  cmd_nsw->add_option("--lambda", nsw_lambda, "noise weight multiplier");
  cmd_nsw->add_option("--max-weight", nsw_max_weight, "noise weight scan cap");

  // distance
  struct {
    size_t n = 4;
    uint32_t q = 2;
    size_t k = 12;
    std::string ensemble = "uniform";
    double delta = 0.0;
    size_t trials = 100;
    uint64_t seed = 0;
    unsigned jobs = 1;
  } dist;
  auto* cmd_dist = app.add_subcommand("distance", "codeword rank spectrum statistics");
  cmd_dist->add_option("--n", dist.n)->check(CLI::PositiveNumber);
  cmd_dist->add_option("--q", dist.q)->check(CLI::PositiveNumber);
  cmd_dist->add_option("--k", dist.k, "parity checks per code")->required();
  cmd_dist->add_option("--ensemble", dist.ensemble)
      ->check(CLI::IsMember({"uniform", "sparse"}));
  cmd_dist->add_option("--delta", dist.delta);
  cmd_dist->add_option("--trials", dist.trials)->check(CLI::PositiveNumber);
  cmd_dist->add_option("--seed", dist.seed)->required();
  cmd_dist->add_option("--jobs", dist.jobs)->check(CLI::PositiveNumber);

  // reliability
  struct {
    size_t n = 4, r = 1, k = 16;
    uint32_t q = 2;
    size_t trials = 1000;
    uint64_t seed = 0;
    unsigned jobs = 1;
  } rel;
  auto* cmd_rel = app.add_subcommand("reliability", "direct error-event probe");
  cmd_rel->add_option("--n", rel.n)->check(CLI::PositiveNumber);
  cmd_rel->add_option("--r", rel.r)->check(CLI::PositiveNumber);
  cmd_rel->add_option("--q", rel.q)->check(CLI::PositiveNumber);
  cmd_rel->add_option("--k", rel.k)->required();
  cmd_rel->add_option("--trials", rel.trials)->check(CLI::PositiveNumber);
  cmd_rel->add_option("--seed", rel.seed)->required();
  cmd_rel->add_option("--jobs", rel.jobs)->check(CLI::PositiveNumber);

  // theta-check
  struct {
    uint32_t q = 2;
    double delta = 0.2;
    uint32_t dmax = 20;
    uint32_t k = 5;
  } tc;
  auto* cmd_tc = app.add_subcommand(
      "theta-check", "vanish probability formula vs convolution oracle");
  cmd_tc->add_option("--q", tc.q)->check(CLI::PositiveNumber);
  cmd_tc->add_option("--delta", tc.delta)->required();
  cmd_tc->add_option("--dmax", tc.dmax)->check(CLI::PositiveNumber);
  cmd_tc->add_option("--k", tc.k)->check(CLI::PositiveNumber);

  auto* cmd_self = app.add_subcommand("selftest", "run the cross-check suite");

  CLI11_PARSE(app, argc, argv);

  if (cmd_th->parsed()) {
    char* csv = nullptr;
    rm_status st =
        rm_thresholds_csv(th.n, th.q, th.gamma, th.sigma, th.p, th.epsilon,
                          &csv);
    return emit_and_free(st, csv);
  }

  if (cmd_dec->parsed()) {
    rm_mat** hs = nullptr;
    size_t k = 0;
    rm_status st = rm_mats_read_file(dec.h_path.c_str(), &hs, &k);
    if (st != RM_OK) return exit_code_for(st);
    rm_mat* ym = nullptr;
    st = rm_mat_read_file(dec.y_path.c_str(), &ym);
    if (st != RM_OK) {
      rm_mats_free(hs, k);
      return exit_code_for(st);
    }
    const uint32_t file_q = k > 0 ? rm_mat_field_order(hs[0]) : 0;
    const uint32_t y_q = rm_mat_field_order(ym);
    if (y_q != file_q || (dec.q != 0 && dec.q != file_q)) {
      std::fprintf(stderr,
                   "error: field order mismatch (H: %u, y: %u%s)\n", file_q,
                   y_q, dec.q != 0 ? ", --q disagrees" : "");
      rm_mat_free(ym);
      rm_mats_free(hs, k);
      return 1;
    }
    std::vector<uint32_t> y;
    for (size_t i = 0; i < rm_mat_rows(ym); ++i)
      for (size_t j = 0; j < rm_mat_cols(ym); ++j) {
        uint32_t v = 0;
        rm_mat_get(ym, i, j, &v);
        y.push_back(v);
      }
    rm_mat_free(ym);
    if (y.size() != k) {
      std::fprintf(stderr, "error: %zu measurements for %zu matrices\n",
                   y.size(), k);
      rm_mats_free(hs, k);
      return 1;
    }
    rm_decode_result* res = nullptr;
    if (dec.noisy)
      st = rm_minrank_noisy(hs, k, y.data(), dec.lambda, dec.max_weight, &res);
    else if (dec.oracle)
      st = rm_minrank_oracle(hs, k, y.data(), &res);
    else
      st = rm_minrank_reduced(hs, k, y.data(), &res);
    rm_mats_free(hs, k);
    if (st != RM_OK) return exit_code_for(st);

    const char* names[] = {"unique", "ambiguous", "infeasible"};
    std::printf("status,rank,noise_weight,minimizers,examined\n");
    std::printf("%s,%zu,%zu,%zu,%" PRIu64 "\n",
                names[rm_decode_get_status(res)], rm_decode_get_rank(res),
                rm_decode_get_noise_weight(res), rm_decode_get_minimizers(res),
                rm_decode_get_examined(res));
    int code = 0;
    if (rm_decode_get_status(res) == RM_DECODE_UNIQUE) {
      rm_mat* x = nullptr;
      st = rm_decode_get_solution(res, &x);
      if (st == RM_OK) {
        if (!dec.out_path.empty()) {
          st = rm_mat_write_file(x, dec.out_path.c_str());
        } else {
          char* text = nullptr;
          st = rm_mat_to_text(x, &text);
          if (st == RM_OK) {
            std::fputs(text, stdout);
            rm_str_free(text);
          }
        }
        if (st != RM_OK) code = exit_code_for(st);
        rm_mat_free(x);
      } else {
        code = exit_code_for(st);
      }
    }
    rm_decode_result_free(res);
    return code;
  }

  if (cmd_sw->parsed()) {
    char* csv = nullptr;
    rm_status st = rm_run_weak_sweep_csv(
        sw.n, sw.q, sw.r, sw.ensemble == "uniform" ? 1 : 0, sw.delta,
        sw.k_grid.data(), sw.k_grid.size(), sw.trials, sw.seed, sw.jobs, &csv);
    return emit_and_free(st, csv);
  }

  if (cmd_sc->parsed()) {
    char* csv = nullptr;
    rm_status st = rm_run_sparse_compare_csv(
        sc.n, sc.q, sc.r, sc_delta, sc_delta_low >= 0.0 ? 1 : 0, sc_delta_low,
        sc.k_grid.data(), sc.k_grid.size(), sc.trials, sc.seed, sc.jobs, &csv);
    return emit_and_free(st, csv);
  }

  if (cmd_nsw->parsed()) {
    rm_noise_kind kind = RM_NOISE_NONE;
    if (noise_kind == "det") kind = RM_NOISE_DET_WEIGHT;
    if (noise_kind == "iid") kind = RM_NOISE_IID;
    char* csv = nullptr;
    char* overlays = nullptr;
    rm_status st = rm_run_noisy_sweep_csv(
        nsw.n, nsw.q, nsw.r, kind, noise_level, nsw_lambda, nsw_max_weight,
        nsw.k_grid.data(), nsw.k_grid.size(), nsw.trials, nsw.seed, nsw.jobs,
        &csv, &overlays);
    if (st == RM_OK && overlays) {
      std::fprintf(stderr, "threshold overlays:\n%s", overlays);
      rm_str_free(overlays);
    }
    return emit_and_free(st, csv);
  }

  if (cmd_dist->parsed()) {
    char* csv = nullptr;
    rm_status st = rm_run_distance_csv(dist.n, dist.q, dist.k,
                                       dist.ensemble == "uniform" ? 1 : 0,
                                       dist.delta, dist.trials, dist.seed,
                                       dist.jobs, &csv);
    return emit_and_free(st, csv);
  }

  if (cmd_rel->parsed()) {
    char* csv = nullptr;
    rm_status st = rm_run_reliability_csv(rel.n, rel.r, rel.q, rel.k,
                                          rel.trials, rel.seed, rel.jobs, &csv);
    return emit_and_free(st, csv);
  }

  if (cmd_tc->parsed()) {
    std::printf("d,theta,oracle,abs_dev\n");
    double max_dev = 0.0;
    for (uint32_t d = 1; d <= tc.dmax; ++d) {
      double a = 0.0, b = 0.0;
      rm_status st = rm_vanish_prob(d, tc.delta, tc.q, tc.k, &a);
      if (st == RM_OK) st = rm_vanish_prob_convolved(d, tc.delta, tc.q, tc.k, &b);
      if (st != RM_OK) return exit_code_for(st);
      const double dev = std::fabs(a - b);
      max_dev = std::max(max_dev, dev);
      std::printf("%u,%.10g,%.10g,%.3g\n", d, a, b, dev);
    }
    std::fprintf(stderr, "max abs deviation: %.3g\n", max_dev);
    return max_dev <= 1e-12 ? 0 : 1;
  }

  if (cmd_self->parsed()) {
    char* log = nullptr;
    int ok = 0;
    rm_status st = rm_selftest(&log, &ok);
    if (log) {
      std::fputs(log, stderr);
      rm_str_free(log);
    }
    if (st != RM_OK) return exit_code_for(st);
    return ok ? 0 : 1;
  }

  return 1;
}
