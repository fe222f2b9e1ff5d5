// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "rankmin.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "counting.hpp"
#include "decoder.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "field.hpp"
#include "mat.hpp"

struct rm_field {
  rankmin::FieldPtr f;
};

struct rm_mat {
  rankmin::Mat m;
};

struct rm_decode_result {
  rankmin::DecodeOutcome o;
};

namespace {

thread_local std::string g_last_error = "no error";

template <typename Fn>
rm_status wrap(Fn&& fn) {
  try {
    fn();
    return RM_OK;
  } catch (const rankmin::IoError& e) {
    g_last_error = e.what();
    return RM_EIO;
  } catch (const rankmin::LimitError& e) {
    g_last_error = e.what();
    return RM_ELIMIT;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return RM_EINVAL;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return RM_EDOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RM_EINTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rm_status fail_invalid(const char* msg) {
  g_last_error = msg;
  return RM_EINVAL;
}

// Rebuilds the instance (shared field, shapes, y range) for the decoders.
void collect_instance(const rm_mat* const* hs, size_t k, const uint32_t* y,
                      std::vector<rankmin::Mat>& mats, rankmin::ElemVec& yv) {
  if (!hs || !y || k == 0)
    throw std::invalid_argument("need at least one sensing matrix");
  mats.reserve(k);
  yv.resize(k);
  for (size_t a = 0; a < k; ++a) {
    if (!hs[a]) throw std::invalid_argument("null sensing matrix handle");
    mats.push_back(hs[a]->m);
    if (y[a] >= hs[a]->m.field()->q())
      throw std::invalid_argument("measurement entry out of field range");
    yv[a] = static_cast<uint16_t>(y[a]);
  }
}

rankmin::EnsembleSpec make_ensemble(uint32_t q, int uniform, double delta) {
  return uniform ? rankmin::EnsembleSpec::make_uniform(q)
                 : rankmin::EnsembleSpec::make_sparse(q, delta);
}

rankmin::SweepConfig build_sweep_config(size_t n, uint32_t q, size_t r,
                                        const rankmin::EnsembleSpec& ens,
                                        const size_t* k_grid, size_t k_count,
                                        size_t trials, uint64_t seed,
                                        unsigned jobs) {
  if (!k_grid || k_count == 0)
    throw std::invalid_argument("empty measurement grid");
  rankmin::SweepConfig cfg;
  cfg.n = n;
  cfg.q = q;
  cfg.r = r;
  cfg.ensemble = ens;
  cfg.k_grid.assign(k_grid, k_grid + k_count);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.jobs = jobs;
  return cfg;
}

}  // namespace

extern "C" {

const char* rm_last_error(void) { return g_last_error.c_str(); }

void rm_str_free(char* s) { std::free(s); }

/* ---- fields ------------------------------------------------------- */

rm_status rm_field_create(uint32_t p, uint32_t m, rm_field** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = new rm_field{rankmin::Field::make(p, m)}; });
}

rm_status rm_field_create_with_modulus(uint32_t p, uint32_t m,
                                       const uint32_t* modulus, size_t len,
                                       rm_field** out) {
  if (!out || (!modulus && len > 0)) return fail_invalid("null pointer");
  return wrap([&] {
    std::vector<uint32_t> mod(modulus, modulus + len);
    *out = new rm_field{rankmin::Field::make(p, m, mod)};
  });
}

rm_status rm_field_from_order(uint32_t q, rm_field** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = new rm_field{rankmin::Field::from_order(q)}; });
}

void rm_field_free(rm_field* f) { delete f; }

uint32_t rm_field_order(const rm_field* f) { return f ? f->f->q() : 0; }

#define RM_FIELD_BINOP(name, expr)                                         \
  rm_status name(const rm_field* f, uint32_t a, uint32_t b, uint32_t* out) { \
    if (!f || !out) return fail_invalid("null pointer");                   \
    if (!f->f->valid(a) || !f->f->valid(b))                                \
      return fail_invalid("element out of field range");                   \
    return wrap([&] { *out = expr; });                                     \
  }

RM_FIELD_BINOP(rm_field_add, f->f->add(a, b))
RM_FIELD_BINOP(rm_field_sub, f->f->sub(a, b))
RM_FIELD_BINOP(rm_field_mul, f->f->mul(a, b))
#undef RM_FIELD_BINOP

rm_status rm_field_inv(const rm_field* f, uint32_t a, uint32_t* out) {
  if (!f || !out) return fail_invalid("null pointer");
  if (!f->f->valid(a)) return fail_invalid("element out of field range");
  return wrap([&] { *out = f->f->inv(a); });
}

rm_status rm_field_pow(const rm_field* f, uint32_t a, uint64_t e,
                       uint32_t* out) {
  if (!f || !out) return fail_invalid("null pointer");
  if (!f->f->valid(a)) return fail_invalid("element out of field range");
  return wrap([&] { *out = f->f->pow(a, e); });
}

/* ---- matrices ----------------------------------------------------- */

rm_status rm_mat_create(const rm_field* f, size_t rows, size_t cols,
                        rm_mat** out) {
  if (!f || !out) return fail_invalid("null pointer");
  return wrap([&] { *out = new rm_mat{rankmin::Mat(f->f, rows, cols)}; });
}

void rm_mat_free(rm_mat* m) { delete m; }

size_t rm_mat_rows(const rm_mat* m) { return m ? m->m.rows() : 0; }
size_t rm_mat_cols(const rm_mat* m) { return m ? m->m.cols() : 0; }

uint32_t rm_mat_field_order(const rm_mat* m) {
  return m ? m->m.field()->q() : 0;
}

rm_status rm_mat_set(rm_mat* m, size_t i, size_t j, uint32_t v) {
  if (!m) return fail_invalid("null matrix handle");
  return wrap([&] { m->m.set(i, j, v); });
}

rm_status rm_mat_get(const rm_mat* m, size_t i, size_t j, uint32_t* out) {
  if (!m || !out) return fail_invalid("null pointer");
  if (i >= m->m.rows() || j >= m->m.cols())
    return fail_invalid("index out of range");
  *out = m->m.at(i, j);
  return RM_OK;
}

rm_status rm_mat_rank(const rm_mat* m, size_t* out) {
  if (!m || !out) return fail_invalid("null pointer");
  return wrap([&] { *out = m->m.rank(); });
}

rm_status rm_mat_equal(const rm_mat* a, const rm_mat* b, int* out) {
  if (!a || !b || !out) return fail_invalid("null pointer");
  return wrap([&] { *out = (a->m == b->m) ? 1 : 0; });
}

rm_status rm_mat_read_file(const char* path, rm_mat** out) {
  if (!path || !out) return fail_invalid("null pointer");
  return wrap([&] { *out = new rm_mat{rankmin::mat_read_file(path)}; });
}

rm_status rm_mat_write_file(const rm_mat* m, const char* path) {
  if (!m || !path) return fail_invalid("null pointer");
  return wrap([&] { rankmin::mat_write_file(m->m, path); });
}

rm_status rm_mat_to_text(const rm_mat* m, char** out) {
  if (!m || !out) return fail_invalid("null pointer");
  return wrap([&] { *out = dup_string(rankmin::mat_to_text(m->m)); });
}

rm_status rm_mats_read_file(const char* path, rm_mat*** out, size_t* count) {
  if (!path || !out || !count) return fail_invalid("null pointer");
  return wrap([&] {
    std::vector<rankmin::Mat> ms = rankmin::mats_read_file(path);
    rm_mat** arr =
        static_cast<rm_mat**>(std::malloc(sizeof(rm_mat*) * ms.size()));
    if (!arr && !ms.empty()) throw std::bad_alloc();
    for (size_t i = 0; i < ms.size(); ++i)
      arr[i] = new rm_mat{std::move(ms[i])};
    *out = arr;
    *count = ms.size();
  });
}

void rm_mats_free(rm_mat** ms, size_t count) {
  if (!ms) return;
  for (size_t i = 0; i < count; ++i) delete ms[i];
  std::free(ms);
}

/* ---- decoding ------------------------------------------------------ */

rm_status rm_minrank_reduced(const rm_mat* const* hs, size_t k,
                             const uint32_t* y, rm_decode_result** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] {
    std::vector<rankmin::Mat> mats;
    rankmin::ElemVec yv;
    collect_instance(hs, k, y, mats, yv);
    *out = new rm_decode_result{rankmin::minrank_reduced(yv, mats)};
  });
}

rm_status rm_minrank_oracle(const rm_mat* const* hs, size_t k,
                            const uint32_t* y, rm_decode_result** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] {
    std::vector<rankmin::Mat> mats;
    rankmin::ElemVec yv;
    collect_instance(hs, k, y, mats, yv);
    *out = new rm_decode_result{rankmin::minrank_oracle(yv, mats)};
  });
}

rm_status rm_minrank_noisy(const rm_mat* const* hs, size_t k,
                           const uint32_t* y, double lambda,
                           size_t max_noise_weight, rm_decode_result** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] {
    std::vector<rankmin::Mat> mats;
    rankmin::ElemVec yv;
    collect_instance(hs, k, y, mats, yv);
    *out = new rm_decode_result{
        rankmin::minrank_noisy(yv, mats, lambda, max_noise_weight)};
  });
}

void rm_decode_result_free(rm_decode_result* r) { delete r; }

rm_decode_status rm_decode_get_status(const rm_decode_result* r) {
  if (!r) return RM_DECODE_INFEASIBLE;
  switch (r->o.status) {
    case rankmin::DecodeStatus::Unique: return RM_DECODE_UNIQUE;
    case rankmin::DecodeStatus::Ambiguous: return RM_DECODE_AMBIGUOUS;
    default: return RM_DECODE_INFEASIBLE;
  }
}

size_t rm_decode_get_rank(const rm_decode_result* r) {
  return r ? r->o.achieved_rank : 0;
}

size_t rm_decode_get_noise_weight(const rm_decode_result* r) {
  return r ? r->o.achieved_noise_weight : 0;
}

size_t rm_decode_get_minimizers(const rm_decode_result* r) {
  return r ? r->o.minimizers_found : 0;
}

uint64_t rm_decode_get_examined(const rm_decode_result* r) {
  return r ? r->o.solutions_examined : 0;
}

rm_status rm_decode_get_solution(const rm_decode_result* r, rm_mat** out) {
  if (!r || !out) return fail_invalid("null pointer");
  if (!r->o.x_star) return fail_invalid("no unique solution available");
  return wrap([&] { *out = new rm_mat{*r->o.x_star}; });
}

rm_status rm_decode_get_noise(const rm_decode_result* r, uint32_t* buf,
                              size_t len) {
  if (!r || !buf) return fail_invalid("null pointer");
  if (!r->o.w_star) return fail_invalid("no noise vector available");
  if (len < r->o.w_star->size()) return fail_invalid("buffer too small");
  for (size_t i = 0; i < r->o.w_star->size(); ++i) buf[i] = (*r->o.w_star)[i];
  return RM_OK;
}

/* ---- counting and thresholds -------------------------------------- */

rm_status rm_count_rank_exact_str(uint32_t n, uint32_t r, uint32_t q,
                                  char** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] {
    *out = dup_string(rankmin::count_rank_exact(n, r, q).get_str());
  });
}

rm_status rm_count_rank_atmost_str(uint32_t n, uint32_t r, uint32_t q,
                                   char** out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] {
    *out = dup_string(rankmin::count_rank_atmost(n, r, q).get_str());
  });
}

rm_status rm_count_rank_exact_log2(uint32_t n, uint32_t r, uint32_t q,
                                   double* out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] {
    *out = rankmin::log2_mpz(rankmin::count_rank_exact(n, r, q));
  });
}

rm_status rm_vanish_prob(uint32_t d, double delta, uint32_t q, uint32_t k,
                         double* out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = rankmin::vanish_prob(d, delta, q, k); });
}

rm_status rm_vanish_prob_convolved(uint32_t d, double delta, uint32_t q,
                                   uint32_t k, double* out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = rankmin::vanish_prob_convolved(d, delta, q, k); });
}

rm_status rm_threshold_noiseless(uint32_t n, double gamma, double eps,
                                 rm_threshold_kind kind, double* out) {
  if (!out) return fail_invalid("null output pointer");
  rankmin::ThresholdKind tk;
  switch (kind) {
    case RM_THRESHOLD_CONVERSE: tk = rankmin::ThresholdKind::Converse; break;
    case RM_THRESHOLD_ACHIEVABLE: tk = rankmin::ThresholdKind::Achievable; break;
    case RM_THRESHOLD_STRONG: tk = rankmin::ThresholdKind::Strong; break;
    default: return fail_invalid("unknown threshold kind");
  }
  return wrap([&] { *out = rankmin::threshold_noiseless(n, gamma, eps, tk); });
}

rm_status rm_threshold_noisy_det(double gamma, double sigma, double q,
                                 double eps, double* out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = rankmin::threshold_noisy_det(gamma, sigma, q, eps); });
}

rm_status rm_alpha_converse_noisy(double gamma, double p, double q,
                                  double* out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = rankmin::alpha_converse_noisy(gamma, p, q); });
}

rm_status rm_critical_alpha(double p, double gamma, double q, double eps,
                            double* out) {
  if (!out) return fail_invalid("null output pointer");
  return wrap([&] { *out = rankmin::critical_alpha(p, gamma, q, eps); });
}

/* ---- campaigns ----------------------------------------------------- */

rm_status rm_run_weak_sweep_csv(size_t n, uint32_t q, size_t r, int uniform,
                                double delta, const size_t* k_grid,
                                size_t k_count, size_t trials, uint64_t seed,
                                unsigned jobs, char** csv) {
  if (!csv) return fail_invalid("null output pointer");
  return wrap([&] {
    auto cfg = build_sweep_config(n, q, r, make_ensemble(q, uniform, delta),
                                  k_grid, k_count, trials, seed, jobs);
    *csv = dup_string(rankmin::sweep_csv({rankmin::run_weak_sweep(cfg)}));
  });
}

rm_status rm_run_sparse_compare_csv(size_t n, uint32_t q, size_t r,
                                    double delta, int has_delta_low,
                                    double delta_low, const size_t* k_grid,
                                    size_t k_count, size_t trials,
                                    uint64_t seed, unsigned jobs, char** csv) {
  if (!csv) return fail_invalid("null output pointer");
  return wrap([&] {
    auto cfg =
        build_sweep_config(n, q, r, rankmin::EnsembleSpec::make_uniform(q),
                           k_grid, k_count, trials, seed, jobs);
    std::optional<double> low;
    if (has_delta_low) low = delta_low;
    *csv = dup_string(
        rankmin::sweep_csv(rankmin::run_sparse_compare(cfg, delta, low)));
  });
}

rm_status rm_run_noisy_sweep_csv(size_t n, uint32_t q, size_t r,
                                 rm_noise_kind noise, double sigma_or_p,
                                 double lambda, size_t max_noise_weight,
                                 const size_t* k_grid, size_t k_count,
                                 size_t trials, uint64_t seed, unsigned jobs,
                                 char** csv, char** overlays_csv) {
  if (!csv) return fail_invalid("null output pointer");
  return wrap([&] {
    rankmin::NoiseSpec ns;
    switch (noise) {
      case RM_NOISE_NONE: ns = rankmin::NoiseSpec::none(); break;
      case RM_NOISE_DET_WEIGHT:
        ns = rankmin::NoiseSpec::det_weight(sigma_or_p);
        break;
      case RM_NOISE_IID:
        ns = rankmin::NoiseSpec::iid_crossover(sigma_or_p);
        break;
      default: throw std::invalid_argument("unknown noise kind");
    }
    auto cfg = build_sweep_config(n, q, r, rankmin::EnsembleSpec::make_uniform(q),
                                  k_grid, k_count, trials, seed, jobs);
    cfg.noise = ns;
    cfg.lambda = lambda;
    cfg.max_noise_weight = max_noise_weight;
    rankmin::NoisySweepResult res = rankmin::run_noisy_sweep(cfg);
    *csv = dup_string(rankmin::sweep_csv({res.sweep}));
    if (overlays_csv) {
      std::ostringstream overlays;
      overlays << "label,value\n";
      for (const auto& [label, value] : res.overlays) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.10g", value);
        overlays << label << ',' << buf << '\n';
      }
      *overlays_csv = dup_string(overlays.str());
    }
  });
}

rm_status rm_run_distance_csv(size_t n, uint32_t q, size_t k, int uniform,
                              double delta, size_t trials, uint64_t seed,
                              unsigned jobs, char** csv) {
  if (!csv) return fail_invalid("null output pointer");
  return wrap([&] {
    auto profile = rankmin::run_distance_profile(
        n, q, k, make_ensemble(q, uniform, delta), trials, seed, jobs);
    *csv = dup_string(rankmin::distance_csv(profile));
  });
}

rm_status rm_run_reliability_csv(size_t n, size_t r, uint32_t q, size_t k,
                                 size_t trials, uint64_t seed, unsigned jobs,
                                 char** csv) {
  if (!csv) return fail_invalid("null output pointer");
  return wrap([&] {
    auto res = rankmin::run_reliability_probe(n, r, q, k, trials, seed, jobs);
    *csv = dup_string(rankmin::reliability_csv(res));
  });
}

rm_status rm_thresholds_csv(size_t n, uint32_t q, double gamma, double sigma,
                            double p, double eps, char** csv) {
  if (!csv) return fail_invalid("null output pointer");
  return wrap([&] {
    *csv = dup_string(rankmin::thresholds_csv(n, q, gamma, sigma, p, eps));
  });
}

rm_status rm_selftest(char** log_out, int* ok) {
  if (!ok) return fail_invalid("null output pointer");
  return wrap([&] {
    std::ostringstream log;
    *ok = rankmin::selftest(log) ? 1 : 0;
    if (log_out) *log_out = dup_string(log.str());
  });
}

} /* extern "C" */
