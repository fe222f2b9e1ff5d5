// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared-library C interface end to end: handles, error
// codes, decoding, counting, thresholds, and campaign CSV emitters.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "rankmin.h"

namespace {

struct FieldHandle {
  rm_field* f = nullptr;
  ~FieldHandle() { rm_field_free(f); }
};

struct MatHandle {
  rm_mat* m = nullptr;
  ~MatHandle() { rm_mat_free(m); }
};

rm_mat* make_mat(const rm_field* f, size_t rows, size_t cols,
                 const std::vector<uint32_t>& entries) {
  rm_mat* m = nullptr;
  REQUIRE(rm_mat_create(f, rows, cols, &m) == RM_OK);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      REQUIRE(rm_mat_set(m, i, j, entries[i * cols + j]) == RM_OK);
  return m;
}

std::string take_str(char* s) {
  std::string out = s ? s : "";
  rm_str_free(s);
  return out;
}

}  // namespace

TEST_CASE("field handles expose arithmetic and classified errors") {
  FieldHandle f4;
  REQUIRE(rm_field_create(2, 2, &f4.f) == RM_OK);
  CHECK(rm_field_order(f4.f) == 4);
  uint32_t v = 99;
  CHECK(rm_field_add(f4.f, 2, 3, &v) == RM_OK);
  CHECK(v == 1);
  CHECK(rm_field_mul(f4.f, 2, 2, &v) == RM_OK);
  CHECK(v == 3);
  CHECK(rm_field_inv(f4.f, 2, &v) == RM_OK);
  CHECK(v == 3);
  CHECK(rm_field_pow(f4.f, 2, 3, &v) == RM_OK);
  CHECK(v == 1);
  CHECK(rm_field_sub(f4.f, 1, 3, &v) == RM_OK);
  CHECK(v == 2);

  CHECK(rm_field_inv(f4.f, 0, &v) == RM_EDOMAIN);
  CHECK(std::strlen(rm_last_error()) > 0);
  CHECK(rm_field_mul(f4.f, 4, 1, &v) == RM_EINVAL);

  rm_field* bad = nullptr;
  CHECK(rm_field_create(6, 1, &bad) == RM_EINVAL);
  CHECK(bad == nullptr);
  CHECK(rm_field_create(2, 1, nullptr) == RM_EINVAL);

  FieldHandle f9;
  REQUIRE(rm_field_from_order(9, &f9.f) == RM_OK);
  CHECK(rm_field_order(f9.f) == 9);
  CHECK(rm_field_mul(f9.f, 3, 3, &v) == RM_OK);
  CHECK(v == 2);

  uint32_t mod[] = {2, 1, 1};  // x^2 + x + 2 over GF(3)
  FieldHandle f9b;
  REQUIRE(rm_field_create_with_modulus(3, 2, mod, 3, &f9b.f) == RM_OK);
  CHECK(rm_field_mul(f9b.f, 3, 3, &v) == RM_OK);
  CHECK(v == 7);
  uint32_t red[] = {1, 0, 1};  // (x+1)^2 over GF(2)
  rm_field* nope = nullptr;
  CHECK(rm_field_create_with_modulus(2, 2, red, 3, &nope) == RM_EDOMAIN);
}

TEST_CASE("matrix handles, text io, and the block reader") {
  FieldHandle f;
  REQUIRE(rm_field_from_order(4, &f.f) == RM_OK);
  MatHandle m;
  m.m = make_mat(f.f, 2, 3, {1, 2, 3, 0, 1, 2});
  CHECK(rm_mat_rows(m.m) == 2);
  CHECK(rm_mat_cols(m.m) == 3);
  CHECK(rm_mat_field_order(m.m) == 4);
  CHECK(rm_mat_field_order(nullptr) == 0);
  uint32_t v = 0;
  CHECK(rm_mat_get(m.m, 1, 2, &v) == RM_OK);
  CHECK(v == 2);
  CHECK(rm_mat_set(m.m, 2, 0, 1) == RM_EINVAL);
  CHECK(rm_mat_set(m.m, 0, 0, 4) == RM_EINVAL);
  size_t rank = 0;
  CHECK(rm_mat_rank(m.m, &rank) == RM_OK);
  CHECK(rank == 2);

  char* text = nullptr;
  REQUIRE(rm_mat_to_text(m.m, &text) == RM_OK);
  CHECK(take_str(text) == "2 3 4\n1 2 3\n0 1 2\n");

  const char* path = "capi_mat_tmp.txt";
  REQUIRE(rm_mat_write_file(m.m, path) == RM_OK);
  MatHandle back;
  REQUIRE(rm_mat_read_file(path, &back.m) == RM_OK);
  int eq = 0;
  CHECK(rm_mat_equal(m.m, back.m, &eq) == RM_OK);
  CHECK(eq == 1);

  // two concatenated blocks
  {
    std::FILE* fp = std::fopen("capi_mats_tmp.txt", "w");
    REQUIRE(fp != nullptr);
    std::fputs("2 3 4\n1 2 3\n0 1 2\n1 1 4\n3\n", fp);
    std::fclose(fp);
  }
  rm_mat** ms = nullptr;
  size_t count = 0;
  REQUIRE(rm_mats_read_file("capi_mats_tmp.txt", &ms, &count) == RM_OK);
  REQUIRE(count == 2);
  CHECK(rm_mat_equal(ms[0], m.m, &eq) == RM_OK);
  CHECK(eq == 1);
  CHECK(rm_mat_rows(ms[1]) == 1);
  CHECK(rm_mat_get(ms[1], 0, 0, &v) == RM_OK);
  CHECK(v == 3);
  rm_mats_free(ms, count);
  std::remove(path);
  std::remove("capi_mats_tmp.txt");

  rm_mat* missing = nullptr;
  CHECK(rm_mat_read_file("capi_no_such_file.txt", &missing) == RM_EIO);
  rm_mat* zero = nullptr;
  CHECK(rm_mat_create(f.f, 0, 2, &zero) == RM_EINVAL);
}

TEST_CASE("decode flow over the C boundary") {
  FieldHandle f;
  REQUIRE(rm_field_from_order(2, &f.f) == RM_OK);
  // full measurement of the 2x2 identity
  std::vector<MatHandle> hs(4);
  hs[0].m = make_mat(f.f, 2, 2, {1, 0, 0, 0});
  hs[1].m = make_mat(f.f, 2, 2, {0, 1, 0, 0});
  hs[2].m = make_mat(f.f, 2, 2, {0, 0, 1, 0});
  hs[3].m = make_mat(f.f, 2, 2, {0, 0, 0, 1});
  const rm_mat* harr[] = {hs[0].m, hs[1].m, hs[2].m, hs[3].m};
  const uint32_t y[] = {1, 0, 0, 1};

  rm_decode_result* res = nullptr;
  REQUIRE(rm_minrank_reduced(harr, 4, y, &res) == RM_OK);
  CHECK(rm_decode_get_status(res) == RM_DECODE_UNIQUE);
  CHECK(rm_decode_get_rank(res) == 2);
  CHECK(rm_decode_get_minimizers(res) == 1);
  CHECK(rm_decode_get_examined(res) > 0);
  MatHandle sol;
  REQUIRE(rm_decode_get_solution(res, &sol.m) == RM_OK);
  MatHandle eye;
  eye.m = make_mat(f.f, 2, 2, {1, 0, 0, 1});
  int eq = 0;
  CHECK(rm_mat_equal(sol.m, eye.m, &eq) == RM_OK);
  CHECK(eq == 1);
  // noiseless results carry no noise vector
  uint32_t wbuf[4] = {9, 9, 9, 9};
  CHECK(rm_decode_get_noise(res, wbuf, 4) == RM_EINVAL);
  rm_decode_result_free(res);

  rm_decode_result* res2 = nullptr;
  REQUIRE(rm_minrank_oracle(harr, 4, y, &res2) == RM_OK);
  CHECK(rm_decode_get_status(res2) == RM_DECODE_UNIQUE);
  CHECK(rm_decode_get_rank(res2) == 2);
  rm_decode_result_free(res2);

  rm_decode_result* res3 = nullptr;
  REQUIRE(rm_minrank_noisy(harr, 4, y, 10.0, 4, &res3) == RM_OK);
  CHECK(rm_decode_get_status(res3) == RM_DECODE_UNIQUE);
  CHECK(rm_decode_get_rank(res3) == 2);
  CHECK(rm_decode_get_noise_weight(res3) == 0);
  REQUIRE(rm_decode_get_noise(res3, wbuf, 4) == RM_OK);
  for (uint32_t w : wbuf) CHECK(w == 0);
  CHECK(rm_decode_get_noise(res3, wbuf, 3) == RM_EINVAL);
  rm_decode_result_free(res3);

  // argument screening
  rm_decode_result* bad = nullptr;
  CHECK(rm_minrank_reduced(nullptr, 4, y, &bad) == RM_EINVAL);
  CHECK(rm_minrank_reduced(harr, 4, nullptr, &bad) == RM_EINVAL);
  CHECK(rm_minrank_noisy(harr, 4, y, -1.0, 4, &bad) == RM_EINVAL);

  // 2^36 candidates trip the oracle work cap
  FieldHandle f2;
  REQUIRE(rm_field_from_order(2, &f2.f) == RM_OK);
  MatHandle big;
  big.m = make_mat(f2.f, 6, 6, std::vector<uint32_t>(36, 1));
  const rm_mat* bigarr[] = {big.m};
  const uint32_t ybig[] = {1};
  rm_decode_result* res4 = nullptr;
  CHECK(rm_minrank_oracle(bigarr, 1, ybig, &res4) == RM_ELIMIT);
}

TEST_CASE("counting strings and analytic thresholds") {
  char* s = nullptr;
  REQUIRE(rm_count_rank_exact_str(4, 1, 2, &s) == RM_OK);
  CHECK(take_str(s) == "225");
  REQUIRE(rm_count_rank_atmost_str(4, 1, 2, &s) == RM_OK);
  CHECK(take_str(s) == "226");
  double x = 0.0;
  REQUIRE(rm_count_rank_exact_log2(4, 1, 2, &x) == RM_OK);
  CHECK(x == doctest::Approx(std::log2(225.0)).epsilon(1e-12));
  CHECK(rm_count_rank_exact_str(4, 5, 2, &s) == RM_EINVAL);

  REQUIRE(rm_vanish_prob(3, 0.5, 2, 4, &x) == RM_OK);
  CHECK(x == doctest::Approx(0.0625).epsilon(1e-12));
  REQUIRE(rm_vanish_prob_convolved(3, 0.5, 2, 4, &x) == RM_OK);
  CHECK(x == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(rm_vanish_prob(3, 0.9, 2, 4, &x) == RM_EINVAL);

  REQUIRE(rm_threshold_noiseless(10, 0.2, 0.0, RM_THRESHOLD_CONVERSE, &x) ==
          RM_OK);
  CHECK(x == doctest::Approx(36.0).epsilon(1e-12));
  REQUIRE(rm_threshold_noiseless(10, 0.2, 0.0, RM_THRESHOLD_STRONG, &x) ==
          RM_OK);
  CHECK(x == doctest::Approx(64.0).epsilon(1e-12));

  REQUIRE(rm_threshold_noisy_det(0.1, 0.1, 256.0, 0.0, &x) == RM_OK);
  CHECK(x == doctest::Approx(0.63458634).epsilon(1e-6));
  CHECK(rm_threshold_noisy_det(0.5, 0.5, 2.0, 0.0, &x) == RM_EDOMAIN);

  REQUIRE(rm_alpha_converse_noisy(0.05, 0.02, 2.0, &x) == RM_OK);
  CHECK(x == doctest::Approx(0.113562).epsilon(1e-4));
  REQUIRE(rm_critical_alpha(0.02, 0.05, 2.0, 1e-6, &x) == RM_OK);
  CHECK(x > 0.30);
  CHECK(x < 0.34);
  CHECK(rm_critical_alpha(0.4, 0.2, 2.0, 0.0, &x) == RM_EDOMAIN);
}

TEST_CASE("campaign emitters are deterministic across worker counts") {
  const size_t grid[] = {2, 4};
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(rm_run_weak_sweep_csv(2, 2, 1, 1, 0.0, grid, 2, 20, 3, 1, &a) ==
          RM_OK);
  REQUIRE(rm_run_weak_sweep_csv(2, 2, 1, 1, 0.0, grid, 2, 20, 3, 2, &b) ==
          RM_OK);
  std::string sa = take_str(a), sb = take_str(b);
  CHECK(sa == sb);
  CHECK(sa.rfind("n,q,r,k,ensemble,delta,noise,p_or_sigma,lambda,trials,"
                 "successes,ambiguous,wrong,ci_lo,ci_hi,seed\n",
                 0) == 0);
  // header plus one row per grid point
  CHECK(std::count(sa.begin(), sa.end(), '\n') == 3);

  char* c = nullptr;
  REQUIRE(rm_run_sparse_compare_csv(2, 2, 1, 0.4, 0, 0.0, grid, 2, 10, 9, 1,
                                    &c) == RM_OK);
  std::string sc = take_str(c);
  CHECK(std::count(sc.begin(), sc.end(), '\n') == 5);  // 2 curves x 2 cells
  CHECK(sc.find(",sparse,0.4,") != std::string::npos);
  CHECK(sc.find(",uniform,0.5,") != std::string::npos);

  char* d = nullptr;
  char* ov = nullptr;
  REQUIRE(rm_run_noisy_sweep_csv(2, 2, 1, RM_NOISE_DET_WEIGHT, 0.3, 0.5, 2,
                                 grid, 2, 10, 13, 1, &d, &ov) == RM_OK);
  std::string sd = take_str(d), sov = take_str(ov);
  CHECK(sd.find(",det,0.3,") != std::string::npos);
  CHECK(sov.rfind("label,value\ndet_rate,", 0) == 0);

  char* e = nullptr;
  REQUIRE(rm_run_distance_csv(3, 2, 4, 1, 0.0, 20, 21, 2, &e) == RM_OK);
  std::string se = take_str(e);
  CHECK(se.rfind("n,q,k,r,mean_ncr,var_ncr,bound_lo,bound_hi,trials,seed\n",
                 0) == 0);
  CHECK(std::count(se.begin(), se.end(), '\n') == 5);

  char* g = nullptr;
  REQUIRE(rm_run_reliability_csv(3, 1, 2, 6, 50, 5, 2, &g) == RM_OK);
  std::string sg = take_str(g);
  CHECK(sg.rfind("n,q,r,k,trials,failures,p_emp,ci_lo,ci_hi,bound_lo,"
                 "bound_hi,seed\n",
                 0) == 0);

  char* t = nullptr;
  REQUIRE(rm_thresholds_csv(10, 2, 0.2, 0.0, 0.0, 0.0, &t) == RM_OK);
  CHECK(take_str(t) ==
        "kind,value,n,q,gamma,sigma,p,epsilon\n"
        "converse_k,36,10,2,0.2,0,0,0\n"
        "achievable_k,36,10,2,0.2,0,0,0\n"
        "strong_k,64,10,2,0.2,0,0,0\n");

  // invalid configs surface as EINVAL, not crashes
  CHECK(rm_run_weak_sweep_csv(2, 2, 1, 1, 0.0, grid, 2, 0, 3, 1, &a) ==
        RM_EINVAL);
  CHECK(rm_run_weak_sweep_csv(2, 2, 1, 1, 0.0, nullptr, 2, 10, 3, 1, &a) ==
        RM_EINVAL);
  CHECK(rm_run_weak_sweep_csv(2, 2, 1, 1, 0.0, grid, 2, 10, 3, 1, nullptr) ==
        RM_EINVAL);
}

TEST_CASE("selftest reports success through the C wrapper") {
  char* log = nullptr;
  int ok = 0;
  REQUIRE(rm_selftest(&log, &ok) == RM_OK);
  std::string s = take_str(log);
  CHECK(ok == 1);
  CHECK(s.find("ok   ") != std::string::npos);
  CHECK(s.find("FAIL") == std::string::npos);
}
