// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace rankmin {

namespace {

constexpr uint64_t kOracleCandidateCap = uint64_t{1} << 26;

void check_instance(const ElemVec& y, const std::vector<Mat>& hs) {
  if (hs.empty()) throw std::invalid_argument("no sensing matrices");
  if (y.size() != hs.size())
    throw std::invalid_argument("measurement count does not match sensor count");
  const Mat& h0 = hs.front();
  for (const Mat& h : hs) {
    if (h.rows() != h0.rows() || h.cols() != h0.cols())
      throw std::invalid_argument("sensing matrices must share one shape");
    if (!h.field()->same(*h0.field()))
      throw std::invalid_argument("sensing matrices must share one field");
  }
  for (uint16_t v : y)
    if (v >= h0.field()->q())
      throw std::invalid_argument("measurement entry out of field range");
}

// Odometer over all matrices of the given shape, entry (0,0) fastest.
bool next_candidate(const Field& f, std::vector<uint16_t>& e) {
  for (auto& v : e) {
    if (++v < f.q()) return true;
    v = 0;
  }
  return false;
}

}  // namespace

DecodeOutcome minrank_oracle(const ElemVec& y, const std::vector<Mat>& hs,
                             std::optional<size_t> r_cap) {
  check_instance(y, hs);
  const FieldPtr f = hs.front().field();
  const size_t rows = hs.front().rows(), cols = hs.front().cols();
  const size_t dim = rows * cols;
  const double log_count = dim * std::log2(double(f->q()));
  if (log_count > 26.0)
    throw LimitError("oracle candidate space exceeds 2^26");
  uint64_t total = 1;
  for (size_t i = 0; i < dim; ++i) total *= f->q();
  if (total > kOracleCandidateCap)
    throw LimitError("oracle candidate space exceeds 2^26");

  DecodeOutcome out;
  size_t best = std::numeric_limits<size_t>::max();
  Mat x(f, rows, cols);
  std::vector<uint16_t> e(dim, 0);
  do {
    ++out.solutions_examined;
    bool ok = true;
    // Constraint check before the rank computation; break on first mismatch.
    for (size_t a = 0; a < hs.size() && ok; ++a) {
      uint32_t acc = 0;
      const uint16_t* h = hs[a].raw();
      size_t idx = 0;
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j, ++idx)
          acc = f->add(acc, f->mul(h[idx], e[j * rows + i]));
      ok = (acc == y[a]);
    }
    if (!ok) continue;
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) x.set(i, j, e[j * rows + i]);
    size_t r = x.rank();
    if (r_cap && r > *r_cap) continue;
    if (r < best) {
      best = r;
      out.x_star = x;
      out.minimizers_found = 1;
    } else if (r == best && out.minimizers_found < 2) {
      ++out.minimizers_found;
    }
  } while (next_candidate(*f, e));

  if (out.minimizers_found == 0) {
    out.status = DecodeStatus::Infeasible;
    return out;
  }
  out.achieved_rank = best;
  out.status = out.minimizers_found == 1 ? DecodeStatus::Unique
                                         : DecodeStatus::Ambiguous;
  if (out.status != DecodeStatus::Unique) out.x_star.reset();
  return out;
}

Mat coset_augment(const ElemVec& y, const std::vector<Mat>& hs) {
  check_instance(y, hs);
  return stack_vectorized(hs, &y);
}

BasisClassIter::BasisClassIter(FieldPtr f, size_t n_dim, size_t r)
    : f_(std::move(f)), n_(n_dim), r_(r) {
  if (r_ == 0 || r_ > n_) throw std::invalid_argument("basis rank out of range");
  piv_.resize(r_);
  for (size_t t = 0; t < r_; ++t) piv_[t] = t;
  reset_free_positions();
}

void BasisClassIter::reset_free_positions() {
  free_pos_.clear();
  for (size_t t = 0; t < r_; ++t) {
    for (size_t i = piv_[t] + 1; i < n_; ++i) {
      if (std::find(piv_.begin(), piv_.end(), i) == piv_.end())
        free_pos_.emplace_back(i, t);
    }
  }
  vals_.assign(free_pos_.size(), 0);
  emitted_any_in_subset_ = false;
}

bool BasisClassIter::advance_subset() {
  // Next r-subset of {0..n-1} in lexicographic order.
  size_t i = r_;
  while (i-- > 0) {
    if (piv_[i] < n_ - r_ + i) {
      ++piv_[i];
      for (size_t j = i + 1; j < r_; ++j) piv_[j] = piv_[j - 1] + 1;
      reset_free_positions();
      return true;
    }
  }
  return false;
}

bool BasisClassIter::next(Mat& out) {
  if (done_) return false;
  if (emitted_any_in_subset_) {
    // Odometer over the free entries, last position fastest.
    size_t i = vals_.size();
    bool advanced = false;
    while (i-- > 0) {
      if (++vals_[i] < f_->q()) {
        advanced = true;
        break;
      }
      vals_[i] = 0;
    }
    if (!advanced && !advance_subset()) {
      done_ = true;
      return false;
    }
  }
  emitted_any_in_subset_ = true;
  if (out.rows() != n_ || out.cols() != r_ || !out.field()->same(*f_))
    throw std::invalid_argument("output shape mismatch in basis iteration");
  std::fill(out.mutable_data(), out.mutable_data() + n_ * r_, uint16_t{0});
  for (size_t t = 0; t < r_; ++t) out.set(piv_[t], t, 1);
  for (size_t i = 0; i < free_pos_.size(); ++i)
    out.set(free_pos_[i].first, free_pos_[i].second, vals_[i]);
  return true;
}

DecodeOutcome minrank_reduced(const ElemVec& y, const std::vector<Mat>& hs,
                              std::optional<size_t> r_cap) {
  check_instance(y, hs);
  const FieldPtr f = hs.front().field();
  const size_t rows = hs.front().rows(), cols = hs.front().cols();
  const size_t k = hs.size();

  DecodeOutcome out;
  bool y_zero = true;
  for (uint16_t v : y)
    if (v != 0) y_zero = false;
  if (y_zero) {
    out.status = DecodeStatus::Unique;
    out.x_star = Mat(f, rows, cols);
    out.achieved_rank = 0;
    out.minimizers_found = 1;
    return out;
  }

  const size_t rmax = std::min({rows, cols, r_cap.value_or(rows)});
  for (size_t r = 1; r <= rmax; ++r) {
    Mat u(f, rows, r);
    BasisClassIter it(f, rows, r);
    size_t count = 0;
    std::optional<Mat> first;
    Mat sys(f, k, cols * r);
    std::vector<std::pair<size_t, uint16_t>> nz;
    while (it.next(u)) {
      ++out.solutions_examined;
      // Row a of the system: coefficients of the right factor V (cols x r),
      // unknown (j, l) at index l*cols + j, so that X = U * V^T satisfies
      // <H_a, X> = sum_{l,j} (U^T H_a)[l][j] * V[j][l]. U columns are sparse
      // (echelon form), so accumulate row combinations per nonzero.
      uint16_t* s = sys.mutable_data();
      const uint16_t* ud = u.raw();
      for (size_t l = 0; l < r; ++l) {
        nz.clear();
        for (size_t i = 0; i < rows; ++i)
          if (ud[i * r + l] != 0) nz.emplace_back(i, ud[i * r + l]);
        for (size_t a = 0; a < k; ++a) {
          uint16_t* dst = s + a * (cols * r) + l * cols;
          std::fill(dst, dst + cols, uint16_t{0});
          const uint16_t* h = hs[a].raw();
          for (const auto& [i, uv] : nz) {
            const uint16_t* hrow = h + i * cols;
            if (uv == 1) {
              for (size_t j = 0; j < cols; ++j)
                dst[j] = f->add(dst[j], hrow[j]);
            } else {
              for (size_t j = 0; j < cols; ++j)
                dst[j] = f->add(dst[j], f->mul(uv, hrow[j]));
            }
          }
        }
      }
      auto sol = solve_affine(sys, y);
      if (!sol) continue;
      if (count == 0) {
        Mat v(f, cols, r);
        for (size_t l = 0; l < r; ++l)
          for (size_t j = 0; j < cols; ++j) v.set(j, l, sol->x0[l * cols + j]);
        first = u.matmul(v.transpose());
      }
      count += sol->nullspace.empty() ? 1 : 2;
      if (count >= 2) {
        out.status = DecodeStatus::Ambiguous;
        out.achieved_rank = r;
        out.minimizers_found = 2;
        return out;
      }
    }
    if (count == 1) {
      out.status = DecodeStatus::Unique;
      out.x_star = std::move(first);
      out.achieved_rank = r;
      out.minimizers_found = 1;
      return out;
    }
  }
  out.status = DecodeStatus::Infeasible;
  return out;
}

namespace {

// Support iteration: s-subsets of {0..k-1} lexicographically.
bool next_subset(std::vector<size_t>& idx, size_t k) {
  const size_t s = idx.size();
  size_t i = s;
  while (i-- > 0) {
    if (idx[i] < k - s + i) {
      ++idx[i];
      for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Nonzero value patterns over a fixed support, last position fastest.
bool next_pattern(std::vector<uint16_t>& vals, uint32_t q) {
  size_t i = vals.size();
  while (i-- > 0) {
    if (++vals[i] < q) return true;
    vals[i] = 1;
  }
  return false;
}

struct NoisyBest {
  double objective = std::numeric_limits<double>::infinity();
  size_t rank = 0;
  size_t weight = 0;
  size_t count = 0;  // saturates at 2
  std::optional<Mat> x;
  std::optional<ElemVec> w;
};

void offer(NoisyBest& best, double obj, size_t rank, size_t weight,
           size_t add_count, const std::optional<Mat>& x, const ElemVec& w) {
  constexpr double kTieTol = 1e-9;
  if (obj < best.objective - kTieTol) {
    best.objective = obj;
    best.rank = rank;
    best.weight = weight;
    best.count = std::min<size_t>(add_count, 2);
    best.x = x;
    best.w = w;
  } else if (obj <= best.objective + kTieTol) {
    best.count = std::min<size_t>(best.count + add_count, 2);
  }
}

}  // namespace

DecodeOutcome minrank_noisy(const ElemVec& y, const std::vector<Mat>& hs,
                            double lambda, size_t max_noise_weight) {
  check_instance(y, hs);
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be a finite nonnegative value");
  const FieldPtr f = hs.front().field();
  const uint32_t q = f->q();
  const size_t k = hs.size();
  const size_t cap = std::min(max_noise_weight, k);

  DecodeOutcome out;
  NoisyBest best;
  const size_t wt_y = hamming_weight(y);

  // The all-noise pair (X = 0, w = y) is always admissible. When its weight
  // exceeds the scan cap it is offered here so the objective bound below
  // still covers it.
  if (wt_y > cap) {
    offer(best, lambda * double(wt_y), 0, wt_y, 1,
          Mat(f, hs.front().rows(), hs.front().cols()), y);
  }

  ElemVec corrected(k);
  for (size_t s = 0; s <= cap; ++s) {
    const double base = lambda * double(s);
    if (base > best.objective + 1e-9) break;
    if (base >= best.objective - 1e-9) {
      // Only a weight-s pair with a rank-0 unknown can still tie, and that
      // pair is (0, y) with s = ||y||_0.
      if (s == wt_y) {
        ++out.solutions_examined;
        offer(best, base, 0, s, 1,
              Mat(f, hs.front().rows(), hs.front().cols()), y);
      }
      continue;
    }
    const double budget_f = best.objective - base;
    std::optional<size_t> budget;
    if (std::isfinite(budget_f))
      budget = size_t(std::max(0.0, std::floor(budget_f + 1e-9)));

    std::vector<size_t> idx(s);
    for (size_t t = 0; t < s; ++t) idx[t] = t;
    do {
      std::vector<uint16_t> vals(s, 1);
      do {
        ++out.solutions_examined;
        corrected = y;
        for (size_t t = 0; t < s; ++t)
          corrected[idx[t]] = f->sub(y[idx[t]], vals[t]);
        DecodeOutcome inner = minrank_reduced(corrected, hs, budget);
        out.solutions_examined += inner.solutions_examined;
        if (inner.status == DecodeStatus::Infeasible) continue;
        ElemVec w(k, 0);
        for (size_t t = 0; t < s; ++t) w[idx[t]] = vals[t];
        offer(best, base + double(inner.achieved_rank), inner.achieved_rank, s,
              inner.minimizers_found, inner.x_star, w);
      } while (s > 0 && next_pattern(vals, q));
    } while (s > 0 && next_subset(idx, k));
  }

  // The scan is exhaustive over weights <= cap. Any unexplored pair has
  // weight >= cap+1 and rank >= 1 unless it equals (0, y), which was offered
  // above; so optimality is certified when lambda*(cap+1) + 1 beats the best
  // objective, or when the cap already spans every weight.
  const bool certified =
      cap >= k || lambda * double(cap + 1) + 1.0 > best.objective + 1e-9;
  if (!certified || best.count == 0) {
    out.status = DecodeStatus::Infeasible;
    return out;
  }
  out.achieved_rank = best.rank;
  out.achieved_noise_weight = best.weight;
  out.minimizers_found = best.count;
  if (best.count == 1) {
    out.status = DecodeStatus::Unique;
    out.x_star = best.x;
    out.w_star = best.w;
  } else {
    out.status = DecodeStatus::Ambiguous;
  }
  return out;
}

DecodeOutcome minrank_noisy_oracle(const ElemVec& y, const std::vector<Mat>& hs,
                                   double lambda) {
  check_instance(y, hs);
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be a finite nonnegative value");
  const FieldPtr f = hs.front().field();
  const size_t rows = hs.front().rows(), cols = hs.front().cols();
  const size_t dim = rows * cols;
  const double log_count = dim * std::log2(double(f->q()));
  if (log_count > 26.0)
    throw LimitError("oracle candidate space exceeds 2^26");

  DecodeOutcome out;
  NoisyBest best;
  Mat x(f, rows, cols);
  std::vector<uint16_t> e(dim, 0);
  ElemVec w(hs.size());
  do {
    ++out.solutions_examined;
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) x.set(i, j, e[j * rows + i]);
    for (size_t a = 0; a < hs.size(); ++a)
      w[a] = f->sub(y[a], mat_inner(hs[a], x));
    const size_t wt = hamming_weight(w);
    const size_t r = x.rank();
    offer(best, double(r) + lambda * double(wt), r, wt, 1, x, w);
  } while (next_candidate(*f, e));

  out.achieved_rank = best.rank;
  out.achieved_noise_weight = best.weight;
  out.minimizers_found = best.count;
  if (best.count == 1) {
    out.status = DecodeStatus::Unique;
    out.x_star = best.x;
    out.w_star = best.w;
  } else {
    out.status = DecodeStatus::Ambiguous;
  }
  return out;
}

}  // namespace rankmin
