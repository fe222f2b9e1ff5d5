// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense matrices over GF(q): rank via Gaussian elimination, trace inner
// product, affine solving with nullspace bases, vectorization, and the
// text interchange format ("rows cols q" header + row-major entries).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace rankmin {

// Element vector; the owning field travels alongside in the operations
// that need arithmetic.
using ElemVec = std::vector<uint16_t>;

class Mat {
 public:
  Mat(FieldPtr field, size_t rows, size_t cols);  // zero-filled
  static Mat from_rows(FieldPtr field,
                       const std::vector<std::vector<uint32_t>>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  uint32_t at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
  void set(size_t i, size_t j, uint32_t v);
  const ElemVec& data() const { return e_; }
  const uint16_t* raw() const { return e_.data(); }
  // Unchecked write access; the caller keeps entries inside [0, q).
  uint16_t* mutable_data() { return e_.data(); }

  size_t rank() const;
  size_t weight() const;  // nonzero entry count
  Mat transpose() const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat matmul(const Mat& o) const;
  Mat scaled(uint32_t c) const;
  bool operator==(const Mat& o) const;
  bool is_zero() const;

  // Column-stacked vectorization: index (i, j) -> j*rows + i.
  ElemVec vectorize() const;
  static Mat unvectorize(FieldPtr field, const ElemVec& v, size_t rows, size_t cols);

 private:
  FieldPtr field_;
  size_t rows_, cols_;
  ElemVec e_;
};

uint32_t mat_inner(const Mat& a, const Mat& b);  // sum_ij a_ij * b_ij

size_t hamming_weight(const ElemVec& v);

struct AffineSolution {
  ElemVec x0;                       // one solution of A x = b
  std::vector<ElemVec> nullspace;   // basis of {x : A x = 0}
};

// Empty optional means the system is inconsistent. The full solution set is
// {x0 + span(nullspace)}, of size q^{nullspace.size()}.
std::optional<AffineSolution> solve_affine(const Mat& a, const ElemVec& b);

// Rank of the k x (rows*cols) matrix whose rows are the vectorized inputs.
size_t stacked_dim(const std::vector<Mat>& hs);
// That stacked matrix itself; optional extra column appended on the right.
Mat stack_vectorized(const std::vector<Mat>& hs, const ElemVec* extra_col = nullptr);

// Text format: header "rows cols q", then one line of entries per row.
// Writing then reading is bit-exact.
std::string mat_to_text(const Mat& m);
Mat mat_from_text(std::istream& in);
std::vector<Mat> mats_from_text(std::istream& in);  // concatenated blocks
Mat mat_read_file(const std::string& path);
std::vector<Mat> mats_read_file(const std::string& path);
void mat_write_file(const Mat& m, const std::string& path);
void mats_write_file(const std::vector<Mat>& ms, const std::string& path);

}  // namespace rankmin
