// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "mat.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace rankmin {
namespace {

void require_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix dimension mismatch");
  if (!a.field()->same(*b.field()))
    throw std::invalid_argument("matrix field mismatch");
}

// In-place reduced row echelon form of an augmented row-major buffer.
// Returns pivot columns. First nonzero entry in the column is the pivot;
// exact arithmetic needs no pivot-size heuristics.
std::vector<size_t> rref(const Field& f, std::vector<uint16_t>& a, size_t rows,
                         size_t cols) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      for (size_t j = c; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    uint32_t piv_inv = f.inv(a[r * cols + c]);
    for (size_t j = c; j < cols; ++j)
      a[r * cols + j] = static_cast<uint16_t>(f.mul(a[r * cols + j], piv_inv));
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint32_t factor = a[i * cols + c];
      if (factor == 0) continue;
      for (size_t j = c; j < cols; ++j) {
        uint32_t sub = f.mul(factor, a[r * cols + j]);
        a[i * cols + j] = static_cast<uint16_t>(f.sub(a[i * cols + j], sub));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Mat::Mat(FieldPtr field, size_t rows, size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, 0) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix shape");
}

Mat Mat::from_rows(FieldPtr field, const std::vector<std::vector<uint32_t>>& rows) {
  if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix shape");
  Mat m(field, rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("ragged matrix rows");
    for (size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void Mat::set(size_t i, size_t j, uint32_t v) {
  if (i >= rows_ || j >= cols_)
    throw std::invalid_argument("matrix index out of range");
  if (!field_->valid(v)) throw std::invalid_argument("entry out of field range");
  e_[i * cols_ + j] = static_cast<uint16_t>(v);
}

size_t Mat::rank() const {
  std::vector<uint16_t> work(e_.begin(), e_.end());
  return rref(*field_, work, rows_, cols_).size();
}

size_t Mat::weight() const {
  size_t w = 0;
  for (uint16_t v : e_) w += v != 0;
  return w;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.e_[j * rows_ + i] = e_[i * cols_ + j];
  return t;
}

Mat Mat::operator+(const Mat& o) const {
  require_same_shape(*this, o);
  Mat s(field_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i)
    s.e_[i] = static_cast<uint16_t>(field_->add(e_[i], o.e_[i]));
  return s;
}

Mat Mat::operator-(const Mat& o) const {
  require_same_shape(*this, o);
  Mat s(field_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i)
    s.e_[i] = static_cast<uint16_t>(field_->sub(e_[i], o.e_[i]));
  return s;
}

Mat Mat::matmul(const Mat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matmul dimension mismatch");
  if (!field_->same(*o.field_)) throw std::invalid_argument("matrix field mismatch");
  Mat p(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t l = 0; l < cols_; ++l) {
      uint32_t v = e_[i * cols_ + l];
      if (v == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        uint32_t t = field_->mul(v, o.e_[l * o.cols_ + j]);
        p.e_[i * o.cols_ + j] = static_cast<uint16_t>(field_->add(p.e_[i * o.cols_ + j], t));
      }
    }
  return p;
}

Mat Mat::scaled(uint32_t c) const {
  Mat s(field_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i)
    s.e_[i] = static_cast<uint16_t>(field_->mul(e_[i], c));
  return s;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_->same(*o.field_) && e_ == o.e_;
}

bool Mat::is_zero() const {
  for (uint16_t v : e_)
    if (v) return false;
  return true;
}

ElemVec Mat::vectorize() const {
  ElemVec v(rows_ * cols_);
  for (size_t j = 0; j < cols_; ++j)
    for (size_t i = 0; i < rows_; ++i) v[j * rows_ + i] = e_[i * cols_ + j];
  return v;
}

Mat Mat::unvectorize(FieldPtr field, const ElemVec& v, size_t rows, size_t cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("vector length mismatch");
  Mat m(std::move(field), rows, cols);
  for (size_t j = 0; j < cols; ++j)
    for (size_t i = 0; i < rows; ++i) m.e_[i * cols + j] = v[j * rows + i];
  return m;
}

uint32_t mat_inner(const Mat& a, const Mat& b) {
  require_same_shape(a, b);
  const Field& f = *a.field();
  uint32_t acc = 0;
  const ElemVec& ae = a.data();
  const ElemVec& be = b.data();
  for (size_t i = 0; i < ae.size(); ++i) acc = f.add(acc, f.mul(ae[i], be[i]));
  return acc;
}

size_t hamming_weight(const ElemVec& v) {
  size_t w = 0;
  for (uint16_t x : v) w += x != 0;
  return w;
}

std::optional<AffineSolution> solve_affine(const Mat& a, const ElemVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  const Field& f = *a.field();
  const size_t rows = a.rows(), cols = a.cols(), width = cols + 1;
  std::vector<uint16_t> aug(rows * width);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i * width + j] = static_cast<uint16_t>(a.at(i, j));
    aug[i * width + cols] = b[i];
  }
  std::vector<size_t> pivots = rref(f, aug, rows, width);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // 0 = nonzero row

  AffineSolution sol;
  sol.x0.assign(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) sol.x0[pivots[r]] = aug[r * width + cols];

  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    ElemVec v(cols, 0);
    v[free_c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = static_cast<uint16_t>(f.neg(aug[r * width + free_c]));
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

Mat stack_vectorized(const std::vector<Mat>& hs, const ElemVec* extra_col) {
  if (hs.empty()) throw std::invalid_argument("empty sensing stack");
  const size_t cells = hs[0].rows() * hs[0].cols();
  const size_t width = cells + (extra_col ? 1 : 0);
  if (extra_col && extra_col->size() != hs.size())
    throw std::invalid_argument("extra column length mismatch");
  Mat s(hs[0].field(), hs.size(), width);
  for (size_t a = 0; a < hs.size(); ++a) {
    if (hs[a].rows() != hs[0].rows() || hs[a].cols() != hs[0].cols())
      throw std::invalid_argument("sensing stack shape mismatch");
    ElemVec v = hs[a].vectorize();
    for (size_t j = 0; j < cells; ++j) s.set(a, j, v[j]);
    if (extra_col) s.set(a, cells, (*extra_col)[a]);
  }
  return s;
}

size_t stacked_dim(const std::vector<Mat>& hs) {
  if (hs.empty()) return 0;
  return stack_vectorized(hs).rank();
}

std::string mat_to_text(const Mat& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << ' ' << m.field()->q() << '\n';
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

Mat mat_from_text(std::istream& in) {
  size_t rows = 0, cols = 0;
  uint32_t q = 0;
  if (!(in >> rows >> cols >> q)) throw IoError("bad matrix header");
  if (rows == 0 || cols == 0) throw IoError("bad matrix shape");
  FieldPtr f;
  try {
    f = Field::from_order(q);
  } catch (const std::invalid_argument&) {
    throw IoError("bad field order in matrix header");
  }
  Mat m(f, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      uint32_t v;
      if (!(in >> v)) throw IoError("truncated matrix body");
      if (v >= q) throw IoError("matrix entry out of field range");
      m.set(i, j, v);
    }
  return m;
}

std::vector<Mat> mats_from_text(std::istream& in) {
  std::vector<Mat> out;
  for (;;) {
    in >> std::ws;
    if (in.eof() || in.peek() == std::char_traits<char>::eof()) break;
    out.push_back(mat_from_text(in));
  }
  return out;
}

Mat mat_read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return mat_from_text(in);
}

std::vector<Mat> mats_read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return mats_from_text(in);
}

void mat_write_file(const Mat& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << mat_to_text(m);
}

void mats_write_file(const std::vector<Mat>& ms, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  for (const Mat& m : ms) out << mat_to_text(m);
}

}  // namespace rankmin
