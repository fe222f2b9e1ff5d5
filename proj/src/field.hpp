// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic in GF(q), q = p^m <= 2^16. Elements are integers in
// [0, q) packing polynomial coefficients base p (so for GF(4) over
// x^2+x+1, the value 2 is x and 3 is x+1). Multiplication and inversion
// go through log/antilog tables built once at construction.

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace rankmin {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  // modulus, when given, lists coefficients c_0..c_m (monic, degree m,
  // irreducible over GF(p)). When omitted and m > 1, the lexicographically
  // smallest monic irreducible of degree m is selected, which is a fixed
  // deterministic choice per (p, m).
  static FieldPtr make(uint32_t p, uint32_t m);
  static FieldPtr make(uint32_t p, uint32_t m, const std::vector<uint32_t>& modulus);
  // Factors q = p^m and delegates to make(p, m).
  static FieldPtr from_order(uint32_t q);

  uint32_t q() const { return q_; }
  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return m_; }
  // Empty for prime fields; c_0..c_m otherwise.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (!addt_.empty()) return addt_[static_cast<size_t>(a) * q_ + b];
    return add_wide(a, b);
  }
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t e) const;

  bool valid(uint32_t a) const { return a < q_; }
  // Two fields interoperate iff they have the same order and modulus.
  bool same(const Field& other) const {
    return q_ == other.q_ && modulus_ == other.modulus_;
  }

 private:
  Field() = default;
  void build_tables();
  uint32_t slow_mul(uint32_t a, uint32_t b) const;
  uint32_t add_wide(uint32_t a, uint32_t b) const;  // q > 256, digit-wise

  uint32_t q_ = 0, p_ = 0, m_ = 0;
  std::vector<uint32_t> modulus_;
  std::vector<uint16_t> log_;   // log_[a], a in [1, q)
  std::vector<uint16_t> exp_;   // exp_[i] = g^i, i in [0, q-1)
  std::vector<uint16_t> addt_;  // q*q add table when q <= 256, else empty
};

}  // namespace rankmin
