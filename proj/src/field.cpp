// Copyright 2026 The rankmin Authors
// SPDX-License-Identifier: Apache-2.0

#include "field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rankmin {
namespace {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over GF(p) as coefficient vectors c_0..c_deg, trailing
// nonzero (except the zero polynomial, which is the empty vector).
using Poly = std::vector<uint32_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Remainder of a mod b, b monic-normalizable (leading coefficient != 0).
Poly poly_mod(Poly a, const Poly& b, uint32_t p) {
  a = trim(a);
  const size_t db = b.size() - 1;
  // inverse of b's leading coefficient mod p
  uint32_t lead = b.back(), lead_inv = 1;
  for (uint32_t x = 1; x < p; ++x)
    if (lead * x % p == 1) { lead_inv = x; break; }
  while (a.size() > db) {
    uint32_t coef = static_cast<uint32_t>(static_cast<uint64_t>(a.back()) * lead_inv % p);
    size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) {
      uint64_t sub = static_cast<uint64_t>(coef) * b[i] % p;
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
    }
    a = trim(a);
    if (a.empty()) break;
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2. Feasible for
// all q <= 2^16 (at most a few hundred candidate divisors).
bool poly_irreducible(const Poly& f, uint32_t p) {
  const size_t deg = f.size() - 1;
  if (deg == 1) return true;
  for (size_t d = 1; 2 * d <= deg; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (uint64_t code = 0; code < count; ++code) {
      Poly div(d + 1, 0);
      uint64_t c = code;
      for (size_t i = 0; i < d; ++i) { div[i] = static_cast<uint32_t>(c % p); c /= p; }
      div[d] = 1;
      if (poly_mod(f, div, p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(uint32_t p, uint32_t m) {
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) count *= p;
  for (uint64_t code = 0; code < count; ++code) {
    Poly f(m + 1, 0);
    uint64_t c = code;
    for (uint32_t i = 0; i < m; ++i) { f[i] = static_cast<uint32_t>(c % p); c /= p; }
    f[m] = 1;
    if (poly_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

std::vector<std::pair<uint32_t, uint32_t>> factorize(uint32_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      uint32_t e = 0;
      while (n % d == 0) { n /= d; ++e; }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

FieldPtr Field::make(uint32_t p, uint32_t m) {
  if (m > 1) return make(p, m, smallest_irreducible(p, m));
  return make(p, m, {});
}

FieldPtr Field::make(uint32_t p, uint32_t m, const std::vector<uint32_t>& modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > 0x10000) throw std::invalid_argument("field order exceeds 2^16");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->m_ = m;
  f->q_ = static_cast<uint32_t>(q);
  if (m > 1) {
    if (modulus.size() != m + 1 || modulus[m] != 1)
      throw std::invalid_argument("modulus must be monic of degree m");
    for (uint32_t c : modulus)
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (!poly_irreducible(modulus, p))
      throw std::domain_error("modulus is reducible over GF(p)");
    f->modulus_ = modulus;
  } else if (!modulus.empty()) {
    throw std::invalid_argument("prime field takes no modulus");
  }
  f->build_tables();
  return f;
}

FieldPtr Field::from_order(uint32_t q) {
  if (q < 2) throw std::invalid_argument("field order must be >= 2");
  uint32_t p = 0;
  for (uint32_t d = 2; d <= q; ++d) {
    if (q % d == 0) { p = d; break; }
  }
  uint32_t m = 0, rest = q;
  while (rest > 1) {
    if (rest % p != 0) throw std::invalid_argument("field order is not a prime power");
    rest /= p;
    ++m;
  }
  return make(p, m);
}

uint32_t Field::slow_mul(uint32_t a, uint32_t b) const {
  if (m_ == 1) return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p_);
  // convolve base-p digit expansions, then reduce by the modulus
  std::vector<uint32_t> da(m_, 0), db(m_, 0), prod(2 * m_ - 1, 0);
  for (uint32_t i = 0; i < m_; ++i) { da[i] = a % p_; a /= p_; }
  for (uint32_t i = 0; i < m_; ++i) { db[i] = b % p_; b /= p_; }
  for (uint32_t i = 0; i < m_; ++i)
    for (uint32_t j = 0; j < m_; ++j)
      prod[i + j] = static_cast<uint32_t>((prod[i + j] + static_cast<uint64_t>(da[i]) * db[j]) % p_);
  Poly r = poly_mod(prod, modulus_, p_);
  uint32_t out = 0;
  for (size_t i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return out;
}

void Field::build_tables() {
  // find a generator of the multiplicative group, smallest element first,
  // so the tables are deterministic
  const uint32_t order = q_ - 1;
  auto factors = factorize(order);
  auto pow_slow = [&](uint32_t a, uint32_t e) {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  uint32_t g = 0;
  for (uint32_t cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (auto [f, e] : factors) {
      (void)e;
      if (pow_slow(cand, order / f) == 1) { ok = false; break; }
    }
    if (ok) { g = cand; break; }
  }
  if (g == 0 && q_ > 2) throw std::logic_error("no multiplicative generator found");
  if (q_ == 2) g = 1;
  exp_.resize(order);
  log_.assign(q_, 0);
  uint32_t cur = 1;
  for (uint32_t i = 0; i < order; ++i) {
    exp_[i] = static_cast<uint16_t>(cur);
    log_[cur] = static_cast<uint16_t>(i);
    cur = slow_mul(cur, g);
  }
  if (q_ <= 256) {
    addt_.resize(static_cast<size_t>(q_) * q_);
    for (uint32_t a = 0; a < q_; ++a)
      for (uint32_t b = 0; b < q_; ++b) {
        uint32_t s = 0, mult = 1, x = a, y = b;
        for (uint32_t i = 0; i < m_; ++i) {
          s += (x % p_ + y % p_) % p_ * mult;
          x /= p_;
          y /= p_;
          mult *= p_;
        }
        addt_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(s);
      }
  }
}

uint32_t Field::add_wide(uint32_t a, uint32_t b) const {
  if (m_ == 1) {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t s = 0, mult = 1;
  for (uint32_t i = 0; i < m_; ++i) {
    s += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return s;
}

uint32_t Field::neg(uint32_t a) const {
  if (p_ == 2) return a;
  if (m_ == 1) return a == 0 ? 0 : p_ - a;
  uint32_t s = 0, mult = 1;
  for (uint32_t i = 0; i < m_; ++i) {
    uint32_t d = a % p_;
    s += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return s;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("division by zero in GF(q)");
  uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  uint64_t l = static_cast<uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1);
  return exp_[l];
}

}  // namespace rankmin
