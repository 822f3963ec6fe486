#pragma once

// Small polynomial helpers over F_p, shared by the field construction and the
// squarefree checks.  Coefficients are residues in [0, p), low degree first,
// with no trailing zeros (the zero polynomial is the empty vector).

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "frobsieve/primes.hpp"

namespace frobsieve::fp_poly {

using Poly = std::vector<uint64_t>;

inline Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline Poly add(const Poly& a, const Poly& b, uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = s >= p ? s - p : s;
  }
  return trim(std::move(r));
}

inline Poly sub(const Poly& a, const Poly& b, uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0;
    uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = x >= y ? x - y : x + p - y;
  }
  return trim(std::move(r));
}

inline Poly mul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
  }
  return trim(std::move(r));
}

// Remainder of a modulo monic m.
inline Poly rem(Poly a, const Poly& m, uint64_t p) {
  a = trim(std::move(a));
  while (a.size() >= m.size()) {
    uint64_t lead = a.back();
    size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (size_t i = 0; i < m.size(); ++i) {
        uint64_t t = mul_mod(lead, m[i], p);
        uint64_t& c = a[shift + i];
        c = c >= t ? c - t : c + p - t;
      }
    }
    a.pop_back();
    a = trim(std::move(a));
    if (a.size() < m.size()) break;
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, uint64_t p) {
  return rem(mul(a, b, p), m, p);
}

inline Poly powmod(Poly base, uint64_t k, const Poly& m, uint64_t p) {
  Poly r = {1};
  base = rem(std::move(base), m, p);
  while (k) {
    if (k & 1) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    k >>= 1;
  }
  return r;
}

inline Poly monic(Poly f, uint64_t p) {
  f = trim(std::move(f));
  if (f.empty() || f.back() == 1) return f;
  uint64_t s = inv_mod(f.back(), p);
  for (auto& c : f) c = mul_mod(c, s, p);
  return f;
}

inline Poly gcd(Poly a, Poly b, uint64_t p) {
  a = monic(std::move(a), p);
  b = monic(std::move(b), p);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::exchange(b, monic(std::move(r), p));
  }
  return a;
}

inline Poly derivative(const Poly& f, uint64_t p) {
  Poly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back(mul_mod(f[i], i % p, p));
  return trim(std::move(r));
}

}  // namespace frobsieve::fp_poly
