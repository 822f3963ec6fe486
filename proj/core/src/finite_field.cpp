#include "frobsieve/finite_field.hpp"

#include <numeric>
#include <unordered_map>

#include "frobsieve/primes.hpp"
#include "fp_poly.hpp"

namespace frobsieve {

namespace {

// q = p^e with overflow detection; 0 means overflow.
uint64_t checked_pow(uint64_t p, unsigned e) {
  uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > UINT64_MAX / p) return 0;
    q *= p;
  }
  return q;
}

}  // namespace

FiniteField::FiniteField(uint64_t p, unsigned e, uint64_t table_cap, uint64_t size_cap)
    : p_(p), e_(e) {
  if (!is_prime_u64(p)) fail_validation("NotPrime", "field characteristic " + std::to_string(p));
  if (e == 0) fail_validation("ZeroArgument", "field degree must be positive");
  q_ = checked_pow(p, e);
  if (q_ == 0 || q_ > size_cap)
    fail_resource("FieldTooLarge", "p^e = " + std::to_string(p) + "^" + std::to_string(e) +
                                       " exceeds the size cap " + std::to_string(size_cap));
  p_pows_.resize(e + 1);
  p_pows_[0] = 1;
  for (unsigned i = 1; i <= e; ++i) p_pows_[i] = p_pows_[i - 1] * p;

  if (e == 1) {
    modulus_ = {0, 1};  // t
  } else {
    // Scan monic candidates in lexicographic order, constant term most
    // significant, and keep the first irreducible one.  Irreducibility:
    // gcd(t^{p^i} - t, f) = 1 for 1 <= i < e and t^{p^e} == t mod f.
    for (uint64_t cand = 0;; ++cand) {
      if (cand >= q_)
        fail_internal("IrreducibleSearch", "no irreducible polynomial found (impossible)");
      std::vector<uint64_t> f(e + 1, 0);
      f[e] = 1;
      uint64_t rest = cand;
      for (unsigned i = 0; i < e; ++i) {
        f[e - 1 - i] = rest % p;  // low-order digits of cand vary fastest on the high-degree side
        rest /= p;
      }
      fp_poly::Poly t = {0, 1};
      fp_poly::Poly frob = t;
      bool ok = true;
      for (unsigned i = 1; i < e; ++i) {
        frob = fp_poly::powmod(frob, p, f, p);
        fp_poly::Poly g = fp_poly::gcd(fp_poly::sub(frob, t, p), f, p);
        if (!(g.size() == 1 && g[0] == 1)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        frob = fp_poly::powmod(frob, p, f, p);
        ok = fp_poly::trim(fp_poly::sub(frob, t, p)).empty();
      }
      if (ok) {
        modulus_ = f;
        break;
      }
    }
  }

  q1_factors_ = factorize(q_ - 1);
  generator_ = 1;
  while (!has_full_order(generator_)) ++generator_;

  if (q_ <= table_cap && q_ >= 2) {
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    uint64_t x = 1;
    for (uint64_t i = 0; i + 1 < q_; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = mul_raw(x, generator_);
    }
    if (x != 1) fail_internal("GeneratorOrder", "exp table did not close");
  }
}

std::vector<uint64_t> FiniteField::decode(uint64_t index) const {
  std::vector<uint64_t> digits(e_);
  for (unsigned i = 0; i < e_; ++i) {
    digits[i] = index % p_;
    index /= p_;
  }
  return digits;
}

uint64_t FiniteField::encode(const std::vector<uint64_t>& digits) const {
  uint64_t index = 0;
  for (unsigned i = 0; i < e_; ++i) index += (i < digits.size() ? digits[i] : 0) * p_pows_[i];
  return index;
}

FieldElement FiniteField::from_index(uint64_t index) const {
  if (index >= q_)
    fail_validation("ZeroArgument", "element index " + std::to_string(index) + " out of range for q = " +
                                        std::to_string(q_));
  return {index};
}

std::vector<uint64_t> FiniteField::coefficients(FieldElement a) const { return decode(a.index); }

FieldElement FiniteField::add(FieldElement a, FieldElement b) const {
  if (e_ == 1) {
    uint64_t s = a.index + b.index;
    return {s >= p_ ? s - p_ : s};
  }
  uint64_t out = 0;
  uint64_t x = a.index, y = b.index;
  for (unsigned i = 0; i < e_; ++i) {
    uint64_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    out += s * p_pows_[i];
    x /= p_;
    y /= p_;
  }
  return {out};
}

FieldElement FiniteField::neg(FieldElement a) const {
  if (e_ == 1) return {a.index == 0 ? 0 : p_ - a.index};
  uint64_t out = 0;
  uint64_t x = a.index;
  for (unsigned i = 0; i < e_; ++i) {
    uint64_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * p_pows_[i];
    x /= p_;
  }
  return {out};
}

FieldElement FiniteField::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

uint64_t FiniteField::mul_raw(uint64_t a, uint64_t b) const {
  if (e_ == 1) return mul_mod(a, b, p_);
  fp_poly::Poly pa = decode(a), pb = decode(b);
  fp_poly::Poly r = fp_poly::rem(fp_poly::mul(fp_poly::trim(std::move(pa)), fp_poly::trim(std::move(pb)), p_),
                                 modulus_, p_);
  return encode(r);
}

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const {
  if (e_ == 1) return {mul_mod(a.index, b.index, p_)};
  if (has_tables()) {
    if (a.index == 0 || b.index == 0) return {0};
    uint64_t l = log_[a.index] + log_[b.index];
    if (l >= q_ - 1) l -= q_ - 1;
    return {exp_[l]};
  }
  return {mul_raw(a.index, b.index)};
}

uint64_t FiniteField::pow_raw(uint64_t a, uint64_t k) const {
  uint64_t r = 1;
  while (k) {
    if (k & 1) r = mul_raw(r, a);
    a = mul_raw(a, a);
    k >>= 1;
  }
  return r;
}

FieldElement FiniteField::pow(FieldElement a, uint64_t k) const {
  if (a.index == 0) return k == 0 ? one() : zero();
  if (has_tables()) {
    uint64_t l = mul_mod(log_[a.index], k % (q_ - 1), q_ - 1);
    return {exp_[l]};
  }
  return {pow_raw(a.index, k % (q_ - 1))};
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.index == 0) fail_validation("ZeroArgument", "inverse of zero");
  if (e_ == 1) return {inv_mod(a.index, p_)};
  if (has_tables()) {
    uint64_t l = log_[a.index];
    return {exp_[l == 0 ? 0 : q_ - 1 - l]};
  }
  return {pow_raw(a.index, q_ - 2)};
}

uint64_t FiniteField::abs_trace(FieldElement a) const {
  if (e_ == 1) return a.index;
  FieldElement acc = a;
  FieldElement frob = a;
  for (unsigned i = 1; i < e_; ++i) {
    frob = frobenius(frob);
    acc = add(acc, frob);
  }
  // The trace lies in the prime subfield, whose elements are the indices < p.
  if (acc.index >= p_) fail_internal("TraceRange", "absolute trace left the prime subfield");
  return acc.index;
}

bool FiniteField::has_full_order(uint64_t index) const {
  if (index == 0) return false;
  if (q_ == 2) return index == 1;
  for (auto& [r, mult] : q1_factors_) {
    (void)mult;
    if (pow_raw(index, (q_ - 1) / r) == 1) return false;
  }
  return true;
}

uint64_t FiniteField::log(FieldElement a) const {
  if (a.index == 0) fail_validation("ZeroArgument", "discrete log of zero");
  if (has_tables()) return log_[a.index];
  // Baby-step giant-step fallback for table-less fields.
  uint64_t n = q_ - 1;
  uint64_t m = 1;
  while (m * m < n) ++m;
  std::unordered_map<uint64_t, uint64_t> baby;
  baby.reserve(m);
  uint64_t cur = 1;
  for (uint64_t j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_raw(cur, generator_);
  }
  uint64_t giant = pow_raw(inv(generator()).index, m);
  cur = a.index;
  for (uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(cur);
    if (it != baby.end()) return (i * m + it->second) % n;
    cur = mul_raw(cur, giant);
  }
  fail_internal("DiscreteLog", "baby-step giant-step failed");
}

FieldElement FiniteField::unity_root(uint64_t d) const {
  if (d == 0 || (q_ - 1) % d != 0)
    fail_validation("OrderNotDividing", "no element of order " + std::to_string(d) + " in F_" +
                                            std::to_string(q_));
  return pow(generator(), (q_ - 1) / d);
}

uint64_t FiniteField::element_order(FieldElement a) const {
  if (a.index == 0) fail_validation("ZeroArgument", "order of zero");
  uint64_t order = q_ - 1;
  for (auto& [r, mult] : q1_factors_) {
    for (unsigned i = 0; i < mult; ++i) {
      if (pow(a, order / r).index == 1)
        order /= r;
      else
        break;
    }
  }
  return order;
}

bool FiniteField::is_mth_power(FieldElement a, uint64_t m) const {
  if (m == 0) fail_validation("ZeroArgument", "is_mth_power: m must be positive");
  if (a.index == 0) return true;
  uint64_t g = std::gcd(m, q_ - 1);
  return pow(a, (q_ - 1) / g).index == 1;
}

}  // namespace frobsieve
