#include "frobsieve/primes.hpp"

#include <numeric>

#include "frobsieve/errors.hpp"

namespace frobsieve {

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven witness set for every n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (uint64_t i = 2; i * i <= limit; ++i) {
    if (!composite[i]) {
      for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

uint64_t prime_count(uint64_t a, uint64_t m, uint64_t limit) {
  if (m == 0) fail_validation("ZeroArgument", "prime_count: modulus must be positive");
  a %= m;
  if (std::gcd(a, m) != 1)
    fail_validation("NotCoprime", "prime_count: residue " + std::to_string(a) +
                                      " shares a factor with modulus " + std::to_string(m));
  uint64_t count = 0;
  for (uint64_t p : primes_up_to(limit)) {
    if (p % m == a) ++count;
  }
  return count;
}

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, unsigned>> out;
  if (n < 2) return out;
  for (uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) {
      unsigned mult = 0;
      while (n % d == 0) {
        n /= d;
        ++mult;
      }
      out.emplace_back(d, mult);
    }
  }
  // 2/4-step wheel over numbers coprime to 2 and 3.
  for (uint64_t d = 7, step = 4; d * d <= n; d += step, step = 6 - step) {
    if (n % d == 0) {
      unsigned mult = 0;
      while (n % d == 0) {
        n /= d;
        ++mult;
      }
      out.emplace_back(d, mult);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t euler_phi(uint64_t n) {
  uint64_t phi = n;
  for (auto& [p, mult] : factorize(n)) {
    (void)mult;
    phi -= phi / p;
  }
  return phi;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
  a %= m;
  if (a == 0) fail_validation("ZeroArgument", "inv_mod: zero has no inverse");
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a);
  while (new_r != 0) {
    int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1)
    fail_validation("NotCoprime", "inv_mod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

}  // namespace frobsieve
