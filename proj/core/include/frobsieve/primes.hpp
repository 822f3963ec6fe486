#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace frobsieve {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Primes <= limit, ascending (simple sieve of Eratosthenes).
std::vector<uint64_t> primes_up_to(uint64_t limit);

// #{ primes ell <= limit : ell == a (mod m) }.  Throws NotCoprime unless
// gcd(a, m) = 1 (with a reduced mod m first); m = 1 counts all primes.
uint64_t prime_count(uint64_t a, uint64_t m, uint64_t limit);

// Prime factorization by trial division, (prime, multiplicity) pairs ascending.
std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n);

uint64_t euler_phi(uint64_t n);

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  if ((a | b) < (uint64_t{1} << 32)) return a * b % m;
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a mod m; requires gcd(a, m) = 1 (ZeroArgument on a == 0 mod m,
// NotCoprime otherwise).
uint64_t inv_mod(uint64_t a, uint64_t m);

}  // namespace frobsieve
