#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobsieve/errors.hpp"
#include "frobsieve/primes.hpp"

namespace frobsieve {

// Coefficients of the d-th cyclotomic polynomial, low degree first,
// length phi(d) + 1, monic.
std::vector<mpz_class> cyclotomic_polynomial(uint64_t d);

// Exact element of Z[zeta_d] in the power basis {zeta^0, ..., zeta^{phi(d)-1}},
// reduced modulo the d-th cyclotomic polynomial.  Coefficients are
// arbitrary-precision integers.
class CycInt {
public:
  explicit CycInt(uint64_t d);  // zero
  static CycInt zero(uint64_t d) { return CycInt(d); }
  static CycInt one(uint64_t d) { return integer(d, 1); }
  static CycInt integer(uint64_t d, const mpz_class& n);
  // zeta_d^k, reduced into the power basis.
  static CycInt zeta_pow(uint64_t d, uint64_t k);

  uint64_t d() const { return d_; }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  bool is_zero() const;

  CycInt& operator+=(const CycInt& rhs);
  CycInt& operator-=(const CycInt& rhs);
  CycInt& operator*=(const CycInt& rhs);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
  CycInt operator-() const;
  friend bool operator==(const CycInt&, const CycInt&);

  std::string to_string() const;  // e.g. "1 + 2*z^3" with z = zeta_d

private:
  uint64_t d_;
  std::vector<mpz_class> coeffs_;  // length phi(d)
  void check_same_ring(const CycInt& rhs) const;
};

// Degree-1 prime ideal (ell, zeta_d - omega) of Z[zeta_d]: ell == 1 (mod d)
// and omega has exact multiplicative order d mod ell, so reduction is the ring
// homomorphism zeta_d -> omega into F_ell.  Norm = ell.
struct PrimeIdealDeg1 {
  uint64_t d = 1;
  uint64_t ell = 2;
  uint64_t omega = 1;
  uint64_t norm() const { return ell; }
  // The conjugate ideal under zeta_d -> zeta_d^c; requires gcd(c, d) = 1.
  PrimeIdealDeg1 galois_conjugate(uint64_t c) const;
};

// Validates the defining properties (ell prime, ell == 1 mod d, omega of exact
// order d, Phi_d(omega) == 0 mod ell).
PrimeIdealDeg1 make_prime_ideal(uint64_t d, uint64_t ell, uint64_t omega);

struct CongruenceCondition {
  uint64_t modulus = 1;
  std::vector<uint64_t> classes;  // residues mod modulus
};

// One ideal per rational prime ell <= limit with ell == 1 (mod d) (and, if a
// condition is given, ell mod condition.modulus in condition.classes), with
// omega = unity_root(F_ell, d) chosen deterministically.  Each listed prime
// carries phi(d) conjugate degree-1 ideals; see ideal_multiplicity.
std::vector<PrimeIdealDeg1> deg1_prime_ideals(
    uint64_t d, uint64_t limit, const std::optional<CongruenceCondition>& condition = std::nullopt);

inline uint64_t ideal_multiplicity(uint64_t d) { return euler_phi(d); }

// Image of z in F_ell under zeta_d -> omega.
uint64_t reduce_mod(const CycInt& z, const PrimeIdealDeg1& lambda);

// s in F_ell with s^2 == p^e (mod ell), pinned by the quadratic Gauss sum
// g_p = sum_x (x|p) zeta_p^x and eps_p = 1 (p == 1 mod 4) or zeta_4 (p == 3
// mod 4): s = reduce(eps_p^{-1} g_p)^e.  Requires p odd and 4p | d, and the
// sign is fixed by the formula, never chosen.  For even e this is p^{e/2}.
uint64_t sqrt_q_mod(const PrimeIdealDeg1& lambda, uint64_t p, unsigned e);

// Archimedean embedding zeta_d -> exp(2 pi i k / d); requires gcd(k, d) = 1.
std::complex<double> complex_embed(const CycInt& z, uint64_t k);

}  // namespace frobsieve
