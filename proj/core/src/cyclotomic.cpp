#include "frobsieve/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "frobsieve/finite_field.hpp"

namespace frobsieve {

namespace {

using ZPoly = std::vector<mpz_class>;  // low degree first, no trailing zeros

ZPoly ztrim(ZPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

// Exact division of a by monic b in Z[X].
ZPoly zdiv_exact(ZPoly a, const ZPoly& b) {
  a = ztrim(std::move(a));
  if (a.size() < b.size()) return {};
  ZPoly quot(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    mpz_class lead = a.back();
    size_t shift = a.size() - b.size();
    quot[shift] = lead;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
    a = ztrim(std::move(a));
    if (a.empty()) break;
  }
  return quot;
}

struct RingData {
  uint64_t d;
  uint64_t phi;
  ZPoly cyclo;  // Phi_d, monic, length phi + 1
};

const RingData& ring_data(uint64_t d) {
  static std::map<uint64_t, RingData> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) {
    RingData rd;
    rd.d = d;
    rd.cyclo = cyclotomic_polynomial(d);
    rd.phi = rd.cyclo.size() - 1;
    it = cache.emplace(d, std::move(rd)).first;
  }
  return it->second;
}

// Reduce an arbitrary-degree integer polynomial modulo Phi_d.
ZPoly reduce_mod_cyclo(ZPoly f, const RingData& rd) {
  f = ztrim(std::move(f));
  while (f.size() > rd.phi) {
    mpz_class lead = f.back();
    size_t shift = f.size() - rd.cyclo.size();
    for (size_t i = 0; i < rd.cyclo.size(); ++i) f[shift + i] -= lead * rd.cyclo[i];
    f = ztrim(std::move(f));
  }
  f.resize(rd.phi, 0);
  return f;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(uint64_t d) {
  if (d == 0) fail_validation("ZeroArgument", "cyclotomic polynomial of order 0");
  // Phi_d = (X^d - 1) / prod_{d' | d, d' < d} Phi_{d'}, computed recursively
  // over the divisors of d (all arithmetic exact).
  ZPoly num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  if (d == 1) return num;
  for (uint64_t div = 1; div < d; ++div) {
    if (d % div == 0) num = zdiv_exact(std::move(num), cyclotomic_polynomial(div));
  }
  return num;
}

CycInt::CycInt(uint64_t d) : d_(d) {
  if (d == 0) fail_validation("ZeroArgument", "cyclotomic order must be positive");
  coeffs_.assign(ring_data(d).phi, 0);
}

CycInt CycInt::integer(uint64_t d, const mpz_class& n) {
  CycInt z(d);
  z.coeffs_[0] = n;
  return z;
}

CycInt CycInt::zeta_pow(uint64_t d, uint64_t k) {
  CycInt z(d);
  k %= d;
  const RingData& rd = ring_data(d);
  if (k < rd.phi) {
    z.coeffs_[k] = 1;
    return z;
  }
  ZPoly f(k + 1, 0);
  f[k] = 1;
  z.coeffs_ = reduce_mod_cyclo(std::move(f), rd);
  return z;
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

void CycInt::check_same_ring(const CycInt& rhs) const {
  if (d_ != rhs.d_)
    fail_validation("MixedOrders", "combining Z[zeta_" + std::to_string(d_) + "] with Z[zeta_" +
                                       std::to_string(rhs.d_) + "]");
}

CycInt& CycInt::operator+=(const CycInt& rhs) {
  check_same_ring(rhs);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs) {
  check_same_ring(rhs);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator*=(const CycInt& rhs) {
  check_same_ring(rhs);
  const RingData& rd = ring_data(d_);
  ZPoly prod(2 * rd.phi, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      if (rhs.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = reduce_mod_cyclo(std::move(prod), rd);
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt z(d_);
  for (size_t i = 0; i < coeffs_.size(); ++i) z.coeffs_[i] = -coeffs_[i];
  return z;
}

bool operator==(const CycInt& a, const CycInt& b) {
  a.check_same_ring(b);
  return a.coeffs_ == b.coeffs_;
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    mpz_class c = coeffs_[i];
    if (first) {
      if (c < 0) os << "-", c = -c;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

PrimeIdealDeg1 PrimeIdealDeg1::galois_conjugate(uint64_t c) const {
  if (std::gcd(c % d, d) != 1)
    fail_validation("NotCoprime", "galois_conjugate: exponent " + std::to_string(c) +
                                      " not coprime to " + std::to_string(d));
  return make_prime_ideal(d, ell, pow_mod(omega, c % d, ell));
}

PrimeIdealDeg1 make_prime_ideal(uint64_t d, uint64_t ell, uint64_t omega) {
  if (d == 0) fail_validation("ZeroArgument", "ideal cyclotomic order must be positive");
  if (!is_prime_u64(ell)) fail_validation("NotPrime", "ideal norm " + std::to_string(ell));
  if ((ell - 1) % d != 0)
    fail_validation("OrderNotDividing",
                    std::to_string(ell) + " != 1 (mod " + std::to_string(d) + "), no degree-1 ideal");
  omega %= ell;
  // omega must have exact order d ...
  if (omega == 0 || pow_mod(omega, d, ell) != 1)
    fail_validation("OrderNotDividing", "omega does not have order " + std::to_string(d));
  for (auto& [r, mult] : factorize(d)) {
    (void)mult;
    if (pow_mod(omega, d / r, ell) == 1)
      fail_validation("OrderNotDividing", "omega has order strictly dividing " + std::to_string(d));
  }
  // ... equivalently Phi_d(omega) == 0 (mod ell); keep both checks honest.
  uint64_t value = 0;
  const auto cyclo = cyclotomic_polynomial(d);
  for (size_t i = cyclo.size(); i-- > 0;) {
    value = mul_mod(value, omega, ell);
    uint64_t c = mpz_fdiv_ui(cyclo[i].get_mpz_t(), ell);
    value = (value + c) % ell;
  }
  if (value != 0) fail_internal("IdealCheck", "Phi_d(omega) != 0 mod ell despite exact order d");
  return PrimeIdealDeg1{d, ell, omega};
}

std::vector<PrimeIdealDeg1> deg1_prime_ideals(uint64_t d, uint64_t limit,
                                              const std::optional<CongruenceCondition>& condition) {
  if (d == 0) fail_validation("ZeroArgument", "cyclotomic order must be positive");
  if (condition && condition->modulus == 0)
    fail_validation("ZeroArgument", "congruence condition modulus must be positive");
  std::vector<PrimeIdealDeg1> out;
  for (uint64_t ell : primes_up_to(limit)) {
    if ((ell - 1) % d != 0) continue;
    if (d > 1 && ell % d == 0) continue;  // ramified (cannot occur once ell == 1 mod d, kept for clarity)
    if (condition) {
      uint64_t r = ell % condition->modulus;
      bool hit = false;
      for (uint64_t c : condition->classes) {
        if (r == c % condition->modulus) {
          hit = true;
          break;
        }
      }
      if (!hit) continue;
    }
    FiniteField f(ell, 1, /*table_cap=*/0);
    out.push_back(make_prime_ideal(d, ell, f.unity_root(d).index));
  }
  return out;
}

uint64_t reduce_mod(const CycInt& z, const PrimeIdealDeg1& lambda) {
  if (z.d() != lambda.d)
    fail_validation("MixedOrders", "reducing Z[zeta_" + std::to_string(z.d()) +
                                       "] element at an ideal of Z[zeta_" + std::to_string(lambda.d) + "]");
  uint64_t r = 0;
  const auto& coeffs = z.coefficients();
  for (size_t i = coeffs.size(); i-- > 0;) {
    r = mul_mod(r, lambda.omega, lambda.ell);
    r = (r + mpz_fdiv_ui(coeffs[i].get_mpz_t(), lambda.ell)) % lambda.ell;
  }
  return r;
}

uint64_t sqrt_q_mod(const PrimeIdealDeg1& lambda, uint64_t p, unsigned e) {
  if (!is_prime_u64(p)) fail_validation("NotPrime", "sqrt_q_mod characteristic " + std::to_string(p));
  if (p == 2) fail_validation("EvenCharacteristic", "sqrt_q_mod requires odd characteristic");
  if (lambda.d % (4 * p) != 0)
    fail_validation("OrderNotDividing", "sqrt_q_mod requires 4p | d (d = " + std::to_string(lambda.d) +
                                            ", p = " + std::to_string(p) + ")");
  const uint64_t ell = lambda.ell;
  const uint64_t omega_p = pow_mod(lambda.omega, lambda.d / p, ell);
  const uint64_t omega_4 = pow_mod(lambda.omega, lambda.d / 4, ell);
  uint64_t g = 0;
  for (uint64_t x = 1; x < p; ++x) {
    uint64_t term = pow_mod(omega_p, x, ell);
    if (pow_mod(x, (p - 1) / 2, p) == 1)
      g = (g + term) % ell;
    else
      g = (g + ell - term) % ell;
  }
  uint64_t s0 = (p % 4 == 1) ? g : mul_mod(g, inv_mod(omega_4, ell), ell);
  uint64_t s = pow_mod(s0, e, ell);
  if (mul_mod(s, s, ell) != pow_mod(p % ell, e, ell))
    fail_internal("GaussSumSquare", "Gauss-sum square root failed its defining identity");
  return s;
}

std::complex<double> complex_embed(const CycInt& z, uint64_t k) {
  const uint64_t d = z.d();
  if (std::gcd(k % d, d) != 1)
    fail_validation("NotCoprime", "complex embedding index " + std::to_string(k) +
                                      " not coprime to " + std::to_string(d));
  std::complex<double> acc{0.0, 0.0};
  const auto& coeffs = z.coefficients();
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(mul_mod(k % d, i, d)) / static_cast<double>(d);
    acc += coeffs[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

}  // namespace frobsieve
