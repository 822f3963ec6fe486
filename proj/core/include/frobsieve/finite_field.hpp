#pragma once

#include <cstdint>
#include <vector>

#include "frobsieve/errors.hpp"

namespace frobsieve {

struct FieldElement {
  uint64_t index = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

// F_{p^e} with a fully deterministic construction:
//
//  - modulus: the lexicographically smallest monic irreducible polynomial of
//    degree e over F_p, coefficient sequences compared constant term first
//    (e.g. F_4 = F_2[t]/(t^2 + t + 1), F_9 = F_3[t]/(t^2 + 1));
//  - element encoding: the residue sum c_i t^i has index sum c_i p^i, so index
//    0 is zero, indices < p form the prime subfield, and serialization of an
//    element is just its index;
//  - generator: the element of smallest index with full multiplicative order;
//  - log/exp tables relative to that generator are built when q <= table_cap.
//
// Irreducibility is checked only at construction; element operations trust
// the modulus.
class FiniteField {
public:
  static constexpr uint64_t kDefaultTableCap = uint64_t{1} << 24;
  static constexpr uint64_t kDefaultSizeCap = uint64_t{1} << 40;

  FiniteField(uint64_t p, unsigned e, uint64_t table_cap = kDefaultTableCap,
              uint64_t size_cap = kDefaultSizeCap);

  uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  uint64_t q() const { return q_; }
  bool has_tables() const { return !exp_.empty(); }

  // Monic modulus, coefficients low degree first, length e + 1.
  const std::vector<uint64_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement generator() const { return {generator_}; }

  FieldElement from_index(uint64_t index) const;
  // Prime-subfield embedding of the residue c mod p.
  FieldElement from_residue(uint64_t c) const { return {c % p_}; }
  std::vector<uint64_t> coefficients(FieldElement a) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;  // ZeroArgument on 0
  FieldElement pow(FieldElement a, uint64_t k) const;
  FieldElement frobenius(FieldElement a) const { return pow(a, p_); }

  // Absolute trace down to F_p, returned as a residue in [0, p).
  uint64_t abs_trace(FieldElement a) const;

  // Discrete log base generator(); ZeroArgument on 0.  Table lookup when
  // tables exist, baby-step/giant-step otherwise.
  uint64_t log(FieldElement a) const;

  // Element of exact multiplicative order d (OrderNotDividing unless d | q-1):
  // generator^((q-1)/d), hence deterministic.
  FieldElement unity_root(uint64_t d) const;

  uint64_t element_order(FieldElement a) const;  // ZeroArgument on 0

  // True iff x = y^m for some y (zero counts, as 0 = 0^m).
  bool is_mth_power(FieldElement a, uint64_t m) const;

private:
  uint64_t p_;
  unsigned e_;
  uint64_t q_;
  std::vector<uint64_t> modulus_;
  uint64_t generator_ = 0;
  std::vector<std::pair<uint64_t, unsigned>> q1_factors_;  // factorization of q-1
  std::vector<uint64_t> p_pows_;                           // p^0 .. p^e
  std::vector<uint64_t> exp_;                              // index of g^i, i < q-1
  std::vector<uint64_t> log_;                              // inverse of exp_, log_[0] unused

  std::vector<uint64_t> decode(uint64_t index) const;
  uint64_t encode(const std::vector<uint64_t>& digits) const;
  uint64_t mul_raw(uint64_t a, uint64_t b) const;  // table-free multiplication
  uint64_t pow_raw(uint64_t a, uint64_t k) const;
  bool has_full_order(uint64_t index) const;
};

}  // namespace frobsieve
