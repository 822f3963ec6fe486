#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "frobsieve/errors.hpp"
#include "frobsieve/ring_formulas.hpp"

namespace frobsieve {

// Finite classical groups over prime fields F_ell (ell odd), enumerated
// exhaustively by generator closure.  The bilinear forms behind Sp and the
// three SO types are pinned constants; see core/forms.md.

enum class GroupFamily { GL, SL, Sp, SOplus, SOminus, SOodd };

std::string family_name(GroupFamily f);
GroupFamily family_from_name(const std::string& name);  // UnknownFamily

struct GroupSpec {
  GroupFamily family;
  unsigned n = 0;        // matrix dimension
  uint64_t ell = 0;      // odd prime
  uint64_t cap = 10'000'000;  // refuse enumeration above this order
};

// Dimension/parity constraints: GL n>=1, SL n>=2, Sp even n>=2,
// SOplus/SOminus even n>=4, SOodd odd n>=3.  ell must be an odd prime
// (EvenCharacteristic for 2).  Throws BadDimension / NotPrime.
void validate_group_spec(GroupFamily family, unsigned n, uint64_t ell);

inline constexpr unsigned kMaxMatrixDim = 8;

struct Matrix {
  unsigned n = 0;
  std::array<uint64_t, kMaxMatrixDim * kMaxMatrixDim> a{};

  uint64_t& at(unsigned i, unsigned j) { return a[i * n + j]; }
  uint64_t at(unsigned i, unsigned j) const { return a[i * n + j]; }
  bool operator==(const Matrix&) const = default;
};

Matrix mat_identity(unsigned n);
Matrix mat_mul(const Matrix& x, const Matrix& y, uint64_t ell);
Matrix mat_transpose(const Matrix& x);
uint64_t mat_trace(const Matrix& x, uint64_t ell);
uint64_t mat_det(const Matrix& x, uint64_t ell);
Matrix mat_inverse(const Matrix& x, uint64_t ell);  // SingularMatrix

// Gram matrix of the pinned symmetric bilinear form (SO families) or the
// pinned antisymmetric form J (Sp); see core/forms.md.
Matrix pinned_form(GroupFamily family, unsigned n, uint64_t ell);

// Standard generators for the family: elementary transvections I + E_ij for
// SL (plus one diagonal generator for GL), symplectic transvections for Sp,
// products of two reflections for SO.  Every generator is checked to
// preserve the pinned form and to have determinant 1 (det -1 factors never
// appear; reflections enter only in pairs).
std::vector<Matrix> group_generators(const GroupSpec& spec);

// Closed-form order: |GL_n| = ell^{n(n-1)/2} prod_{i=1..n}(ell^i - 1),
// |SL_n| = |GL_n|/(ell-1), |Sp_{2m}| = |SO_{2m+1}| = ell^{m^2}
// prod_{i=1..m}(ell^{2i} - 1), |SO^eps_{2m}| = ell^{m(m-1)} (ell^m - eps)
// prod_{i=1..m-1}(ell^{2i} - 1).
mpz_class group_order(GroupFamily family, unsigned n, uint64_t ell);

struct TraceHistogram {
  GroupFamily family = GroupFamily::SL;
  unsigned n = 0;
  uint64_t ell = 0;
  mpz_class order;
  std::vector<uint64_t> counts;  // counts[t] = #{g : tr(g) = t}, size ell
};

// Breadth-first closure from group_generators; the element count must match
// group_order exactly (internal error otherwise).  Errors: GroupTooLarge
// when the closed-form order exceeds spec.cap or the packed-state encoding
// exceeds 64 bits.
TraceHistogram enumerate_group(const GroupSpec& spec);

struct GaussSumStat {
  double max_magnitude = 0.0;  // max over c != 0 of |sum_t N_t e(ct/ell)| / |G|
  uint64_t psi_index = 0;      // attaining c
};

GaussSumStat gauss_sum_max(const TraceHistogram& hist);

// Table of cancellation exponents alpha(G): GL_n -> n(n-1)/2,
// SL_n -> (n^2-1)/2, Sp_n and SO_n^- -> n(n+2)/8, SO_n odd -> (n^2-1)/8,
// SO_n^+ -> n(n-2)/8.
mpq_class alpha_exponent(GroupFamily family, unsigned n);

// Sieve exponent: SL_n -> (2n^2+n-1)/2, Sp_n and SO_n^± (n even) ->
// (2n^2+3n+4)/4, SO_n (n odd) -> (2n^2-n+3)/4.  GL is rejected
// (BadDimension): it is not one of the sieve families.
mpq_class sieve_exponent_B(GroupFamily family, unsigned n);

struct DimRank {
  unsigned dim = 0;
  mpq_class rank;  // rank as exact rational so 1 + dim + rank/2 stays exact
};

// (dim, rank): GL_n (n^2, n), SL_n (n^2-1, n-1), Sp_n (n(n+1)/2, n/2),
// SO_n (n(n-1)/2, floor(n/2)).
DimRank group_dim_rank(GroupFamily family, unsigned n);

// P(tr(g) in A) = sum_{t in A} N_t / |G|, exact.  MismatchedField when
// A.ell != hist.ell.
mpq_class prob_trace_in(const TraceHistogram& hist, const LocalSet& A);

}  // namespace frobsieve
