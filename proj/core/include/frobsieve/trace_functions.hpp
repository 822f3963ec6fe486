#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "frobsieve/cyclotomic.hpp"
#include "frobsieve/errors.hpp"
#include "frobsieve/finite_field.hpp"

namespace frobsieve {

// Where trace-function values live: a complex embedding zeta_d -> e(k/d), or
// the residue field of a degree-1 prime ideal of Z[zeta_d].  d must be a
// multiple of p (for the additive character), of r (for a multiplicative
// character of order r), and of 4p whenever square roots of q are needed
// (normalization, Fourier transforms).
struct Embedding {
  enum class Kind { Complex, Residue };
  Kind kind = Kind::Complex;
  uint64_t d = 0;
  uint64_t k = 1;       // Complex: embedding index, gcd(k, d) = 1
  PrimeIdealDeg1 ideal; // Residue
};

Embedding complex_embedding(uint64_t d, uint64_t k = 1);
Embedding residue_embedding(const PrimeIdealDeg1& ideal);

// Smallest valid root-of-unity order for characteristic p and character
// order r: lcm(4p, r).
uint64_t embedding_order(uint64_t p, uint64_t r = 1);

enum class FamilyKind { Kloosterman, ExpSum, Hyperelliptic, General };
enum class TableDomain { Fq, FqStar };

// One trace value; the active member follows the embedding kind.
struct Value {
  std::complex<double> c{};
  uint64_t r = 0;
};

// Rational function over Z, coefficients low degree first.
struct RatFunc {
  std::vector<int64_t> num{0};
  std::vector<int64_t> den{1};
};

struct TraceTable {
  FamilyKind family = FamilyKind::General;
  std::string description;
  unsigned n = 1;  // Kloosterman rank; drives the normalization exponent
  uint64_t p = 0, e = 0, q = 0;
  TableDomain domain = TableDomain::Fq;
  Embedding emb;
  bool normalized = false;
  std::vector<uint64_t> rvals;               // Residue mode, values in F_ell
  std::vector<std::complex<double>> cvals;   // Complex mode
  std::vector<bool> valid;                   // summation/sieve domain mask

  // Slot layout: Fq tables are indexed by field-element index 0..q-1;
  // FqStar tables by index-1 (length q-1, the zero element is excluded).
  size_t size() const { return domain == TableDomain::Fq ? q : q - 1; }
  size_t slot_of(uint64_t element_index) const;
  uint64_t element_index(size_t slot) const {
    return domain == TableDomain::Fq ? slot : slot + 1;
  }
};

inline constexpr uint64_t kDefaultTableCap = uint64_t{1} << 20;

// Unnormalized hyper-Kloosterman sum over x_1...x_n = a; O(q^{n-1}).
// Errors: ZeroArgument (a = 0), BadRank (n < 2), IncompatibleEmbedding.
Value kloosterman_point(unsigned n, const FiniteField& F, FieldElement a,
                        const Embedding& emb);

// Full unnormalized table over F_q^* built by the convolution recursion
// Kl_n(a) = sum_{x != 0} Kl_{n-1}(a x^{-1}) psi(x), base Kl_1(a) = psi(a);
// O(n q^2).  cache_dir, if nonempty, enables the TFS1 file cache (Residue
// mode, standard ideal generator only).
TraceTable kloosterman_table(unsigned n, const FiniteField& F, const Embedding& emb,
                             uint64_t q_cap = kDefaultTableCap, unsigned threads = 1,
                             const std::string& cache_dir = "");

// Normalized Fourier transform FT(t)(a) = -q^{-1/2} sum_x t(x) psi(tr(ax)),
// over full-field tables; conjugate_psi replaces psi by its inverse.
// Composition law: FT_psi(FT_psi(t))(x) = t(-x) and
// FT_psi(FT_psibar(t)) = t, exactly in Residue mode.
TraceTable fourier_transform_table(const TraceTable& t, const Embedding& emb,
                                   bool conjugate_psi = false, unsigned threads = 1);

// Unnormalized sum_{y} psi(tr(x f(y) + h(y))) chi(g(y)) with chi of order r
// via the canonical field generator (chi(0) := 0); poles of f, g, h are
// excluded, zeros of g only when r > 1.  Errors: BadCharacterOrder,
// DegenerateRationalFunction, IncompatibleEmbedding.
Value exp_sum(const RatFunc& f, const RatFunc& g, const RatFunc& h, uint64_t r,
              const FiniteField& F, FieldElement x, const Embedding& emb);

TraceTable exp_sum_table(const RatFunc& f, const RatFunc& g, const RatFunc& h, uint64_t r,
                         const FiniteField& F, const Embedding& emb,
                         uint64_t q_cap = kDefaultTableCap, unsigned threads = 1);

// Human-readable notes on which monodromy-classification hypotheses the
// (f, g, h, r) shape matches or visibly violates.  Informational only.
std::vector<std::string> exp_sum_hypothesis_notes(const RatFunc& f, const RatFunc& g,
                                                  const RatFunc& h, uint64_t r);

struct HyperellipticValue {
  int64_t a = 0;            // a_z = q + 1 - #X_z(F_q)
  double normalized = 0.0;  // a_z / sqrt(q)
};

// Point-count trace of y^2 = f(x)(x - z) (odd-degree model, one point at
// infinity), computed as -sum_x chi_2(f(x)(x-z)).  f must have even degree
// >= 2 with unit leading coefficient mod p, be squarefree mod p, and z must
// be a root of f in F_q.  Errors: EvenCharacteristic, BadDegree,
// NotSquarefreeModP, NotARoot.
HyperellipticValue hyperelliptic_trace(const std::vector<int64_t>& f, FieldElement z,
                                       const FiniteField& F);

// Table over z in F_q; valid exactly at the roots of f.
TraceTable hyperelliptic_table(const std::vector<int64_t>& f, const FiniteField& F,
                               const Embedding& emb);

// Multiplies by the family's normalization factor: Kloosterman
// (-1)^{n-1} q^{-(n-1)/2}, exponential sums -q^{-1/2}, hyperelliptic
// q^{-1/2}.  Residue mode realizes q^{1/2} through sqrt_q_mod (needs
// 4p | d).  denormalize_table is the exact inverse.
TraceTable normalize_table(const TraceTable& t);
TraceTable denormalize_table(const TraceTable& t);

}  // namespace frobsieve
