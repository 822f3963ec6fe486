#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "frobsieve/errors.hpp"

namespace frobsieve {

// First-order formulas in the language of rings with one designated free
// variable x, prenex quantifier prefix, and equalities of integer polynomial
// expressions as atoms:
//
//   formula := quant* bool
//   quant   := ("exists" | "forall") ident ":"
//   bool    := bool ("and" | "or" | "implies") bool | "not" bool
//            | "(" bool ")" | poly "=" poly
//   poly    := poly ("+" | "-" | "*") poly | poly "^" nat | "-" poly
//            | nat | ident | "(" poly ")"
//
// Precedence: ^  >  unary -  >  *  >  +,-  and  not  >  and  >  or  >
// implies.  "a implies b" is rewritten to "not a or b" at parse time, so the
// stored AST only has and/or/not.  Inequality atoms are deliberately absent.

struct PolyExpr;
using PolyPtr = std::shared_ptr<const PolyExpr>;

struct PolyExpr {
  enum class Kind { Const, Var, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  uint64_t constant = 0;   // Const
  std::string var;         // Var
  PolyPtr lhs, rhs;        // binary ops; lhs only for Neg/Pow
  uint64_t exponent = 0;   // Pow
};

struct BoolExpr;
using BoolPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
  enum class Kind { Atom, And, Or, Not };
  Kind kind;
  PolyPtr atom_lhs, atom_rhs;  // Atom
  BoolPtr lhs, rhs;            // And/Or; lhs only for Not
};

struct Quantifier {
  bool universal = false;  // false = exists
  std::string var;
};

struct Formula {
  std::vector<Quantifier> prefix;
  BoolPtr body;
};

inline constexpr unsigned kDefaultDepthCap = 3;
inline constexpr uint64_t kDefaultEvalBudget = 1'000'000'000;

// Errors: SyntaxError (with position), UnboundVariable, DepthExceeded.
Formula parse_formula(std::string_view text, unsigned depth_cap = kDefaultDepthCap);

// Canonical rendering with minimal parentheses; parse(to_string(f)) gives the
// same AST back.
std::string to_string(const Formula& f);

// True iff the stored AST contains no negation (inputs using "implies" are
// negation-free only if the rewrite introduced none, i.e. never).  Safe
// formulas define subsets cut out by positive conditions, which reduction mod
// an ideal can only enlarge.
bool reduction_safe(const Formula& f);

// Tarski evaluation over F_ell (ell prime) with x = a; quantifiers range over
// F_ell.  Cost O(ell^depth); FieldTooLargeForDepth when ell^depth > budget.
bool eval_formula(const Formula& f, uint64_t ell, uint64_t a,
                  uint64_t budget = kDefaultEvalBudget);

struct LocalSet {
  uint64_t ell = 0;
  std::vector<bool> members;  // size ell
  mpq_class density;          // |members| / ell, exact
  std::string provenance;

  uint64_t count() const;
  bool contains(uint64_t r) const { return members[r % ell]; }
};

LocalSet definable_subset(const Formula& f, uint64_t ell,
                          uint64_t budget = kDefaultEvalBudget);

// {0} together with the m-th powers in F_ell^x; exact density
// (1 - 1/ell)/gcd(m, ell-1) + 1/ell.
LocalSet mth_power_set(uint64_t ell, uint64_t m);

// Image {f(y) : y in F_ell} of an integer polynomial (coefficients low degree
// first).
LocalSet polynomial_image_set(uint64_t ell, const std::vector<int64_t>& coeffs);

// Reductions mod ell of an explicit set of integers.
LocalSet explicit_local_set(uint64_t ell, const std::vector<int64_t>& members);

// Expected image density sum_{n=1}^{d} (-1)^{n+1}/n! for a degree-d polynomial
// with full symmetric Galois group (1, 1/2, 2/3, 5/8, ... for d = 1, 2, 3, 4).
mpq_class image_density_expected(unsigned d);

struct CdmCluster {
  double center = 0.0;
  std::vector<size_t> members;     // indices into the scanned prime list
  double max_dev_sqrt_ell = 0.0;   // max |density - center| * sqrt(ell) over members
};

struct CdmReport {
  std::vector<uint64_t> primes;
  std::vector<mpq_class> densities;
  std::vector<CdmCluster> clusters;
  double max_dev_sqrt_ell = 0.0;
};

// Empirical check that definable densities cluster around finitely many
// values with O(ell^{-1/2}) deviations: densities per prime plus a gap-based
// clustering (split when consecutive sorted densities differ by more than
// cluster_gap).  Purely observational; nothing is asserted.
CdmReport cdm_scan(const Formula& f, const std::vector<uint64_t>& primes,
                   double cluster_gap = 0.1, unsigned threads = 1,
                   uint64_t budget = kDefaultEvalBudget);

}  // namespace frobsieve
