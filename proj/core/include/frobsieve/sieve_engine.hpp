#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "frobsieve/cyclotomic.hpp"
#include "frobsieve/errors.hpp"
#include "frobsieve/matrix_groups.hpp"
#include "frobsieve/ring_formulas.hpp"
#include "frobsieve/trace_functions.hpp"

namespace frobsieve {

// Which trace function the sieve runs on.
struct FamilySpec {
  FamilyKind kind = FamilyKind::Kloosterman;
  unsigned n = 2;              // Kloosterman rank (>= 2)
  RatFunc f, g, h;             // ExpSum data
  uint64_t r = 1;              // ExpSum character order
  std::vector<int64_t> poly;   // Hyperelliptic f, even degree >= 2
};

// The target set A, instantiated per residue field F_ell.
struct TargetSpec {
  enum class Kind { MthPowers, PolynomialImage, Formula, ExplicitList };
  Kind kind = Kind::MthPowers;
  uint64_t m = 2;                    // MthPowers: m >= 2, gcd(m, p) = 1
  std::vector<int64_t> poly;         // PolynomialImage coefficients, low first
  std::string formula;               // Formula source (must be reduction-safe)
  std::vector<int64_t> members;      // ExplicitList: integers, reduced mod ell
};

// Which prime ideals enter the sieve.
struct LambdaSpec {
  uint64_t L = 0;                      // 0 = derive floor(q^{1/(2B)})
  uint64_t cond_modulus = 1;           // extra condition ell mod m' in classes
  std::vector<uint64_t> cond_classes;  // empty with modulus 1 = no condition
};

struct GroupChoice {
  GroupFamily family = GroupFamily::SL;
  unsigned n = 2;
};

struct SieveConfig {
  FamilySpec family;
  uint64_t p = 5;
  unsigned e = 1;
  TargetSpec target;
  LambdaSpec lambda;
  bool normalized = true;        // survivor test convention; see survivor_count
  bool has_group = false;        // override the derived monodromy group
  GroupChoice group;             // required for ExpSum
  uint64_t enumeration_cap = 10'000'000;  // exact Omega via enumeration below this
  uint64_t table_cap = kDefaultTableCap;
  unsigned threads = 1;
  std::string cache_dir;
};

struct IdealData {
  PrimeIdealDeg1 ideal;
  LocalSet set;             // A_lambda inside F_ell
  mpq_class local_density;  // |A|/ell
  mpq_class main_term;      // 1 - |A|/ell
  mpq_class omega_ratio;    // |Omega_lambda|/|G(F_ell)|; = main_term when proxied
  bool omega_exact = false;
  mpz_class group_order;    // |G(F_ell)|
};

struct SievePlan {
  SieveConfig cfg;
  uint64_t q = 0;
  uint64_t d = 0;  // cyclotomic level of the ideals
  GroupFamily group_family = GroupFamily::SL;
  unsigned group_n = 2;
  mpq_class B;
  uint64_t L = 0;
  std::vector<IdealData> ideals;  // one per rational prime
  uint64_t multiplicity = 1;      // conjugates per listed prime = phi(d)
  uint64_t lambda_count_full = 0; // ideals.size() * multiplicity
  mpq_class PL;                   // sum over the full Lambda_L of |Omega|/|G|
  bool pl_approximate = false;    // some omega used the main-term proxy
  mpq_class sup_local_density;
  std::vector<std::string> annotations;
};

struct SieveReport {
  SievePlan plan;
  uint64_t survivors = 0;
  uint64_t domain_size = 0;  // number of x actually tested
  std::vector<uint64_t> survivors_progression;  // after each ideal, in order
  std::vector<bool> mask;    // per-slot survivor mask (first table's layout)
  double density = 0.0;      // survivors / q
  double bound = 0.0;        // (1 + L^B/sqrt(q)) / P(L)
  double bound_ratio = 0.0;  // density / bound
  std::vector<std::string> annotations;  // plan annotations + run annotations
};

struct ChebotarevBound {
  double lower = 0.0;        // |C| L / ((d m')^eps phi(m') log L)
  bool unconditional = false;  // L >= (d m')^8
  bool grh = false;            // L >= (d m')^(2+eps), annotation only
};

// Resolves B, L, the ideal list, the local sets, and P(L).
// Errors: EmptyLambda (message carries the Chebotarev expectation),
// LocalDensityOne, UnsafeFormula, plus config validation.
SievePlan build_sieve_plan(const SieveConfig& cfg);

// Counts x whose trace value reduces into A_lambda for every ideal.  Tables
// must be residue-mode over the plan's ideals, in order.  Normalized tables
// are tested against A_lambda directly; unnormalized tables against the
// scaled set sigma A_lambda where sigma is the exact normalization residue,
// so both conventions give the identical survivor set.
// Errors: TableMismatch.
SieveReport survivor_count(const SievePlan& plan, const std::vector<TraceTable>& tables);

// (1 + L^B / sqrt(q)) / P(L).  Errors: ZeroPL.
double theoretical_bound(const SievePlan& plan);

// Lower bound on the number of usable primes: |C| L / ((d m')^eps phi(m') log L),
// implicit constant 1.  Validity flags for the unconditional and GRH ranges.
ChebotarevBound chebotarev_lower(uint64_t d, uint64_t mprime, uint64_t class_count,
                                 uint64_t L, double eps);

// End-to-end driver: plan, tables (reusing the cache), survivor count, bound.
SieveReport density_report(const SieveConfig& cfg);

// Deterministic JSON serialization (no timestamps, fixed key order).
std::string report_json(const SieveReport& report);
std::string sieve_config_to_json(const SieveConfig& cfg);
SieveConfig sieve_config_from_json(const std::string& text);

}  // namespace frobsieve
