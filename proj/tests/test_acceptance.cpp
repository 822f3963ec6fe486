// Acceptance suite: eleven end-to-end checks, one pass/fail line each.
//
// Every numeric tolerance is pinned as a constant below.  Each criterion
// recomputes its reference values independently of the code path under test:
// direct-definition sums, trial division, brute-force per-point scans, and a
// 256-bit MPFR recomputation of the sieve bound.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "frobsieve/cyclotomic.hpp"
#include "frobsieve/errors.hpp"
#include "frobsieve/finite_field.hpp"
#include "frobsieve/matrix_groups.hpp"
#include "frobsieve/parallel.hpp"
#include "frobsieve/primes.hpp"
#include "frobsieve/ring_formulas.hpp"
#include "frobsieve/sieve_engine.hpp"
#include "frobsieve/trace_functions.hpp"

using namespace frobsieve;

namespace {

// Pinned tolerances.
constexpr double kMagnitudeSlack = 1e-6;        // criterion 4
constexpr double kGaussSumCap = 3.0;            // criterion 5
constexpr long kTraceProbFactor = 5;            // criterion 6: 5 ell^{-3/2}
constexpr double kImageDensityCap = 5.0;        // criterion 8
constexpr double kTotalVariationCap = 0.1;      // criterion 9
constexpr double kPredictionSlack = 0.02;       // criterion 10 (c)
constexpr double kBoundRelTol = 1e-12;          // criterion 10 (d)

struct Failure : std::runtime_error {
  explicit Failure(const std::string& what) : std::runtime_error(what) {}
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

std::string str(const mpq_class& x) { return x.get_str(); }

mpq_class frac(long num, long den) {
  mpq_class x(num, den);
  x.canonicalize();
  return x;
}

unsigned worker_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return std::min(hw, 8u);
}

// ---------------------------------------------------------------------------
// Criterion 1: closed-form sieve exponents and cancellation exponents.

void criterion_1(std::ostringstream& info) {
  for (unsigned n = 2; n <= 6; ++n) {
    mpq_class b = sieve_exponent_B(GroupFamily::SL, n);
    require(b == frac(2 * n * n + n - 1, 2),
            "B(SL," + std::to_string(n) + ") = " + str(b));
    mpq_class dim(n * n - 1);
    mpq_class general = 1 + dim + frac(n - 1, 2);
    require(b == general, "B(SL," + std::to_string(n) + ") != 1 + dim + rank/2");
  }
  for (unsigned n = 2; n <= 6; n += 2) {
    mpq_class b = sieve_exponent_B(GroupFamily::Sp, n);
    require(b == frac(2 * n * n + 3 * n + 4, 4),
            "B(Sp," + std::to_string(n) + ") = " + str(b));
    mpq_class dim(n * (n + 1) / 2);
    mpq_class general = 1 + dim + frac(n, 4);
    require(b == general, "B(Sp," + std::to_string(n) + ") != 1 + dim + rank/2");
  }
  for (unsigned n = 1; n <= 6; ++n)
    require(alpha_exponent(GroupFamily::GL, n) == frac(n * (n - 1), 2),
            "alpha(GL," + std::to_string(n) + ")");
  for (unsigned n = 2; n <= 6; ++n)
    require(alpha_exponent(GroupFamily::SL, n) == frac(n * n - 1, 2),
            "alpha(SL," + std::to_string(n) + ")");
  for (unsigned n = 2; n <= 6; n += 2) {
    require(alpha_exponent(GroupFamily::Sp, n) == frac(n * (n + 2), 8),
            "alpha(Sp," + std::to_string(n) + ")");
    if (n >= 4) {
      require(alpha_exponent(GroupFamily::SOminus, n) == frac(n * (n + 2), 8),
              "alpha(SO-," + std::to_string(n) + ")");
      require(alpha_exponent(GroupFamily::SOplus, n) == frac(n * (n - 2), 8),
              "alpha(SO+," + std::to_string(n) + ")");
    }
  }
  for (unsigned n = 3; n <= 7; n += 2)
    require(alpha_exponent(GroupFamily::SOodd, n) == frac(n * n - 1, 8),
            "alpha(SOodd," + std::to_string(n) + ")");
  info << "B and alpha match their closed forms for all listed families";
}

// ---------------------------------------------------------------------------
// Criterion 2: table values equal direct-definition sums in F_ell.

void criterion_2(std::ostringstream& info) {
  struct Case {
    unsigned n;
    uint64_t p;
    unsigned e;
    uint64_t ideal_bound;
  };
  const std::vector<Case> cases = {
      {2, 5, 2, 101}, {2, 7, 2, 197}, {3, 5, 2, 101}, {4, 3, 2, 61}};
  unsigned threads = worker_threads();
  uint64_t checked = 0;
  for (const Case& c : cases) {
    FiniteField F(c.p, c.e);
    uint64_t q = F.q(), d = embedding_order(c.p);
    std::vector<PrimeIdealDeg1> ideals = deg1_prime_ideals(d, c.ideal_bound);
    require(ideals.size() >= 3, "need 3 ideals at level " + std::to_string(d));
    ideals.resize(3);

    std::vector<uint64_t> trace_int(q);
    for (uint64_t i = 0; i < q; ++i) trace_int[i] = F.abs_trace({i});

    for (const PrimeIdealDeg1& lam : ideals) {
      TraceTable t =
          kloosterman_table(c.n, F, residue_embedding(lam), kDefaultTableCap, threads);
      // psi(x) = omega^{(d/p) tr(x)} after reduction.
      std::vector<uint64_t> psi(c.p);
      for (uint64_t v = 0; v < c.p; ++v)
        psi[v] = pow_mod(lam.omega, (d / c.p) * v, lam.ell);
      for (uint64_t a = 1; a < q; ++a) {
        // Sum over x_1 ... x_{n-1} free and nonzero, x_n = a / prod.
        std::vector<uint64_t> x(c.n - 1, 1);
        uint64_t sum = 0;
        while (true) {
          FieldElement prod = F.one(), lin = F.zero();
          for (uint64_t xi : x) {
            prod = F.mul(prod, {xi});
            lin = F.add(lin, {xi});
          }
          FieldElement last = F.mul({a}, F.inv(prod));
          lin = F.add(lin, last);
          sum = (sum + psi[trace_int[lin.index]]) % lam.ell;
          size_t pos = 0;
          while (pos < x.size() && x[pos] == q - 1) x[pos++] = 1;
          if (pos == x.size()) break;
          ++x[pos];
        }
        require(t.rvals[a - 1] == sum,
                "mismatch at n=" + std::to_string(c.n) + " q=" + std::to_string(q) +
                    " ell=" + std::to_string(lam.ell) + " a=" + std::to_string(a));
        ++checked;
      }
    }
  }
  info << checked << " table entries equal their direct-definition sums";
}

// ---------------------------------------------------------------------------
// Criterion 3: Frobenius invariance and the root-of-unity Galois action.

void criterion_3(std::ostringstream& info) {
  struct Case {
    unsigned n;
    uint64_t p;
    unsigned e;
  };
  const std::vector<Case> cases = {{2, 5, 3}, {3, 7, 2}};
  unsigned threads = worker_threads();
  uint64_t checked = 0;
  for (const Case& c : cases) {
    FiniteField F(c.p, c.e);
    uint64_t q = F.q(), d = embedding_order(c.p);
    PrimeIdealDeg1 lam = deg1_prime_ideals(d, 200).at(0);
    TraceTable base =
        kloosterman_table(c.n, F, residue_embedding(lam), kDefaultTableCap, threads);

    for (uint64_t x = 1; x < q; ++x) {
      uint64_t fx = F.frobenius({x}).index;
      require(base.rvals[x - 1] == base.rvals[fx - 1],
              "Frobenius moved the value at q=" + std::to_string(q));
      ++checked;
    }

    for (uint64_t c_unit = 1; c_unit < c.p; ++c_unit) {
      uint64_t s = c_unit;
      while (s % 4 != 1) s += c.p;
      PrimeIdealDeg1 moved =
          make_prime_ideal(d, lam.ell, pow_mod(lam.omega, s, lam.ell));
      TraceTable twisted =
          kloosterman_table(c.n, F, residue_embedding(moved), kDefaultTableCap, threads);
      FieldElement scale = F.from_residue(pow_mod(c_unit, c.n, c.p));
      for (uint64_t x = 1; x < q; ++x) {
        uint64_t y = F.mul({x}, scale).index;
        require(twisted.rvals[x - 1] == base.rvals[y - 1],
                "conjugation mismatch at q=" + std::to_string(q) +
                    " c=" + std::to_string(c_unit));
        ++checked;
      }
    }
  }
  info << checked << " Galois-action identities hold exactly";
}

// ---------------------------------------------------------------------------
// Criterion 4: normalized complex magnitudes stay within n + 1e-6.

void criterion_4(std::ostringstream& info) {
  unsigned threads = worker_threads();
  std::vector<std::pair<uint64_t, unsigned>> fields;
  for (uint64_t p : primes_up_to(2500)) {
    uint64_t q = p;
    unsigned e = 1;
    while (q <= 2500) {
      fields.push_back({p, e});
      if (q > 2500 / p) break;
      q *= p;
      ++e;
    }
  }
  // Above 2500, full tables at four fields; together they cover more than
  // 10^4 sample points per rank.
  const std::vector<std::pair<uint64_t, unsigned>> large = {
      {5, 5}, {2, 12}, {3, 8}, {9973, 1}};
  uint64_t above_points = 0;
  for (auto [p, e] : large) {
    uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    above_points += q - 1;
  }
  require(above_points >= 10000, "not enough sample points above 2500");

  double worst = 0.0;
  uint64_t scanned = 0;
  auto scan = [&](uint64_t p, unsigned e) {
    FiniteField F(p, e);
    for (unsigned n = 2; n <= 3; ++n) {
      TraceTable t = normalize_table(kloosterman_table(
          n, F, complex_embedding(embedding_order(p)), kDefaultTableCap, threads));
      for (size_t s = 0; s < t.cvals.size(); ++s) {
        double mag = std::abs(t.cvals[s]);
        worst = std::max(worst, mag - static_cast<double>(n));
        require(mag <= static_cast<double>(n) + kMagnitudeSlack,
                "|value| = " + std::to_string(mag) + " at q = " +
                    std::to_string(F.q()) + ", n = " + std::to_string(n));
        ++scanned;
      }
    }
  };
  for (auto [p, e] : fields) scan(p, e);
  for (auto [p, e] : large) scan(p, e);
  info << scanned << " values scanned; worst excess over n is " << worst;
}

// ---------------------------------------------------------------------------
// Criterion 5: Gauss sums of trace histograms decay like ell^{-3/2} / ell^{-3}.

void criterion_5(std::ostringstream& info) {
  double worst = 0.0;
  for (uint64_t ell : {3, 5, 7, 11, 13}) {
    GroupSpec spec;
    spec.family = GroupFamily::SL;
    spec.n = 2;
    spec.ell = ell;
    GaussSumStat stat = gauss_sum_max(enumerate_group(spec));
    double scaled = stat.max_magnitude * std::pow(static_cast<double>(ell), 1.5);
    worst = std::max(worst, scaled);
    require(scaled <= kGaussSumCap,
            "SL_2(" + std::to_string(ell) + "): scaled Gauss sum " +
                std::to_string(scaled));
  }
  GroupSpec sp4;
  sp4.family = GroupFamily::Sp;
  sp4.n = 4;
  sp4.ell = 3;
  GaussSumStat stat = gauss_sum_max(enumerate_group(sp4));
  double scaled = stat.max_magnitude * 27.0;  // alpha(Sp_4) = 3
  worst = std::max(worst, scaled);
  require(scaled <= kGaussSumCap, "Sp_4(3): scaled Gauss sum " + std::to_string(scaled));
  info << "max of gauss_sum_max * ell^alpha is " << worst << " <= " << kGaussSumCap;
}

// ---------------------------------------------------------------------------
// Criterion 6: trace probabilities match |A|/ell within 5 ell^{-3/2}.

void criterion_6(std::ostringstream& info) {
  mpq_class worst_sq(0);
  uint64_t worst_ell = 0;
  for (uint64_t ell : {3, 5, 7, 11, 13}) {
    GroupSpec spec;
    spec.family = GroupFamily::SL;
    spec.n = 2;
    spec.ell = ell;
    TraceHistogram hist = enumerate_group(spec);
    LocalSet squares = mth_power_set(ell, 2);
    mpq_class diff = prob_trace_in(hist, squares) - squares.density;
    mpq_class diff_sq = diff * diff;
    mpq_class bound = mpq_class(kTraceProbFactor * kTraceProbFactor) /
                      (mpq_class(ell) * ell * ell);
    require(diff_sq <= bound, "ell = " + std::to_string(ell) +
                                  ": |prob - |A|/ell|^2 = " + str(diff_sq) +
                                  " > " + str(bound));
    if (diff_sq * (mpq_class(ell) * ell * ell) > worst_sq) {
      worst_sq = diff_sq * (mpq_class(ell) * ell * ell);
      worst_ell = ell;
    }
  }
  info << "worst |prob - |A|/ell| * ell^{3/2} = " << std::sqrt(worst_sq.get_d())
       << " at ell = " << worst_ell << " (cap " << kTraceProbFactor << ")";
}

// ---------------------------------------------------------------------------
// Criterion 7: exact power-set densities and the finite-index inequality.

void criterion_7(std::ostringstream& info) {
  uint64_t pairs = 0;
  for (uint64_t ell : primes_up_to(500)) {
    for (uint64_t m = 1; m <= 10; ++m) {
      LocalSet s = mth_power_set(ell, m);
      uint64_t g = std::gcd(m, ell - 1);
      mpq_class expected =
          (mpq_class(1) - frac(1, static_cast<long>(ell))) / g +
          frac(1, static_cast<long>(ell));
      expected.canonicalize();
      require(s.density == expected,
              "density mismatch at ell = " + std::to_string(ell) +
                  ", m = " + std::to_string(m));
      if (ell % m == 1 % m) {
        mpq_class cap = frac(1, static_cast<long>(m)) + frac(1, static_cast<long>(ell));
        require(s.density < cap, "density >= 1/m + 1/ell at ell = " +
                                     std::to_string(ell) + ", m = " + std::to_string(m));
      }
      ++pairs;
    }
  }
  info << pairs << " (ell, m) pairs match the exact density formula";
}

// ---------------------------------------------------------------------------
// Criterion 8: cubic image densities cluster at 2/3 with sqrt(ell) decay.

void criterion_8(std::ostringstream& info) {
  mpq_class center = image_density_expected(3);
  require(center == frac(2, 3), "expected cubic image density is not 2/3");
  double worst = 0.0;
  uint64_t worst_ell = 0;
  uint64_t count = 0;
  for (uint64_t ell : primes_up_to(2000)) {
    if (ell < 100) continue;
    LocalSet image = polynomial_image_set(ell, {1, 1, 0, 1});  // X^3 + X + 1
    double dev = std::abs(mpq_class(image.density - center).get_d()) *
                 std::sqrt(static_cast<double>(ell));
    if (dev > worst) {
      worst = dev;
      worst_ell = ell;
    }
    ++count;
    require(dev <= kImageDensityCap,
            "deviation " + std::to_string(dev) + " at ell = " + std::to_string(ell));
  }
  info << count << " primes in [100, 2000]; max |density - 2/3| sqrt(ell) = " << worst
       << " at ell = " << worst_ell;
}

// ---------------------------------------------------------------------------
// Criterion 9: reduced values mod a degree-1 ideal equidistribute like
// symplectic traces.

void criterion_9(std::ostringstream& info) {
  unsigned threads = worker_threads();
  FiniteField F(5, 6);
  PrimeIdealDeg1 lam = deg1_prime_ideals(20, 41).at(0);
  TraceTable t = normalize_table(
      kloosterman_table(2, F, residue_embedding(lam), kDefaultTableCap, threads));

  std::vector<uint64_t> counts(41, 0);
  for (size_t s = 0; s < t.rvals.size(); ++s) ++counts[t.rvals[s]];
  double points = static_cast<double>(t.rvals.size());

  GroupSpec spec;
  spec.family = GroupFamily::SL;
  spec.n = 2;
  spec.ell = 41;
  TraceHistogram hist = enumerate_group(spec);
  double order = hist.order.get_d();

  double tv = 0.0;
  for (uint64_t v = 0; v < 41; ++v)
    tv += std::abs(counts[v] / points - hist.counts[v] / order);
  tv /= 2.0;
  require(tv <= kTotalVariationCap,
          "total variation " + std::to_string(tv) + " > " +
              std::to_string(kTotalVariationCap));
  info << "total variation over F_41 is " << tv << " <= " << kTotalVariationCap;
}

// ---------------------------------------------------------------------------
// Criterion 10: the end-to-end sieve run against a per-point brute force.

void criterion_10(std::ostringstream& info) {
  unsigned threads = worker_threads();
  std::filesystem::path cache =
      std::filesystem::temp_directory_path() / "frobsieve_acceptance_cache";
  std::filesystem::create_directories(cache);

  SieveConfig cfg;
  cfg.family.kind = FamilyKind::Kloosterman;
  cfg.family.n = 2;
  cfg.p = 5;
  cfg.e = 6;
  cfg.target.kind = TargetSpec::Kind::MthPowers;
  cfg.target.m = 3;
  cfg.lambda.L = 700;
  cfg.normalized = true;
  cfg.threads = threads;
  cfg.cache_dir = cache.string();

  SieveReport rep = density_report(cfg);
  const SievePlan& plan = rep.plan;
  require(plan.ideals.size() == 7, "expected 7 ideals below 700");

  // (b) Monotone nonincreasing progression.
  for (size_t i = 1; i < rep.survivors_progression.size(); ++i)
    require(rep.survivors_progression[i] <= rep.survivors_progression[i - 1],
            "progression is not monotone");

  // (a) Brute-force oracle: for every x, accumulate the trace histogram of
  // y + x/y over y, then reduce the direct sum mod each ideal.
  FiniteField F(5, 6);
  uint64_t q = F.q();
  std::vector<uint64_t> trace_int(q), inv_idx(q, 0);
  for (uint64_t i = 0; i < q; ++i) trace_int[i] = F.abs_trace({i});
  for (uint64_t i = 1; i < q; ++i) inv_idx[i] = F.inv({i}).index;

  struct IdealCtx {
    uint64_t ell = 0;
    uint64_t psi[5] = {0, 0, 0, 0, 0};
    uint64_t inv_sigma = 0;        // normalized = raw * inv_sigma
    std::vector<bool> cubes;
  };
  std::vector<IdealCtx> ctx;
  for (const IdealData& data : plan.ideals) {
    IdealCtx c;
    c.ell = data.ideal.ell;
    for (uint64_t v = 0; v < 5; ++v)
      c.psi[v] = pow_mod(data.ideal.omega, 4 * v, c.ell);
    uint64_t s = sqrt_q_mod(data.ideal, 5, 6);
    c.inv_sigma = inv_mod((c.ell - s % c.ell) % c.ell, c.ell);
    c.cubes = mth_power_set(c.ell, 3).members;
    ctx.push_back(std::move(c));
  }

  std::vector<uint8_t> stage(q, 0);  // ideals passed before the first failure
  parallel_for(q - 1, threads, [&](uint64_t begin, uint64_t end) {
    for (uint64_t k = begin; k < end; ++k) {
      uint64_t x = k + 1;
      uint64_t ht[5] = {0, 0, 0, 0, 0};
      for (uint64_t y = 1; y < q; ++y) {
        FieldElement z = F.add({y}, F.mul({x}, {inv_idx[y]}));
        ++ht[trace_int[z.index]];
      }
      uint8_t passed = 0;
      for (const IdealCtx& c : ctx) {
        uint64_t raw = 0;
        for (uint64_t v = 0; v < 5; ++v)
          raw = (raw + mul_mod(ht[v] % c.ell, c.psi[v], c.ell)) % c.ell;
        uint64_t normalized = mul_mod(raw, c.inv_sigma, c.ell);
        if (!c.cubes[normalized]) break;
        ++passed;
      }
      stage[x] = passed;
    }
  });
  std::vector<uint64_t> oracle_progression(plan.ideals.size(), 0);
  for (uint64_t x = 1; x < q; ++x)
    for (uint8_t i = 0; i < stage[x]; ++i) ++oracle_progression[i];
  require(oracle_progression == rep.survivors_progression,
          "brute-force progression disagrees with the report");
  require(oracle_progression.back() == rep.survivors,
          "brute-force survivor count disagrees with the report");

  // (c) Density is below the best single-ideal prediction plus slack.
  double min_pred = 1.0;
  for (const IdealData& data : plan.ideals) {
    if (data.group_order > 10'000'000) continue;
    GroupSpec spec;
    spec.family = plan.group_family;
    spec.n = plan.group_n;
    spec.ell = data.ideal.ell;
    mpq_class pred = prob_trace_in(enumerate_group(spec), data.set);
    min_pred = std::min(min_pred, pred.get_d());
  }
  require(min_pred < 1.0, "no exactly enumerable ideal available");
  require(rep.density <= min_pred + kPredictionSlack,
          "density " + std::to_string(rep.density) + " exceeds prediction " +
              std::to_string(min_pred) + " + 0.02");

  // (d) Recompute (1 + L^B / sqrt(q)) / P(L) with 256-bit MPFR arithmetic.
  mpz_class l_pow;  // 700^9; L^B = sqrt of it since B = 9/2
  mpz_ui_pow_ui(l_pow.get_mpz_t(), 700, 9);
  mpfr_t acc, pl;
  mpfr_init2(acc, 256);
  mpfr_init2(pl, 256);
  mpfr_set_z(acc, l_pow.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(acc, acc, MPFR_RNDN);
  mpfr_div_ui(acc, acc, 125, MPFR_RNDN);  // sqrt(5^6)
  mpfr_add_ui(acc, acc, 1, MPFR_RNDN);
  mpfr_set_q(pl, plan.PL.get_mpq_t(), MPFR_RNDN);
  mpfr_div(acc, acc, pl, MPFR_RNDN);
  double reference = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clear(acc);
  mpfr_clear(pl);
  double rel = std::abs(rep.bound - reference) / reference;
  require(rel <= kBoundRelTol,
          "bound " + std::to_string(rep.bound) + " vs MPFR " +
              std::to_string(reference));

  std::filesystem::remove_all(cache);
  info << "survivors " << rep.survivors << "/" << q << " reproduced; density "
       << rep.density << " <= " << min_pred << " + " << kPredictionSlack
       << "; bound rel. err. " << rel;
}

// ---------------------------------------------------------------------------
// Criterion 11: prime counting vs trial division; Chebotarev validity flags.

void criterion_11(std::ostringstream& info) {
  uint64_t oracle = 0;
  for (uint64_t v = 2; v <= 100000; ++v) {
    if (v % 20 != 1) continue;
    bool prime = v >= 2;
    for (uint64_t t = 2; t * t <= v; ++t)
      if (v % t == 0) {
        prime = false;
        break;
      }
    if (prime) ++oracle;
  }
  uint64_t counted = prime_count(1, 20, 100000);
  require(counted == oracle, "prime_count(1, 20, 1e5) = " + std::to_string(counted) +
                                 " but trial division finds " + std::to_string(oracle));

  // (d m')^8 = 256 at d = 2, m' = 1: the flag must flip exactly there.
  require(!chebotarev_lower(2, 1, 1, 255, 0.1).unconditional,
          "L = 255 flagged unconditional");
  require(chebotarev_lower(2, 1, 1, 256, 0.1).unconditional,
          "L = 256 not flagged unconditional");
  require(chebotarev_lower(2, 1, 1, 257, 0.1).unconditional,
          "L = 257 not flagged unconditional");
  require(chebotarev_lower(2, 1, 1, 255, 0.1).grh, "L = 255 should satisfy the GRH range");
  require(!chebotarev_lower(2, 1, 1, 4, 0.1).grh, "L = 4 < 2^{2.1} flagged GRH");
  info << "prime_count(1,20,1e5) = " << counted
       << " matches trial division; validity flags flip at 256";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(std::ostringstream&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form sieve and cancellation exponents", criterion_1},
      {2, "table values equal direct-definition sums", criterion_2},
      {3, "Frobenius and root-of-unity Galois actions", criterion_3},
      {4, "normalized complex magnitudes bounded by n", criterion_4},
      {5, "trace-histogram Gauss sums decay at rate alpha", criterion_5},
      {6, "trace probabilities near |A|/ell", criterion_6},
      {7, "exact local density of m-th powers", criterion_7},
      {8, "cubic image densities cluster at 2/3", criterion_8},
      {9, "reduced table values equidistribute like traces", criterion_9},
      {10, "end-to-end sieve vs brute force and MPFR bound", criterion_10},
      {11, "prime counting and Chebotarev validity flags", criterion_11},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::ostringstream detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    try {
      c.run(detail);
    } catch (const std::exception& ex) {
      ok = false;
      detail.str("");
      detail << ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title
              << " — " << detail.str() << " (" << std::fixed << std::setprecision(2)
              << secs << " s)" << std::defaultfloat << std::endl;
    if (!ok) ++failures;
  }
  std::cout << (11 - failures) << "/11 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
