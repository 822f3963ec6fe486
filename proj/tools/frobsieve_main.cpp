// frobsieve: command-line front end for trace-function tables, finite-group
// trace statistics, definable local densities, prime counting, and the
// large-sieve density pipeline.  Every output is machine-readable and
// byte-deterministic for a fixed invocation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "frobsieve/cyclotomic.hpp"
#include "frobsieve/errors.hpp"
#include "frobsieve/finite_field.hpp"
#include "frobsieve/matrix_groups.hpp"
#include "frobsieve/parallel.hpp"
#include "frobsieve/primes.hpp"
#include "frobsieve/ring_formulas.hpp"
#include "frobsieve/sieve_engine.hpp"
#include "frobsieve/trace_functions.hpp"
#include "frobsieve/version.hpp"

namespace {

using frobsieve::Error;
using frobsieve::ErrorCategory;
using ordered_json = nlohmann::ordered_json;

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Validation:
      return 2;
    case ErrorCategory::Resource:
      return 3;
    case ErrorCategory::Internal:
      return 4;
  }
  return 4;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::trunc);
  if (!file) frobsieve::fail_resource("OutputFile", "cannot open " + path + " for writing");
  return file;
}

std::string default_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("FROBSIEVE_CACHE");
  return env ? env : "";
}

frobsieve::PrimeIdealDeg1 canonical_ideal(uint64_t d, uint64_t ell) {
  frobsieve::FiniteField f_ell(ell, 1);
  return frobsieve::make_prime_ideal(d, ell, f_ell.unity_root(d).index);
}

// ---------------------------------------------------------------- kloosterman

struct KloostermanArgs {
  uint64_t p = 5;
  unsigned e = 1;
  unsigned n = 2;
  bool complex_mode = false;
  uint64_t residue_ell = 0;
  uint64_t d = 0;  // 0 = 4p
  bool normalized = false;
  unsigned threads = 0;
  std::string cache_dir;
  std::string out;
};

int run_kloosterman(const KloostermanArgs& a) {
  using namespace frobsieve;
  if (a.complex_mode == (a.residue_ell != 0))
    fail_validation("BadArgument", "choose exactly one of --complex and --residue ELL");
  uint64_t d = a.d ? a.d : 4 * a.p;
  unsigned threads = a.threads ? a.threads : default_thread_count();

  FiniteField F(a.p, a.e);
  Embedding emb;
  if (a.complex_mode)
    emb = complex_embedding(d);
  else
    emb = residue_embedding(canonical_ideal(d, a.residue_ell));

  TraceTable t = kloosterman_table(a.n, F, emb, kDefaultTableCap, threads,
                                   default_cache_dir(a.cache_dir));
  if (a.normalized) t = normalize_table(t);

  std::ofstream file;
  std::ostream& out = open_output(file, a.out);
  if (a.complex_mode) {
    out << "x,re,im\n";
    char buf[80];
    for (size_t s = 0; s < t.size(); ++s) {
      std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n",
                    static_cast<unsigned long long>(t.element_index(s)), t.cvals[s].real(),
                    t.cvals[s].imag());
      out << buf;
    }
  } else {
    out << "x,value\n";
    for (size_t s = 0; s < t.size(); ++s)
      out << t.element_index(s) << ',' << t.rvals[s] << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------ gauss-sum

struct GaussSumArgs {
  std::string family = "SL";
  unsigned n = 2;
  uint64_t ell = 3;
  uint64_t cap = 10'000'000;
  std::string out;
  std::string histogram_out;
};

int run_gauss_sum(const GaussSumArgs& a) {
  using namespace frobsieve;
  GroupFamily fam = family_from_name(a.family);
  GroupSpec spec;
  spec.family = fam;
  spec.n = a.n;
  spec.ell = a.ell;
  spec.cap = a.cap;
  TraceHistogram hist = enumerate_group(spec);
  GaussSumStat stat = gauss_sum_max(hist);
  mpq_class alpha = alpha_exponent(fam, a.n);

  ordered_json j;
  j["version"] = kVersion;
  j["family"] = family_name(fam);
  j["n"] = a.n;
  j["ell"] = a.ell;
  j["order"] = hist.order.get_str();
  j["alpha"] = ordered_json::array({alpha.get_num().get_str(), alpha.get_den().get_str()});
  if (fam == GroupFamily::GL) {
    j["B"] = nullptr;  // GL is not a sieve family
  } else {
    mpq_class B = sieve_exponent_B(fam, a.n);
    j["B"] = ordered_json::array({B.get_num().get_str(), B.get_den().get_str()});
  }
  j["gauss_sum_max"] = stat.max_magnitude;
  j["psi_index"] = stat.psi_index;

  std::ofstream file;
  std::ostream& out = open_output(file, a.out);
  out << j.dump(2) << '\n';

  if (!a.histogram_out.empty()) {
    std::ofstream hfile;
    std::ostream& hout = open_output(hfile, a.histogram_out);
    hout << "t,count\n";
    for (uint64_t t = 0; t < hist.counts.size(); ++t)
      hout << t << ',' << hist.counts[t] << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ formula-density

struct FormulaDensityArgs {
  std::string formula;
  std::string primes = "3..97";
  unsigned threads = 0;
  std::string out;
};

std::pair<uint64_t, uint64_t> parse_range(const std::string& text) {
  auto pos = text.find("..");
  if (pos == std::string::npos)
    frobsieve::fail_validation("BadArgument", "prime range must look like LO..HI");
  try {
    uint64_t lo = std::stoull(text.substr(0, pos));
    uint64_t hi = std::stoull(text.substr(pos + 2));
    if (lo > hi) frobsieve::fail_validation("BadArgument", "empty prime range");
    return {lo, hi};
  } catch (const std::logic_error&) {
    frobsieve::fail_validation("BadArgument", "cannot parse prime range '" + text + "'");
  }
}

int run_formula_density(const FormulaDensityArgs& a) {
  using namespace frobsieve;
  Formula f = parse_formula(a.formula);
  auto [lo, hi] = parse_range(a.primes);
  std::vector<uint64_t> primes;
  for (uint64_t ell : primes_up_to(hi))
    if (ell >= lo && ell >= 3) primes.push_back(ell);
  if (primes.empty()) fail_validation("BadArgument", "no odd primes in range");
  unsigned threads = a.threads ? a.threads : default_thread_count();
  CdmReport rep = cdm_scan(f, primes, 0.1, threads);

  std::ofstream file;
  std::ostream& out = open_output(file, a.out);
  out << "ell,count,density_num,density_den\n";
  for (size_t i = 0; i < rep.primes.size(); ++i) {
    const mpq_class& dens = rep.densities[i];
    mpz_class size = dens.get_num() * rep.primes[i] / dens.get_den();
    out << rep.primes[i] << ',' << size.get_str() << ',' << dens.get_num().get_str() << ','
        << dens.get_den().get_str() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------- primes

struct PrimesArgs {
  uint64_t a = 1;
  uint64_t m = 1;
  uint64_t L = 100;
  bool list = false;
};

int run_primes(const PrimesArgs& a) {
  using namespace frobsieve;
  if (a.list) {
    uint64_t r = a.m ? a.a % a.m : a.a;
    for (uint64_t ell : primes_up_to(a.L))
      if (a.m <= 1 || ell % a.m == r) std::cout << ell << '\n';
    return 0;
  }
  std::cout << prime_count(a.a, a.m, a.L) << '\n';
  return 0;
}

// ----------------------------------------------------------------------- sieve

struct SieveArgs {
  std::string config_path;
  std::optional<uint64_t> p;
  std::optional<unsigned> e;
  std::optional<unsigned> n;
  std::optional<uint64_t> m;
  std::optional<uint64_t> L;
  std::optional<bool> normalized;
  std::optional<unsigned> threads;
  std::string cache_dir;
  std::string out;
  std::string mask_csv;
};

int run_sieve(const SieveArgs& a) {
  using namespace frobsieve;
  std::ifstream in(a.config_path);
  if (!in) fail_resource("ConfigFile", "cannot open " + a.config_path);
  std::stringstream ss;
  ss << in.rdbuf();
  SieveConfig cfg = sieve_config_from_json(ss.str());

  // Flags override the file.
  if (a.p) cfg.p = *a.p;
  if (a.e) cfg.e = *a.e;
  if (a.n) cfg.family.n = *a.n;
  if (a.m) cfg.target.m = *a.m;
  if (a.L) cfg.lambda.L = *a.L;
  if (a.normalized) cfg.normalized = *a.normalized;
  if (a.threads) cfg.threads = *a.threads;
  if (cfg.threads == 0) cfg.threads = default_thread_count();
  std::string cache = default_cache_dir(a.cache_dir);
  if (!cache.empty()) cfg.cache_dir = cache;

  SieveReport rep = density_report(cfg);

  std::ofstream file;
  std::ostream& out = open_output(file, a.out);
  out << report_json(rep);

  if (!a.mask_csv.empty()) {
    std::ofstream mfile;
    std::ostream& mout = open_output(mfile, a.mask_csv);
    mout << "x,survivor\n";
    bool star = rep.plan.cfg.family.kind == FamilyKind::Kloosterman;
    for (size_t s = 0; s < rep.mask.size(); ++s)
      mout << (star ? s + 1 : s) << ',' << (rep.mask[s] ? 1 : 0) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"large-sieve experiments for trace functions over finite fields"};
  app.set_version_flag("--version", frobsieve::kVersion);
  app.require_subcommand(1);

  KloostermanArgs ka;
  CLI::App* kl = app.add_subcommand("kloosterman", "hyper-Kloosterman sum table");
  kl->add_option("-p", ka.p, "characteristic (prime)")->required();
  kl->add_option("-e", ka.e, "field degree, q = p^e");
  kl->add_option("-n", ka.n, "number of factors in the sum")->required();
  kl->add_flag("--complex", ka.complex_mode, "evaluate in C via zeta_d -> e(1/d)");
  kl->add_option("--residue", ka.residue_ell, "evaluate mod the canonical ideal above ELL");
  kl->add_option("-d", ka.d, "cyclotomic level (default 4p)");
  kl->add_flag("--normalized", ka.normalized, "apply the weight-normalization");
  kl->add_option("--threads", ka.threads, "worker threads (default: cores)");
  kl->add_option("--cache-dir", ka.cache_dir, "table cache directory (or $FROBSIEVE_CACHE)");
  kl->add_option("-o,--out", ka.out, "output CSV path (default stdout)");

  GaussSumArgs ga;
  CLI::App* gs = app.add_subcommand("gauss-sum", "trace histogram statistics of a classical group");
  gs->add_option("--family", ga.family, "GL | SL | Sp | SO+ | SO- | SOodd")->required();
  gs->add_option("-n", ga.n, "matrix dimension")->required();
  gs->add_option("-l,--ell", ga.ell, "odd prime field size")->required();
  gs->add_option("--cap", ga.cap, "enumeration cap on |G|");
  gs->add_option("-o,--out", ga.out, "output JSON path (default stdout)");
  gs->add_option("--histogram", ga.histogram_out, "also write the trace histogram CSV here");

  FormulaDensityArgs fa;
  CLI::App* fd = app.add_subcommand("formula-density", "definable-set densities across primes");
  fd->add_option("formula", fa.formula, "first-order formula in one free variable x")->required();
  fd->add_option("--primes", fa.primes, "prime range LO..HI (default 3..97)");
  fd->add_option("--threads", fa.threads, "worker threads (default: cores)");
  fd->add_option("-o,--out", fa.out, "output CSV path (default stdout)");

  PrimesArgs pa;
  CLI::App* pr = app.add_subcommand("primes", "count primes <= L in a residue class");
  pr->add_option("-a", pa.a, "residue class");
  pr->add_option("-m", pa.m, "modulus (1 = all primes)");
  pr->add_option("-L", pa.L, "upper bound")->required();
  pr->add_flag("--list", pa.list, "print the primes instead of the count");

  SieveArgs sa;
  CLI::App* sv = app.add_subcommand("sieve", "end-to-end sieve density report");
  sv->add_option("config", sa.config_path, "JSON sieve config")->required();
  sv->add_option("-p", sa.p, "override characteristic");
  sv->add_option("-e", sa.e, "override field degree");
  sv->add_option("-n", sa.n, "override Kloosterman rank");
  sv->add_option("--m", sa.m, "override power-target index m");
  sv->add_option("--L", sa.L, "override the ideal norm bound L");
  sv->add_option("--normalized", sa.normalized, "override the normalization flag (0/1)");
  sv->add_option("--threads", sa.threads, "worker threads (overrides config)");
  sv->add_option("--cache-dir", sa.cache_dir, "table cache directory (or $FROBSIEVE_CACHE)");
  sv->add_option("-o,--out", sa.out, "report JSON path (default stdout)");
  sv->add_option("--mask-csv", sa.mask_csv, "also write the per-x survivor mask CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kl->parsed()) return run_kloosterman(ka);
    if (gs->parsed()) return run_gauss_sum(ga);
    if (fd->parsed()) return run_formula_density(fa);
    if (pr->parsed()) return run_primes(pa);
    if (sv->parsed()) return run_sieve(sa);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return exit_code(err.category());
  } catch (const std::exception& ex) {
    std::cerr << "error: Internal: " << ex.what() << '\n';
    return 4;
  }
  return 0;
}
