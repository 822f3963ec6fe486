#include "frobsieve/sieve_engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "frobsieve/primes.hpp"
#include "frobsieve/version.hpp"

namespace frobsieve {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

uint64_t checked_pow_u64(uint64_t p, unsigned e) {
  uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > UINT64_MAX / p) fail_resource("FieldTooLarge", "p^e overflows 64 bits");
    q *= p;
  }
  return q;
}

size_t int_poly_degree(const std::vector<int64_t>& c) {
  size_t d = 0;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) d = i;
  return d;
}

struct ResolvedGroup {
  GroupFamily family;
  unsigned n;
};

ResolvedGroup resolve_group(const SieveConfig& cfg, size_t hyp_degree) {
  if (cfg.has_group) return {cfg.group.family, cfg.group.n};
  switch (cfg.family.kind) {
    case FamilyKind::Kloosterman:
      return {cfg.family.n % 2 == 0 ? GroupFamily::Sp : GroupFamily::SL, cfg.family.n};
    case FamilyKind::Hyperelliptic:
      return {GroupFamily::Sp, static_cast<unsigned>(hyp_degree)};
    case FamilyKind::ExpSum:
      fail_validation("GroupRequired",
                      "exponential-sum sieves need an explicit group; the monodromy "
                      "depends on (f, g, h) and is not derived automatically");
    case FamilyKind::General:
      break;
  }
  fail_validation("GroupRequired", "this family needs an explicit group");
}

uint64_t derived_L(uint64_t q, const mpq_class& B) {
  mpz_class num = B.get_num(), den = B.get_den();
  if (num <= 0) fail_internal("BadExponent", "sieve exponent must be positive");
  mpz_class qd, root;
  mpz_pow_ui(qd.get_mpz_t(), mpz_class(q).get_mpz_t(), den.get_ui());
  mpz_root(root.get_mpz_t(), qd.get_mpz_t(), 2 * num.get_ui());
  if (!root.fits_ulong_p()) fail_resource("BoundTooLarge", "derived L does not fit in 64 bits");
  return root.get_ui();
}

LocalSet realize_target(const TargetSpec& t, const std::optional<Formula>& parsed,
                        uint64_t ell) {
  switch (t.kind) {
    case TargetSpec::Kind::MthPowers:
      return mth_power_set(ell, t.m);
    case TargetSpec::Kind::PolynomialImage:
      return polynomial_image_set(ell, t.poly);
    case TargetSpec::Kind::Formula:
      return definable_subset(*parsed, ell);
    case TargetSpec::Kind::ExplicitList:
      return explicit_local_set(ell, t.members);
  }
  fail_internal("Unreachable", "unknown target kind");
}

// Exact residue sigma with unnormalized = sigma * normalized for the family.
uint64_t normalization_residue(FamilyKind family, unsigned n, const PrimeIdealDeg1& ideal,
                               uint64_t p, unsigned e) {
  unsigned k = 0;
  int sign = 1;
  switch (family) {
    case FamilyKind::Kloosterman:
      k = n - 1;
      sign = (n - 1) % 2 == 0 ? 1 : -1;
      break;
    case FamilyKind::ExpSum:
      k = 1;
      sign = -1;
      break;
    case FamilyKind::Hyperelliptic:
      k = 1;
      sign = 1;
      break;
    case FamilyKind::General:
      fail_validation("TableMismatch",
                      "unnormalized general tables carry no scaling convention");
  }
  uint64_t s = sqrt_q_mod(ideal, p, e);
  uint64_t f = pow_mod(s, k, ideal.ell);
  if (sign < 0) f = (ideal.ell - f) % ideal.ell;
  return f;
}

}  // namespace

SievePlan build_sieve_plan(const SieveConfig& cfg) {
  if (!is_prime_u64(cfg.p)) fail_validation("NotPrime", std::to_string(cfg.p) + " is not prime");
  if (cfg.e == 0) fail_validation("ZeroArgument", "field degree e must be >= 1");
  uint64_t q = checked_pow_u64(cfg.p, cfg.e);

  uint64_t char_order = 1;
  size_t hyp_deg = 0;
  switch (cfg.family.kind) {
    case FamilyKind::Kloosterman:
      if (cfg.family.n < 2) fail_validation("BadRank", "Kloosterman sieves need rank >= 2");
      break;
    case FamilyKind::ExpSum:
      if (cfg.family.r == 0) fail_validation("BadCharacterOrder", "character order must be >= 1");
      char_order = cfg.family.r;
      break;
    case FamilyKind::Hyperelliptic:
      if (cfg.p == 2) fail_validation("EvenCharacteristic", "odd characteristic required");
      hyp_deg = int_poly_degree(cfg.family.poly);
      if (hyp_deg < 2 || hyp_deg % 2 != 0)
        fail_validation("BadDegree", "hyperelliptic f must have even degree >= 2");
      break;
    case FamilyKind::General:
      fail_validation("BadFamily", "general tables cannot drive a sieve");
  }

  SievePlan plan;
  plan.cfg = cfg;
  plan.q = q;
  plan.d = embedding_order(cfg.p, char_order);
  ResolvedGroup group = resolve_group(cfg, hyp_deg);
  plan.group_family = group.family;
  plan.group_n = group.n;
  plan.B = sieve_exponent_B(group.family, group.n);
  plan.L = cfg.lambda.L != 0 ? cfg.lambda.L : derived_L(q, plan.B);

  uint64_t target_mod = 1;
  std::optional<Formula> parsed;
  switch (cfg.target.kind) {
    case TargetSpec::Kind::MthPowers:
      if (cfg.target.m < 2) fail_validation("BadArgument", "power index m must be >= 2");
      if (std::gcd(cfg.target.m, cfg.p) != 1)
        fail_validation("NotCoprime", "m must be coprime to p");
      target_mod = cfg.target.m;
      break;
    case TargetSpec::Kind::PolynomialImage:
      if (int_poly_degree(cfg.target.poly) < 1)
        fail_validation("BadDegree", "image polynomial must be nonconstant");
      break;
    case TargetSpec::Kind::Formula:
      parsed = parse_formula(cfg.target.formula);
      if (!reduction_safe(*parsed))
        fail_validation("UnsafeFormula",
                        "formula contains negation; its local sets are not stable "
                        "under the reduction maps");
      break;
    case TargetSpec::Kind::ExplicitList:
      if (cfg.target.members.empty())
        fail_validation("BadArgument", "explicit target set is empty");
      break;
  }

  uint64_t base_mod = std::lcm(plan.d, target_mod);
  uint64_t mprime = cfg.lambda.cond_modulus == 0 ? 1 : cfg.lambda.cond_modulus;
  std::vector<uint64_t> user_classes = cfg.lambda.cond_classes;
  if (mprime == 1) {
    user_classes.clear();
  } else {
    if (user_classes.empty())
      fail_validation("BadArgument", "congruence condition with an empty class set");
    for (auto& c : user_classes) c %= mprime;
    std::sort(user_classes.begin(), user_classes.end());
    user_classes.erase(std::unique(user_classes.begin(), user_classes.end()),
                       user_classes.end());
    if (std::gcd(4 * cfg.p, mprime) != 1)
      fail_validation("NotCoprime", "condition modulus must be coprime to 4p");
    if (std::gcd(base_mod, mprime) != 1)
      fail_validation("NotCoprime", "condition modulus " + std::to_string(mprime) +
                                        " must be coprime to the forced modulus " +
                                        std::to_string(base_mod));
  }
  CongruenceCondition cond;
  cond.modulus = base_mod * mprime;
  for (uint64_t r = 0; r < cond.modulus; ++r) {
    if (r % base_mod != 1 % base_mod) continue;
    if (mprime > 1 &&
        !std::binary_search(user_classes.begin(), user_classes.end(), r % mprime))
      continue;
    cond.classes.push_back(r);
  }
  plan.multiplicity = ideal_multiplicity(plan.d);

  std::vector<PrimeIdealDeg1> ideals = deg1_prime_ideals(plan.d, plan.L, cond);
  if (ideals.empty()) {
    uint64_t class_count = mprime == 1 ? 1 : user_classes.size();
    ChebotarevBound cb = chebotarev_lower(plan.d, mprime, class_count, plan.L, 0.1);
    fail_validation(
        "EmptyLambda",
        "no usable primes with norm <= L = " + std::to_string(plan.L) +
            "; Chebotarev expectation |C|L/((dm')^0.1 phi(m') log L) = " +
            fmt_double(cb.lower) +
            (cb.unconditional ? " (L inside the unconditional range)"
                              : " (L below the unconditional range (dm')^8)"));
  }

  mpq_class sup(0), pl(0);
  for (const PrimeIdealDeg1& ideal : ideals) {
    IdealData data;
    data.ideal = ideal;
    data.set = realize_target(cfg.target, parsed, ideal.ell);
    data.local_density = data.set.density;
    if (data.local_density >= 1)
      fail_validation("LocalDensityOne",
                      "A_lambda covers all of F_ell at ell = " + std::to_string(ideal.ell));
    sup = std::max(sup, data.local_density);
    data.main_term = mpq_class(1) - data.local_density;
    data.group_order = group_order(group.family, group.n, ideal.ell);
    bool exact = data.group_order <= static_cast<unsigned long>(cfg.enumeration_cap);
    if (exact) {
      GroupSpec spec;
      spec.family = group.family;
      spec.n = group.n;
      spec.ell = ideal.ell;
      spec.cap = cfg.enumeration_cap;
      try {
        TraceHistogram hist = enumerate_group(spec);
        data.omega_ratio = mpq_class(1) - prob_trace_in(hist, data.set);
        data.omega_exact = true;
      } catch (const Error& err) {
        if (err.category() != ErrorCategory::Resource) throw;
        exact = false;
        plan.annotations.push_back("ell = " + std::to_string(ideal.ell) +
                                   ": enumeration infeasible (" + std::string(err.what()) +
                                   "); Omega uses the main-term proxy");
      }
    } else {
      plan.annotations.push_back(
          "ell = " + std::to_string(ideal.ell) + ": |G| = " + data.group_order.get_str() +
          " exceeds the enumeration cap; Omega uses the main-term proxy 1 - |A|/ell");
    }
    if (!exact) {
      data.omega_ratio = data.main_term;
      data.omega_exact = false;
      plan.pl_approximate = true;
    }
    pl += data.omega_ratio;
    plan.ideals.push_back(std::move(data));
  }
  plan.lambda_count_full = plan.ideals.size() * plan.multiplicity;
  plan.PL = pl * mpq_class(static_cast<unsigned long>(plan.multiplicity));
  plan.sup_local_density = sup;

  mpq_class sixteenB = plan.B * 16;
  if (mpq_class(static_cast<unsigned long>(cfg.e)) < sixteenB)
    plan.annotations.push_back("large-degree hypothesis e >= 16B fails (e = " +
                               std::to_string(cfg.e) + ", 16B = " + sixteenB.get_str() +
                               "); desk-scale run, all counts remain exact");
  if (cfg.family.kind == FamilyKind::ExpSum)
    for (const std::string& note :
         exp_sum_hypothesis_notes(cfg.family.f, cfg.family.g, cfg.family.h, cfg.family.r))
      plan.annotations.push_back("exp-sum: " + note);
  return plan;
}

SieveReport survivor_count(const SievePlan& plan, const std::vector<TraceTable>& tables) {
  if (tables.size() != plan.ideals.size() || tables.empty())
    fail_validation("TableMismatch",
                    "expected " + std::to_string(plan.ideals.size()) + " tables, got " +
                        std::to_string(tables.size()));
  const TraceTable& t0 = tables[0];
  for (size_t i = 0; i < tables.size(); ++i) {
    const TraceTable& t = tables[i];
    const PrimeIdealDeg1& ideal = plan.ideals[i].ideal;
    std::string tag = "table " + std::to_string(i);
    if (t.emb.kind != Embedding::Kind::Residue)
      fail_validation("TableMismatch", tag + " is not residue-mode");
    if (t.emb.ideal.ell != ideal.ell || t.emb.ideal.omega != ideal.omega ||
        t.emb.d != plan.d)
      fail_validation("TableMismatch", tag + " was built over a different ideal");
    if (t.p != plan.cfg.p || t.e != plan.cfg.e)
      fail_validation("TableMismatch", tag + " covers a different field");
    if (t.family != plan.cfg.family.kind)
      fail_validation("TableMismatch", tag + " holds a different trace family");
    if (t.family == FamilyKind::Kloosterman && t.n != plan.cfg.family.n)
      fail_validation("TableMismatch", tag + " has the wrong Kloosterman rank");
    if (t.domain != t0.domain || t.q != t0.q)
      fail_validation("TableMismatch", tag + " disagrees with table 0 on the x-domain");
    if (t.valid != t0.valid)
      fail_validation("TableMismatch", tag + " has a different admissible-point mask");
    if (t.rvals.size() != t.size())
      fail_validation("TableMismatch", tag + " has the wrong number of entries");
    for (size_t s = 0; s < t.rvals.size(); ++s)
      if (t.valid[s] && t.rvals[s] >= ideal.ell)
        fail_validation("TableMismatch", tag + " holds a value outside F_ell");
  }

  std::vector<std::vector<bool>> masks;
  masks.reserve(tables.size());
  for (size_t i = 0; i < tables.size(); ++i) {
    const LocalSet& A = plan.ideals[i].set;
    uint64_t ell = plan.ideals[i].ideal.ell;
    if (tables[i].normalized) {
      masks.push_back(A.members);
    } else {
      uint64_t sigma = normalization_residue(tables[i].family, tables[i].n,
                                             plan.ideals[i].ideal, plan.cfg.p, plan.cfg.e);
      std::vector<bool> scaled(ell, false);
      for (uint64_t a = 0; a < ell; ++a)
        if (A.members[a]) scaled[mul_mod(sigma, a, ell)] = true;
      masks.push_back(std::move(scaled));
    }
  }

  SieveReport rep;
  rep.plan = plan;
  std::vector<bool> alive = t0.valid;
  size_t nslots = t0.size();
  rep.domain_size = static_cast<uint64_t>(std::count(alive.begin(), alive.end(), true));
  for (size_t i = 0; i < tables.size(); ++i) {
    const std::vector<uint64_t>& vals = tables[i].rvals;
    uint64_t count = 0;
    for (size_t s = 0; s < nslots; ++s) {
      if (!alive[s]) continue;
      if (!masks[i][vals[s]]) {
        alive[s] = false;
        continue;
      }
      ++count;
    }
    rep.survivors_progression.push_back(count);
  }
  rep.survivors = rep.survivors_progression.back();
  rep.mask = std::move(alive);
  rep.density = static_cast<double>(rep.survivors) / static_cast<double>(plan.q);
  rep.bound = theoretical_bound(plan);
  rep.bound_ratio = rep.density / rep.bound;

  rep.annotations = plan.annotations;
  rep.annotations.push_back("survivors counted over " + std::to_string(rep.domain_size) +
                            " admissible points; density denominator is q = " +
                            std::to_string(plan.q));
  if (plan.cfg.family.kind == FamilyKind::Kloosterman && plan.cfg.p > 2) {
    uint64_t g = std::gcd(plan.cfg.p - 1, static_cast<uint64_t>(plan.cfg.family.n));
    mpq_class orbits(rep.survivors * g, plan.cfg.p - 1);
    orbits.canonicalize();
    rep.annotations.push_back(
        "Galois orbits have size (p-1)/gcd(p-1, n) = " + std::to_string((plan.cfg.p - 1) / g) +
        "; estimated orbit count = survivors * gcd/(p-1) = " + orbits.get_str());
  }
  return rep;
}

double theoretical_bound(const SievePlan& plan) {
  if (plan.PL == 0) fail_validation("ZeroPL", "P(L) vanishes; the sieve carries no information");
  mpz_class num = plan.B.get_num(), den = plan.B.get_den();
  mpz_class l_pow;
  mpz_pow_ui(l_pow.get_mpz_t(), mpz_class(plan.L).get_mpz_t(), num.get_ui());
  double l_to_B = std::pow(l_pow.get_d(), 1.0 / den.get_d());
  return (1.0 + l_to_B / std::sqrt(static_cast<double>(plan.q))) / plan.PL.get_d();
}

ChebotarevBound chebotarev_lower(uint64_t d, uint64_t mprime, uint64_t class_count,
                                 uint64_t L, double eps) {
  if (d == 0 || mprime == 0) fail_validation("ZeroArgument", "d and m' must be positive");
  if (std::gcd(d, mprime) != 1)
    fail_validation("NotCoprime", "d and the condition modulus must be coprime");
  ChebotarevBound b;
  double dm = static_cast<double>(d) * static_cast<double>(mprime);
  if (L >= 2) {
    b.lower = static_cast<double>(class_count) * static_cast<double>(L) /
              (std::pow(dm, eps) * static_cast<double>(euler_phi(mprime)) *
               std::log(static_cast<double>(L)));
  }
  mpz_class dm8 = mpz_class(d) * mprime;
  mpz_pow_ui(dm8.get_mpz_t(), dm8.get_mpz_t(), 8);
  b.unconditional = dm8 <= static_cast<unsigned long>(L);
  b.grh = static_cast<double>(L) >= std::pow(dm, 2.0 + eps);
  return b;
}

SieveReport density_report(const SieveConfig& cfg) {
  SievePlan plan = build_sieve_plan(cfg);
  FiniteField F(cfg.p, cfg.e);
  std::vector<TraceTable> tables;
  tables.reserve(plan.ideals.size());
  for (const IdealData& data : plan.ideals) {
    Embedding emb = residue_embedding(data.ideal);
    TraceTable t;
    switch (cfg.family.kind) {
      case FamilyKind::Kloosterman:
        t = kloosterman_table(cfg.family.n, F, emb, cfg.table_cap, cfg.threads,
                              cfg.cache_dir);
        break;
      case FamilyKind::ExpSum:
        t = exp_sum_table(cfg.family.f, cfg.family.g, cfg.family.h, cfg.family.r, F, emb,
                          cfg.table_cap, cfg.threads);
        break;
      case FamilyKind::Hyperelliptic:
        t = hyperelliptic_table(cfg.family.poly, F, emb);
        break;
      case FamilyKind::General:
        fail_validation("BadFamily", "general tables cannot drive a sieve");
    }
    if (cfg.normalized) t = normalize_table(t);
    tables.push_back(std::move(t));
  }
  SieveReport rep = survivor_count(plan, tables);
  double B = plan.B.get_d();
  double envelope = std::log(static_cast<double>(plan.q)) /
                    (B * std::pow(static_cast<double>(plan.q), 1.0 / (2.0 * B)));
  rep.annotations.push_back("asymptotic envelope log(q)/(B q^(1/2B)) = " +
                            fmt_double(envelope) +
                            " (implicit constant 1, p^eps factor dropped)");
  return rep;
}

namespace {

ordered_json rat_pair(const mpq_class& x) {
  return ordered_json::array({x.get_num().get_str(), x.get_den().get_str()});
}

ordered_json config_json(const SieveConfig& cfg) {
  ordered_json family;
  switch (cfg.family.kind) {
    case FamilyKind::Kloosterman:
      family["kind"] = "kloosterman";
      family["n"] = cfg.family.n;
      break;
    case FamilyKind::ExpSum:
      family["kind"] = "expsum";
      family["f_num"] = cfg.family.f.num;
      family["f_den"] = cfg.family.f.den;
      family["g_num"] = cfg.family.g.num;
      family["g_den"] = cfg.family.g.den;
      family["h_num"] = cfg.family.h.num;
      family["h_den"] = cfg.family.h.den;
      family["r"] = cfg.family.r;
      break;
    case FamilyKind::Hyperelliptic:
      family["kind"] = "hyperelliptic";
      family["poly"] = cfg.family.poly;
      break;
    case FamilyKind::General:
      family["kind"] = "general";
      break;
  }

  ordered_json target;
  switch (cfg.target.kind) {
    case TargetSpec::Kind::MthPowers:
      target["kind"] = "mth-powers";
      target["m"] = cfg.target.m;
      break;
    case TargetSpec::Kind::PolynomialImage:
      target["kind"] = "polynomial-image";
      target["poly"] = cfg.target.poly;
      break;
    case TargetSpec::Kind::Formula:
      target["kind"] = "formula";
      target["formula"] = cfg.target.formula;
      break;
    case TargetSpec::Kind::ExplicitList:
      target["kind"] = "explicit";
      target["members"] = cfg.target.members;
      break;
  }

  ordered_json lambda;
  lambda["L"] = cfg.lambda.L;
  lambda["cond_modulus"] = cfg.lambda.cond_modulus;
  lambda["cond_classes"] = cfg.lambda.cond_classes;

  ordered_json j;
  j["family"] = family;
  j["p"] = cfg.p;
  j["e"] = cfg.e;
  j["target"] = target;
  j["lambda"] = lambda;
  j["normalized"] = cfg.normalized;
  if (cfg.has_group)
    j["group"] = {{"family", family_name(cfg.group.family)}, {"n", cfg.group.n}};
  j["enumeration_cap"] = cfg.enumeration_cap;
  j["table_cap"] = cfg.table_cap;
  j["threads"] = cfg.threads;
  j["cache_dir"] = cfg.cache_dir;
  return j;
}

void expect_keys(const ordered_json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail_validation("BadConfig", "unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace

std::string sieve_config_to_json(const SieveConfig& cfg) {
  return config_json(cfg).dump(2) + "\n";
}

SieveConfig sieve_config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    fail_validation("BadConfig", std::string("JSON parse error: ") + ex.what());
  }
  SieveConfig cfg;
  try {
    expect_keys(j,
                {"family", "p", "e", "target", "lambda", "normalized", "group",
                 "enumeration_cap", "table_cap", "threads", "cache_dir"},
                "config");
    if (!j.contains("family") || !j.contains("p") || !j.contains("e") ||
        !j.contains("target"))
      fail_validation("BadConfig", "family, p, e, target are required");

    const ordered_json& fam = j.at("family");
    expect_keys(fam,
                {"kind", "n", "f_num", "f_den", "g_num", "g_den", "h_num", "h_den", "r",
                 "poly"},
                "family");
    std::string fkind = fam.at("kind").get<std::string>();
    if (fkind == "kloosterman") {
      cfg.family.kind = FamilyKind::Kloosterman;
      cfg.family.n = fam.at("n").get<unsigned>();
    } else if (fkind == "expsum") {
      cfg.family.kind = FamilyKind::ExpSum;
      if (fam.contains("f_num")) cfg.family.f.num = fam.at("f_num").get<std::vector<int64_t>>();
      if (fam.contains("f_den")) cfg.family.f.den = fam.at("f_den").get<std::vector<int64_t>>();
      if (fam.contains("g_num")) cfg.family.g.num = fam.at("g_num").get<std::vector<int64_t>>();
      if (fam.contains("g_den")) cfg.family.g.den = fam.at("g_den").get<std::vector<int64_t>>();
      if (fam.contains("h_num")) cfg.family.h.num = fam.at("h_num").get<std::vector<int64_t>>();
      if (fam.contains("h_den")) cfg.family.h.den = fam.at("h_den").get<std::vector<int64_t>>();
      cfg.family.r = fam.value("r", uint64_t{1});
    } else if (fkind == "hyperelliptic") {
      cfg.family.kind = FamilyKind::Hyperelliptic;
      cfg.family.poly = fam.at("poly").get<std::vector<int64_t>>();
    } else {
      fail_validation("BadConfig", "unknown family kind '" + fkind + "'");
    }

    cfg.p = j.at("p").get<uint64_t>();
    cfg.e = j.at("e").get<unsigned>();

    const ordered_json& tgt = j.at("target");
    expect_keys(tgt, {"kind", "m", "poly", "formula", "members"}, "target");
    std::string tkind = tgt.at("kind").get<std::string>();
    if (tkind == "mth-powers") {
      cfg.target.kind = TargetSpec::Kind::MthPowers;
      cfg.target.m = tgt.at("m").get<uint64_t>();
    } else if (tkind == "polynomial-image") {
      cfg.target.kind = TargetSpec::Kind::PolynomialImage;
      cfg.target.poly = tgt.at("poly").get<std::vector<int64_t>>();
    } else if (tkind == "formula") {
      cfg.target.kind = TargetSpec::Kind::Formula;
      cfg.target.formula = tgt.at("formula").get<std::string>();
    } else if (tkind == "explicit") {
      cfg.target.kind = TargetSpec::Kind::ExplicitList;
      cfg.target.members = tgt.at("members").get<std::vector<int64_t>>();
    } else {
      fail_validation("BadConfig", "unknown target kind '" + tkind + "'");
    }

    if (j.contains("lambda")) {
      const ordered_json& lam = j.at("lambda");
      expect_keys(lam, {"L", "cond_modulus", "cond_classes"}, "lambda");
      cfg.lambda.L = lam.value("L", uint64_t{0});
      cfg.lambda.cond_modulus = lam.value("cond_modulus", uint64_t{1});
      if (lam.contains("cond_classes"))
        cfg.lambda.cond_classes = lam.at("cond_classes").get<std::vector<uint64_t>>();
    }
    cfg.normalized = j.value("normalized", true);
    if (j.contains("group")) {
      const ordered_json& grp = j.at("group");
      expect_keys(grp, {"family", "n"}, "group");
      cfg.has_group = true;
      cfg.group.family = family_from_name(grp.at("family").get<std::string>());
      cfg.group.n = grp.at("n").get<unsigned>();
    }
    cfg.enumeration_cap = j.value("enumeration_cap", cfg.enumeration_cap);
    cfg.table_cap = j.value("table_cap", cfg.table_cap);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.cache_dir = j.value("cache_dir", cfg.cache_dir);
  } catch (const nlohmann::json::exception& ex) {
    fail_validation("BadConfig", std::string("config field error: ") + ex.what());
  }
  return cfg;
}

std::string report_json(const SieveReport& rep) {
  const SievePlan& plan = rep.plan;
  ordered_json j;
  j["version"] = kVersion;
  j["config"] = config_json(plan.cfg);
  j["q"] = plan.q;
  j["d"] = plan.d;
  j["group"] = {{"family", family_name(plan.group_family)}, {"n", plan.group_n}};
  j["B"] = ordered_json::array(
      {plan.B.get_num().get_str(), plan.B.get_den().get_str()});
  j["L"] = plan.L;
  j["ideal_multiplicity"] = plan.multiplicity;
  j["lambda_count_full"] = plan.lambda_count_full;
  ordered_json ideals = ordered_json::array();
  for (const IdealData& data : plan.ideals) {
    ordered_json d;
    d["ell"] = data.ideal.ell;
    d["omega"] = data.ideal.omega;
    d["set_size"] = data.set.count();
    d["local_density"] = rat_pair(data.local_density);
    d["omega_ratio"] = rat_pair(data.omega_ratio);
    d["omega_exact"] = data.omega_exact;
    d["group_order"] = data.group_order.get_str();
    ideals.push_back(std::move(d));
  }
  j["ideals"] = std::move(ideals);
  j["PL"] = rat_pair(plan.PL);
  j["PL_approximate"] = plan.pl_approximate;
  j["sup_local_density"] = rat_pair(plan.sup_local_density);
  j["survivors"] = rep.survivors;
  j["survivors_progression"] = rep.survivors_progression;
  j["domain_size"] = rep.domain_size;
  j["density"] = rep.density;
  j["bound"] = rep.bound;
  j["bound_ratio"] = rep.bound_ratio;
  j["annotations"] = rep.annotations;
  return j.dump(2) + "\n";
}

}  // namespace frobsieve
