#include "frobsieve/trace_functions.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <numeric>

#include "fp_poly.hpp"
#include "frobsieve/parallel.hpp"
#include "frobsieve/primes.hpp"
#include "frobsieve/table_io.hpp"

namespace frobsieve {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// Binds an embedding to a field: realizes psi(c) = e(tr/p image of c) and
// order-r multiplicative character values in the chosen target.
struct Realizer {
  const FiniteField& F;
  const Embedding& emb;
  uint64_t ell = 0;
  std::vector<uint64_t> psi_r;                 // Residue: omega_p^c
  std::vector<std::complex<double>> psi_c;     // Complex: e(kc/p)
  std::vector<uint64_t> chi_r;                 // Residue: zeta_r^m
  std::vector<std::complex<double>> chi_c;     // Complex: e(km/r)

  Realizer(const FiniteField& field, const Embedding& embedding, uint64_t r = 1)
      : F(field), emb(embedding) {
    uint64_t p = F.p();
    if (emb.d == 0 || emb.d % p != 0)
      fail_validation("IncompatibleEmbedding",
                      "embedding order " + std::to_string(emb.d) +
                          " is not a multiple of the characteristic " + std::to_string(p));
    if (r > 1 && emb.d % r != 0)
      fail_validation("IncompatibleEmbedding",
                      "embedding order " + std::to_string(emb.d) +
                          " is not a multiple of the character order " + std::to_string(r));
    if (emb.kind == Embedding::Kind::Residue) {
      if (emb.ideal.d != emb.d)
        fail_validation("MismatchedEmbedding", "embedding order disagrees with its ideal");
      ell = emb.ideal.ell;
      uint64_t wp = pow_mod(emb.ideal.omega, emb.d / p, ell);
      if (wp == 1 || pow_mod(wp, p, ell) != 1)
        fail_internal("OmegaOrder", "omega^(d/p) does not have exact order p");
      if (emb.d % 4 == 0) {
        uint64_t w4 = pow_mod(emb.ideal.omega, emb.d / 4, ell);
        if (mul_mod(w4, w4, ell) != ell - 1)
          fail_internal("OmegaOrder", "omega^(d/4) does not have exact order 4");
      }
      psi_r.resize(p);
      psi_r[0] = 1;
      for (uint64_t c = 1; c < p; ++c) psi_r[c] = mul_mod(psi_r[c - 1], wp, ell);
      if (r > 1) {
        uint64_t zr = pow_mod(emb.ideal.omega, emb.d / r, ell);
        chi_r.resize(r);
        chi_r[0] = 1;
        for (uint64_t m = 1; m < r; ++m) chi_r[m] = mul_mod(chi_r[m - 1], zr, ell);
      }
    } else {
      if (std::gcd(emb.k, emb.d) != 1)
        fail_validation("NotCoprime", "complex embedding index must be coprime to d");
      psi_c.resize(p);
      for (uint64_t c = 0; c < p; ++c) {
        double angle = kTau * static_cast<double>(mul_mod(emb.k % p, c, p)) /
                       static_cast<double>(p);
        psi_c[c] = {std::cos(angle), std::sin(angle)};
      }
      if (r > 1) {
        chi_c.resize(r);
        for (uint64_t m = 0; m < r; ++m) {
          double angle = kTau * static_cast<double>(mul_mod(emb.k % r, m, r)) /
                         static_cast<double>(r);
          chi_c[m] = {std::cos(angle), std::sin(angle)};
        }
      }
    }
  }

  bool residue() const { return emb.kind == Embedding::Kind::Residue; }
};

std::vector<uint64_t> trace_of_index(const FiniteField& F) {
  std::vector<uint64_t> tr(F.q());
  for (uint64_t i = 0; i < F.q(); ++i) tr[i] = F.abs_trace(F.from_index(i));
  return tr;
}

std::string poly_brief(const std::vector<int64_t>& c) {
  std::string s = "[";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

std::string ratfunc_brief(const RatFunc& f) {
  bool den_const_one = true;
  for (size_t i = 0; i < f.den.size(); ++i)
    if (f.den[i] != (i == 0 ? 1 : 0)) den_const_one = false;
  if (den_const_one) return poly_brief(f.num);
  return poly_brief(f.num) + "/" + poly_brief(f.den);
}

std::vector<FieldElement> reduce_poly(const std::vector<int64_t>& coeffs,
                                      const FiniteField& F) {
  std::vector<FieldElement> out;
  out.reserve(coeffs.size());
  int64_t p = static_cast<int64_t>(F.p());
  for (int64_t c : coeffs) {
    int64_t r = c % p;
    if (r < 0) r += p;
    out.push_back(F.from_residue(static_cast<uint64_t>(r)));
  }
  while (out.size() > 1 && out.back() == F.zero()) out.pop_back();
  return out;
}

FieldElement eval_poly(const std::vector<FieldElement>& c, FieldElement y,
                       const FiniteField& F) {
  FieldElement v = F.zero();
  for (size_t i = c.size(); i-- > 0;) v = F.add(F.mul(v, y), c[i]);
  return v;
}

bool is_zero_poly(const std::vector<FieldElement>& c, const FiniteField& F) {
  for (const auto& x : c)
    if (!(x == F.zero())) return false;
  return true;
}

size_t trimmed_degree(const std::vector<int64_t>& c) {
  size_t d = 0;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) d = i;
  return d;
}

bool is_zero_int_poly(const std::vector<int64_t>& c) {
  return std::all_of(c.begin(), c.end(), [](int64_t v) { return v == 0; });
}

bool is_const_poly(const std::vector<int64_t>& c, int64_t value) {
  if (c.empty()) return value == 0;
  if (c[0] != value) return false;
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

bool is_odd_int_poly(const std::vector<int64_t>& c) {  // only odd-degree monomials
  for (size_t i = 0; i < c.size(); i += 2)
    if (c[i] != 0) return false;
  return !is_zero_int_poly(c);
}

void check_embeddings_match(const Embedding& a, const Embedding& b) {
  bool ok = a.kind == b.kind && a.d == b.d;
  if (ok && a.kind == Embedding::Kind::Residue)
    ok = a.ideal.ell == b.ideal.ell && a.ideal.omega == b.ideal.omega;
  if (ok && a.kind == Embedding::Kind::Complex) ok = a.k == b.k;
  if (!ok) fail_validation("MismatchedEmbedding", "table and argument embeddings differ");
}

}  // namespace

size_t TraceTable::slot_of(uint64_t element_index) const {
  if (domain == TableDomain::Fq) {
    if (element_index >= q) fail_validation("OutOfDomain", "element index out of range");
    return element_index;
  }
  if (element_index == 0 || element_index >= q)
    fail_validation("OutOfDomain", "element index outside F_q^*");
  return element_index - 1;
}

Embedding complex_embedding(uint64_t d, uint64_t k) {
  if (d == 0) fail_validation("ZeroArgument", "embedding order must be positive");
  if (std::gcd(k % d == 0 ? d : k % d, d) != 1 && d > 1)
    fail_validation("NotCoprime", "embedding index " + std::to_string(k) +
                                      " is not coprime to " + std::to_string(d));
  Embedding e;
  e.kind = Embedding::Kind::Complex;
  e.d = d;
  e.k = k % d;
  if (e.k == 0) e.k = d == 1 ? 0 : 1;
  return e;
}

Embedding residue_embedding(const PrimeIdealDeg1& ideal) {
  Embedding e;
  e.kind = Embedding::Kind::Residue;
  e.d = ideal.d;
  e.ideal = ideal;
  return e;
}

uint64_t embedding_order(uint64_t p, uint64_t r) {
  if (p == 0 || r == 0) fail_validation("ZeroArgument", "p and r must be positive");
  return std::lcm(4 * p, r);
}

Value kloosterman_point(unsigned n, const FiniteField& F, FieldElement a,
                        const Embedding& emb) {
  if (n < 2) fail_validation("BadRank", "hyper-Kloosterman rank must be >= 2");
  if (a == F.zero()) fail_validation("ZeroArgument", "Kloosterman argument must be nonzero");
  Realizer R(F, emb);
  uint64_t q = F.q();
  double cost = std::pow(static_cast<double>(q - 1), static_cast<double>(n - 1));
  if (cost > 2e8)
    fail_resource("FieldTooLarge", "direct evaluation needs (q-1)^(n-1) = " +
                                       std::to_string(cost) + " terms");

  std::vector<uint64_t> idx(n - 1, 1);  // element indices in F_q^*
  Value out;
  std::complex<double> acc_c{0.0, 0.0};
  uint64_t acc_r = 0;
  while (true) {
    FieldElement prod = F.one();
    FieldElement sum = F.zero();
    for (unsigned i = 0; i < n - 1; ++i) {
      FieldElement x = F.from_index(idx[i]);
      prod = F.mul(prod, x);
      sum = F.add(sum, x);
    }
    FieldElement xn = F.mul(a, F.inv(prod));
    uint64_t c = F.abs_trace(F.add(sum, xn));
    if (R.residue())
      acc_r = (acc_r + R.psi_r[c]) % R.ell;
    else
      acc_c += R.psi_c[c];

    unsigned pos = 0;
    while (pos < n - 1 && ++idx[pos] == q) idx[pos++] = 1;
    if (pos == n - 1) break;
  }
  out.c = acc_c;
  out.r = acc_r;
  return out;
}

TraceTable kloosterman_table(unsigned n, const FiniteField& F, const Embedding& emb,
                             uint64_t q_cap, unsigned threads,
                             const std::string& cache_dir) {
  if (n < 1) fail_validation("BadRank", "table rank must be >= 1");
  uint64_t q = F.q();
  if (q > q_cap)
    fail_resource("FieldTooLarge", "q = " + std::to_string(q) + " exceeds the table cap " +
                                       std::to_string(q_cap));
  if (!F.has_tables())
    fail_resource("FieldTooLarge", "field too large for log/exp tables");

  bool use_cache = false;
  std::string path;
  if (!cache_dir.empty() && emb.kind == Embedding::Kind::Residue) {
    // Only tables built on the canonical ideal generator are cached; the file
    // format does not record omega.
    FiniteField res_field(emb.ideal.ell, 1, emb.ideal.ell);
    uint64_t canonical = res_field.unity_root(emb.d).index;
    if (canonical == emb.ideal.omega) {
      use_cache = true;
      path = kloosterman_cache_path(cache_dir, n, F.p(), F.e(), emb.d, emb.ideal.ell);
      if (std::filesystem::exists(path))
        return read_table_cache(path, F, emb, FamilyKind::Kloosterman, n);
    }
  }

  Realizer R(F, emb);
  uint64_t M = q - 1;
  FieldElement g = F.generator();
  std::vector<uint64_t> elem(M);  // elem[i] = index of g^i
  {
    FieldElement cur = F.one();
    for (uint64_t i = 0; i < M; ++i) {
      elem[i] = cur.index;
      cur = F.mul(cur, g);
    }
  }

  TraceTable t;
  t.family = FamilyKind::Kloosterman;
  t.description = "Kl_" + std::to_string(n);
  t.n = n;
  t.p = F.p();
  t.e = F.e();
  t.q = q;
  t.domain = TableDomain::FqStar;
  t.emb = emb;
  t.valid.assign(M, true);

  if (R.residue()) {
    std::vector<uint64_t> psi_log(M);
    for (uint64_t i = 0; i < M; ++i)
      psi_log[i] = R.psi_r[F.abs_trace(F.from_index(elem[i]))];
    std::vector<uint64_t> cur = psi_log, next(M);
    uint64_t ell = R.ell;
    for (unsigned level = 2; level <= n; ++level) {
      parallel_for(M, threads, [&](uint64_t lo, uint64_t hi) {
        for (uint64_t j = lo; j < hi; ++j) {
          uint64_t acc = 0;
          for (uint64_t i = 0; i < M; ++i)
            acc = (acc + mul_mod(cur[j >= i ? j - i : j + M - i], psi_log[i], ell)) % ell;
          next[j] = acc;
        }
      });
      cur.swap(next);
    }
    t.rvals.assign(q - 1, 0);
    for (uint64_t j = 0; j < M; ++j) t.rvals[elem[j] - 1] = cur[j];
  } else {
    std::vector<std::complex<double>> psi_log(M);
    for (uint64_t i = 0; i < M; ++i)
      psi_log[i] = R.psi_c[F.abs_trace(F.from_index(elem[i]))];
    std::vector<std::complex<double>> cur = psi_log, next(M);
    for (unsigned level = 2; level <= n; ++level) {
      parallel_for(M, threads, [&](uint64_t lo, uint64_t hi) {
        for (uint64_t j = lo; j < hi; ++j) {
          std::complex<double> acc{0.0, 0.0};
          for (uint64_t i = 0; i < M; ++i)
            acc += cur[j >= i ? j - i : j + M - i] * psi_log[i];
          next[j] = acc;
        }
      });
      cur.swap(next);
    }
    t.cvals.assign(q - 1, {0.0, 0.0});
    for (uint64_t j = 0; j < M; ++j) t.cvals[elem[j] - 1] = cur[j];
  }

  if (use_cache) {
    std::filesystem::create_directories(cache_dir);
    write_table_cache(path, t);
  }
  return t;
}

TraceTable fourier_transform_table(const TraceTable& t, const Embedding& emb,
                                   bool conjugate_psi, unsigned threads) {
  if (t.domain != TableDomain::Fq)
    fail_validation("MismatchedDomain", "Fourier transform needs a full-field table");
  check_embeddings_match(t.emb, emb);
  const uint64_t q = t.q;
  if (q > kDefaultTableCap)
    fail_resource("FieldTooLarge", "Fourier transform is O(q^2); q too large");
  FiniteField F(t.p, t.e);
  Realizer R(F, emb);
  std::vector<uint64_t> tr = trace_of_index(F);

  TraceTable out;
  out.family = FamilyKind::General;
  out.description = "fourier_transform(" + t.description + ")";
  out.n = t.n;
  out.p = t.p;
  out.e = t.e;
  out.q = q;
  out.domain = TableDomain::Fq;
  out.emb = t.emb;
  out.normalized = true;
  out.valid.assign(q, true);

  if (R.residue()) {
    uint64_t ell = R.ell;
    uint64_t s = sqrt_q_mod(emb.ideal, t.p, t.e);
    uint64_t factor = ell - inv_mod(s, ell);  // -q^{-1/2} mod ell
    out.rvals.assign(q, 0);
    const uint64_t p = t.p;
    parallel_for(q, threads, [&](uint64_t lo, uint64_t hi) {
      for (uint64_t a = lo; a < hi; ++a) {
        FieldElement ae = F.from_index(a);
        uint64_t acc = 0;
        for (uint64_t x = 0; x < q; ++x) {
          if (t.rvals[x] == 0) continue;
          uint64_t c = tr[F.mul(ae, F.from_index(x)).index];
          if (conjugate_psi) c = (p - c) % p;
          acc = (acc + mul_mod(t.rvals[x], R.psi_r[c], ell)) % ell;
        }
        out.rvals[a] = mul_mod(factor, acc, ell);
      }
    });
  } else {
    double factor = -1.0 / std::sqrt(static_cast<double>(q));
    out.cvals.assign(q, {0.0, 0.0});
    const uint64_t p = t.p;
    parallel_for(q, threads, [&](uint64_t lo, uint64_t hi) {
      for (uint64_t a = lo; a < hi; ++a) {
        FieldElement ae = F.from_index(a);
        std::complex<double> acc{0.0, 0.0};
        for (uint64_t x = 0; x < q; ++x) {
          uint64_t c = tr[F.mul(ae, F.from_index(x)).index];
          if (conjugate_psi) c = (p - c) % p;
          acc += t.cvals[x] * R.psi_c[c];
        }
        out.cvals[a] = factor * acc;
      }
    });
  }
  return out;
}

namespace {

struct ExpSumPrep {
  std::vector<bool> skip;      // poles, and zeros of g when r > 1
  std::vector<uint64_t> fv;    // index of f(y)
  std::vector<uint64_t> hv;    // index of h(y)
  std::vector<uint64_t> chim;  // log_g(g(y)) mod r (r > 1 only)
};

ExpSumPrep exp_sum_prepare(const RatFunc& f, const RatFunc& g, const RatFunc& h, uint64_t r,
                           const FiniteField& F) {
  if (r == 0 || (F.q() - 1) % r != 0)
    fail_validation("BadCharacterOrder", "character order " + std::to_string(r) +
                                             " does not divide q - 1");
  auto fn = reduce_poly(f.num, F), fd = reduce_poly(f.den, F);
  auto gn = reduce_poly(g.num, F), gd = reduce_poly(g.den, F);
  auto hn = reduce_poly(h.num, F), hd = reduce_poly(h.den, F);
  for (const auto* den : {&fd, &gd, &hd})
    if (is_zero_poly(*den, F))
      fail_validation("DegenerateRationalFunction",
                      "a denominator vanishes identically mod p");

  uint64_t q = F.q();
  ExpSumPrep prep;
  prep.skip.assign(q, false);
  prep.fv.assign(q, 0);
  prep.hv.assign(q, 0);
  if (r > 1) prep.chim.assign(q, 0);
  for (uint64_t yi = 0; yi < q; ++yi) {
    FieldElement y = F.from_index(yi);
    FieldElement fdv = eval_poly(fd, y, F);
    FieldElement gdv = eval_poly(gd, y, F);
    FieldElement hdv = eval_poly(hd, y, F);
    if (fdv == F.zero() || gdv == F.zero() || hdv == F.zero()) {
      prep.skip[yi] = true;
      continue;
    }
    FieldElement fval = F.mul(eval_poly(fn, y, F), F.inv(fdv));
    FieldElement hval = F.mul(eval_poly(hn, y, F), F.inv(hdv));
    prep.fv[yi] = fval.index;
    prep.hv[yi] = hval.index;
    if (r > 1) {
      FieldElement gval = F.mul(eval_poly(gn, y, F), F.inv(gdv));
      if (gval == F.zero()) {
        prep.skip[yi] = true;  // chi(0) = 0
        continue;
      }
      prep.chim[yi] = F.log(gval) % r;
    }
  }
  return prep;
}

}  // namespace

Value exp_sum(const RatFunc& f, const RatFunc& g, const RatFunc& h, uint64_t r,
              const FiniteField& F, FieldElement x, const Embedding& emb) {
  Realizer R(F, emb, r);
  ExpSumPrep prep = exp_sum_prepare(f, g, h, r, F);
  uint64_t q = F.q();
  Value out;
  std::complex<double> acc_c{0.0, 0.0};
  uint64_t acc_r = 0;
  for (uint64_t yi = 0; yi < q; ++yi) {
    if (prep.skip[yi]) continue;
    FieldElement arg = F.add(F.mul(x, FieldElement{prep.fv[yi]}), FieldElement{prep.hv[yi]});
    uint64_t c = F.abs_trace(arg);
    if (R.residue()) {
      uint64_t term = R.psi_r[c];
      if (r > 1) term = mul_mod(term, R.chi_r[prep.chim[yi]], R.ell);
      acc_r = (acc_r + term) % R.ell;
    } else {
      std::complex<double> term = R.psi_c[c];
      if (r > 1) term *= R.chi_c[prep.chim[yi]];
      acc_c += term;
    }
  }
  out.c = acc_c;
  out.r = acc_r;
  return out;
}

TraceTable exp_sum_table(const RatFunc& f, const RatFunc& g, const RatFunc& h, uint64_t r,
                         const FiniteField& F, const Embedding& emb, uint64_t q_cap,
                         unsigned threads) {
  uint64_t q = F.q();
  if (q > q_cap)
    fail_resource("FieldTooLarge", "q = " + std::to_string(q) + " exceeds the table cap " +
                                       std::to_string(q_cap));
  if (!F.has_tables())
    fail_resource("FieldTooLarge", "field too large for log/exp tables");
  Realizer R(F, emb, r);
  ExpSumPrep prep = exp_sum_prepare(f, g, h, r, F);
  std::vector<uint64_t> tr = trace_of_index(F);

  TraceTable t;
  t.family = FamilyKind::ExpSum;
  t.description = "expsum(f=" + ratfunc_brief(f) + ",g=" + ratfunc_brief(g) +
                  ",h=" + ratfunc_brief(h) + ",r=" + std::to_string(r) + ")";
  t.n = 2;
  t.p = F.p();
  t.e = F.e();
  t.q = q;
  t.domain = TableDomain::Fq;
  t.emb = emb;
  t.valid.assign(q, true);

  if (R.residue()) {
    t.rvals.assign(q, 0);
    uint64_t ell = R.ell;
    parallel_for(q, threads, [&](uint64_t lo, uint64_t hi) {
      for (uint64_t xi = lo; xi < hi; ++xi) {
        FieldElement x = F.from_index(xi);
        uint64_t acc = 0;
        for (uint64_t yi = 0; yi < q; ++yi) {
          if (prep.skip[yi]) continue;
          uint64_t c =
              tr[F.add(F.mul(x, FieldElement{prep.fv[yi]}), FieldElement{prep.hv[yi]}).index];
          uint64_t term = R.psi_r[c];
          if (r > 1) term = mul_mod(term, R.chi_r[prep.chim[yi]], ell);
          acc = (acc + term) % ell;
        }
        t.rvals[xi] = acc;
      }
    });
  } else {
    t.cvals.assign(q, {0.0, 0.0});
    parallel_for(q, threads, [&](uint64_t lo, uint64_t hi) {
      for (uint64_t xi = lo; xi < hi; ++xi) {
        FieldElement x = F.from_index(xi);
        std::complex<double> acc{0.0, 0.0};
        for (uint64_t yi = 0; yi < q; ++yi) {
          if (prep.skip[yi]) continue;
          uint64_t c =
              tr[F.add(F.mul(x, FieldElement{prep.fv[yi]}), FieldElement{prep.hv[yi]}).index];
          std::complex<double> term = R.psi_c[c];
          if (r > 1) term *= R.chi_c[prep.chim[yi]];
          acc += term;
        }
        t.cvals[xi] = acc;
      }
    });
  }
  return t;
}

std::vector<std::string> exp_sum_hypothesis_notes(const RatFunc& f, const RatFunc& g,
                                                  const RatFunc& h, uint64_t r) {
  std::vector<std::string> notes;
  bool f_poly = is_const_poly(f.den, 1) || trimmed_degree(f.den) == 0;
  bool h_poly = is_const_poly(h.den, 1) || trimmed_degree(h.den) == 0;
  bool g_trivial = r <= 1;
  bool f_is_X = f_poly && f.num.size() >= 2 && f.num[0] == 0 && f.num[1] != 0 &&
                trimmed_degree(f.num) == 1 && f.num[1] == 1;

  if (g_trivial && is_zero_int_poly(h.num)) {
    notes.push_back(
        "shape (h = 0, trivial character): monodromy SL_k/Sp_k classification depends on the "
        "critical values of f; conditions (H1)/(H2) are not checked symbolically");
    return notes;
  }

  if (g_trivial && f_is_X && h_poly) {
    size_t n = trimmed_degree(h.num);
    notes.push_back("shape (f = X, trivial character, polynomial h of degree " +
                    std::to_string(n) + "): classified family with group " +
                    ((n % 2 == 1 && is_odd_int_poly(h.num)) ? "Sp_" : "SL_") +
                    std::to_string(n ? n - 1 : 0));
    if (n < 3) notes.push_back("hypothesis violated: deg h >= 3 required");
    if (n == 7 || n == 9)
      notes.push_back("hypothesis violated: deg h in {7, 9} is excluded");
    if (n >= 1 && n - 1 < h.num.size() && h.num[n - 1] != 0)
      notes.push_back("hypothesis violated: the coefficient of X^(deg h - 1) must vanish");
    return notes;
  }

  if (!g_trivial) {
    notes.push_back("shape (nontrivial character of order " + std::to_string(r) +
                    "): classified family requires f odd polynomial, g odd with zero/pole "
                    "orders prime to r, h with a pole at infinity");
    if (!f_poly || !is_odd_int_poly(f.num))
      notes.push_back("hypothesis violated: f must be an odd nonzero polynomial");
    size_t h_num_deg = trimmed_degree(h.num), h_den_deg = trimmed_degree(h.den);
    if (h_num_deg <= h_den_deg)
      notes.push_back("hypothesis violated: h must have a pole at infinity");
    size_t d = f_poly ? trimmed_degree(f.num) : 0;
    size_t npole = h_num_deg > h_den_deg ? h_num_deg - h_den_deg : 0;
    if (d && npole && std::gcd(d, npole) != 1)
      notes.push_back("hypothesis violated: gcd(deg f, pole order of h) must be 1");
    bool g_poly = is_const_poly(g.den, 1) || trimmed_degree(g.den) == 0;
    if (g_poly && !is_odd_int_poly(g.num))
      notes.push_back("hypothesis violated: g must be odd");
    else if (!g_poly)
      notes.push_back("unchecked: zero/pole orders of the rational g must be prime to r");
    return notes;
  }

  notes.push_back(
      "shape outside the classified families; normalized values may exceed rank bounds");
  return notes;
}

HyperellipticValue hyperelliptic_trace(const std::vector<int64_t>& f, FieldElement z,
                                       const FiniteField& F) {
  if (F.p() == 2) fail_validation("EvenCharacteristic", "odd characteristic required");
  size_t deg = trimmed_degree(f);
  if (deg < 2 || deg % 2 != 0)
    fail_validation("BadDegree", "f must have even degree >= 2");
  fp_poly::Poly fbar(f.size());
  int64_t p = static_cast<int64_t>(F.p());
  for (size_t i = 0; i < f.size(); ++i) {
    int64_t r = f[i] % p;
    if (r < 0) r += p;
    fbar[i] = static_cast<uint64_t>(r);
  }
  fbar = fp_poly::trim(std::move(fbar));
  if (fbar.size() != deg + 1)
    fail_validation("BadDegree", "leading coefficient of f vanishes mod p");
  fp_poly::Poly d = fp_poly::derivative(fbar, F.p());
  fp_poly::Poly gcd = fp_poly::gcd(fbar, d, F.p());
  if (gcd.size() > 1)
    fail_validation("NotSquarefreeModP", "f is not squarefree mod " + std::to_string(F.p()));
  if (!F.has_tables())
    fail_resource("FieldTooLarge", "field too large for log/exp tables");

  std::vector<FieldElement> fc = reduce_poly(f, F);
  if (!(eval_poly(fc, z, F) == F.zero()))
    fail_validation("NotARoot", "z is not a root of f in F_q");

  int64_t a = 0;
  uint64_t q = F.q();
  for (uint64_t xi = 0; xi < q; ++xi) {
    FieldElement x = F.from_index(xi);
    FieldElement v = F.mul(eval_poly(fc, x, F), F.sub(x, z));
    if (v == F.zero()) continue;
    a += (F.log(v) % 2 == 0) ? -1 : 1;  // a_z = -sum chi_2
  }
  HyperellipticValue out;
  out.a = a;
  out.normalized = static_cast<double>(a) / std::sqrt(static_cast<double>(q));
  return out;
}

TraceTable hyperelliptic_table(const std::vector<int64_t>& f, const FiniteField& F,
                               const Embedding& emb) {
  uint64_t q = F.q();
  TraceTable t;
  t.family = FamilyKind::Hyperelliptic;
  t.description = "hyperelliptic(f=" + poly_brief(f) + ")";
  t.n = 2;
  t.p = F.p();
  t.e = F.e();
  t.q = q;
  t.domain = TableDomain::Fq;
  t.emb = emb;
  t.valid.assign(q, false);
  bool residue = emb.kind == Embedding::Kind::Residue;
  if (residue)
    t.rvals.assign(q, 0);
  else
    t.cvals.assign(q, {0.0, 0.0});

  std::vector<FieldElement> fc = reduce_poly(f, F);
  bool any_root = false;
  for (uint64_t zi = 0; zi < q; ++zi) {
    FieldElement z = F.from_index(zi);
    if (!(eval_poly(fc, z, F) == F.zero())) continue;
    any_root = true;
    HyperellipticValue v = hyperelliptic_trace(f, z, F);
    t.valid[zi] = true;
    if (residue) {
      uint64_t ell = emb.ideal.ell;
      int64_t r = v.a % static_cast<int64_t>(ell);
      if (r < 0) r += static_cast<int64_t>(ell);
      t.rvals[zi] = static_cast<uint64_t>(r);
    } else {
      t.cvals[zi] = {static_cast<double>(v.a), 0.0};
    }
  }
  if (!any_root)
    fail_validation("NotARoot", "f has no roots in F_q; the table domain is empty");
  return t;
}

namespace {

struct NormFactor {
  unsigned exponent = 0;
  int sign = 1;
};

NormFactor normalization_of(const TraceTable& t) {
  NormFactor nf;
  switch (t.family) {
    case FamilyKind::Kloosterman:
      nf.exponent = t.n - 1;
      nf.sign = (t.n - 1) % 2 == 0 ? 1 : -1;
      break;
    case FamilyKind::ExpSum:
      nf.exponent = 1;
      nf.sign = -1;
      break;
    case FamilyKind::Hyperelliptic:
      nf.exponent = 1;
      nf.sign = 1;
      break;
    case FamilyKind::General:
      fail_validation("UnknownNormalization",
                      "general tables carry no normalization convention");
  }
  return nf;
}

TraceTable apply_norm_factor(const TraceTable& t, bool forward) {
  NormFactor nf = normalization_of(t);
  TraceTable out = t;
  out.normalized = forward;
  if (t.emb.kind == Embedding::Kind::Residue) {
    uint64_t ell = t.emb.ideal.ell;
    uint64_t s = sqrt_q_mod(t.emb.ideal, t.p, t.e);
    uint64_t base = forward ? inv_mod(s, ell) : s;
    uint64_t factor = pow_mod(base, nf.exponent, ell);
    if (nf.sign < 0) factor = (ell - factor) % ell;
    for (size_t i = 0; i < out.rvals.size(); ++i)
      if (out.valid[i]) out.rvals[i] = mul_mod(out.rvals[i], factor, ell);
  } else {
    double mag = std::pow(static_cast<double>(t.q),
                          (forward ? -0.5 : 0.5) * static_cast<double>(nf.exponent));
    double factor = nf.sign < 0 ? -mag : mag;
    for (size_t i = 0; i < out.cvals.size(); ++i)
      if (out.valid[i]) out.cvals[i] *= factor;
  }
  return out;
}

}  // namespace

TraceTable normalize_table(const TraceTable& t) {
  if (t.normalized) fail_validation("AlreadyNormalized", "table is already normalized");
  return apply_norm_factor(t, true);
}

TraceTable denormalize_table(const TraceTable& t) {
  if (!t.normalized) fail_validation("NotNormalized", "table is not normalized");
  return apply_norm_factor(t, false);
}

}  // namespace frobsieve
