#include "frobsieve/matrix_groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frobsieve/primes.hpp"

namespace frobsieve {
namespace {

void require_odd_prime(uint64_t ell) {
  if (ell == 2) fail_validation("EvenCharacteristic", "characteristic 2 is not supported");
  if (!is_prime_u64(ell)) fail_validation("NotPrime", std::to_string(ell) + " is not prime");
}

uint64_t quadratic_character(uint64_t a, uint64_t ell) {  // 1, ell-1, or 0
  return pow_mod(a % ell, (ell - 1) / 2, ell);
}

uint64_t smallest_nonresidue(uint64_t ell) {
  for (uint64_t r = 2; r < ell; ++r)
    if (quadratic_character(r, ell) == ell - 1) return r;
  fail_internal("NoNonresidue", "no quadratic non-residue found mod " + std::to_string(ell));
}

uint64_t primitive_root_mod(uint64_t ell) {
  auto factors = factorize(ell - 1);
  for (uint64_t g = 2; g < ell; ++g) {
    bool ok = true;
    for (const auto& [p, k] : factors)
      if (pow_mod(g, (ell - 1) / p, ell) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  fail_internal("NoPrimitiveRoot", "no primitive root mod " + std::to_string(ell));
}

struct KeySet {
  std::vector<uint64_t> slots;  // key 0 = empty (the zero matrix is never a group element)
  uint64_t mask = 0;
  uint64_t count = 0;

  explicit KeySet(uint64_t expected) {
    uint64_t target = std::max<uint64_t>(16, expected * 2);
    uint64_t size = 16;
    while (size < target) size <<= 1;
    slots.assign(size, 0);
    mask = size - 1;
  }

  static uint64_t hash(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  bool insert(uint64_t key) {
    uint64_t i = hash(key) & mask;
    while (true) {
      uint64_t cur = slots[i];
      if (cur == key) return false;
      if (cur == 0) {
        slots[i] = key;
        ++count;
        return true;
      }
      i = (i + 1) & mask;
    }
  }
};

uint64_t encode_matrix(const Matrix& m, uint64_t ell) {
  uint64_t key = 0;
  for (unsigned idx = m.n * m.n; idx-- > 0;) key = key * ell + m.a[idx];
  return key;
}

Matrix decode_matrix(uint64_t key, unsigned n, uint64_t ell) {
  Matrix m;
  m.n = n;
  for (unsigned idx = 0; idx < n * n; ++idx) {
    m.a[idx] = key % ell;
    key /= ell;
  }
  return m;
}

bool packing_fits_u64(unsigned n, uint64_t ell) {
  unsigned __int128 range = 1;
  for (unsigned i = 0; i < n * n; ++i) {
    range *= ell;
    if (range > UINT64_MAX) return false;
  }
  return true;
}

bool preserves_form(const Matrix& g, const Matrix& form, uint64_t ell) {
  Matrix lhs = mat_mul(mat_mul(mat_transpose(g), form, ell), g, ell);
  return lhs == form;
}

// All projective representatives: nonzero vectors with first nonzero
// coordinate equal to 1.
std::vector<std::array<uint64_t, kMaxMatrixDim>> projective_reps(unsigned n, uint64_t ell) {
  std::vector<std::array<uint64_t, kMaxMatrixDim>> reps;
  for (unsigned lead = 0; lead < n; ++lead) {
    unsigned free_coords = n - lead - 1;
    uint64_t total = 1;
    for (unsigned i = 0; i < free_coords; ++i) total *= ell;
    for (uint64_t code = 0; code < total; ++code) {
      std::array<uint64_t, kMaxMatrixDim> v{};
      v[lead] = 1;
      uint64_t rest = code;
      for (unsigned i = lead + 1; i < n; ++i) {
        v[i] = rest % ell;
        rest /= ell;
      }
      reps.push_back(v);
    }
  }
  return reps;
}

Matrix reflection(const std::array<uint64_t, kMaxMatrixDim>& v, const Matrix& form,
                  uint64_t ell) {
  unsigned n = form.n;
  std::array<uint64_t, kMaxMatrixDim> bv{};
  for (unsigned i = 0; i < n; ++i) {
    uint64_t s = 0;
    for (unsigned j = 0; j < n; ++j) s = (s + mul_mod(form.at(i, j), v[j], ell)) % ell;
    bv[i] = s;
  }
  uint64_t q = 0;
  for (unsigned i = 0; i < n; ++i) q = (q + mul_mod(v[i], bv[i], ell)) % ell;
  if (q == 0) fail_internal("IsotropicReflection", "reflection through an isotropic vector");
  uint64_t scale = mul_mod(2 % ell, inv_mod(q, ell), ell);
  Matrix r = mat_identity(n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      uint64_t sub = mul_mod(scale, mul_mod(v[i], bv[j], ell), ell);
      r.at(i, j) = (r.at(i, j) + ell - sub) % ell;
    }
  return r;
}

}  // namespace

std::string family_name(GroupFamily f) {
  switch (f) {
    case GroupFamily::GL:
      return "GL";
    case GroupFamily::SL:
      return "SL";
    case GroupFamily::Sp:
      return "Sp";
    case GroupFamily::SOplus:
      return "SOplus";
    case GroupFamily::SOminus:
      return "SOminus";
    case GroupFamily::SOodd:
      return "SOodd";
  }
  fail_internal("BadFamily", "unreachable family tag");
}

GroupFamily family_from_name(const std::string& name) {
  if (name == "GL") return GroupFamily::GL;
  if (name == "SL") return GroupFamily::SL;
  if (name == "Sp") return GroupFamily::Sp;
  if (name == "SOplus") return GroupFamily::SOplus;
  if (name == "SOminus") return GroupFamily::SOminus;
  if (name == "SOodd") return GroupFamily::SOodd;
  fail_validation("UnknownFamily", "unknown group family '" + name + "'");
}

void validate_group_spec(GroupFamily family, unsigned n, uint64_t ell) {
  require_odd_prime(ell);
  switch (family) {
    case GroupFamily::GL:
      if (n < 1) fail_validation("BadDimension", "GL requires n >= 1");
      break;
    case GroupFamily::SL:
      if (n < 2) fail_validation("BadDimension", "SL requires n >= 2");
      break;
    case GroupFamily::Sp:
      if (n < 2 || n % 2 != 0) fail_validation("BadDimension", "Sp requires even n >= 2");
      break;
    case GroupFamily::SOplus:
    case GroupFamily::SOminus:
      if (n < 4 || n % 2 != 0)
        fail_validation("BadDimension", family_name(family) + " requires even n >= 4");
      break;
    case GroupFamily::SOodd:
      if (n < 3 || n % 2 != 1) fail_validation("BadDimension", "SOodd requires odd n >= 3");
      break;
  }
}

Matrix mat_identity(unsigned n) {
  Matrix m;
  m.n = n;
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix mat_mul(const Matrix& x, const Matrix& y, uint64_t ell) {
  Matrix r;
  r.n = x.n;
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned j = 0; j < x.n; ++j) {
      uint64_t s = 0;
      for (unsigned k = 0; k < x.n; ++k) s = (s + mul_mod(x.at(i, k), y.at(k, j), ell)) % ell;
      r.at(i, j) = s;
    }
  return r;
}

Matrix mat_transpose(const Matrix& x) {
  Matrix r;
  r.n = x.n;
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned j = 0; j < x.n; ++j) r.at(i, j) = x.at(j, i);
  return r;
}

uint64_t mat_trace(const Matrix& x, uint64_t ell) {
  uint64_t s = 0;
  for (unsigned i = 0; i < x.n; ++i) s = (s + x.at(i, i)) % ell;
  return s;
}

uint64_t mat_det(const Matrix& x, uint64_t ell) {
  Matrix m = x;
  unsigned n = m.n;
  uint64_t det = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (unsigned j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = ell - det;
    }
    det = mul_mod(det, m.at(col, col), ell);
    uint64_t inv = inv_mod(m.at(col, col), ell);
    for (unsigned row = col + 1; row < n; ++row) {
      uint64_t factor = mul_mod(m.at(row, col), inv, ell);
      if (factor == 0) continue;
      for (unsigned j = col; j < n; ++j) {
        uint64_t sub = mul_mod(factor, m.at(col, j), ell);
        m.at(row, j) = (m.at(row, j) + ell - sub) % ell;
      }
    }
  }
  return det % ell;
}

Matrix mat_inverse(const Matrix& x, uint64_t ell) {
  Matrix m = x;
  Matrix inv = mat_identity(x.n);
  unsigned n = m.n;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) fail_validation("SingularMatrix", "matrix is not invertible");
    if (pivot != col)
      for (unsigned j = 0; j < n; ++j) {
        std::swap(m.at(pivot, j), m.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    uint64_t piv_inv = inv_mod(m.at(col, col), ell);
    for (unsigned j = 0; j < n; ++j) {
      m.at(col, j) = mul_mod(m.at(col, j), piv_inv, ell);
      inv.at(col, j) = mul_mod(inv.at(col, j), piv_inv, ell);
    }
    for (unsigned row = 0; row < n; ++row) {
      if (row == col) continue;
      uint64_t factor = m.at(row, col);
      if (factor == 0) continue;
      for (unsigned j = 0; j < n; ++j) {
        m.at(row, j) = (m.at(row, j) + ell - mul_mod(factor, m.at(col, j), ell)) % ell;
        inv.at(row, j) = (inv.at(row, j) + ell - mul_mod(factor, inv.at(col, j), ell)) % ell;
      }
    }
  }
  return inv;
}

Matrix pinned_form(GroupFamily family, unsigned n, uint64_t ell) {
  validate_group_spec(family, n, ell);
  Matrix f;
  f.n = n;
  switch (family) {
    case GroupFamily::Sp: {
      unsigned m = n / 2;
      for (unsigned i = 0; i < m; ++i) {
        f.at(i, m + i) = 1;
        f.at(m + i, i) = ell - 1;
      }
      return f;
    }
    case GroupFamily::SOodd:
      return mat_identity(n);
    case GroupFamily::SOplus:
      for (unsigned i = 0; i < n; ++i) f.at(i, n - 1 - i) = 1;
      return f;
    case GroupFamily::SOminus: {
      for (unsigned i = 0; i < n - 2; ++i) f.at(i, n - 3 - i) = 1;
      f.at(n - 2, n - 2) = 1;
      f.at(n - 1, n - 1) = ell - smallest_nonresidue(ell);
      return f;
    }
    default:
      fail_validation("BadDimension", family_name(family) + " has no pinned form");
  }
}

std::vector<Matrix> group_generators(const GroupSpec& spec) {
  validate_group_spec(spec.family, spec.n, spec.ell);
  unsigned n = spec.n;
  uint64_t ell = spec.ell;
  std::vector<Matrix> gens;

  if (spec.family == GroupFamily::SL || spec.family == GroupFamily::GL) {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        if (i == j) continue;
        Matrix g = mat_identity(n);
        g.at(i, j) = 1;
        gens.push_back(g);
      }
    if (spec.family == GroupFamily::GL && ell > 2) {
      Matrix g = mat_identity(n);
      g.at(0, 0) = primitive_root_mod(ell);
      gens.push_back(g);
    }
    for (const Matrix& g : gens)
      if (spec.family == GroupFamily::SL && mat_det(g, ell) != 1)
        fail_internal("GeneratorDet", "SL generator with det != 1");
    return gens;
  }

  Matrix form = pinned_form(spec.family, n, ell);
  auto reps = projective_reps(n, ell);

  if (spec.family == GroupFamily::Sp) {
    if (n == 2) {
      // For 2x2 matrices g^T J g = det(g) J, so Sp_2 is exactly SL_2; the two
      // elementary transvections generate it and keep the closure cheap even
      // for large ell.
      for (unsigned i = 0; i < 2; ++i) {
        Matrix g = mat_identity(2);
        g.at(i, 1 - i) = 1;
        if (!preserves_form(g, form, ell))
          fail_internal("GeneratorForm", "SL_2 transvection breaks the symplectic form");
        gens.push_back(g);
      }
      return gens;
    }
    // Symplectic transvections T_v = I + v (Jv)^T; powers of T_v realize all
    // transvection parameters, so one generator per projective line suffices.
    for (const auto& v : reps) {
      std::array<uint64_t, kMaxMatrixDim> jv{};
      for (unsigned i = 0; i < n; ++i) {
        uint64_t s = 0;
        for (unsigned j = 0; j < n; ++j) s = (s + mul_mod(form.at(i, j), v[j], ell)) % ell;
        jv[i] = s;
      }
      Matrix g = mat_identity(n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          g.at(i, j) = (g.at(i, j) + mul_mod(v[i], jv[j], ell)) % ell;
      if (!preserves_form(g, form, ell))
        fail_internal("GeneratorForm", "symplectic transvection breaks the form");
      if (mat_det(g, ell) != 1) fail_internal("GeneratorDet", "transvection with det != 1");
      gens.push_back(g);
    }
    return gens;
  }

  // SO: products of two reflections r_{u0} r_v over anisotropic lines; these
  // generate the rotation subgroup (Cartan-Dieudonne).
  std::vector<Matrix> reflections;
  for (const auto& v : reps) {
    std::array<uint64_t, kMaxMatrixDim> bv{};
    uint64_t q = 0;
    for (unsigned i = 0; i < n; ++i) {
      uint64_t s = 0;
      for (unsigned j = 0; j < n; ++j) s = (s + mul_mod(form.at(i, j), v[j], ell)) % ell;
      bv[i] = s;
      q = (q + mul_mod(v[i], s, ell)) % ell;
    }
    if (q == 0) continue;
    reflections.push_back(reflection(v, form, ell));
  }
  if (reflections.empty()) fail_internal("NoReflections", "no anisotropic vectors found");
  const Matrix& r0 = reflections.front();
  Matrix id = mat_identity(n);
  for (const Matrix& r : reflections) {
    Matrix g = mat_mul(r0, r, ell);
    if (g == id) continue;
    if (!preserves_form(g, form, ell))
      fail_internal("GeneratorForm", "rotation generator breaks the form");
    if (mat_det(g, ell) != 1) fail_internal("GeneratorDet", "rotation generator with det != 1");
    gens.push_back(g);
  }
  return gens;
}

mpz_class group_order(GroupFamily family, unsigned n, uint64_t ell) {
  validate_group_spec(family, n, ell);
  mpz_class q(static_cast<unsigned long>(ell));
  mpz_class order;
  auto qpow = [&](unsigned long k) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), k);
    return r;
  };
  switch (family) {
    case GroupFamily::GL:
    case GroupFamily::SL: {
      order = qpow(static_cast<unsigned long>(n) * (n - 1) / 2);
      for (unsigned i = 1; i <= n; ++i) order *= qpow(i) - 1;
      if (family == GroupFamily::SL) order /= q - 1;
      return order;
    }
    case GroupFamily::Sp:
    case GroupFamily::SOodd: {
      unsigned m = family == GroupFamily::Sp ? n / 2 : (n - 1) / 2;
      order = qpow(static_cast<unsigned long>(m) * m);
      for (unsigned i = 1; i <= m; ++i) order *= qpow(2 * i) - 1;
      return order;
    }
    case GroupFamily::SOplus:
    case GroupFamily::SOminus: {
      unsigned m = n / 2;
      int eps = family == GroupFamily::SOplus ? 1 : -1;
      order = qpow(static_cast<unsigned long>(m) * (m - 1));
      order *= qpow(m) - eps;
      for (unsigned i = 1; i + 1 <= m; ++i) order *= qpow(2 * i) - 1;
      return order;
    }
  }
  fail_internal("BadFamily", "unreachable family tag");
}

TraceHistogram enumerate_group(const GroupSpec& spec) {
  validate_group_spec(spec.family, spec.n, spec.ell);
  mpz_class order = group_order(spec.family, spec.n, spec.ell);
  if (order > mpz_class(static_cast<unsigned long>(spec.cap)))
    fail_resource("GroupTooLarge", family_name(spec.family) + "_" + std::to_string(spec.n) +
                                       "(F_" + std::to_string(spec.ell) + ") has order " +
                                       order.get_str() + " > cap " + std::to_string(spec.cap));
  if (!packing_fits_u64(spec.n, spec.ell))
    fail_resource("GroupTooLarge", "packed matrix state exceeds 64 bits for n=" +
                                       std::to_string(spec.n) + ", ell=" +
                                       std::to_string(spec.ell));

  // For even n the SO type must match the discriminant of the pinned form:
  // eps = chi((-1)^m det B).
  if (spec.family == GroupFamily::SOplus || spec.family == GroupFamily::SOminus) {
    Matrix form = pinned_form(spec.family, spec.n, spec.ell);
    uint64_t disc = mat_det(form, spec.ell);
    if (spec.n / 2 % 2 == 1) disc = (spec.ell - disc) % spec.ell;
    uint64_t chi = quadratic_character(disc, spec.ell);
    bool plus = chi == 1;
    if (plus != (spec.family == GroupFamily::SOplus))
      fail_internal("FormType", "pinned form discriminant does not match the SO type");
  }

  std::vector<Matrix> gens = group_generators(spec);
  uint64_t expected = order.get_ui();
  uint64_t ell = spec.ell;

  TraceHistogram hist;
  hist.family = spec.family;
  hist.n = spec.n;
  hist.ell = ell;
  hist.order = order;
  hist.counts.assign(ell, 0);

  KeySet seen(expected);
  Matrix id = mat_identity(spec.n);
  uint64_t id_key = encode_matrix(id, ell);
  seen.insert(id_key);
  hist.counts[mat_trace(id, ell)]++;

  std::vector<uint64_t> frontier{id_key};
  std::vector<uint64_t> next;
  while (!frontier.empty()) {
    next.clear();
    for (uint64_t key : frontier) {
      Matrix m = decode_matrix(key, spec.n, ell);
      for (const Matrix& g : gens) {
        Matrix prod = mat_mul(m, g, ell);
        uint64_t k = encode_matrix(prod, ell);
        if (seen.insert(k)) {
          hist.counts[mat_trace(prod, ell)]++;
          next.push_back(k);
        }
      }
    }
    frontier.swap(next);
  }

  if (seen.count != expected)
    fail_internal("GroupOrder", "closure found " + std::to_string(seen.count) +
                                    " elements; closed form gives " + order.get_str());
  uint64_t total = 0;
  for (uint64_t c : hist.counts) total += c;
  if (total != expected) fail_internal("HistogramTotal", "trace histogram does not sum to |G|");
  return hist;
}

GaussSumStat gauss_sum_max(const TraceHistogram& hist) {
  GaussSumStat stat;
  uint64_t ell = hist.ell;
  double order = hist.order.get_d();
  for (uint64_t c = 1; c < ell; ++c) {
    double re = 0, im = 0;
    for (uint64_t t = 0; t < ell; ++t) {
      if (hist.counts[t] == 0) continue;
      double angle = 2.0 * std::numbers::pi * static_cast<double>(mul_mod(c, t, ell)) /
                     static_cast<double>(ell);
      double w = static_cast<double>(hist.counts[t]);
      re += w * std::cos(angle);
      im += w * std::sin(angle);
    }
    double mag = std::hypot(re, im) / order;
    if (mag > stat.max_magnitude) {
      stat.max_magnitude = mag;
      stat.psi_index = c;
    }
  }
  return stat;
}

mpq_class alpha_exponent(GroupFamily family, unsigned n) {
  validate_group_spec(family, n, 3);
  mpq_class a;
  switch (family) {
    case GroupFamily::GL:
      a = mpq_class(static_cast<unsigned long>(n) * (n - 1), 2);
      break;
    case GroupFamily::SL:
      a = mpq_class(static_cast<unsigned long>(n) * n - 1, 2);
      break;
    case GroupFamily::Sp:
    case GroupFamily::SOminus:
      a = mpq_class(static_cast<unsigned long>(n) * (n + 2), 8);
      break;
    case GroupFamily::SOplus:
      a = mpq_class(static_cast<unsigned long>(n) * (n - 2), 8);
      break;
    case GroupFamily::SOodd:
      a = mpq_class(static_cast<unsigned long>(n) * n - 1, 8);
      break;
  }
  a.canonicalize();
  return a;
}

mpq_class sieve_exponent_B(GroupFamily family, unsigned n) {
  validate_group_spec(family, n, 3);
  mpq_class b;
  switch (family) {
    case GroupFamily::GL:
      fail_validation("BadDimension", "GL is not a sieve family");
    case GroupFamily::SL:
      b = mpq_class(2 * static_cast<unsigned long>(n) * n + n - 1, 2);
      break;
    case GroupFamily::Sp:
    case GroupFamily::SOplus:
    case GroupFamily::SOminus:
      b = mpq_class(2 * static_cast<unsigned long>(n) * n + 3 * n + 4, 4);
      break;
    case GroupFamily::SOodd:
      b = mpq_class(2 * static_cast<unsigned long>(n) * n - n + 3, 4);
      break;
  }
  b.canonicalize();
  return b;
}

DimRank group_dim_rank(GroupFamily family, unsigned n) {
  validate_group_spec(family, n, 3);
  DimRank dr;
  switch (family) {
    case GroupFamily::GL:
      dr.dim = n * n;
      dr.rank = static_cast<unsigned long>(n);
      break;
    case GroupFamily::SL:
      dr.dim = n * n - 1;
      dr.rank = static_cast<unsigned long>(n - 1);
      break;
    case GroupFamily::Sp:
      dr.dim = n * (n + 1) / 2;
      dr.rank = mpq_class(static_cast<unsigned long>(n), 2);
      break;
    case GroupFamily::SOplus:
    case GroupFamily::SOminus:
    case GroupFamily::SOodd:
      dr.dim = n * (n - 1) / 2;
      dr.rank = static_cast<unsigned long>(n / 2);
      break;
  }
  dr.rank.canonicalize();
  return dr;
}

mpq_class prob_trace_in(const TraceHistogram& hist, const LocalSet& A) {
  if (A.ell != hist.ell)
    fail_validation("MismatchedField", "local set lives over F_" + std::to_string(A.ell) +
                                           " but the histogram is over F_" +
                                           std::to_string(hist.ell));
  mpz_class sum = 0;
  for (uint64_t t = 0; t < hist.ell; ++t)
    if (A.members[t]) sum += static_cast<unsigned long>(hist.counts[t]);
  mpq_class p(sum, hist.order);
  p.canonicalize();
  return p;
}

}  // namespace frobsieve
