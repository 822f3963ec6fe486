#include "frobsieve/ring_formulas.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "frobsieve/parallel.hpp"
#include "frobsieve/primes.hpp"

namespace frobsieve {
namespace {

struct Token {
  enum class Type { Ident, Nat, Sym, End };
  Type type = Type::End;
  std::string text;
  uint64_t value = 0;  // Nat
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    cur_ = Token{};
    cur_.pos = pos_;
    if (pos_ >= text_.size()) {
      cur_.type = Token::Type::End;
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      cur_.type = Token::Type::Ident;
      cur_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t v = 0;
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        uint64_t digit = static_cast<uint64_t>(text_[pos_] - '0');
        if (v > (UINT64_MAX - digit) / 10)
          fail_validation("SyntaxError", "integer literal too large at position " +
                                             std::to_string(start));
        v = v * 10 + digit;
        ++pos_;
      }
      cur_.type = Token::Type::Nat;
      cur_.value = v;
      cur_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    static constexpr std::string_view kSyms = "+-*^=():";
    if (kSyms.find(c) != std::string_view::npos) {
      cur_.type = Token::Type::Sym;
      cur_.text = std::string(1, c);
      ++pos_;
      return;
    }
    fail_validation("SyntaxError",
                    std::string("unexpected character '") + c + "' at position " +
                        std::to_string(pos_));
  }

  std::string_view text_;
  size_t pos_ = 0;
  Token cur_;
};

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "and" || s == "or" || s == "not" ||
         s == "implies";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), lex_(text) {}

  Formula parse(unsigned depth_cap) {
    Formula f;
    while (lex_.peek().type == Token::Type::Ident &&
           (lex_.peek().text == "exists" || lex_.peek().text == "forall")) {
      Token q = lex_.next();
      Token var = expect_ident();
      if (var.text == "x")
        fail_validation("SyntaxError", "quantifier rebinds the free variable x at position " +
                                           std::to_string(var.pos));
      for (const auto& prev : f.prefix)
        if (prev.var == var.text)
          fail_validation("SyntaxError",
                          "duplicate quantifier variable '" + var.text + "' at position " +
                              std::to_string(var.pos));
      expect_sym(":");
      f.prefix.push_back(Quantifier{q.text == "forall", var.text});
    }
    if (f.prefix.size() > depth_cap)
      fail_validation("DepthExceeded", "formula has " + std::to_string(f.prefix.size()) +
                                           " quantifiers; cap is " + std::to_string(depth_cap));
    f.body = parse_bool();
    if (lex_.peek().type != Token::Type::End)
      fail_validation("SyntaxError", "trailing input at position " +
                                         std::to_string(lex_.peek().pos));
    check_bound(f);
    return f;
  }

 private:
  // implies (lowest, right-assoc, desugared) < or < and < not.
  BoolPtr parse_bool() {
    BoolPtr lhs = parse_or();
    if (lex_.peek().type == Token::Type::Ident && lex_.peek().text == "implies") {
      lex_.next();
      BoolPtr rhs = parse_bool();
      auto neg = std::make_shared<BoolExpr>();
      neg->kind = BoolExpr::Kind::Not;
      neg->lhs = lhs;
      auto node = std::make_shared<BoolExpr>();
      node->kind = BoolExpr::Kind::Or;
      node->lhs = neg;
      node->rhs = rhs;
      return node;
    }
    return lhs;
  }

  BoolPtr parse_or() {
    BoolPtr lhs = parse_and();
    while (lex_.peek().type == Token::Type::Ident && lex_.peek().text == "or") {
      lex_.next();
      BoolPtr rhs = parse_and();
      auto node = std::make_shared<BoolExpr>();
      node->kind = BoolExpr::Kind::Or;
      node->lhs = lhs;
      node->rhs = rhs;
      lhs = node;
    }
    return lhs;
  }

  BoolPtr parse_and() {
    BoolPtr lhs = parse_not();
    while (lex_.peek().type == Token::Type::Ident && lex_.peek().text == "and") {
      lex_.next();
      BoolPtr rhs = parse_not();
      auto node = std::make_shared<BoolExpr>();
      node->kind = BoolExpr::Kind::And;
      node->lhs = lhs;
      node->rhs = rhs;
      lhs = node;
    }
    return lhs;
  }

  BoolPtr parse_not() {
    if (lex_.peek().type == Token::Type::Ident && lex_.peek().text == "not") {
      lex_.next();
      auto node = std::make_shared<BoolExpr>();
      node->kind = BoolExpr::Kind::Not;
      node->lhs = parse_not();
      return node;
    }
    return parse_bool_primary();
  }

  // A leading '(' is ambiguous between a parenthesized boolean and a
  // parenthesized polynomial inside an atom; try the atom first and fall back.
  BoolPtr parse_bool_primary() {
    Lexer saved = lex_;
    try {
      return parse_atom();
    } catch (const Error&) {
      lex_ = saved;
    }
    expect_sym("(");
    BoolPtr inner = parse_bool();
    expect_sym(")");
    return inner;
  }

  BoolPtr parse_atom() {
    PolyPtr lhs = parse_poly();
    expect_sym("=");
    PolyPtr rhs = parse_poly();
    auto node = std::make_shared<BoolExpr>();
    node->kind = BoolExpr::Kind::Atom;
    node->atom_lhs = lhs;
    node->atom_rhs = rhs;
    return node;
  }

  PolyPtr parse_poly() {
    PolyPtr lhs = parse_term();
    while (lex_.peek().type == Token::Type::Sym &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      bool minus = lex_.next().text == "-";
      PolyPtr rhs = parse_term();
      auto node = std::make_shared<PolyExpr>();
      node->kind = minus ? PolyExpr::Kind::Sub : PolyExpr::Kind::Add;
      node->lhs = lhs;
      node->rhs = rhs;
      lhs = node;
    }
    return lhs;
  }

  PolyPtr parse_term() {
    PolyPtr lhs = parse_unary();
    while (lex_.peek().type == Token::Type::Sym && lex_.peek().text == "*") {
      lex_.next();
      PolyPtr rhs = parse_unary();
      auto node = std::make_shared<PolyExpr>();
      node->kind = PolyExpr::Kind::Mul;
      node->lhs = lhs;
      node->rhs = rhs;
      lhs = node;
    }
    return lhs;
  }

  PolyPtr parse_unary() {
    if (lex_.peek().type == Token::Type::Sym && lex_.peek().text == "-") {
      lex_.next();
      auto node = std::make_shared<PolyExpr>();
      node->kind = PolyExpr::Kind::Neg;
      node->lhs = parse_unary();
      return node;
    }
    return parse_power();
  }

  PolyPtr parse_power() {
    PolyPtr base = parse_poly_primary();
    while (lex_.peek().type == Token::Type::Sym && lex_.peek().text == "^") {
      lex_.next();
      if (lex_.peek().type != Token::Type::Nat)
        fail_validation("SyntaxError", "expected natural-number exponent at position " +
                                           std::to_string(lex_.peek().pos));
      Token exp = lex_.next();
      auto node = std::make_shared<PolyExpr>();
      node->kind = PolyExpr::Kind::Pow;
      node->lhs = base;
      node->exponent = exp.value;
      base = node;
    }
    return base;
  }

  PolyPtr parse_poly_primary() {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::Nat) {
      Token n = lex_.next();
      auto node = std::make_shared<PolyExpr>();
      node->kind = PolyExpr::Kind::Const;
      node->constant = n.value;
      return node;
    }
    if (t.type == Token::Type::Ident && !is_keyword(t.text)) {
      Token v = lex_.next();
      auto node = std::make_shared<PolyExpr>();
      node->kind = PolyExpr::Kind::Var;
      node->var = v.text;
      return node;
    }
    if (t.type == Token::Type::Sym && t.text == "(") {
      lex_.next();
      PolyPtr inner = parse_poly();
      expect_sym(")");
      return inner;
    }
    fail_validation("SyntaxError", "expected polynomial at position " + std::to_string(t.pos));
  }

  Token expect_ident() {
    if (lex_.peek().type != Token::Type::Ident || is_keyword(lex_.peek().text))
      fail_validation("SyntaxError",
                      "expected identifier at position " + std::to_string(lex_.peek().pos));
    return lex_.next();
  }

  void expect_sym(const std::string& s) {
    if (lex_.peek().type != Token::Type::Sym || lex_.peek().text != s)
      fail_validation("SyntaxError", "expected '" + s + "' at position " +
                                         std::to_string(lex_.peek().pos));
    lex_.next();
  }

  void check_bound(const Formula& f) const {
    std::vector<std::string> bound{"x"};
    for (const auto& q : f.prefix) bound.push_back(q.var);
    check_bound_bool(f.body, bound);
  }

  void check_bound_bool(const BoolPtr& b, const std::vector<std::string>& bound) const {
    if (b->kind == BoolExpr::Kind::Atom) {
      check_bound_poly(b->atom_lhs, bound);
      check_bound_poly(b->atom_rhs, bound);
      return;
    }
    check_bound_bool(b->lhs, bound);
    if (b->rhs) check_bound_bool(b->rhs, bound);
  }

  void check_bound_poly(const PolyPtr& p, const std::vector<std::string>& bound) const {
    switch (p->kind) {
      case PolyExpr::Kind::Const:
        return;
      case PolyExpr::Kind::Var:
        if (std::find(bound.begin(), bound.end(), p->var) == bound.end())
          fail_validation("UnboundVariable", "variable '" + p->var + "' is not bound");
        return;
      case PolyExpr::Kind::Neg:
      case PolyExpr::Kind::Pow:
        check_bound_poly(p->lhs, bound);
        return;
      default:
        check_bound_poly(p->lhs, bound);
        check_bound_poly(p->rhs, bound);
    }
  }

  std::string_view text_;
  Lexer lex_;
};

// Rendering precedence levels.  Poly: Add/Sub 0, Mul 1, Neg 2, Pow 3,
// primary 4.  Bool: Or 0, And 1, Not 2, Atom 3.
int poly_level(const PolyExpr& p) {
  switch (p.kind) {
    case PolyExpr::Kind::Add:
    case PolyExpr::Kind::Sub:
      return 0;
    case PolyExpr::Kind::Mul:
      return 1;
    case PolyExpr::Kind::Neg:
      return 2;
    case PolyExpr::Kind::Pow:
      return 3;
    default:
      return 4;
  }
}

void render_poly(const PolyPtr& p, int min_level, std::string& out) {
  bool parens = poly_level(*p) < min_level;
  if (parens) out += '(';
  switch (p->kind) {
    case PolyExpr::Kind::Const:
      out += std::to_string(p->constant);
      break;
    case PolyExpr::Kind::Var:
      out += p->var;
      break;
    case PolyExpr::Kind::Add:
      render_poly(p->lhs, 0, out);
      out += " + ";
      render_poly(p->rhs, 1, out);
      break;
    case PolyExpr::Kind::Sub:
      render_poly(p->lhs, 0, out);
      out += " - ";
      render_poly(p->rhs, 1, out);
      break;
    case PolyExpr::Kind::Mul:
      render_poly(p->lhs, 1, out);
      out += " * ";
      render_poly(p->rhs, 2, out);
      break;
    case PolyExpr::Kind::Neg:
      out += '-';
      render_poly(p->lhs, 2, out);
      break;
    case PolyExpr::Kind::Pow:
      render_poly(p->lhs, 4, out);
      out += '^';
      out += std::to_string(p->exponent);
      break;
  }
  if (parens) out += ')';
}

int bool_level(const BoolExpr& b) {
  switch (b.kind) {
    case BoolExpr::Kind::Or:
      return 0;
    case BoolExpr::Kind::And:
      return 1;
    case BoolExpr::Kind::Not:
      return 2;
    default:
      return 3;
  }
}

void render_bool(const BoolPtr& b, int min_level, std::string& out) {
  bool parens = bool_level(*b) < min_level;
  if (parens) out += '(';
  switch (b->kind) {
    case BoolExpr::Kind::Atom:
      render_poly(b->atom_lhs, 0, out);
      out += " = ";
      render_poly(b->atom_rhs, 0, out);
      break;
    case BoolExpr::Kind::Or:
      render_bool(b->lhs, 0, out);
      out += " or ";
      render_bool(b->rhs, 1, out);
      break;
    case BoolExpr::Kind::And:
      render_bool(b->lhs, 1, out);
      out += " and ";
      render_bool(b->rhs, 2, out);
      break;
    case BoolExpr::Kind::Not:
      out += "not ";
      render_bool(b->lhs, 2, out);
      break;
  }
  if (parens) out += ')';
}

bool has_negation(const BoolPtr& b) {
  switch (b->kind) {
    case BoolExpr::Kind::Not:
      return true;
    case BoolExpr::Kind::Atom:
      return false;
    default:
      return has_negation(b->lhs) || has_negation(b->rhs);
  }
}

struct Env {
  std::vector<std::pair<std::string, uint64_t>> vars;

  uint64_t lookup(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (it->first == name) return it->second;
    fail_internal("UnboundVariable", "variable '" + name + "' missing at evaluation");
  }
};

uint64_t eval_poly(const PolyPtr& p, uint64_t ell, const Env& env) {
  switch (p->kind) {
    case PolyExpr::Kind::Const:
      return p->constant % ell;
    case PolyExpr::Kind::Var:
      return env.lookup(p->var);
    case PolyExpr::Kind::Add:
      return (eval_poly(p->lhs, ell, env) + eval_poly(p->rhs, ell, env)) % ell;
    case PolyExpr::Kind::Sub: {
      uint64_t a = eval_poly(p->lhs, ell, env);
      uint64_t b = eval_poly(p->rhs, ell, env);
      return (a + ell - b) % ell;
    }
    case PolyExpr::Kind::Mul:
      return mul_mod(eval_poly(p->lhs, ell, env), eval_poly(p->rhs, ell, env), ell);
    case PolyExpr::Kind::Neg: {
      uint64_t a = eval_poly(p->lhs, ell, env);
      return a == 0 ? 0 : ell - a;
    }
    case PolyExpr::Kind::Pow:
      return pow_mod(eval_poly(p->lhs, ell, env), p->exponent, ell);
  }
  fail_internal("BadAst", "unreachable polynomial node");
}

bool eval_bool(const BoolPtr& b, uint64_t ell, Env& env) {
  switch (b->kind) {
    case BoolExpr::Kind::Atom:
      return eval_poly(b->atom_lhs, ell, env) == eval_poly(b->atom_rhs, ell, env);
    case BoolExpr::Kind::And:
      return eval_bool(b->lhs, ell, env) && eval_bool(b->rhs, ell, env);
    case BoolExpr::Kind::Or:
      return eval_bool(b->lhs, ell, env) || eval_bool(b->rhs, ell, env);
    case BoolExpr::Kind::Not:
      return !eval_bool(b->lhs, ell, env);
  }
  fail_internal("BadAst", "unreachable boolean node");
}

bool eval_quantified(const Formula& f, size_t qi, uint64_t ell, Env& env) {
  if (qi == f.prefix.size()) return eval_bool(f.body, ell, env);
  const Quantifier& q = f.prefix[qi];
  env.vars.emplace_back(q.var, 0);
  for (uint64_t v = 0; v < ell; ++v) {
    env.vars.back().second = v;
    bool r = eval_quantified(f, qi + 1, ell, env);
    if (q.universal && !r) {
      env.vars.pop_back();
      return false;
    }
    if (!q.universal && r) {
      env.vars.pop_back();
      return true;
    }
  }
  env.vars.pop_back();
  return q.universal;
}

void check_budget(uint64_t ell, size_t loops, uint64_t budget) {
  uint64_t cost = 1;
  for (size_t i = 0; i < loops; ++i) {
    if (cost > budget / ell)
      fail_resource("FieldTooLargeForDepth",
                    "evaluation cost " + std::to_string(ell) + "^" + std::to_string(loops) +
                        " exceeds budget " + std::to_string(budget));
    cost *= ell;
  }
  if (cost > budget)
    fail_resource("FieldTooLargeForDepth",
                  "evaluation cost exceeds budget " + std::to_string(budget));
}

void require_prime(uint64_t ell) {
  if (!is_prime_u64(ell)) fail_validation("NotPrime", std::to_string(ell) + " is not prime");
}

LocalSet make_local_set(uint64_t ell, std::vector<bool> members, std::string provenance) {
  LocalSet s;
  s.ell = ell;
  s.members = std::move(members);
  uint64_t cnt = static_cast<uint64_t>(std::count(s.members.begin(), s.members.end(), true));
  s.density = mpq_class(cnt, ell);
  s.density.canonicalize();
  s.provenance = std::move(provenance);
  return s;
}

}  // namespace

Formula parse_formula(std::string_view text, unsigned depth_cap) {
  Parser p(text);
  return p.parse(depth_cap);
}

std::string to_string(const Formula& f) {
  std::string out;
  for (const auto& q : f.prefix) {
    out += q.universal ? "forall " : "exists ";
    out += q.var;
    out += ": ";
  }
  render_bool(f.body, 0, out);
  return out;
}

bool reduction_safe(const Formula& f) { return !has_negation(f.body); }

bool eval_formula(const Formula& f, uint64_t ell, uint64_t a, uint64_t budget) {
  require_prime(ell);
  check_budget(ell, f.prefix.size(), budget);
  Env env;
  env.vars.emplace_back("x", a % ell);
  return eval_quantified(f, 0, ell, env);
}

uint64_t LocalSet::count() const {
  return static_cast<uint64_t>(std::count(members.begin(), members.end(), true));
}

LocalSet definable_subset(const Formula& f, uint64_t ell, uint64_t budget) {
  require_prime(ell);
  check_budget(ell, f.prefix.size() + 1, budget);
  std::vector<bool> members(ell, false);
  Env env;
  env.vars.emplace_back("x", 0);
  for (uint64_t a = 0; a < ell; ++a) {
    env.vars.back().second = a;
    members[a] = eval_quantified(f, 0, ell, env);
  }
  return make_local_set(ell, std::move(members), "formula(" + to_string(f) + ")");
}

LocalSet mth_power_set(uint64_t ell, uint64_t m) {
  require_prime(ell);
  if (m == 0) fail_validation("ZeroArgument", "power index must be positive");
  uint64_t g = std::gcd(m, ell - 1);
  uint64_t e = (ell - 1) / g;
  std::vector<bool> members(ell, false);
  members[0] = true;
  for (uint64_t r = 1; r < ell; ++r) members[r] = pow_mod(r, e, ell) == 1;
  LocalSet s = make_local_set(ell, std::move(members), "mth_power(m=" + std::to_string(m) + ")");
  // |set| = (ell-1)/gcd(m, ell-1) + 1; verify the enumeration agrees.
  if (s.count() != e + 1) fail_internal("PowerSetCount", "m-th power count mismatch");
  return s;
}

LocalSet polynomial_image_set(uint64_t ell, const std::vector<int64_t>& coeffs) {
  require_prime(ell);
  if (coeffs.empty()) fail_validation("EmptyPolynomial", "no coefficients given");
  std::vector<uint64_t> c(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    int64_t r = coeffs[i] % static_cast<int64_t>(ell);
    if (r < 0) r += static_cast<int64_t>(ell);
    c[i] = static_cast<uint64_t>(r);
  }
  std::vector<bool> members(ell, false);
  for (uint64_t y = 0; y < ell; ++y) {
    uint64_t v = 0;
    for (size_t i = c.size(); i-- > 0;) v = (mul_mod(v, y, ell) + c[i]) % ell;
    members[v] = true;
  }
  return make_local_set(ell, std::move(members),
                        "polynomial_image(degree=" + std::to_string(coeffs.size() - 1) + ")");
}

LocalSet explicit_local_set(uint64_t ell, const std::vector<int64_t>& members_in) {
  require_prime(ell);
  std::vector<bool> members(ell, false);
  for (int64_t m : members_in) {
    int64_t r = m % static_cast<int64_t>(ell);
    if (r < 0) r += static_cast<int64_t>(ell);
    members[static_cast<uint64_t>(r)] = true;
  }
  return make_local_set(ell, std::move(members), "explicit");
}

mpq_class image_density_expected(unsigned d) {
  if (d == 0) fail_validation("ZeroArgument", "degree must be positive");
  mpq_class sum = 0;
  mpz_class fact = 1;
  for (unsigned n = 1; n <= d; ++n) {
    fact *= n;
    mpq_class term(1, fact);
    term.canonicalize();
    if (n % 2 == 0) term = -term;
    sum += term;
  }
  return sum;
}

CdmReport cdm_scan(const Formula& f, const std::vector<uint64_t>& primes, double cluster_gap,
                   unsigned threads, uint64_t budget) {
  CdmReport rep;
  rep.primes = primes;
  rep.densities.resize(primes.size());
  parallel_for(primes.size(), threads, [&](uint64_t lo, uint64_t hi) {
    for (uint64_t i = lo; i < hi; ++i)
      rep.densities[i] = definable_subset(f, primes[i], budget).density;
  });

  std::vector<size_t> order(primes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return rep.densities[a] < rep.densities[b];
  });

  size_t start = 0;
  while (start < order.size()) {
    size_t end = start + 1;
    while (end < order.size() &&
           rep.densities[order[end]].get_d() - rep.densities[order[end - 1]].get_d() <=
               cluster_gap)
      ++end;
    CdmCluster c;
    double sum = 0;
    for (size_t k = start; k < end; ++k) {
      c.members.push_back(order[k]);
      sum += rep.densities[order[k]].get_d();
    }
    c.center = sum / static_cast<double>(end - start);
    for (size_t idx : c.members) {
      double dev = std::abs(rep.densities[idx].get_d() - c.center) *
                   std::sqrt(static_cast<double>(primes[idx]));
      c.max_dev_sqrt_ell = std::max(c.max_dev_sqrt_ell, dev);
    }
    rep.max_dev_sqrt_ell = std::max(rep.max_dev_sqrt_ell, c.max_dev_sqrt_ell);
    rep.clusters.push_back(std::move(c));
    start = end;
  }
  return rep;
}

}  // namespace frobsieve
