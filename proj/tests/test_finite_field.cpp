#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "frobsieve/errors.hpp"
#include "frobsieve/finite_field.hpp"

using namespace frobsieve;

TEST_CASE("pinned moduli and generators") {
  FiniteField F4(2, 2);
  CHECK(F4.modulus() == std::vector<uint64_t>{1, 1, 1});  // t^2 + t + 1
  FiniteField F9(3, 2);
  CHECK(F9.modulus() == std::vector<uint64_t>{1, 0, 1});  // t^2 + 1
  CHECK(F9.generator().index == 4);                       // t + 1
  FiniteField F5(5, 1);
  CHECK(F5.generator().index == 2);
  FiniteField F8(2, 3);
  // Constant-term-first scan over monic cubics: t^3+1 = (t+1)(t^2+t+1) is
  // reducible, so t^3+t^2+1 (coefficients 1,0,1,1) is the first irreducible.
  CHECK(F8.modulus() == std::vector<uint64_t>{1, 0, 1, 1});
  FiniteField F25(5, 2);
  // t^2+1 = (t-2)(t-3) mod 5, so the scan lands on t^2+t+1 (no roots mod 5).
  CHECK(F25.modulus() == std::vector<uint64_t>{1, 1, 1});
}

TEST_CASE("construction errors") {
  CHECK_THROWS_WITH_AS(FiniteField(4, 1), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_WITH_AS(FiniteField(5, 0), doctest::Contains("ZeroArgument"), Error);
  CHECK_THROWS_WITH_AS(FiniteField(2, 63), doctest::Contains("FieldTooLarge"), Error);
}

TEST_CASE("field axioms by exhaustion on F_9 and F_8") {
  for (auto [p, e] : {std::pair<uint64_t, unsigned>{3, 2}, {2, 3}}) {
    FiniteField F(p, e);
    uint64_t q = F.q();
    for (uint64_t i = 0; i < q; ++i) {
      FieldElement a = F.from_index(i);
      CHECK(F.add(a, F.zero()) == a);
      CHECK(F.mul(a, F.one()) == a);
      CHECK(F.add(a, F.neg(a)) == F.zero());
      if (i != 0) {
        CHECK(F.mul(a, F.inv(a)) == F.one());
        CHECK(F.pow(a, q - 1) == F.one());
      }
      for (uint64_t j = 0; j < q; ++j) {
        FieldElement b = F.from_index(j);
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
        for (uint64_t k = 0; k < q; k += 3) {
          FieldElement c = F.from_index(k);
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("prime subfield embedding and coefficients") {
  FiniteField F(7, 2);
  for (uint64_t a = 0; a < 7; ++a)
    for (uint64_t b = 0; b < 7; ++b) {
      CHECK(F.mul(F.from_residue(a), F.from_residue(b)).index == a * b % 7);
      CHECK(F.add(F.from_residue(a), F.from_residue(b)).index == (a + b) % 7);
    }
  FieldElement x = F.from_index(3 + 7 * 4);
  CHECK(F.coefficients(x) == std::vector<uint64_t>{3, 4});
  CHECK_THROWS_WITH_AS(F.from_index(49), doctest::Contains("ZeroArgument"), Error);
}

TEST_CASE("generator order, log/exp, unity roots") {
  FiniteField F(5, 2);
  uint64_t q = F.q();
  CHECK(F.element_order(F.generator()) == q - 1);
  for (uint64_t i = 1; i < q; ++i) {
    FieldElement a = F.from_index(i);
    CHECK(F.pow(F.generator(), F.log(a)) == a);
    CHECK(F.log(a) < q - 1);
    // element_order is the exact order.
    uint64_t ord = F.element_order(a);
    CHECK(F.pow(a, ord) == F.one());
    for (uint64_t d = 1; d < ord; ++d) CHECK(F.pow(a, d) != F.one());
  }
  CHECK_THROWS_WITH_AS(F.log(F.zero()), doctest::Contains("ZeroArgument"), Error);
  CHECK_THROWS_WITH_AS(F.element_order(F.zero()), doctest::Contains("ZeroArgument"), Error);

  FiniteField F11(11, 1);
  CHECK(F11.unity_root(5).index == 4);
  CHECK(F11.element_order(F11.unity_root(5)) == 5);
  CHECK(F11.unity_root(1) == F11.one());
  CHECK_THROWS_WITH_AS(F11.unity_root(3), doctest::Contains("OrderNotDividing"), Error);
}

TEST_CASE("log without tables agrees with table log") {
  FiniteField with_tables(5, 3);
  FiniteField no_tables(5, 3, /*table_cap=*/1);
  CHECK_FALSE(no_tables.has_tables());
  CHECK(with_tables.has_tables());
  for (uint64_t i = 1; i < with_tables.q(); ++i)
    CHECK(with_tables.log(with_tables.from_index(i)) ==
          no_tables.log(no_tables.from_index(i)));
  // Arithmetic is identical with and without tables.
  for (uint64_t i = 0; i < with_tables.q(); i += 7)
    for (uint64_t j = 0; j < with_tables.q(); j += 11)
      CHECK(with_tables.mul(FieldElement{i}, FieldElement{j}) ==
            no_tables.mul(FieldElement{i}, FieldElement{j}));
}

TEST_CASE("frobenius and absolute trace") {
  FiniteField F(3, 2);
  CHECK(F.abs_trace(F.from_index(3)) == 0);  // tr(t) = t + t^3 = 0 since t^2 = -1
  CHECK(F.abs_trace(F.from_index(4)) == 2);  // tr(t + 1)
  for (auto [p, e] : {std::pair<uint64_t, unsigned>{3, 2}, {5, 2}, {2, 4}, {7, 2}}) {
    FiniteField K(p, e);
    uint64_t q = K.q();
    std::vector<uint64_t> trace_counts(p, 0);
    for (uint64_t i = 0; i < q; ++i) {
      FieldElement a = K.from_index(i);
      // Frobenius fixes exactly the prime subfield pointwise.
      CHECK((K.frobenius(a) == a) == (i < p));
      CHECK(K.pow(a, q) == a);
      // tr(a) = sum of Frobenius orbit, computed independently.
      FieldElement s = a, x = a;
      for (unsigned k = 1; k < e; ++k) {
        x = K.frobenius(x);
        s = K.add(s, x);
      }
      CHECK(s.index == K.abs_trace(a));
      CHECK(K.abs_trace(K.frobenius(a)) == K.abs_trace(a));
      trace_counts[K.abs_trace(a)]++;
      for (uint64_t c = 0; c < p; ++c)
        CHECK(K.abs_trace(K.mul(K.from_residue(c), a)) == c * K.abs_trace(a) % p);
    }
    // The trace is a surjective F_p-linear map: each value hit q/p times.
    for (uint64_t t = 0; t < p; ++t) CHECK(trace_counts[t] == q / p);
  }
}

TEST_CASE("is_mth_power vs exhaustive enumeration") {
  for (auto [p, e] : {std::pair<uint64_t, unsigned>{13, 1}, {3, 3}, {5, 2}}) {
    FiniteField F(p, e);
    uint64_t q = F.q();
    for (uint64_t m : {1, 2, 3, 4, 5, 6, 12}) {
      std::vector<bool> hit(q, false);
      for (uint64_t i = 0; i < q; ++i) hit[F.pow(F.from_index(i), m).index] = true;
      for (uint64_t i = 0; i < q; ++i)
        CHECK(F.is_mth_power(F.from_index(i), m) == hit[i]);
    }
    CHECK(F.is_mth_power(F.zero(), 7));
    CHECK_THROWS_WITH_AS(F.is_mth_power(F.one(), 0), doctest::Contains("ZeroArgument"),
                         Error);
  }
}
