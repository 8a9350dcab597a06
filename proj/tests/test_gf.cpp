#include <random>

#include "doctest.h"
#include "orthoinv/gf.hpp"

using namespace orthoinv;

TEST_CASE("prime field arithmetic") {
  auto F = Field::get(3);
  CHECK(F->mul(2, 2) == 1);
  CHECK(F->inv(2) == 2);
  CHECK(F->add(2, 2) == 1);
  CHECK(F->neg(1) == 2);
  CHECK(F->from_int(-1) == 2);
  CHECK(F->from_int(7) == 1);
  CHECK_THROWS_AS(F->inv(0), FieldError);
}

TEST_CASE("GF(9) modulus t^2+1") {
  auto F = Field::get(9);
  CHECK(F->p() == 3);
  CHECK(F->k() == 2);
  CHECK(F->modulus() == std::vector<std::uint32_t>{1, 0, 1});
  Elem t = F->from_coords({0, 1});
  CHECK(F->mul(t, t) == F->from_int(-1));
  CHECK(F->mul(t, t) == 2);
}

TEST_CASE("field axioms over every supported small q") {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u, 49u, 81u, 121u, 125u, 169u, 243u}) {
    CAPTURE(q);
    auto F = Field::get(q);
    for (Elem a = 1; a < q; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
    // multiplicative group is cyclic with the recorded generator
    Elem g = F->primitive_root();
    std::uint32_t ord = 1;
    for (Elem x = g; x != 1; x = F->mul(x, g)) ++ord;
    CHECK(ord == q - 1);
    // Frobenius is additive
    std::mt19937 rng(q);
    for (int t = 0; t < 50; ++t) {
      Elem a = rng() % q, b = rng() % q, c = rng() % q;
      CHECK(F->pow(F->add(a, b), F->p()) == F->add(F->pow(a, F->p()), F->pow(b, F->p())));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->pow(a, q) == a);
    }
  }
}

TEST_CASE("unsupported q") {
  CHECK_THROWS_AS(Field::get(2), FieldError);
  CHECK_THROWS_AS(Field::get(4), FieldError);
  CHECK_THROWS_AS(Field::get(15), FieldError);
  CHECK_THROWS(prime_power(1));
  CHECK(prime_power(27) == std::pair<std::uint32_t, std::uint32_t>{3, 3});
}

TEST_CASE("FieldElem wrapper") {
  auto F = Field::get(5);
  FieldElem a(F, std::int64_t{3}), b(F, std::int64_t{4});
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 2);
  CHECK((a / b * b) == a);
  CHECK_THROWS((a / FieldElem(F, std::int64_t{0})));
  FieldElem c(Field::get(7), std::int64_t{1});
  CHECK_THROWS(a + c);
  CHECK(frobenius(a, 1) == a);
}

TEST_CASE("binomials mod p via Lucas") {
  CHECK(binomial_mod_p(4, 2, 3) == 0);
  CHECK(binomial_mod_p(3, 1, 3) == 0);
  CHECK(binomial_mod_p(8, 4, 3) == 1);
  CHECK(binomial_mod_p(5, 7, 3) == 0);
  // against Pascal's triangle
  for (std::uint32_t p : {3u, 5u, 7u}) {
    std::vector<std::vector<std::uint32_t>> t(60);
    for (std::size_t n = 0; n < t.size(); ++n) {
      t[n].assign(n + 1, 1);
      for (std::size_t r = 1; r < n; ++r) t[n][r] = (t[n - 1][r - 1] + t[n - 1][r]) % p;
      for (std::size_t r = 0; r <= n; ++r) CHECK(binomial_mod_p(n, r, p) == t[n][r]);
    }
  }
}

TEST_CASE("digit sums") {
  CHECK(digit_sum(5, 3) == 3);
  CHECK(digit_sum(0, 3) == 0);
  CHECK(digit_sum(26, 3) == 6);
  CHECK(ipow(3, 4) == 81);
}

TEST_CASE("catalan congruence") {
  auto r = catalan_congruence(3, 0);
  CHECK(r.holds);
  CHECK(r.catalan == 1);
  r = catalan_congruence(3, 1);
  CHECK(r.holds);
  CHECK(r.formula == 1);
  r = catalan_congruence(7, 2);
  CHECK(r.holds);
  CHECK(r.catalan == 2);
  CHECK(r.formula == 2);
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u})
    for (std::uint32_t j = 0; 2 * j <= q - 1; ++j) {
      CAPTURE(q);
      CAPTURE(j);
      CHECK(catalan_congruence(q, j).holds);
    }
}
