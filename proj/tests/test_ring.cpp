#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/steenrod.hpp"

using namespace orthoinv;
using th::P;

TEST_CASE("basic products") {
  CHECK(P("y1*x1", 3, 1) * P("y1*x1", 3, 1) == P("y1^2*x1^2", 3, 1));
  for (std::uint32_t q : {3u, 5u, 9u}) CHECK(P("y1 + x1", q, 1).pow(q) == P("y1^" + std::to_string(q) + " + x1^" + std::to_string(q), q, 1));
  auto xi0 = P("y1*x1 + y2*x2", 3, 2);
  CHECK(xi0 * xi0 == P("y1^2*x1^2 + 2*y1*x1*y2*x2 + y2^2*x2^2", 3, 2));
}

TEST_CASE("frobenius") {
  CHECK(frobenius(P("y1 + x1", 3, 1), 1) == P("y1^3 + x1^3", 3, 1));
  auto cat = Catalog::get(2, 3);
  CHECK(frobenius(cat->xi(0), 1) == P("y1^3*x1^3 + y2^3*x2^3", 3, 2));
}

TEST_CASE("monomial packing and lex") {
  Monomial a, b;
  a.set(0, 1);
  b.set(7, 500);
  CHECK(b.lex_less(a));
  CHECK(a.get(0) == 1);
  CHECK(b.get(7) == 500);
  CHECK((a * b).degree() == 501);
  CHECK(a.divides(a * b));
  CHECK_FALSE(b.divides(a));
}

TEST_CASE("lead terms") {
  for (std::uint32_t q : {3u, 5u}) {
    auto cat = Catalog::get(2, q);
    for (int i = 0; i < 4; ++i) {
      auto lt = cat->xi(i).lead_term();
      Monomial want;
      want.set(0, static_cast<std::uint32_t>(ipow(q, i)));
      want.set(3, 1);
      CHECK(lt.mono == want);
      CHECK(lt.c == 1);
    }
  }
  auto fr = VarFrame::T(2, 3);
  auto F = Field::get(3);
  auto f = parse_polynomial("T0^3*T2 - T1^4", F, fr);
  auto lt = f.lead_term(MonomialOrder::weighted());
  CHECK(f.render_monomial(lt.mono) == "T1^4");
  CHECK(lt.c == F->neg(1));
  auto c = Polynomial::constant(F, VarFrame::S(1), 2);
  CHECK(c.lead_term().mono == Monomial{});
  CHECK(c.lead_term().c == 2);
}

TEST_CASE("exact division") {
  CHECK(exact_divide(P("y1^2*x1^2", 3, 1), P("y1*x1", 3, 1)) == P("y1*x1", 3, 1));
  CHECK_THROWS_AS(exact_divide(P("y1^2 + x1", 3, 1), P("y1", 3, 1)), DivisionError);
  try {
    exact_divide(P("y1^2 + x1", 3, 1), P("y1", 3, 1));
  } catch (const DivisionError& e) {
    CHECK_FALSE(e.remainder_term.c == 0);
  }
  auto cat = Catalog::get(2, 3);
  CHECK(cat->d(1).degree() == 18);
  CHECK(cat->u().degree() == 16);
  CHECK(exact_divide(cat->u() * cat->d(1), cat->u()) == cat->d(1));
}

TEST_CASE("substitution") {
  auto cat = Catalog::get(2, 3);
  std::vector<Polynomial> id, kill;
  for (int v = 0; v < 4; ++v) id.push_back(cat->var(v));
  CHECK(substitute(cat->xi(2), id) == cat->xi(2));
  for (int j = 1; j <= 2; ++j) kill.push_back(cat->y(j));
  kill.push_back(Polynomial(cat->field(), cat->frame()));
  kill.push_back(Polynomial(cat->field(), cat->frame()));
  CHECK(substitute(cat->xi(0), kill).is_zero());
  auto c3 = Catalog::get(3, 3);
  CHECK(sigma(Catalog::get(2, 3)->xi(0)) == c3->y(2) * c3->x(2) + c3->y(3) * c3->x(3));
}

TEST_CASE("phi evaluation") {
  auto cat = Catalog::get(2, 3);
  auto F = cat->field();
  std::vector<Polynomial> xis;
  for (int i = 0; i < 4; ++i) xis.push_back(cat->xi(i));
  auto fr = VarFrame::T(3, 3);
  CHECK(phi_eval(parse_polynomial("T0", F, fr), xis) == cat->xi(0));
  CHECK(phi_eval(Polynomial::constant(F, fr, 1), xis) == cat->one());
  auto g = phi_eval(parse_polynomial("T0^3*T2 - T1^4", F, fr), xis);
  CHECK(g == cat->xi(0).pow(3) * cat->xi(2) - cat->xi(1).pow(4));
  CHECK(g.degree() == 16);
  CHECK(g.is_homogeneous());
}

TEST_CASE("text and JSON round trips") {
  auto cat = Catalog::get(2, 3);
  CHECK(parse_polynomial("y1*x1 + y2*x2", cat->field(), cat->frame()) == cat->xi(0));
  CHECK(Polynomial(cat->field(), cat->frame()).render() == "0");
  const auto& u = cat->u();
  CHECK(from_json(to_json(u), cat->field(), cat->frame()) == u);
  CHECK(from_json(to_json(u)) == u);
  CHECK(parse_polynomial(u.render(), cat->field(), cat->frame()) == u);
  CHECK_THROWS(parse_polynomial("y1 + z9", cat->field(), cat->frame()));
  CHECK_THROWS(cat->xi(0) + Catalog::get(3, 3)->xi(0));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto F = Field::get(q);
    auto fr = VarFrame::S(2);
    for (int t = 0; t < 200; ++t) {
      auto a = th::random_poly(rng, F, fr, rng() % 4, 4);
      auto b = th::random_poly(rng, F, fr, rng() % 4, 4);
      auto c = th::random_poly(rng, F, fr, rng() % 4, 4);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a - a == Polynomial(F, fr));
      CHECK((a + b).pow(F->p()) == a.pow(F->p()) + b.pow(F->p()));
      CHECK(a.frobenius_p() == a.pow(F->p()));
      if (!b.is_zero()) CHECK(exact_divide(a * b, b) == a);
      CHECK(product({a, b, c}) == a * b * c);
    }
  }
}

TEST_CASE("monomial enumeration") {
  auto ms = monomials_of_degree(4, 3);
  CHECK(ms.size() == 20);
  for (std::size_t i = 1; i < ms.size(); ++i) CHECK(ms[i].lex_less(ms[i - 1]));
}
