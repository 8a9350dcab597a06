#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orthoinv/matgroup.hpp"
#include "orthoinv/steenrod.hpp"

using namespace orthoinv;

TEST_CASE("total operation on xi") {
  for (std::uint32_t q : {3u, 5u}) {
    auto cat = Catalog::get(2, q);
    auto s0 = steenrod_series(cat->xi(0));
    REQUIRE(s0.size() == 3);
    CHECK(s0[0] == cat->xi(0));
    CHECK(s0[1] == cat->xi(1));
    CHECK(s0[2] == cat->xi(0).pow(q));
    auto s1 = steenrod_series(cat->xi(1));
    Polynomial zero(cat->field(), cat->frame());
    for (std::uint64_t i = 0; i < s1.size(); ++i) {
      Polynomial want = zero;
      if (i == 0) want = cat->xi(1);
      if (i == 1) want = cat->xi(0).pow(q).scale(2);
      if (i == q) want = cat->xi(2);
      if (i == q + 1) want = cat->xi(1).pow(q);
      CAPTURE(i);
      CHECK(s1[i] == want);
    }
    for (int i = 2; i + 1 < 4; ++i) CHECK(steenrod(cat->xi(i), ipow(q, i)) == cat->xi(i + 1));
  }
}

TEST_CASE("vanishing on u2 and on q-th powers") {
  auto cat = Catalog::get(2, 3);
  for (std::uint64_t i = 1; i < 3; ++i) CHECK(steenrod(cat->u(), i).is_zero());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto f = th::random_poly(rng, cat->field(), cat->frame(), 2, 3);
    auto fq = f.pow(3);
    for (std::uint64_t i = 0; i <= fq.degree(); ++i) {
      if (i % 3)
        CHECK(steenrod(fq, i).is_zero());
      else
        CHECK(steenrod(fq, i) == steenrod(f, i / 3).pow(3));
    }
  }
}

TEST_CASE("psi") {
  auto cat = Catalog::get(2, 3);
  auto s = psi_series(cat->xi(0));
  REQUIRE(s.size() >= 3);
  CHECK(s[0] == cat->xi(0).pow(3));
  CHECK(s[1] == -cat->xi(1));
  CHECK(s[2] == cat->xi(0));
  CHECK(psi_j(cat->x(1), 1).is_zero());
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) {
      auto lt = psi_j(cat->xi(i), j).lead_term();
      Monomial want;
      want.set(cat->frame()->y(j + 1), static_cast<std::uint32_t>(ipow(3, i + j)));
      want.set(cat->frame()->x(j + 1), static_cast<std::uint32_t>(ipow(3, j)));
      CHECK(lt.mono == want);
    }
}

TEST_CASE("phi and psi_j") {
  auto c2 = Catalog::get(2, 3);
  auto c3 = Catalog::get(3, 3);
  CHECK(phi_iso(c2->xi(0)) == psi_j(c3->y(2) * c3->x(2) + c3->y(3) * c3->x(3), 1));
  CHECK(phi_iso(c2->one()) == c3->one());
  for (int i = 0; i < 3; ++i) CHECK(phi_iso(psi_j(c2->xi(i), 1)) == psi_j(c3->xi(i), 2));
}

TEST_CASE("cartan and adem") {
  auto cat = Catalog::get(2, 3);
  CHECK(steenrod(cat->xi(0) * cat->xi(0), 1) == (cat->xi(0) * cat->xi(1)).scale(2));
  CHECK(check_cartan(cat->xi(0), cat->xi(0), 1).ok);
  CHECK(check_cartan(cat->xi(1), cat->one(), 2).ok);
  CHECK(check_adem(1, 1, th::P("y1^3*x1^2", 3, 2)).ok);
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {3u, 5u}) {
    auto F = Field::get(q);
    auto fr = VarFrame::S(2);
    for (int t = 0; t < 40; ++t) {
      auto f = th::random_poly(rng, F, fr, 1 + rng() % 3, 3);
      auto g = th::random_poly(rng, F, fr, 1 + rng() % 3, 3);
      CHECK(check_cartan(f, g, rng() % 6).ok);
      CHECK(check_stability(f).ok);
      std::uint64_t j = 1 + rng() % 2, i = rng() % (q * j);
      CHECK(check_adem(i, j, f).ok);
    }
  }
}

TEST_CASE("equivariance and linear factors") {
  auto cat = Catalog::get(2, 3);
  auto G = closure(generators(GroupKind::oplus, 2, 3));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto& g = G[rng() % G.size()];
    auto f = th::random_poly(rng, cat->field(), cat->frame(), 3, 4);
    for (std::uint64_t i = 0; i <= 3; ++i) CHECK(steenrod(act(f, g), i) == act(steenrod(f, i), g));
    auto v = th::random_poly(rng, cat->field(), cat->frame(), 1, 2);
    if (v.is_zero()) continue;
    Polynomial qt;
    for (std::uint64_t i = 0; i <= 4; ++i) CHECK(try_divide(steenrod(v * f, i), v, &qt));
  }
}

TEST_CASE("formal operation matches evaluation") {
  auto cat = Catalog::get(2, 3);
  std::vector<Polynomial> xis;
  for (int i = 0; i < 4; ++i) xis.push_back(cat->xi(i));
  auto F = parse_polynomial("T0^3*T1 + 2*T1^2", cat->field(), VarFrame::T(2, 3));
  auto G = steenrod_formal(F, 3);
  CHECK(phi_eval(G, xis) == steenrod(phi_eval(F, xis), 3));
}
