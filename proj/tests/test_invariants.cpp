#include "doctest.h"
#include "helpers.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/solver.hpp"

using namespace orthoinv;

TEST_CASE("xi definitions") {
  CHECK(Catalog::get(2, 3)->xi(0) == th::P("y1*x1 + y2*x2", 3, 2));
  CHECK(Catalog::get(1, 5)->xi(1) == th::P("y1^5*x1 + y1*x1^5", 5, 1));
  for (auto [m, q] : {std::pair{1, 3u}, {2, 3u}, {2, 5u}, {3, 3u}}) {
    auto cat = Catalog::get(m, q);
    for (int i = 0; i < 2 * m; ++i) CHECK(is_invariant(cat->xi(i), cat->gens(GroupKind::oplus)));
  }
}

TEST_CASE("u and d") {
  auto c1 = Catalog::get(1, 3);
  CHECK(c1->u() == c1->xi(0));
  CHECK(c1->d(1) == th::P("y1^2 + x1^2", 3, 1));
  CHECK(c1->d(1) * c1->xi(0) == c1->xi(1));
  auto c2 = Catalog::get(2, 3);
  CHECK(c2->u().degree() == 16);
  CHECK(c2->d(1).degree() == 18);
  CHECK(e_index(1, 2, 3) == 9);
  CHECK(c2->Nx(1) == c2->x(1));
  CHECK(c2->Ny(1).degree() == 9);
  CHECK(c2->Nx(2) == psi_j(c2->x(2), 1));
  for (int i = 1; i <= 2; ++i) CHECK(is_invariant(c2->d(i), c2->gens(GroupKind::oplus)));
}

TEST_CASE("c22 closed form") {
  auto F = Field::get(3);
  CHECK(c22(3, 1) == parse_polynomial("T0*T1^2 + T0^5", F, VarFrame::T(1, 3)));
  CHECK(c22(5, 1) == parse_polynomial("T0*T1^4 + T0^7*T1^2 + 2*T0^13", Field::get(5), VarFrame::T(1, 5)));
  CHECK(catalan_mod(2, *Field::get(7)) == 2);
  // u_2 = xi_0^q (xi_2 + c22) - xi_1^{q+1}
  for (std::uint32_t q : {3u, 5u, 7u}) {
    auto cat = Catalog::get(2, q);
    std::vector<Polynomial> xis{cat->xi(0), cat->xi(1), cat->xi(2), cat->xi(3)};
    auto c = phi_eval(c22(q, 3), xis);
    CHECK(cat->u() == cat->xi(0).pow(q) * (cat->xi(2) + c) - cat->xi(1).pow(q + 1));
  }
}

TEST_CASE("minors") {
  auto F = Field::get(3);
  auto fr = VarFrame::T(3, 3);
  CHECK(minor_M(0, 2, 3) == parse_polynomial("T2*T0^3 - T1^4", F, fr));
  CHECK(minor_M(2, 2, 3) == parse_polynomial("T3*T1^3 - T2^4", F, fr));
}

TEST_CASE("dickson") {
  auto c1 = Catalog::get(1, 3);
  auto d = dickson({c1->y(1)});
  REQUIRE(d.size() == 1);
  CHECK(d[0] == c1->y(1).pow(2));
  auto c2 = Catalog::get(2, 3);
  auto d2 = dickson({c2->y(1), c2->y(2)});
  CHECK(d2[0].degree() == 6);
  CHECK(d2[1].degree() == 8);
}

TEST_CASE("block bases") {
  auto g = block_basis(GroupKind::oplus, 2, 3);
  CHECK(g.rank() == 3);
  auto s = block_basis(GroupKind::sylow, 2, 3);
  CHECK(s.rank() == 9);
  CHECK(s.top_exponents == std::vector<std::uint32_t>{2, 2});
  CHECK(block_basis(GroupKind::sylow, 3, 3).rank() == 729);
  CHECK(block_basis(GroupKind::sylow, 2, 5).rank() == 25);
}

TEST_CASE("compliance") {
  auto cat = Catalog::get(2, 3);
  CHECK(digit_sum(5, 3) == 3);
  CHECK(nu1(th::P("x1^2*y1 + x1^3", 3, 2), cat->frame()->x(1)) == 2);
  CHECK(nu1(Polynomial(cat->field(), cat->frame()), 0) == UINT32_MAX);
  CHECK(compliance(cat->Ny(1), 3).compliant);
  CHECK(compliance(cat->x(1) * cat->Ny(1) - cat->xi(2), 3).strongly);
  CHECK_FALSE(compliance(cat->y(1).pow(4), 3).compliant);
}

TEST_CASE("hsop zero sets") {
  auto h = hsop(GroupKind::oplus, 2, 3);
  auto z = variety_scan(h.polys, 1);
  REQUIRE(z.size() == 1);
  for (auto c : z[0]) CHECK(c == 0);
  CHECK(variety_scan(h.polys, 2).size() == 1);
}
