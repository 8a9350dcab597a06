#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orthoinv/matgroup.hpp"

using namespace orthoinv;

TEST_CASE("group orders by closure") {
  CHECK(closure(generators(GroupKind::oplus, 2, 3)).size() == 1152);
  CHECK(expected_order(GroupKind::oplus, 2, 3) == 1152);
  CHECK(closure(generators(GroupKind::sylow, 2, 3)).size() == 9);
  CHECK(closure(generators(GroupKind::hook, 2, 3)).size() == 9);
  CHECK(closure(generators(GroupKind::sylow, 2, 5)).size() == 25);
  CHECK(closure(generators(GroupKind::sylow, 3, 3)).size() == 729);
  CHECK(closure(generators(GroupKind::hook, 3, 3)).size() == 81);
  CHECK(closure({GroupElem::identity(Field::get(3), 2)}).size() == 1);
  CHECK_THROWS_AS(closure(generators(GroupKind::oplus, 2, 3), 100), GroupError);
}

TEST_CASE("generators preserve the form") {
  for (auto k : {GroupKind::oplus, GroupKind::sylow, GroupKind::hook, GroupKind::borel, GroupKind::torus,
                 GroupKind::weyl, GroupKind::stabilizer_x1})
    for (auto [m, q] : {std::pair{1, 3u}, {2, 3u}, {2, 5u}, {2, 9u}, {3, 3u}})
      for (const auto& g : generators(k, m, q)) CHECK(g.preserves_form());
  for (const auto& g : generators(GroupKind::sylow, 3, 3)) CHECK(g.is_upper_unitriangular());
}

TEST_CASE("hook generator action") {
  auto cat = Catalog::get(2, 3);
  // the generator with a_2 = 1
  bool seen = false;
  for (const auto& g : hook_generators(1, 2, 3)) {
    if (act(cat->y(1), g) == cat->y(1) + cat->x(2)) {
      seen = true;
      CHECK(act(cat->y(2), g) == cat->y(2) - cat->x(1));
      CHECK(act(cat->x(1), g) == cat->x(1));
      CHECK(act(cat->x(2), g) == cat->x(2));
    }
  }
  CHECK(seen);
}

TEST_CASE("weyl swap at m=1") {
  auto cat = Catalog::get(1, 3);
  bool seen = false;
  for (const auto& g : generators(GroupKind::weyl, 1, 3))
    if (act(cat->y(1), g) == cat->x(1) && act(cat->x(1), g) == cat->y(1)) seen = true;
  CHECK(seen);
}

TEST_CASE("right action law") {
  auto cat = Catalog::get(2, 3);
  auto G = closure(generators(GroupKind::oplus, 2, 3));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto& g = G[rng() % G.size()];
    const auto& h = G[rng() % G.size()];
    auto f = th::random_poly(rng, cat->field(), cat->frame(), 3, 5);
    CHECK(act(act(f, g), h) == act(f, g * h));
    CHECK(act(f, GroupElem::identity(cat->field(), 2)) == f);
    CHECK(act(cat->xi(0), g) == cat->xi(0));
  }
}

TEST_CASE("orbits and norms") {
  auto cat = Catalog::get(2, 3);
  auto P = generators(GroupKind::sylow, 2, 3);
  auto o = orbit_linear(cat->x(1), P);
  CHECK(o.size() == 1);
  CHECK(o[0] == cat->x(1));
  auto o2 = orbit_linear(cat->x(2), P);
  std::vector<Polynomial> want{cat->x(2), cat->x(2) - cat->x(1), cat->x(2) + cat->x(1)};
  CHECK(o2.size() == 3);
  for (const auto& w : want) CHECK(std::find(o2.begin(), o2.end(), w) != o2.end());
  CHECK(orbit_linear(cat->y(1), P).size() == 9);
  CHECK(orbit_linear(Catalog::get(3, 3)->y(1), generators(GroupKind::sylow, 3, 3)).size() == 81);
  CHECK(norm(cat->x(1), P) == cat->x(1));
  CHECK(norm(cat->x(2), P) == cat->x(2).pow(3) - cat->x(2) * cat->x(1).pow(2));
  CHECK(norm(cat->y(1), P).degree() == 9);
  CHECK_THROWS(orbit_linear(cat->xi(0), P));
}

TEST_CASE("reynolds") {
  auto cat = Catalog::get(2, 3);
  CHECK(reynolds(cat->xi(0), 2, 3) == cat->xi(0));
  auto r = reynolds(cat->Ny(1).pow(2), 2, 3);
  Monomial want;
  want.set(0, 18);
  CHECK(r.lead_term().mono == want);
  CHECK(is_invariant(r, generators(GroupKind::oplus, 2, 3)));
}

TEST_CASE("group kind names") {
  for (auto k : {GroupKind::oplus, GroupKind::sylow, GroupKind::hook, GroupKind::borel, GroupKind::torus,
                 GroupKind::weyl, GroupKind::stabilizer_x1})
    CHECK(parse_group_kind(to_string(k)) == k);
  CHECK_THROWS(parse_group_kind("nope"));
}
