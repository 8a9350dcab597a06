#include "doctest.h"
#include "helpers.hpp"
#include "orthoinv/khovanskii.hpp"

using namespace orthoinv;

TEST_CASE("subduction basics") {
  auto cat = Catalog::get(2, 3);
  auto g = cat->xi(1);
  auto tr = subduct(g, {g});
  CHECK(tr.to_zero());
  CHECK(tr.steps.size() == 1);
  auto r = subduct(cat->y(1), {cat->x(1)});
  CHECK(r.residue == cat->y(1));
  CHECK(reconstructs(r, {cat->x(1)}));
}

TEST_CASE("hook tete subducts to zero") {
  auto kd = khovanskii_data(GroupKind::hook, 2, 3);
  std::vector<Polynomial> gens;
  for (auto& g : kd.gens) gens.push_back(g.build());
  auto cat = Catalog::get(2, 3);
  auto t = cat->xi(0).pow(3) - cat->x(1).pow(2) * cat->xi(1);
  auto tr = subduct(t, gens);
  CHECK(tr.to_zero());
  CHECK(reconstructs(tr, gens));
  for (auto& te : kd.tetes) {
    CAPTURE(te.label);
    auto tt = subduct(te.build(), gens);
    CHECK(tt.to_zero());
  }
}

TEST_CASE("factor monomial") {
  Monomial a, b, t;
  a.set(0, 2);
  b.set(1, 1);
  t.set(0, 4);
  t.set(1, 3);
  auto e = factor_monomial(t, {a, b});
  REQUIRE(e);
  CHECK(*e == std::vector<std::uint32_t>{2, 3});
  t.set(0, 3);
  CHECK_FALSE(factor_monomial(t, {a, b}));
}

TEST_CASE("lead monoid counts") {
  Monomial a;
  a.set(0, 1);
  auto c = lead_monoid_counts({a}, 4);
  CHECK(c == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
}

TEST_CASE("khovanskii verification at m=2") {
  for (auto k : {GroupKind::hook, GroupKind::sylow, GroupKind::borel}) {
    CAPTURE(to_string(k));
    auto v = khovanskii_verify(khovanskii_data(k, 2, 3), 16);
    CHECK(v.ok);
    CHECK(v.counts_ok);
    CHECK(v.tetes_ok);
  }
}

TEST_CASE("xi_0 alone is not a basis for the hook invariants") {
  auto cat = Catalog::get(2, 3);
  auto v = khovanskii_verify({cat->xi(0)}, {}, cat->gens(GroupKind::hook), 4, 2, 3);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.witness.empty());
}
