#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "orthoinv/solver.hpp"

using namespace orthoinv;

TEST_CASE("sparse echelon tracks combinations") {
  auto F = Field::get(5);
  std::mt19937_64 rng(1);
  auto fr = VarFrame::S(2);
  for (int t = 0; t < 100; ++t) {
    SparseEchelon E(F, true);
    std::vector<Polynomial> rows;
    for (std::uint32_t id = 0; id < 6; ++id) {
      rows.push_back(th::random_poly(rng, F, fr, 3, 3));
      E.insert(rows.back().terms(), id);
    }
    auto v = rows[1].scale(3) + rows[4] - rows[5].scale(2);
    SparseEchelon::Combo combo;
    auto res = E.reduce(v.terms(), &combo);
    CHECK(res.empty());
    Polynomial back(F, fr);
    for (auto [id, c] : combo) back += rows[id].scale(c);
    CHECK(back == v);
  }
}

TEST_CASE("invariant dimensions") {
  auto cat = Catalog::get(2, 3);
  CHECK(invariant_dimension(cat->gens(GroupKind::oplus), 2, 2, 3) == 1);
  CHECK(invariant_dimension(cat->gens(GroupKind::sylow), 2, 2, 3) >= 1);
  CHECK(invariant_dimension(cat->gens(GroupKind::sylow), 0, 2, 3) == 1);
  for (std::uint32_t d = 0; d <= 20; ++d)
    CHECK(invariant_dimension(cat->gens(GroupKind::oplus), d, 2, 3) <=
          invariant_dimension(cat->gens(GroupKind::sylow), d, 2, 3));
}

TEST_CASE("express") {
  auto cat = Catalog::get(2, 3);
  auto e = express(cat->xi(1).pow(2), {cat->xi(1)}, {"xi1"});
  REQUIRE(e.found);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms[0].exps == std::vector<std::uint32_t>{2});
  auto miss = express(cat->y(1), {cat->xi(0)}, {"xi0"});
  CHECK_FALSE(miss.found);
  CHECK_FALSE(miss.certificate.empty());
  // soundness on random combinations
  std::vector<Polynomial> gens{cat->xi(0), cat->xi(1), cat->xi(2)};
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    auto f = gens[0].pow(rng() % 5) * gens[1].pow(rng() % 2) + gens[0].pow(4).scale(1 + rng() % 2);
    f = f.component(f.degree());
    auto ex = express(f, gens);
    REQUIRE(ex.found);
    CHECK(evaluate_expression(ex, gens) == f);
  }
  auto d1 = express_over_xi(cat->d(1) * cat->u(), 3);
  CHECK(d1.found);
}

TEST_CASE("valuation") {
  auto F = Field::get(3);
  auto fr = VarFrame::T(2, 3);
  CHECK(r_valuation(parse_polynomial("T1^3", F, fr)) == 3u);
  CHECK(r_valuation(parse_polynomial("T1^3 - T2*T1", F, fr)) == 2u);
  CHECK_FALSE(r_valuation(Polynomial(F, fr)).has_value());
  CHECK(divisible_by_T0_power(parse_polynomial("T0^2*T1 + T0^3", F, fr), 2));
  CHECK_FALSE(divisible_by_T0_power(parse_polynomial("T0^2*T1 + T0*T2", F, fr), 2));
  auto F5 = Field::get(5);
  auto f5 = VarFrame::T(2, 5);
  CHECK(r_valuation(parse_polynomial("T1^5 - T2*T1^2", F5, f5)) == 3u);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    auto a = th::random_poly(rng, F, fr, 1 + rng() % 4, 3);
    auto b = th::random_poly(rng, F, fr, 1 + rng() % 4, 3);
    if (a.is_zero() || b.is_zero() || (a + b).is_zero()) continue;
    CHECK(*r_valuation(a + b) >= std::min(*r_valuation(a), *r_valuation(b)));
  }
}

TEST_CASE("hilbert block series") {
  auto h = hilbert_block({1}, {0}, 10);
  for (auto v : h) CHECK(v == 1);
  auto h2 = hilbert_block({1, 1}, {0}, 5);
  CHECK(h2 == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("independence") {
  auto cat = Catalog::get(2, 3);
  CHECK(independence_check({cat->xi(0), cat->xi(1), cat->xi(2), cat->xi(3)}, 20).ok);
  CHECK_FALSE(independence_check({cat->xi(0), cat->xi(0).pow(2)}, 4).ok);
  CHECK(independence_check({cat->y(1), cat->x(1)}, 6).ok);
  CHECK(algebra_dimension({cat->xi(0)}, 4) == 1);
}

TEST_CASE("variety scans") {
  auto cat = Catalog::get(2, 3);
  std::vector<Polynomial> vars;
  for (int v = 0; v < 4; ++v) vars.push_back(cat->var(v));
  CHECK(variety_scan(vars, 1).size() == 1);
  // points of V(xi_0, xi_1) over F_3: the isotropic vectors
  auto z = variety_scan({cat->xi(0), cat->xi(1)}, 1);
  auto iso = variety_scan({cat->xi(0)}, 1);
  CHECK(z.size() == iso.size());
  CHECK_THROWS(variety_scan({Catalog::get(2, 9)->xi(0)}, 2));
  CHECK(variety_scan({Catalog::get(1, 5)->xi(0), Catalog::get(1, 5)->xi(1)}, 2).size() >= 1);
}
