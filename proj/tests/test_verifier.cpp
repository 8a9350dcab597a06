#include <set>

#include "doctest.h"
#include "json.hpp"
#include "orthoinv/verifier.hpp"

using namespace orthoinv;

TEST_CASE("registry names are unique") {
  std::set<std::string> names;
  for (const auto& c : registry()) {
    CHECK(names.insert(c.name).second);
    CHECK_FALSE(c.anchor.empty());
  }
  for (const char* n : {"xi_invariance", "hook_eq1_eq2", "sylow_khovanskii", "m2_part_e", "reynolds_d1",
                        "steenrod_generation", "main_a", "main_f"})
    CHECK(names.count(n) == 1);
}

TEST_CASE("selection") {
  CHECK(select_checks("xi_invariance", false) == std::vector<std::string>{"xi_invariance"});
  auto st = select_checks("steenrod_*", false);
  CHECK(st.size() >= 4);
  for (const auto& n : st) CHECK(n.rfind("steenrod_", 0) == 0);
  auto m2 = select_checks("m2_", false);
  CHECK(m2.size() >= 6);
  CHECK(select_checks("main_a,main_b", false).size() == 2);
  CHECK_THROWS_AS(select_checks("nope", false), UsageError);
  CHECK(select_checks("all", true).size() >= select_checks("all", false).size());
}

TEST_CASE("parameter validation") {
  CheckParams p;
  p.q = 2;
  CHECK_THROWS_AS(validate_params(p), UsageError);
  p.q = 9;
  CHECK_NOTHROW(validate_params(p));
  p.q = 15;
  CHECK_THROWS_AS(validate_params(p), UsageError);
  p.q = 3;
  p.m = 0;
  CHECK_THROWS_AS(validate_params(p), UsageError);
  p.m = 2;
  CHECK_THROWS_AS(run_check("xi_invariance", {2, 2}), UsageError);
}

TEST_CASE("reports and exit codes") {
  CheckParams p;
  auto reps = run_suite("xi_invariance,group_orders", p);
  REQUIRE(reps.size() == 2);
  for (const auto& r : reps) CHECK(r.status == Status::pass);
  CHECK(exit_code(reps) == 0);
  auto j = nlohmann::json::parse(report_json(reps));
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[0]["name"] == "xi_invariance");
  CHECK(j[0]["status"] == "pass");
  CHECK(j[0]["params"]["q"] == 3);
  reps[0].status = Status::fail;
  CHECK(exit_code(reps) == 1);
  reps[1].status = Status::error;
  CHECK(exit_code(reps) == 2);
}

TEST_CASE("m=1 degenerate suite has no errors") {
  CheckParams p;
  p.m = 1;
  for (const auto& r : run_suite("group_orders,xi_invariance,minpoly,hook_ring", p)) {
    CAPTURE(r.name);
    CHECK(r.status != Status::error);
  }
}
