#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthoinv/verifier.hpp"

using namespace orthoinv;

namespace {

struct Run {
  std::string check;
  int m;
  std::uint32_t q;
  bool heavy = false;
  std::uint32_t D = 0;
};

struct Criterion {
  int id;
  std::string title;
  double budget;  // seconds
  std::vector<Run> runs;
  std::vector<Run> heavy_runs;  // only with --heavy
};

std::vector<Criterion> criteria() {
  return {
      {1, "group orders", 30, {{"group_orders", 2, 3}, {"group_orders", 2, 5}, {"group_orders", 3, 3}}, {}},
      {2,
       "xi invariance",
       10,
       {{"xi_invariance", 1, 3}, {"xi_invariance", 2, 3}, {"xi_invariance", 2, 5}, {"xi_invariance", 3, 3}},
       {}},
      {3, "u_2 through c22 and the Catalan congruence", 60, {{"m2_c22", 2, 3}, {"m2_c22", 2, 5}, {"m2_c22", 2, 7}}, {}},
      {4, "minimal polynomial of x_1", 60, {{"minpoly", 2, 3}, {"minpoly", 2, 5}, {"minpoly", 3, 3}}, {}},
      {5, "lex lead terms of u and d_1", 600, {{"lex_lt", 2, 3}, {"lex_lt", 2, 5}, {"lex_lt", 3, 3, true}}, {}},
      {6, "hsop zero set and Dickson reduction", 60, {{"hsop_variety", 2, 3}, {"dickson_reduction", 2, 3}}, {}},
      {7, "zero set of xi_0, xi_1", 60, {{"variety_xi", 2, 3}}, {}},
      {8,
       "hook identities, membership and tete-a-tetes",
       60,
       {{"hook_eq1_eq2", 2, 3}, {"hook_eq1_eq2", 3, 3}, {"hook_compliance", 2, 3}, {"hook_ring", 2, 3}},
       {}},
      {9,
       "Sylow Khovanskii basis, block basis and rank",
       1800,
       {{"sylow_khovanskii", 2, 3, false, 24},
        {"sylow_block", 2, 3},
        {"sylow_rank", 2, 3},
        {"sylow_khovanskii", 3, 3, true, 12},
        {"sylow_block", 3, 3},
        {"sylow_rank", 3, 3}},
       {}},
      {10, "minimal generating sets", 300, {{"sylow_minimal", 2, 3}, {"minimal_generation_G", 2, 3}}, {}},
      {11, "Borel invariants", 180, {{"borel_ring", 2, 3, false, 24}}, {}},
      {12, "Reynolds operator", 120, {{"reynolds_lt", 2, 3}, {"reynolds_d1", 2, 3}}, {}},
      {13,
       "m=2 suite",
       600,
       {{"m2_c22_steenrod", 2, 3},
        {"m2_u2d", 2, 3},
        {"m2_u2_st", 2, 3},
        {"m2_u2d_st", 2, 3},
        {"m2_c32", 2, 3},
        {"m2_part_e", 2, 3},
        {"main_a", 2, 3},
        {"main_b", 2, 3},
        {"main_d", 2, 3},
        {"main_e", 2, 3}},
       {{"m2_c22_steenrod", 2, 5, true},
        {"m2_u2d", 2, 5, true},
        {"m2_u2_st", 2, 5, true},
        {"m2_u2d_st", 2, 5, true},
        {"m2_c32", 2, 5, true},
        {"m2_part_e", 2, 5, true}}},
      {14, "Steenrod generation of d_2", 300, {{"steenrod_generation", 2, 3}}, {}},
      {15,
       "property suites",
       180,
       {{"steenrod_cartan", 2, 3},
        {"steenrod_adem", 2, 3},
        {"steenrod_stability", 2, 3},
        {"steenrod_equivariance", 2, 3},
        {"ring_axioms", 2, 3},
        {"express_soundness", 2, 3}},
       {}},
  };
}

bool run_criterion(const Criterion& c, bool heavy, bool verbose) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> problems;
  auto runs = c.runs;
  if (heavy) runs.insert(runs.end(), c.heavy_runs.begin(), c.heavy_runs.end());
  for (const auto& r : runs) {
    CheckParams p;
    p.m = r.m;
    p.q = r.q;
    p.heavy = r.heavy;
    p.max_degree = r.D;
    CheckReport rep;
    try {
      rep = run_check(r.check, p);
    } catch (const std::exception& e) {
      rep.status = Status::error;
      rep.witness = e.what();
    }
    const std::string tag = r.check + "(m=" + std::to_string(r.m) + ",q=" + std::to_string(r.q) + ")";
    if (verbose) {
      std::cout << "    " << to_string(rep.status) << " " << tag << " " << rep.seconds << "s\n";
      for (const auto& n : rep.notes) std::cout << "        " << n << "\n";
    }
    if (rep.status != Status::pass) problems.push_back(tag + " " + to_string(rep.status) + ": " + rep.witness);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > c.budget) problems.push_back("took " + std::to_string(secs) + "s, budget " + std::to_string(c.budget) + "s");
  char head[128];
  std::snprintf(head, sizeof head, "criterion %2d: %s  %-46s %8.2fs", c.id, problems.empty() ? "PASS" : "FAIL",
                c.title.c_str(), secs);
  std::cout << head << "\n";
  for (const auto& p : problems) std::cout << "    " << p << "\n";
  std::cout.flush();
  return problems.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  bool heavy = false, verbose = false;
  app.add_option("--criterion", only, "run only these criteria (1..15)");
  app.add_flag("--heavy", heavy, "add the q=5 runs of the m=2 suite");
  app.add_flag("-v,--verbose", verbose, "print every run");
  CLI11_PARSE(app, argc, argv);
  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    if (!run_criterion(c, heavy, verbose)) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no such criterion\n";
    return 2;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed ? 1 : 0;
}
