#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(ORTHO_INVAR_BIN) + " " + args + " > cli_out.txt 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string output() {
  std::ifstream is("cli_out.txt");
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("verify --suite xi_invariance --q 2 --m 2") == 2);
  CHECK(output().find("odd") != std::string::npos);
  CHECK(run("verify --suite xi_invariance --q 15 --m 2") == 2);
  CHECK(run("verify --suite no_such_check --q 3 --m 2") == 2);
  CHECK(run("verify --q 3 --m 9") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("") == 2);
  CHECK(run("construct d --q 3 --m 2 --i 7") == 2);
  CHECK(run("hilbert --group weyl --q 3 --m 2") == 2);
}

TEST_CASE("verify passes and writes JSON") {
  CHECK(run("verify --suite xi_invariance,lex_lt --q 3 --m 2 --json cli_report.json") == 0);
  std::ifstream is("cli_report.json");
  auto j = nlohmann::json::parse(is);
  REQUIRE(j.is_array());
  CHECK(j.size() == 2);
  CHECK(j[1]["name"] == "lex_lt");
  CHECK(j[1]["status"] == "pass");
}

TEST_CASE("construct") {
  CHECK(run("construct xi --q 3 --m 2 --i 0") == 0);
  CHECK(output() == "y1*x1 + y2*x2\n");
  CHECK(run("construct norm --q 3 --m 2 --i 2 --var x") == 0);
  CHECK(run("construct c22 --q 3 --m 2") == 0);
  CHECK(run("construct catalog --q 3 --m 2") == 0);
  auto j = nlohmann::json::parse(output());
  CHECK(j.size() >= 8);
}

TEST_CASE("hilbert") {
  CHECK(run("hilbert --group sylow --q 3 --m 2 --max-degree 12") == 0);
  CHECK(output().rfind("degree,invariant_dimension,block_series\n0,1,1\n", 0) == 0);
  CHECK(run("hilbert --group oplus --q 3 --m 2 --max-degree 12 --format json") == 0);
}

TEST_CASE("express") {
  {
    std::ofstream os("cli_target.txt");
    os << "y1^2*x1^2 + 2*y1*x1*y2*x2 + y2^2*x2^2\n";
  }
  CHECK(run("express --q 3 --m 2 --target cli_target.txt --gens xi0,xi1") == 0);
  CHECK(output().find("xi0^2") != std::string::npos);
  {
    std::ofstream os("cli_target.txt");
    os << "y1\n";
  }
  CHECK(run("express --q 3 --m 2 --target cli_target.txt --gens xi0") == 1);
  CHECK(run("express --q 3 --m 2 --target missing.txt --gens xi0") == 2);
}
