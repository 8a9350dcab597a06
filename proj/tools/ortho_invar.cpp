#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/solver.hpp"
#include "orthoinv/verifier.hpp"

using namespace orthoinv;

namespace {

struct Common {
  std::uint32_t q = 3;
  int m = 2;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--q", c.q, "field size (odd prime power)");
  sub->add_option("--m", c.m, "rank (1..4)");
}

CheckParams params_of(const Common& c) {
  CheckParams p;
  p.q = c.q;
  p.m = c.m;
  return p;
}

int cmd_verify(const Common& c, const std::string& suite, std::uint32_t D, bool heavy, const std::string& json_out) {
  CheckParams p = params_of(c);
  p.max_degree = D;
  p.heavy = heavy;
  auto reports = run_suite(suite, p, [](const CheckReport& r) {
    std::cout << std::left << std::setw(6) << to_string(r.status) << std::setw(24) << r.name << " q=" << r.params.q
              << " m=" << r.params.m << " " << std::fixed << std::setprecision(2) << r.seconds << "s";
    if (!r.witness.empty()) std::cout << "  " << r.witness;
    std::cout << "\n";
    for (const auto& n : r.notes) std::cout << "        " << n << "\n";
    std::cout.flush();
  });
  if (!json_out.empty()) {
    std::ofstream os(json_out);
    if (!os) throw UsageError("cannot write " + json_out);
    os << report_json(reports) << "\n";
  }
  std::size_t pass = 0, fail = 0, skip = 0, err = 0;
  for (const auto& r : reports) {
    switch (r.status) {
      case Status::pass: ++pass; break;
      case Status::fail: ++fail; break;
      case Status::skip: ++skip; break;
      case Status::error: ++err; break;
    }
  }
  std::cout << pass << " passed, " << fail << " failed, " << skip << " skipped, " << err << " errors\n";
  return exit_code(reports);
}

Polynomial named_generator(Catalog& cat, const std::string& name) {
  auto idx = [&](std::size_t at) {
    if (at >= name.size()) throw UsageError("generator needs an index: " + name);
    return std::stoi(name.substr(at));
  };
  if (name == "u") return cat.u();
  if (name.rfind("xi", 0) == 0) return cat.xi(idx(2));
  if (name.rfind("Ny", 0) == 0) return cat.Ny(idx(2));
  if (name.rfind("Nx", 0) == 0) return cat.Nx(idx(2));
  if (name[0] == 'd') return cat.d(idx(1));
  if (name[0] == 'y') return cat.y(idx(1));
  if (name[0] == 'x') return cat.x(idx(1));
  throw UsageError("unknown generator: " + name);
}

int cmd_construct(const Common& c, const std::string& what, int i, const std::string& var, bool as_json) {
  validate_params(params_of(c));
  auto cat = Catalog::get(c.m, c.q);
  auto emit = [&](const Polynomial& f) {
    if (as_json)
      std::cout << to_json(f) << "\n";
    else
      std::cout << f.render() << "\n";
    return 0;
  };
  if (what == "xi") return emit(cat->xi(i));
  if (what == "norm") {
    if (i < 1 || i > c.m) throw UsageError("--i must lie in 1..m");
    return emit(var == "x" ? cat->Nx(i) : cat->Ny(i));
  }
  if (what == "u") return emit(cat->u());
  if (what == "d") {
    if (i < 1 || i > c.m) throw UsageError("--i must lie in 1..m");
    return emit(cat->d(i));
  }
  if (what == "minor") {
    if (i < 0 || i > c.m) throw UsageError("--i must lie in 0..m");
    return emit(minor_M(i, c.m, c.q));
  }
  if (what == "c22") return emit(c22(c.q, 2));
  if (what == "catalog") {
    nlohmann::json j = nlohmann::json::array();
    auto row = [&](const std::string& name, const Polynomial& f) {
      j.push_back({{"name", name}, {"degree", f.degree()}, {"terms", f.size()}});
    };
    for (int k = 0; k < 2 * c.m; ++k) row("xi" + std::to_string(k), cat->xi(k));
    for (int k = 1; k <= c.m; ++k) row("Ny" + std::to_string(k), cat->Ny(k)), row("Nx" + std::to_string(k), cat->Nx(k));
    if (c.m <= 2) {
      row("u", cat->u());
      for (int k = 1; k <= c.m; ++k) row("d" + std::to_string(k), cat->d(k));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  throw UsageError("unknown construction: " + what);
}

int cmd_hilbert(const Common& c, const std::string& group, std::uint32_t D, const std::string& format) {
  validate_params(params_of(c));
  auto kind = parse_group_kind(group);
  if (kind != GroupKind::sylow && kind != GroupKind::oplus && kind != GroupKind::hook && kind != GroupKind::borel)
    throw UsageError("group must be sylow, oplus, hook or borel");
  auto bb = block_basis(kind, c.m, c.q);
  auto hs = hilbert_block(bb.hsop_degrees, bb.basis_degrees, D);
  auto gens = generators(kind, c.m, c.q);
  nlohmann::json j = nlohmann::json::array();
  if (format == "csv") std::cout << "degree,invariant_dimension,block_series\n";
  int rc = 0;
  for (std::uint32_t d = 0; d <= D; ++d) {
    auto inv = invariant_dimension(gens, d, c.m, c.q);
    if (static_cast<std::int64_t>(inv) != hs[d]) rc = 1;
    if (format == "csv")
      std::cout << d << "," << inv << "," << hs[d] << "\n";
    else
      j.push_back({{"degree", d}, {"invariant_dimension", inv}, {"block_series", hs[d]}});
  }
  if (format != "csv") std::cout << j.dump(2) << "\n";
  return rc;
}

int cmd_express(const Common& c, const std::string& target, const std::string& gens_csv) {
  validate_params(params_of(c));
  auto cat = Catalog::get(c.m, c.q);
  std::ifstream is(target);
  if (!is) throw UsageError("cannot read " + target);
  std::stringstream ss;
  ss << is.rdbuf();
  std::string text = ss.str();
  Polynomial f = text.find('{') != std::string::npos ? from_json(text, cat->field(), cat->frame())
                                                      : parse_polynomial(text, cat->field(), cat->frame());
  std::vector<Polynomial> gens;
  std::vector<std::string> names;
  std::stringstream gs(gens_csv);
  std::string tok;
  while (std::getline(gs, tok, ',')) {
    if (tok.empty()) continue;
    names.push_back(tok);
    gens.push_back(named_generator(*cat, tok));
  }
  if (gens.empty()) throw UsageError("--gens is empty");
  auto e = express(f, gens, names);
  if (!e.found) {
    std::cout << "not expressible: " << e.certificate << "\n";
    return 1;
  }
  std::cout << "method: " << e.method << "\n";
  if (gens.size() <= static_cast<std::size_t>(kMaxVars))
    std::cout << e.as_polynomial(cat->field()).render() << "\n";
  else
    std::cout << e.terms.size() << " terms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants of O+(2m,q) in odd characteristic"};
  app.require_subcommand(1);
  Common c;

  std::string suite = "all", json_out;
  std::uint32_t D = 0;
  bool heavy = false;
  auto* verify = app.add_subcommand("verify", "run registered checks");
  add_common(verify, c);
  verify->add_option("--suite", suite, "all, a check name, a prefix ending in * or _, or a comma list");
  verify->add_option("--max-degree", D, "degree bound (0: per-check default)");
  verify->add_flag("--heavy", heavy, "include expensive cases");
  verify->add_option("--json", json_out, "write the reports as JSON");

  std::string what, var = "y";
  int idx = 1;
  bool as_json = false;
  auto* construct = app.add_subcommand("construct", "print a catalog polynomial");
  add_common(construct, c);
  construct->add_option("what", what, "xi|norm|u|d|minor|c22|catalog")->required();
  construct->add_option("--i", idx, "index");
  construct->add_option("--var", var, "norm of y_i or x_i")->check(CLI::IsMember({"y", "x"}));
  construct->add_flag("--json", as_json, "JSON output");

  std::string group = "sylow", format = "csv";
  std::uint32_t HD = 20;
  auto* hilbert = app.add_subcommand("hilbert", "block-basis Hilbert series against invariant dimensions");
  add_common(hilbert, c);
  hilbert->add_option("--group", group, "sylow|oplus|hook|borel");
  hilbert->add_option("--max-degree", HD, "largest degree");
  hilbert->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::string target, gens;
  auto* expr = app.add_subcommand("express", "write a polynomial in terms of named invariants");
  add_common(expr, c);
  expr->add_option("--target", target, "file with a polynomial (text or JSON)")->required();
  expr->add_option("--gens", gens, "comma list: xi<i>, d<i>, Ny<i>, Nx<i>, u, y<i>, x<i>")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*verify) return cmd_verify(c, suite, D, heavy, json_out);
    if (*construct) return cmd_construct(c, what, idx, var, as_json);
    if (*hilbert) return cmd_hilbert(c, group, HD, format);
    if (*expr) return cmd_express(c, target, gens);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
