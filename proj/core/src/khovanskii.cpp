#include "orthoinv/khovanskii.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "orthoinv/invariants.hpp"
#include "orthoinv/solver.hpp"
#include "orthoinv/steenrod.hpp"

namespace orthoinv {

namespace {

class Powers {
 public:
  explicit Powers(const std::vector<Polynomial>& g) : gens_(g), cache_(g.size()) {}
  const Polynomial& power(std::size_t i, std::uint32_t e) {
    auto& c = cache_[i];
    auto it = c.find(e);
    if (it != c.end()) return it->second;
    Polynomial p = e == 0 ? Polynomial::constant(gens_[i].field(), gens_[i].frame(), 1)
                          : (e == 1 ? gens_[i] : power(i, e / 2) * power(i, e - e / 2));
    return c.emplace(e, std::move(p)).first->second;
  }
  Polynomial product(const std::vector<std::uint32_t>& e) {
    Polynomial p = Polynomial::constant(gens_[0].field(), gens_[0].frame(), 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) p = p * power(i, e[i]);
    return p;
  }

 private:
  const std::vector<Polynomial>& gens_;
  std::vector<std::map<std::uint32_t, Polynomial>> cache_;
};

bool dfs(const Monomial& rest, const std::vector<Monomial>& lts, const std::vector<std::size_t>& order, std::size_t pos,
         std::vector<std::uint32_t>& e, std::set<std::pair<std::size_t, std::pair<std::uint64_t, std::uint64_t>>>& dead) {
  if (rest == Monomial{}) return true;
  if (pos == order.size()) return false;
  auto key = std::make_pair(pos, std::make_pair(rest.hi, rest.lo));
  if (dead.count(key)) return false;
  const std::size_t i = order[pos];
  const Monomial& g = lts[i];
  std::uint32_t emax = UINT32_MAX;
  for (int v = 0; v < kMaxVars; ++v)
    if (g.get(v)) emax = std::min(emax, rest.get(v) / g.get(v));
  if (emax == UINT32_MAX) emax = 0;  // constant lead monomial
  Monomial gp{};
  for (int v = 0; v < kMaxVars; ++v) gp.set(v, g.get(v) * emax);
  for (std::uint32_t k = emax + 1; k-- > 0;) {
    e[i] = k;
    if (dfs(rest / gp, lts, order, pos + 1, e, dead)) return true;
    if (k) gp = gp / g;
  }
  e[i] = 0;
  dead.insert(key);
  return false;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> factor_monomial(const Monomial& target, const std::vector<Monomial>& lts) {
  std::vector<std::size_t> order(lts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lts[b].lex_less(lts[a]); });
  std::vector<std::uint32_t> e(lts.size(), 0);
  std::set<std::pair<std::size_t, std::pair<std::uint64_t, std::uint64_t>>> dead;
  if (dfs(target, lts, order, 0, e, dead)) return e;
  return std::nullopt;
}

SubductionTrace subduct(const Polynomial& f, const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                        std::size_t max_steps) {
  SubductionTrace tr;
  tr.input = f;
  std::vector<Monomial> lts;
  std::vector<Elem> lcs;
  for (const auto& g : gens) {
    if (g.is_zero()) throw RingError("subduct: zero generator");
    auto t = g.lead_term(ord);
    lts.push_back(t.mono);
    lcs.push_back(t.c);
  }
  const Field& F = *f.field();
  Powers pw(gens);
  Polynomial h = f;
  while (!h.is_zero() && tr.steps.size() < max_steps && !gens.empty()) {
    auto lt = h.lead_term(ord);
    auto e = factor_monomial(lt.mono, lts);
    if (!e) break;
    Elem lc = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) lc = F.mul(lc, F.pow(lcs[i], (*e)[i]));
    Elem c = F.div(lt.c, lc);
    h = h - pw.product(*e).scale(c);
    tr.steps.push_back({*e, c});
  }
  tr.residue = h;
  return tr;
}

bool reconstructs(const SubductionTrace& tr, const std::vector<Polynomial>& gens) {
  if (gens.empty()) return tr.input == tr.residue;
  Powers pw(gens);
  PolyAccumulator acc(tr.input.field(), tr.input.frame());
  for (const auto& s : tr.steps) acc.add(pw.product(s.exps), s.c);
  acc.add(tr.residue);
  return acc.take() == tr.input;
}

std::string SubductionTrace::to_json() const {
  nlohmann::json j;
  j["input"] = input.render();
  j["residue"] = residue.render();
  auto& st = j["steps"] = nlohmann::json::array();
  for (const auto& s : steps) st.push_back({{"exps", s.exps}, {"c", s.c}});
  return j.dump();
}

KhovanskiiData khovanskii_data(GroupKind kind, int m, std::uint32_t q) {
  if (m < 2) throw GroupError("Khovanskii data needs m >= 2");
  auto cat = Catalog::get(m, q);
  const int n = 2 * m;
  KhovanskiiData kd{kind, m, q, {}, {}};
  auto qp = [q](unsigned e) { return ipow(q, e); };
  auto Y = [cat, q](int j) {
    auto v = cat->y(j);
    return v.pow(q) - v * cat->x(1).pow(q - 1);
  };
  auto X = [cat, q](int j) {
    auto v = cat->x(j);
    return v.pow(q) - v * cat->x(1).pow(q - 1);
  };
  auto xi = [cat](int i) { return cat->xi(i); };
  auto s = [](const char* a, int i) { return std::string(a) + std::to_string(i); };

  if (kind == GroupKind::hook) {
    kd.gens.push_back({"x1", 1, [cat] { return cat->x(1); }});
    for (int i = 2; i <= m; ++i) {
      kd.gens.push_back({s("Y", i), q, [Y, i] { return Y(i); }});
      kd.gens.push_back({s("X", i), q, [X, i] { return X(i); }});
    }
    kd.gens.push_back({"Ny1", qp(n - 2), [cat] { return cat->Ny(1); }});
    for (int j = 0; j <= n - 3; ++j) kd.gens.push_back({s("xi", j), qp(j) + 1, [xi, j] { return xi(j); }});
    for (int j = 0; j <= n - 4; ++j)
      kd.tetes.push_back({"xi" + std::to_string(j) + "^q - x1^(q-1) xi" + std::to_string(j + 1), q * (qp(j) + 1),
                          [cat, q, j] { return cat->xi(j).pow(q) - cat->x(1).pow(q - 1) * cat->xi(j + 1); }});
    kd.tetes.push_back({"xi" + std::to_string(n - 3) + "^q - x1^q Ny1", q * (qp(n - 3) + 1),
                        [cat, q, n] { return cat->xi(n - 3).pow(q) - cat->x(1).pow(q) * cat->Ny(1); }});
    return kd;
  }
  if (kind != GroupKind::sylow && kind != GroupKind::borel)
    throw GroupError("no Khovanskii basis for " + to_string(kind));

  for (int i = 1; i <= m; ++i) {
    const std::uint64_t dy = qp(n - i - 1), dx = qp(i - 1);
    if (kind == GroupKind::sylow) {
      kd.gens.push_back({s("Ny", i), dy, [cat, i] { return cat->Ny(i); }});
      kd.gens.push_back({s("Nx", i), dx, [cat, i] { return cat->Nx(i); }});
    } else {
      kd.gens.push_back({s("Ny", i) + "^(q-1)", dy * (q - 1), [cat, i, q] { return cat->Ny(i).pow(q - 1); }});
      kd.gens.push_back({s("Nx", i) + "^(q-1)", dx * (q - 1), [cat, i, q] { return cat->Nx(i).pow(q - 1); }});
      kd.gens.push_back({s("Ny", i) + "*" + s("Nx", i), dy + dx, [cat, i] { return cat->Ny(i) * cat->Nx(i); }});
    }
  }
  for (int j = 0; j <= m - 2; ++j)
    for (int i = 0; i <= n - 3 - 2 * j; ++i)
      kd.gens.push_back({"psi" + std::to_string(j) + "(xi" + std::to_string(i) + ")", qp(j) * (qp(i) + 1),
                         [cat, j, i] { return cat->psi_xi(j, i); }});

  for (int j = 0; j <= m - 2; ++j) {
    for (int i = 0; i <= n - 3 - 2 * j; ++i) {
      const std::string pj = "psi" + std::to_string(j) + "(xi" + std::to_string(i) + ")^q";
      const std::uint64_t deg = q * qp(j) * (qp(i) + 1);
      if (i < n - 3 - 2 * j) {
        kd.tetes.push_back({pj + " - psi" + std::to_string(j) + "(xi" + std::to_string(i + 1) + ") Nx" +
                                std::to_string(j + 1) + "^(q-1)",
                            deg, [cat, q, j, i] {
                              return cat->psi_xi(j, i).pow(q) - cat->psi_xi(j, i + 1) * cat->Nx(j + 1).pow(q - 1);
                            }});
      } else {
        kd.tetes.push_back({pj + " - Ny" + std::to_string(j + 1) + " Nx" + std::to_string(j + 1) + "^q", deg,
                            [cat, q, j, i] {
                              return cat->psi_xi(j, i).pow(q) - cat->Ny(j + 1) * cat->Nx(j + 1).pow(q);
                            }});
      }
    }
  }
  if (kind == GroupKind::borel)
    for (int i = 1; i <= m; ++i)
      kd.tetes.push_back({"(Ny" + std::to_string(i) + " Nx" + std::to_string(i) + ")^(q-1) - Ny" + std::to_string(i) +
                              "^(q-1) Nx" + std::to_string(i) + "^(q-1)",
                          (q - 1) * (qp(n - i - 1) + qp(i - 1)), [cat, q, i] {
                            return (cat->Ny(i) * cat->Nx(i)).pow(q - 1) - cat->Ny(i).pow(q - 1) * cat->Nx(i).pow(q - 1);
                          }});
  return kd;
}

std::vector<std::uint64_t> lead_monoid_counts(const std::vector<Monomial>& lts, std::uint32_t D) {
  std::vector<std::set<std::pair<std::uint64_t, std::uint64_t>>> S(D + 1);
  S[0].insert({0, 0});
  for (std::uint32_t d = 1; d <= D; ++d)
    for (const auto& g : lts) {
      const std::uint32_t gd = g.degree();
      if (gd == 0 || gd > d) continue;
      for (const auto& [hi, lo] : S[d - gd]) {
        Monomial mm = Monomial{hi, lo} * g;
        S[d].insert({mm.hi, mm.lo});
      }
    }
  std::vector<std::uint64_t> out;
  for (const auto& s : S) out.push_back(s.size());
  return out;
}

KhovanskiiVerdict khovanskii_verify(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& tetes,
                                    const std::vector<GroupElem>& group_gens, std::uint32_t D, int m,
                                    std::uint32_t q) {
  KhovanskiiVerdict v;
  std::vector<Monomial> lts;
  for (const auto& g : gens) lts.push_back(g.lead_term().mono);
  v.monoid_counts = lead_monoid_counts(lts, D);
  for (std::uint32_t d = 0; d <= D; ++d) {
    v.invariant_dims.push_back(invariant_dimension(group_gens, d, m, q));
    if (v.counts_ok && v.invariant_dims[d] != v.monoid_counts[d]) {
      v.counts_ok = false;
      std::ostringstream os;
      os << "degree " << d << ": lead monoid has " << v.monoid_counts[d] << " monomials, invariants have dimension "
         << v.invariant_dims[d];
      v.witness = os.str();
    }
  }
  for (const auto& t : tetes) {
    auto tr = subduct(t, gens);
    if (!reconstructs(tr, gens)) {
      v.tetes_ok = false;
      if (v.witness.empty()) v.witness = "subduction trace does not reconstruct its input: " + tr.to_json();
    } else if (!tr.to_zero()) {
      v.tetes_ok = false;
      if (v.witness.empty()) v.witness = "nonzero residue: " + tr.to_json();
    }
  }
  v.ok = v.counts_ok && v.tetes_ok;
  return v;
}

KhovanskiiVerdict khovanskii_verify(const KhovanskiiData& kd, std::uint32_t D, std::uint64_t tete_cap) {
  if (tete_cap == 0) tete_cap = D;
  std::uint64_t need = D;
  for (const auto& t : kd.tetes)
    if (t.degree <= tete_cap) need = std::max(need, t.degree);
  std::vector<Polynomial> gens;
  for (const auto& g : kd.gens)
    if (g.degree <= need) gens.push_back(g.build());
  // lead monoid count only uses generators up to D
  std::vector<Polynomial> low;
  for (std::size_t i = 0, k = 0; i < kd.gens.size(); ++i) {
    if (kd.gens[i].degree > need) continue;
    if (kd.gens[i].degree <= D) low.push_back(gens[k]);
    ++k;
  }
  auto cat = Catalog::get(kd.m, kd.q);
  auto v = khovanskii_verify(low, {}, cat->gens(kd.kind), D, kd.m, kd.q);
  for (const auto& t : kd.tetes) {
    if (t.degree > tete_cap) continue;
    auto tr = subduct(t.build(), gens);
    v.tetes_checked.push_back(t.label);
    bool good = reconstructs(tr, gens) && tr.to_zero();
    if (!good) {
      v.tetes_ok = false;
      if (v.witness.empty()) v.witness = t.label + ": " + tr.to_json();
    }
  }
  v.ok = v.counts_ok && v.tetes_ok;
  return v;
}

}  // namespace orthoinv
