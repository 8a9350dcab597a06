#include "orthoinv/solver.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <boost/rational.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "orthoinv/invariants.hpp"

namespace orthoinv {

// ---------------------------------------------------------- echelon

namespace {

using Vec = SparseEchelon::Vec;
using Combo = SparseEchelon::Combo;

bool key_greater(const Monomial& a, const Monomial& b) { return b.lex_less(a); }

// a - s*b, both descending
Vec axpy(const Vec& a, const Vec& b, Elem s, const Field& F) {
  Vec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  const Elem ns = F.neg(s);
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && key_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || key_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, F.mul(ns, b[j].c)});
      ++j;
    } else {
      Elem c = F.add(a[i].c, F.mul(ns, b[j].c));
      if (c) out.push_back({a[i].mono, c});
      ++i;
      ++j;
    }
  }
  return out;
}

Combo combo_axpy(const Combo& a, const Combo& b, Elem s, const Field& F) {
  Combo out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, F.mul(s, b[j].second)});
      ++j;
    } else {
      Elem c = F.add(a[i].second, F.mul(s, b[j].second));
      if (c) out.push_back({a[i].first, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseEchelon::SparseEchelon(FieldPtr f, bool track) : f_(std::move(f)), track_(track) {}

Vec SparseEchelon::reduce(Vec v, Combo* combo) const {
  const Field& F = *f_;
  while (!v.empty()) {
    auto it = pivots_.find(v[0].mono);
    if (it == pivots_.end()) break;
    Elem c = v[0].c;
    if (combo) *combo = combo_axpy(*combo, hist_[it->second], c, F);
    v = axpy(v, rows_[it->second], c, F);
  }
  return v;
}

bool SparseEchelon::insert(Vec v, std::uint32_t id) {
  Combo combo;
  // residual = v - sum c rows, so its history is e_id - combo
  v = reduce(std::move(v), track_ ? &combo : nullptr);
  if (v.empty()) return false;
  const Field& F = *f_;
  Elem inv = F.inv(v[0].c);
  for (auto& t : v) t.c = F.mul(t.c, inv);
  if (track_) {
    Combo h;
    for (auto& [k, c] : combo) h.push_back({k, F.neg(c)});
    h = combo_axpy(h, Combo{{id, 1}}, 1, F);
    for (auto& [k, c] : h) c = F.mul(c, inv);
    hist_.push_back(std::move(h));
  }
  pivots_.emplace(v[0].mono, rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

// ---------------------------------------------------------- invariants

std::uint64_t invariant_dimension(const std::vector<GroupElem>& gens, std::uint32_t d, int m, std::uint32_t q) {
  const int n = 2 * m;
  if (n >= kMaxVars) throw SolverError("invariant_dimension: too many variables");
  auto F = Field::get(q);
  auto fr = VarFrame::S(m);
  auto monos = monomials_of_degree(n, d);
  if (monos.size() > 400000) throw SolverError("invariant_dimension: degree too large");

  std::vector<const GroupElem*> mono_gens, other;
  for (const auto& g : gens) (g.is_monomial() ? mono_gens : other).push_back(&g);

  // monomial generators: v_r -> c_r v_{pi(r)}
  struct MonoAct {
    std::vector<int> pi;
    std::vector<Elem> c;
  };
  std::vector<MonoAct> acts;
  for (auto* g : mono_gens) {
    MonoAct a{std::vector<int>(n), std::vector<Elem>(n)};
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (g->at(r, c)) {
          a.pi[r] = c;
          a.c[r] = g->at(r, c);
        }
    acts.push_back(std::move(a));
  }
  auto apply = [&](const MonoAct& a, const Monomial& mu, Elem* coef) {
    Monomial out;
    Elem c = 1;
    for (int r = 0; r < n; ++r) {
      std::uint32_t e = mu.get(r);
      if (!e) continue;
      out.set(a.pi[r], e);
      c = F->mul(c, F->pow(a.c[r], e));
    }
    *coef = c;
    return out;
  };

  absl::flat_hash_set<Monomial> seen;
  std::vector<Polynomial> basis;
  for (const auto& mu : monos) {
    if (seen.contains(mu)) continue;
    absl::flat_hash_map<Monomial, Elem> w;
    std::vector<Monomial> queue{mu};
    w[mu] = 1;
    seen.insert(mu);
    bool ok = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Monomial cur = queue[i];
      Elem wc = w[cur];
      for (const auto& a : acts) {
        Elem c;
        Monomial img = apply(a, cur, &c);
        Elem want = F->mul(wc, c);
        auto it = w.find(img);
        if (it == w.end()) {
          w.emplace(img, want);
          seen.insert(img);
          queue.push_back(img);
        } else if (it->second != want) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    std::vector<Polynomial::Term> terms;
    for (auto& [mono, c] : w) terms.push_back({mono, c});
    basis.push_back(Polynomial::from_terms(F, fr, std::move(terms)));
  }
  if (other.empty()) return basis.size();

  std::vector<Substitution> subs;
  for (auto* g : other) subs.emplace_back(action_images(*g, F, fr));
  SparseEchelon ech(F);
  for (const auto& b : basis) {
    std::vector<Polynomial::Term> stacked;
    for (std::size_t k = 0; k < subs.size(); ++k) {
      Polynomial diff = subs[k](b) - b;
      for (const auto& t : diff.terms()) {
        Monomial key = t.mono;
        key.set(kMaxVars - 1, static_cast<std::uint32_t>(k));
        stacked.push_back({key, t.c});
      }
    }
    std::sort(stacked.begin(), stacked.end(), [](const auto& a, const auto& b) { return key_greater(a.mono, b.mono); });
    if (!stacked.empty()) ech.insert(std::move(stacked));
  }
  return basis.size() - ech.rank();
}

// ---------------------------------------------------------- express

Polynomial Expression::as_polynomial(const FieldPtr& f) const {
  auto fr = VarFrame::named(names, degrees);
  std::vector<Polynomial::Term> t;
  for (const auto& e : terms) {
    Monomial mono;
    for (std::size_t i = 0; i < e.exps.size(); ++i) mono.set(static_cast<int>(i), e.exps[i]);
    t.push_back({mono, e.c});
  }
  return Polynomial::from_terms(f, fr, std::move(t));
}

Polynomial Expression::as_T(const FieldPtr& f, std::uint32_t q) const {
  auto fr = VarFrame::T(static_cast<int>(names.size()) - 1, q);
  std::vector<Polynomial::Term> t;
  for (const auto& e : terms) {
    Monomial mono;
    for (std::size_t i = 0; i < e.exps.size(); ++i) mono.set(static_cast<int>(i), e.exps[i]);
    t.push_back({mono, e.c});
  }
  return Polynomial::from_terms(f, fr, std::move(t));
}

std::vector<std::vector<std::uint32_t>> weighted_compositions(const std::vector<std::uint64_t>& w, std::uint64_t d,
                                                               std::size_t cap) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(w.size(), 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
    if (i == w.size()) {
      if (left == 0) {
        if (out.size() >= cap) throw SolverError("too many generator products in this degree");
        out.push_back(cur);
      }
      return;
    }
    if (w[i] == 0) throw SolverError("generator of degree zero");
    for (std::uint64_t e = 0; e * w[i] <= left; ++e) {
      cur[i] = static_cast<std::uint32_t>(e);
      rec(i + 1, left - e * w[i]);
    }
    cur[i] = 0;
  };
  rec(0, d);
  return out;
}

namespace {

using Rat = boost::rational<long long>;

class PowerCache {
 public:
  explicit PowerCache(const std::vector<Polynomial>& gens) : gens_(gens), cache_(gens.size()) {}
  const Polynomial& power(std::size_t i, std::uint32_t e) {
    auto it = cache_[i].find(e);
    if (it != cache_[i].end()) return it->second;
    Polynomial p = e == 1 ? gens_[i] : gens_[i].pow(e);
    return cache_[i].emplace(e, std::move(p)).first->second;
  }
  Polynomial product(const std::vector<std::uint32_t>& e) {
    std::vector<const Polynomial*> fs;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) fs.push_back(&power(i, e[i]));
    if (fs.empty()) return Polynomial::constant(gens_[0].field(), gens_[0].frame(), 1);
    std::sort(fs.begin(), fs.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
    Polynomial r = *fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) r = r * *fs[i];
    return r;
  }

 private:
  const std::vector<Polynomial>& gens_;
  std::vector<std::map<std::uint32_t, Polynomial>> cache_;
};

// solve sum_i e_i L_i = t over nonnegative integers, L rows independent
std::optional<std::vector<std::uint32_t>> solve_exponents(const std::vector<std::vector<std::uint32_t>>& L,
                                                          const std::vector<std::uint32_t>& t) {
  const std::size_t g = L.size(), nv = t.size();
  // augmented system: nv equations, g unknowns
  std::vector<std::vector<Rat>> a(nv, std::vector<Rat>(g + 1));
  for (std::size_t r = 0; r < nv; ++r) {
    for (std::size_t i = 0; i < g; ++i) a[r][i] = Rat(L[i][r]);
    a[r][g] = Rat(t[r]);
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < g && row < nv; ++c) {
    std::size_t p = row;
    while (p < nv && a[p][c].numerator() == 0) ++p;
    if (p == nv) return std::nullopt;
    std::swap(a[p], a[row]);
    for (std::size_t r = 0; r < nv; ++r) {
      if (r == row || a[r][c].numerator() == 0) continue;
      Rat f = a[r][c] / a[row][c];
      for (std::size_t k = c; k <= g; ++k) a[r][k] -= f * a[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  if (pivcol.size() != g) return std::nullopt;
  for (std::size_t r = g; r < nv; ++r)
    if (a[r][g].numerator() != 0) return std::nullopt;
  std::vector<std::uint32_t> e(g);
  for (std::size_t i = 0; i < g; ++i) {
    Rat v = a[i][g] / a[i][i];
    if (v.denominator() != 1 || v.numerator() < 0) return std::nullopt;
    e[i] = static_cast<std::uint32_t>(v.numerator());
  }
  return e;
}

std::size_t rational_rank(const std::vector<std::vector<std::uint32_t>>& L, std::size_t nv) {
  std::vector<std::vector<Rat>> a;
  for (const auto& r : L) {
    std::vector<Rat> row;
    for (std::size_t j = 0; j < nv; ++j) row.push_back(Rat(r[j]));
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nv && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c].numerator() == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c].numerator() == 0) continue;
      Rat f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < nv; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::uint32_t> exps_of(const Monomial& m, int nv) {
  std::vector<std::uint32_t> e(nv);
  for (int i = 0; i < nv; ++i) e[i] = m.get(i);
  return e;
}

struct IndependentOrder {
  MonomialOrder ord;
  std::vector<std::vector<std::uint32_t>> L;
  std::vector<Elem> lead_c;
};

// an order under which the generators' lead exponents are linearly independent
std::optional<IndependentOrder> find_independent_order(const std::vector<Polynomial>& gens) {
  const int nv = gens[0].frame()->nvars;
  if (static_cast<int>(gens.size()) > nv) return std::nullopt;
  auto attempt = [&](const MonomialOrder& ord) -> std::optional<IndependentOrder> {
    IndependentOrder io{ord, {}, {}};
    for (const auto& g : gens) {
      auto lt = g.lead_term(ord);
      io.L.push_back(exps_of(lt.mono, nv));
      io.lead_c.push_back(lt.c);
    }
    if (rational_rank(io.L, nv) == gens.size()) return io;
    return std::nullopt;
  };
  if (auto r = attempt(MonomialOrder::lex())) return r;
  if (auto r = attempt(MonomialOrder::grevlex())) return r;
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> dist(1, 40);
  for (int tries = 0; tries < 600; ++tries) {
    std::vector<std::uint64_t> w(nv);
    for (auto& x : w) x = dist(rng);
    if (auto r = attempt(MonomialOrder::weighted(w))) return r;
  }
  return std::nullopt;
}

void check_gens(const Polynomial& f, const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw SolverError("express: no generators");
  for (const auto& g : gens) {
    if (g.is_zero() || !g.is_homogeneous() || g.degree() == 0)
      throw SolverError("express: generators must be nonzero homogeneous of positive degree");
    if (g.field() != f.field() || !g.frame()->same(*f.frame())) throw SolverError("express: ring mismatch");
  }
}

Expression express_homogeneous(const Polynomial& f, const std::vector<Polynomial>& gens, Expression base,
                               const ExpressOptions& opt) {
  Expression ex = std::move(base);
  const Field& F = *f.field();
  const std::size_t g = gens.size();
  if (f.is_zero()) {
    ex.found = true;
    ex.residue = f;
    return ex;
  }
  const std::uint32_t d = f.degree();
  PowerCache pc(gens);
  if (opt.allow_subduction) {
    if (auto io = find_independent_order(gens)) {
      ex.method = "subduction";
      const int nv = f.frame()->nvars;
      Polynomial h = f;
      std::map<std::vector<std::uint32_t>, Elem> acc;
      while (!h.is_zero()) {
        auto lt = h.lead_term(io->ord);
        auto e = solve_exponents(io->L, exps_of(lt.mono, nv));
        if (!e) {
          ex.found = false;
          ex.residue = h;
          ex.certificate = "lead monomial " + h.render_monomial(lt.mono) +
                           " is not a product of the generators' lead monomials, which are algebraically independent";
          return ex;
        }
        Elem lc = 1;
        for (std::size_t i = 0; i < g; ++i) lc = F.mul(lc, F.pow(io->lead_c[i], (*e)[i]));
        Elem c = F.div(lt.c, lc);
        h = h - pc.product(*e).scale(c);
        auto [it, ins] = acc.try_emplace(*e, c);
        if (!ins) it->second = F.add(it->second, c);
      }
      for (auto& [e, c] : acc)
        if (c) ex.terms.push_back({e, c});
      ex.found = true;
      ex.residue = h;
      return ex;
    }
  }
  ex.method = "linear-algebra";
  std::vector<std::uint64_t> degs;
  for (const auto& gg : gens) degs.push_back(gg.degree());
  auto comps = weighted_compositions(degs, d, opt.max_products);
  SparseEchelon ech(f.field(), true);
  std::map<std::vector<std::uint32_t>, Polynomial> memo;
  std::function<const Polynomial&(const std::vector<std::uint32_t>&)> prod =
      [&](const std::vector<std::uint32_t>& e) -> const Polynomial& {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    std::size_t j = g;
    for (std::size_t i = 0; i < g; ++i)
      if (e[i]) j = i;
    Polynomial p;
    if (j == g) {
      p = Polynomial::constant(f.field(), f.frame(), 1);
    } else {
      auto e2 = e;
      --e2[j];
      p = prod(e2) * gens[j];
    }
    return memo.emplace(e, std::move(p)).first->second;
  };
  for (std::size_t i = 0; i < comps.size(); ++i) ech.insert(prod(comps[i]).terms(), static_cast<std::uint32_t>(i));
  Combo combo;
  auto res = ech.reduce(f.terms(), &combo);
  if (!res.empty()) {
    ex.found = false;
    ex.residue = Polynomial::from_sorted(f.field(), f.frame(), res);
    std::ostringstream os;
    os << "degree " << d << ": the " << comps.size() << " generator products span a space of dimension " << ech.rank()
       << " that does not contain the target";
    ex.certificate = os.str();
    return ex;
  }
  for (auto& [id, c] : combo) ex.terms.push_back({comps[id], c});
  ex.found = true;
  ex.residue = Polynomial(f.field(), f.frame());
  return ex;
}

}  // namespace

Polynomial evaluate_expression(const Expression& e, const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw SolverError("evaluate_expression: no generators");
  PowerCache pc(gens);
  PolyAccumulator acc(gens[0].field(), gens[0].frame());
  for (const auto& t : e.terms) acc.add(pc.product(t.exps), t.c);
  return acc.take();
}

Expression express(const Polynomial& f, const std::vector<Polynomial>& gens, std::vector<std::string> names,
                   const ExpressOptions& opt) {
  check_gens(f, gens);
  Expression base;
  if (names.empty())
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("g" + std::to_string(i));
  if (names.size() != gens.size()) throw SolverError("express: names and generators differ in length");
  base.names = names;
  for (const auto& g : gens) base.degrees.push_back(g.degree());
  base.residue = Polynomial(f.field(), f.frame());

  Expression out = base;
  out.found = true;
  // homogeneous components separately
  std::vector<std::uint32_t> degs;
  for (const auto& t : f.terms()) degs.push_back(t.mono.degree());
  std::sort(degs.begin(), degs.end());
  degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
  std::map<std::vector<std::uint32_t>, Elem> acc;
  const Field& F = *f.field();
  for (std::uint32_t d : degs) {
    Polynomial comp = f.component(d);
    if (d == 0) {
      acc[std::vector<std::uint32_t>(gens.size(), 0)] = comp.terms()[0].c;
      continue;
    }
    Expression part = express_homogeneous(comp, gens, base, opt);
    out.method = part.method;
    if (!part.found) return part;
    for (auto& t : part.terms) {
      auto [it, ins] = acc.try_emplace(t.exps, t.c);
      if (!ins) it->second = F.add(it->second, t.c);
    }
  }
  for (auto& [e, c] : acc)
    if (c) out.terms.push_back({e, c});
  if (evaluate_expression(out, gens) != f) throw SolverError("express: re-evaluation disagrees with the target");
  return out;
}

Expression express_over_xi(const Polynomial& f, int k) {
  const auto& fr = f.frame();
  if (fr->kind != FrameKind::S || fr->nvars != 2 * fr->m) throw SolverError("express_over_xi needs an S frame");
  auto cat = Catalog::get(fr->m, f.field()->q());
  std::vector<Polynomial> gens;
  std::vector<std::string> names;
  for (int i = 0; i <= k; ++i) {
    gens.push_back(cat->xi(i));
    names.push_back("T" + std::to_string(i));
  }
  return express(f, gens, names);
}

// ---------------------------------------------------------- valuations, series

std::optional<std::uint32_t> r_valuation(const Polynomial& F) {
  if (F.frame()->kind != FrameKind::T) throw SolverError("valuation needs a T frame");
  if (F.is_zero()) return std::nullopt;
  return F.min_degree();
}

bool divisible_by_T0_power(const Polynomial& F, std::uint32_t k) {
  if (F.frame()->kind != FrameKind::T) throw SolverError("T0 divisibility needs a T frame");
  for (const auto& t : F.terms())
    if (t.mono.get(0) < k) return false;
  return true;
}

std::vector<std::int64_t> hilbert_block(const std::vector<std::uint64_t>& hsop_degrees,
                                        const std::vector<std::uint64_t>& basis_degrees, std::uint32_t D) {
  std::vector<std::int64_t> c(D + 1, 0);
  for (auto b : basis_degrees)
    if (b <= D) ++c[b];
  for (auto h : hsop_degrees) {
    if (h == 0) throw SolverError("hsop element of degree zero");
    for (std::uint64_t i = h; i <= D; ++i) c[i] += c[i - h];
  }
  return c;
}

std::uint64_t algebra_dimension(const std::vector<Polynomial>& gens, std::uint32_t d) {
  if (gens.empty()) return d == 0;
  std::vector<std::uint64_t> degs;
  for (const auto& g : gens) degs.push_back(g.degree());
  auto comps = weighted_compositions(degs, d, 400000);
  PowerCache pc(gens);
  SparseEchelon ech(gens[0].field());
  for (const auto& e : comps) ech.insert(pc.product(e).terms());
  return ech.rank();
}

Verdict independence_check(const std::vector<Polynomial>& gens, std::uint32_t D) {
  for (std::uint32_t d = 1; d <= D; ++d) {
    std::vector<std::uint64_t> degs;
    for (const auto& g : gens) degs.push_back(g.degree());
    auto n = weighted_compositions(degs, d, 400000).size();
    auto r = algebra_dimension(gens, d);
    if (r != n) {
      std::ostringstream os;
      os << "degree " << d << ": " << n << " products but rank " << r;
      return {false, os.str()};
    }
  }
  return {};
}

// ---------------------------------------------------------- varieties

Elem evaluate(const Polynomial& f, const std::vector<Elem>& pt, const Field& E) {
  Elem s = 0;
  const int nv = f.frame()->nvars;
  for (const auto& t : f.terms()) {
    Elem v = t.c;
    for (int i = 0; i < nv && v; ++i) {
      std::uint32_t e = t.mono.get(i);
      if (e) v = E.mul(v, E.pow(pt[i], e));
    }
    s = E.add(s, v);
  }
  return s;
}

std::vector<std::vector<Elem>> variety_scan(const std::vector<Polynomial>& polys, unsigned ext) {
  if (polys.empty()) throw SolverError("variety_scan: no polynomials");
  const Field& base = *polys[0].field();
  if (ext != 1 && !(ext == 2 && base.is_prime())) throw SolverError("variety_scan: extension needs a prime base field");
  auto E = Field::get(static_cast<std::uint32_t>(ipow(base.q(), ext)));
  const int nv = polys[0].frame()->nvars;
  const std::uint64_t Q = E->q();
  const std::uint64_t total = ipow(Q, nv);
  if (total > 20000000) throw SolverError("variety_scan: too many points");
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> pt(nv, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t x = idx;
    for (int i = 0; i < nv; ++i) {
      pt[i] = static_cast<Elem>(x % Q);
      x /= Q;
    }
    bool zero = true;
    for (const auto& p : polys)
      if (evaluate(p, pt, *E)) {
        zero = false;
        break;
      }
    if (zero) out.push_back(pt);
  }
  return out;
}

}  // namespace orthoinv
