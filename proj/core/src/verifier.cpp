#include "orthoinv/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "orthoinv/gf.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/khovanskii.hpp"
#include "orthoinv/matgroup.hpp"
#include "orthoinv/ring.hpp"
#include "orthoinv/solver.hpp"
#include "orthoinv/steenrod.hpp"

namespace orthoinv {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
    case Status::error: return "error";
  }
  return "error";
}

namespace {

struct Skip {
  std::string reason;
};

using Poly = Polynomial;

struct Ctx {
  CheckParams p;
  CheckReport& r;
  std::mt19937_64 rng;
  std::shared_ptr<Catalog> cat;
  bool failed = false;
  std::size_t cases = 0;

  Ctx(const CheckParams& params, CheckReport& rep)
      : p(params), r(rep), rng(0x5eed0000ULL + params.q * 131 + params.m), cat(Catalog::get(params.m, params.q)) {}

  int m() const { return p.m; }
  int n() const { return 2 * p.m; }
  std::uint32_t q() const { return p.q; }
  const FieldPtr& F() const { return cat->field(); }
  std::uint32_t D(std::uint32_t def) const { return p.max_degree ? p.max_degree : def; }
  void note(std::string s) { r.notes.push_back(std::move(s)); }
  bool expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      if (!failed)
        r.witness = what;
      else if (r.notes.size() < 40)
        note("also failed: " + what);
      failed = true;
    }
    return ok;
  }
  std::uint64_t rnd(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); }
};

std::string show(const Poly& f, std::size_t max_terms = 12) {
  if (f.size() <= max_terms) return f.render();
  std::vector<Poly::Term> head(f.terms().begin(), f.terms().begin() + max_terms);
  return Poly::from_sorted(f.field(), f.frame(), head).render() + " + ... (" + std::to_string(f.size()) + " terms)";
}

std::string num(std::uint64_t v) { return std::to_string(v); }

// ------------------------------------------------------------ small builders

Poly random_poly(Ctx& c, const FieldPtr& F, const FramePtr& fr, std::uint32_t deg, int nterms, int nvars = -1) {
  const int nv = nvars < 0 ? fr->nvars : nvars;
  for (;;) {
    std::vector<Poly::Term> ts;
    for (int k = 0; k < nterms; ++k) {
      Monomial mo;
      for (std::uint32_t e = 0; e < deg; ++e) {
        int v = static_cast<int>(c.rnd(0, nv - 1));
        mo.set(v, mo.get(v) + 1);
      }
      ts.push_back({mo, static_cast<Elem>(c.rnd(1, F->q() - 1))});
    }
    auto f = Poly::from_terms(F, fr, std::move(ts));
    if (!f.is_zero()) return f;
  }
}

Poly random_s(Ctx& c, std::uint32_t lo = 1, std::uint32_t hi = 3, int maxterms = 3) {
  return random_poly(c, c.F(), c.cat->frame(), static_cast<std::uint32_t>(c.rnd(lo, hi)),
                     static_cast<int>(c.rnd(1, maxterms)));
}

GroupElem random_word(Ctx& c, const std::vector<GroupElem>& gens, int len) {
  GroupElem g = GroupElem::identity(c.F(), c.m());
  for (int i = 0; i < len; ++i) g = g * gens[c.rnd(0, gens.size() - 1)];
  return g;
}

struct TB {
  FieldPtr F;
  FramePtr fr;
  TB(std::uint32_t q, int k) : F(Field::get(q)), fr(VarFrame::T(k, q)) {}
  Poly T(int j) const { return Poly::variable(F, fr, j); }
  Poly c(std::int64_t v) const { return Poly::constant(F, fr, F->from_int(v)); }
  Poly lift(const Poly& G) const {
    std::vector<Poly::Term> ts(G.terms().begin(), G.terms().end());
    return Poly::from_terms(F, fr, std::move(ts));
  }
};

std::vector<Poly> xis(Catalog& cat, int k) {
  std::vector<Poly> v;
  for (int i = 0; i <= k; ++i) v.push_back(cat.xi(i));
  return v;
}

// representation over xi_0..xi_k as a T_k polynomial, or nullopt
std::optional<Poly> over_xi(const Poly& f, int k, std::uint32_t q) {
  auto e = express_over_xi(f, k);
  if (!e.found) return std::nullopt;
  return TB(q, k).lift(e.as_T(f.field(), q));
}

std::uint32_t nu(const Poly& F) {
  auto v = r_valuation(F);
  return v ? *v : UINT32_MAX;
}

Monomial mono_of(std::initializer_list<std::pair<int, std::uint32_t>> es) {
  Monomial mo;
  for (auto [i, e] : es) mo.set(i, mo.get(i) + e);
  return mo;
}

std::vector<Poly> linear_factors(Catalog& cat) {
  std::vector<Poly> out;
  for (int j = 1; j <= cat.m(); ++j) {
    for (const auto& l : cat.orbit_y(j)) out.push_back(l);
    for (const auto& l : cat.orbit_x(j)) out.push_back(l);
  }
  return out;
}

// basis of ker(Phi: T_k -> S) in S-degree d
std::vector<Poly> phi_kernel(const std::vector<Poly>& xs, std::uint32_t q, std::uint64_t d) {
  const int k = static_cast<int>(xs.size()) - 1;
  TB tb(q, k);
  std::vector<std::uint64_t> w;
  for (int j = 0; j <= k; ++j) w.push_back(ipow(q, j) + 1);
  auto comps = weighted_compositions(w, d, 1000000);
  SparseEchelon E(tb.F, true);
  std::vector<Poly> ker;
  auto tmono = [&](const std::vector<std::uint32_t>& e) {
    Monomial mo;
    for (int j = 0; j <= k; ++j) mo.set(j, e[j]);
    return mo;
  };
  for (std::uint32_t idx = 0; idx < comps.size(); ++idx) {
    Poly img = Poly::constant(xs[0].field(), xs[0].frame(), 1);
    for (int j = 0; j <= k; ++j)
      if (comps[idx][j]) img *= xs[j].pow(comps[idx][j]);
    SparseEchelon::Vec v(img.terms().begin(), img.terms().end());
    SparseEchelon::Combo combo;
    auto res = E.reduce(v, &combo);
    if (res.empty()) {
      std::vector<Poly::Term> ts{{tmono(comps[idx]), 1}};
      for (auto [id, cc] : combo) ts.push_back({tmono(comps[id]), tb.F->neg(cc)});
      ker.push_back(Poly::from_terms(tb.F, tb.fr, std::move(ts)));
    } else {
      E.insert(std::move(v), idx);
    }
  }
  return ker;
}

std::vector<std::int64_t> invariant_series(const std::vector<GroupElem>& g, std::uint32_t D, int m, std::uint32_t q) {
  std::vector<std::int64_t> out;
  for (std::uint32_t d = 0; d <= D; ++d) out.push_back(static_cast<std::int64_t>(invariant_dimension(g, d, m, q)));
  return out;
}

std::string first_mismatch(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  for (std::size_t d = 0; d < std::min(a.size(), b.size()); ++d)
    if (a[d] != b[d]) return "degree " + num(d) + ": " + std::to_string(a[d]) + " vs " + std::to_string(b[d]);
  return "";
}

std::uint64_t prod_degrees(const std::vector<std::uint64_t>& v) {
  std::uint64_t p = 1;
  for (auto d : v) p *= d;
  return p;
}

// coefficient of t^e, t a trailing variable
Poly t_coefficient(const Poly& f, int tvar, std::uint32_t e, const FramePtr& to) {
  std::vector<Poly::Term> ts;
  for (const auto& t : f.terms())
    if (t.mono.get(tvar) == e) {
      Monomial mo = t.mono;
      mo.set(tvar, 0);
      ts.push_back({mo, t.c});
    }
  return Poly::from_terms(f.field(), to, std::move(ts));
}

// ========================================================== checks

void ck_group_orders(Ctx& c) {
  const std::uint64_t cap = 2000000;
  for (auto k : {GroupKind::sylow, GroupKind::hook, GroupKind::torus, GroupKind::weyl, GroupKind::borel,
                 GroupKind::stabilizer_x1, GroupKind::oplus}) {
    const auto& g = c.cat->gens(k);
    for (const auto& h : g) c.expect(h.preserves_form(), to_string(k) + " generator does not preserve the form");
    std::uint64_t want = expected_order(k, c.m(), c.q());
    if (want == 0) {
      c.note(to_string(k) + ": no closed-form order");
      continue;
    }
    if (want > cap) {
      c.note(to_string(k) + ": closure skipped, order " + num(want) + " over budget");
      continue;
    }
    if (g.empty()) {
      c.expect(want == 1, to_string(k) + " has no generators but order " + num(want));
      continue;
    }
    auto cl = closure(g, cap + 1);
    c.expect(cl.size() == want, to_string(k) + " closure has " + num(cl.size()) + " elements, expected " + num(want));
    if (k == GroupKind::sylow)
      for (const auto& h : cl)
        if (!c.expect(h.is_upper_unitriangular(), "Sylow element not unitriangular")) break;
    c.note(to_string(k) + " order " + num(cl.size()));
  }
}

void ck_xi_invariance(Ctx& c) {
  const auto& g = c.cat->gens(GroupKind::oplus);
  for (const auto& h : g) c.expect(h.preserves_form(), "generator does not preserve the form");
  for (int i = 0; i < c.n(); ++i)
    c.expect(is_invariant(c.cat->xi(i), g), "xi_" + num(i) + " not invariant");
  // a non-isometry moves xi_0
  std::vector<Elem> a(c.n() * c.n(), 0);
  for (int r = 0; r < c.n(); ++r) a[r * c.n() + r] = 1;
  a[0] = c.F()->primitive_root();
  if (c.q() > 3 || a[0] != 1)
    c.expect(!is_invariant(c.cat->xi(0), {GroupElem(c.F(), c.m(), a)}), "xi_0 fixed by a non-isometry");
}

void ck_variety_xi(Ctx& c) {
  const auto& gens = c.cat->gens(GroupKind::oplus);
  std::vector<unsigned> exts{1};
  if (c.F()->is_prime() && ipow(c.q(), 2 * c.n()) <= 10000000) exts.push_back(2);
  else
    c.note("F_{q^2} scan omitted (prime q and at most 10^7 points required)");
  for (unsigned ext : exts) {
    auto E = Field::get(static_cast<std::uint32_t>(ipow(c.q(), ext)));
    const std::uint64_t Q = E->q();
    // union of translates of W = span(e_1..e_m): BFS from the points of W
    std::set<std::vector<Elem>> U;
    std::vector<std::vector<Elem>> frontier;
    for (std::uint64_t idx = 0; idx < ipow(Q, c.m()); ++idx) {
      std::vector<Elem> pt(c.n(), 0);
      std::uint64_t x = idx;
      for (int i = 0; i < c.m(); ++i, x /= Q) pt[i] = static_cast<Elem>(x % Q);
      if (U.insert(pt).second) frontier.push_back(pt);
    }
    while (!frontier.empty()) {
      std::vector<std::vector<Elem>> next;
      for (const auto& pt : frontier)
        for (const auto& g : gens) {
          auto im = g.apply_point(pt, *E);
          if (U.insert(im).second) next.push_back(std::move(im));
        }
      frontier.swap(next);
    }
    for (int s = c.m() - 1; s < c.n(); ++s) {
      auto V = variety_scan(xis(*c.cat, s), ext);
      std::set<std::vector<Elem>> Vs(V.begin(), V.end());
      std::string w;
      if (Vs != U) {
        for (const auto& pt : Vs)
          if (!U.count(pt)) {
            w = "common zero outside the translates of W";
            break;
          }
        if (w.empty()) w = "translate of W not a common zero";
      }
      c.expect(Vs == U, "ext " + num(ext) + ", s=" + num(s) + ": " + w);
      c.note("ext " + num(ext) + ", s=" + num(s) + ": " + num(Vs.size()) + " points");
    }
  }
}

void ck_cartan(Ctx& c) {
  for (int k = 0; k < 500; ++k) {
    auto f = random_s(c), g = random_s(c);
    auto i = c.rnd(0, f.degree() + g.degree());
    auto v = check_cartan(f, g, i);
    if (!c.expect(v.ok, v.witness)) break;
  }
  c.note(num(c.cases) + " cases");
}

void ck_adem(Ctx& c) {
  const int y1 = c.cat->frame()->y(1), x1 = c.cat->frame()->x(1);
  for (std::uint32_t deg = 1; deg <= 6; ++deg)
    for (std::uint32_t a = 0; a <= deg; ++a) {
      auto f = Poly::monomial(c.F(), c.cat->frame(), mono_of({{y1, a}, {x1, deg - a}}));
      for (std::uint64_t j = 1; j <= 2; ++j)
        for (std::uint64_t i = 1; i < c.q() * j; ++i) {
          auto v = check_adem(i, j, f);
          c.expect(v.ok, v.witness);
        }
    }
  while (c.cases < 500) {
    auto f = random_s(c, 1, 3);
    std::uint64_t j = c.rnd(1, 3);
    std::uint64_t i = c.rnd(1, c.q() * j - 1);
    auto v = check_adem(i, j, f);
    c.expect(v.ok, v.witness);
  }
  c.note(num(c.cases) + " cases");
}

void ck_stability(Ctx& c) {
  for (int k = 0; k < 500; ++k) {
    auto f = random_s(c, 1, 4);
    auto v = check_stability(f);
    c.expect(v.ok, v.witness);
  }
  for (int k = 0; k < 100; ++k) {
    auto f = random_s(c, 1, 2, 2);
    auto fq = f.pow(c.q());
    for (std::uint64_t i = 0; i <= fq.degree(); ++i) {
      Poly want = i % c.q() ? Poly(c.F(), c.cat->frame()) : steenrod(f, i / c.q()).pow(c.q());
      c.expect(steenrod(fq, i) == want, "P^" + num(i) + "(f^q) for f = " + show(f));
    }
  }
  c.note(num(c.cases) + " cases");
}

void ck_equivariance(Ctx& c) {
  const auto& gens = c.cat->gens(GroupKind::oplus);
  for (int k = 0; k < 20; ++k) {
    auto g = random_word(c, gens, 8);
    for (int j = 0; j < 25; ++j) {
      auto f = random_s(c, 1, 3);
      auto gf = act(f, g);
      auto s1 = steenrod_series(f), s2 = steenrod_series(gf);
      bool ok = s1.size() == s2.size();
      for (std::size_t i = 0; ok && i < s1.size(); ++i) ok = act(s1[i], g) == s2[i];
      c.expect(ok, "P^i(g f) != g P^i(f) for f = " + show(f) + ", g = " + g.to_json());
    }
  }
  c.note(num(c.cases) + " cases over 20 group elements");
}

void ck_ring_axioms(Ctx& c) {
  for (int k = 0; k < 500; ++k) {
    auto f = random_s(c, 0, 3), g = random_s(c, 1, 3), h = random_s(c, 0, 3);
    bool ok = (f + g) + h == f + (g + h) && (f * g) * h == f * (g * h) && f * g == g * f &&
              f * (g + h) == f * g + f * h && (f - f).is_zero() && exact_divide(f * g, g) == f &&
              f.pow(c.q()) == frobenius(f, 1);
    std::vector<Poly> ids;
    for (int v = 0; v < c.n(); ++v) ids.push_back(c.cat->var(v));
    ok = ok && substitute(f, ids) == f;
    c.expect(ok, "ring identity fails for f = " + show(f) + ", g = " + show(g) + ", h = " + show(h));
  }
  c.note(num(c.cases) + " cases");
}

void ck_express_soundness(Ctx& c) {
  const int k = c.n() - 1;
  auto xs = xis(*c.cat, k);
  TB tb(c.q(), k);
  std::vector<std::uint64_t> w;
  for (int j = 0; j <= k; ++j) w.push_back(ipow(c.q(), j) + 1);
  const std::uint32_t Dmax = c.m() == 1 ? 12 : (c.m() == 2 ? 14 : 10);
  int positive = 0;
  while (positive < 500) {
    std::uint64_t d = c.rnd(2, Dmax);
    auto comps = weighted_compositions(w, d, 100000);
    if (comps.empty()) continue;
    Poly F(tb.F, tb.fr);
    int nt = static_cast<int>(c.rnd(1, 3));
    for (int t = 0; t < nt; ++t) {
      const auto& e = comps[c.rnd(0, comps.size() - 1)];
      Monomial mo;
      for (int j = 0; j <= k; ++j) mo.set(j, e[j]);
      F += Poly::monomial(tb.F, tb.fr, mo, static_cast<Elem>(c.rnd(1, c.q() - 1)));
    }
    if (F.is_zero()) continue;
    ++positive;
    auto f = phi_eval(F, xs);
    auto e = express(f, xs);
    bool ok = e.found && evaluate_expression(e, xs) == f && tb.lift(e.as_T(tb.F, c.q())) == F;
    c.expect(ok, "express failed to recover " + show(F));
  }
  for (int t = 0; t < 50; ++t) {
    auto f = c.cat->xi(static_cast<int>(c.rnd(0, 1))) * c.cat->y(1);
    auto e = express(f, xs);
    c.expect(!e.found && !e.certificate.empty(), "non-invariant expressed: " + show(f));
  }
  c.note(num(positive) + " round trips, 50 negative cases");
}

void ck_comst(Ctx& c) {
  const auto& cat = c.cat;
  const std::uint32_t q = c.q();
  Poly zero(c.F(), cat->frame());
  for (int i = 0; i < c.n(); ++i) {
    const Poly& x = cat->xi(i);
    std::map<std::uint64_t, Poly> want;
    if (i == 0) {
      want = {{0, x}, {1, cat->xi(1)}, {2, x.pow(q)}};
    } else if (i == 1) {
      want = {{0, x}, {1, cat->xi(0).pow(q).scale(c.F()->from_int(2))}, {q, cat->xi(2)}, {q + 1, x.pow(q)}};
    } else {
      const std::uint64_t qi = ipow(q, i);
      want = {{0, x}, {1, cat->xi(i - 1).pow(q)}, {qi, cat->xi(i + 1)}, {qi + 1, x.pow(q)}};
    }
    auto s = steenrod_series(x);
    for (std::uint64_t j = 0; j < s.size(); ++j) {
      auto it = want.find(j);
      const Poly& w = it == want.end() ? zero : it->second;
      c.expect(s[j] == w, "P^" + num(j) + "(xi_" + num(i) + ") = " + show(s[j]));
    }
    // psi
    std::map<std::uint64_t, Poly> pw;
    if (i == 0) {
      pw = {{0, x.pow(q)}, {1, -cat->xi(1)}, {2, x}};
    } else if (i == 1) {
      pw = {{0, x.pow(q)}, {1, -cat->xi(2)}, {q, -cat->xi(0).pow(q).scale(c.F()->from_int(2))}, {q + 1, x}};
    } else {
      const std::uint64_t qi = ipow(q, i);
      pw = {{0, x.pow(q)}, {1, -cat->xi(i + 1)}, {qi, -cat->xi(i - 1).pow(q)}, {qi + 1, x}};
    }
    auto ps = psi_series(x);
    for (std::uint64_t l = 0; l < ps.size(); ++l) {
      auto it = pw.find(l);
      const Poly& w = it == pw.end() ? zero : it->second;
      c.expect(ps[l] == w, "psi(xi_" + num(i) + ") coefficient of t^" + num((q - 1) * l));
    }
    // t = x_1 gives psi_1
    auto pt = psi_with_t(x);
    std::vector<Poly> img;
    for (int v = 0; v < c.n(); ++v) img.push_back(cat->var(v));
    img.push_back(cat->x(1));
    c.expect(substitute(pt, img) == psi_j(x, 1), "psi(xi_" + num(i) + ") at t = x1 differs from psi_1");
  }
}

void ck_submax(Ctx& c) {
  const std::uint32_t q = c.q();
  const Poly& x0 = c.cat->xi(0);
  const Poly& x1 = c.cat->xi(1);
  const Elem two = c.F()->from_int(2);
  for (int k = 0; k < 100; ++k) {
    auto a = random_s(c, 1, 3), b = random_s(c, 1, 3);
    const std::uint64_t i = a.degree(), j = b.degree();
    c.expect(steenrod(a * b, i + j - 1) == a.pow(q) * steenrod(b, j - 1) + b.pow(q) * steenrod(a, i - 1),
             "(a) a = " + show(a) + ", b = " + show(b));
    c.expect(steenrod(x0 * b, j + 1) == x1 * b.pow(q) + x0.pow(q) * steenrod(b, j - 1), "(b) b = " + show(b));
    c.expect(steenrod(x0 * x0 * b, j + 3) ==
                 (x0.pow(q) * x1 * b.pow(q)).scale(two) + x0.pow(2 * q) * steenrod(b, j - 1),
             "(c) b = " + show(b));
    c.expect(steenrod(x0.pow(q) * b, 2 * q + j - 1) == x0.pow(q * q) * steenrod(b, j - 1), "(d) b = " + show(b));
  }
  // a linear form divides P^i(v f)
  for (int k = 0; k < 100; ++k) {
    auto v = random_s(c, 1, 1, 3);
    auto f = random_s(c, 0, 3);
    auto s = steenrod_series(v * f);
    for (std::uint64_t i = 0; i < s.size(); ++i) {
      Poly quo;
      c.expect(try_divide(s[i], v, &quo), "linear form does not divide P^" + num(i) + "(v f), v = " + show(v));
    }
  }
}

void ck_minpoly(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m();
  const auto facs = linear_factors(cat);
  const std::uint64_t du = facs.size();
  auto orbit = orbit_linear(cat.x(1), cat.gens(GroupKind::oplus));
  const std::uint64_t want_orbit = (ipow(q, m) - 1) * (ipow(q, m - 1) + 1);
  c.expect(orbit.size() == want_orbit, "orbit of x1 has " + num(orbit.size()) + " elements");
  c.expect((q - 1) * du == want_orbit, "deg u = " + num(du));
  // psi(l) = prod_a (l - a t), so psi(u)/u = (-1)^{deg u} prod_{b != 0, l | u} (t - b l):
  // the scaled factors must be exactly the orbit of x1
  {
    std::multiset<std::string> scaled, orb;
    for (const auto& l : facs)
      for (Elem b = 1; b < q; ++b) scaled.insert(to_json(l.scale(b)));
    for (const auto& w : orbit) orb.insert(to_json(w));
    c.expect(scaled == orb, "nonzero multiples of the linear factors of u are not the orbit of x1");
    c.expect(du % 2 == 0, "deg u odd: psi(u)/u picks up a sign");
  }
  const bool full = m == 2 && q == 3;
  if (full) {
    const Poly& u = cat.u();
    c.expect(u.degree() == du, "deg u != number of linear factors");
    auto pt = psi_with_t(u);
    const auto& wide = pt.frame();
    const int tv = 2 * m;
    Poly quo;
    bool div = try_divide(pt, embed(u, wide), &quo);
    c.expect(div, "u does not divide psi(u)");
    std::vector<Poly> fs;
    Poly t = Poly::variable(c.F(), wide, tv);
    for (const auto& l : orbit) fs.push_back(t - embed(l, wide));
    c.expect(div && quo == product(fs), "psi(u)/u differs from the orbit polynomial of x1");
    for (int i = 1; i <= m; ++i) {
      const std::uint64_t e = e_index(i, m, q);
      const std::uint64_t l = du - e;
      Poly coef = t_coefficient(quo, tv, static_cast<std::uint32_t>((q - 1) * l), cat.frame());
      const Poly& d = cat.d(i);
      std::string sign = coef == d ? "+" : coef == -d ? "-" : "?";
      c.expect(sign != "?", "coefficient of t^" + num((q - 1) * l) + " is not +-d_" + num(i));
      c.expect((l % 2 == 0) == (sign == "+"), "sign of d_" + num(i) + " coefficient disagrees with (-1)^l");
      c.note("t^" + num((q - 1) * l) + " coefficient = " + sign + "d_" + num(i));
    }
  } else {
    c.note("psi(u)/u certified through the linear factors; expanded in full at (2,3) only");
  }
  // psi_1(u) = 0
  if (m == 2 && q == 3) {
    c.expect(psi_j(cat.u(), 1).is_zero(), "psi_1(u) != 0");
    c.note("psi_1(u) expanded in full");
  } else {
    int zeros = 0;
    for (const auto& l : facs)
      if (psi_j(l, 1).is_zero()) ++zeros;
    c.expect(zeros > 0, "no linear factor of u is killed by psi_1");
    c.note("psi_1(u) evaluated factor-wise: " + num(zeros) + " factor(s) map to 0");
  }
}

void ck_lex_lt(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m(), n = c.n();
  const auto& fr = *cat.frame();
  Monomial want_u;
  for (int j = 1; j <= m; ++j) {
    want_u.set(fr.y(j), static_cast<std::uint32_t>(ipow(q, n - j - 1)));
    want_u.set(fr.x(j), static_cast<std::uint32_t>(ipow(q, j - 1)));
  }
  Monomial want_d;
  want_d.set(fr.y(1), static_cast<std::uint32_t>(ipow(q, n - 1) - ipow(q, n - 2)));
  // lex is multiplicative: lt(u) is the product of the factor lead terms
  Monomial lu;
  Elem cu = 1;
  auto facs = linear_factors(cat);
  for (const auto& l : facs) {
    auto t = l.lead_term();
    lu = lu * t.mono;
    cu = c.F()->mul(cu, t.c);
  }
  c.expect(lu == want_u && cu == 1, "lt(u) from factors = " + Poly::monomial(c.F(), cat.frame(), lu, cu).render());
  // the y1^deg coefficient of d_1 is its value at e_{y1}: the elementary symmetric function
  // e_{e(1,m)} of the values l(e_{y1})^{q-1}
  const std::uint64_t e1 = e_index(1, m, q);
  std::uint64_t ones = 0;
  for (const auto& l : facs) {
    Monomial my;
    my.set(fr.y(1), 1);
    if (l.coeff(my)) ++ones;
  }
  const std::uint32_t top = binomial_mod_p(ones, e1, c.F()->p());
  c.expect(top == 1, "coefficient of y1^" + num(want_d.degree()) + " in d_1 is " + num(top));
  c.note("lt certified from the linear factors");
  if (m <= 2 && (q == 3 || c.p.heavy || m == 1)) {
    auto t = cat.u().lead_term();
    c.expect(t.mono == want_u && t.c == 1, "lt(u) = " + cat.u().render_monomial(t.mono));
    auto td = cat.d(1).lead_term();
    c.expect(td.mono == want_d && td.c == 1, "lt(d_1) = " + cat.d(1).render_monomial(td.mono));
    c.note("lt(u), lt(d_1) read off the expanded polynomials");
  }
}

void ck_hsop_variety(Ctx& c) {
  auto h = hsop(GroupKind::oplus, c.m(), c.q());
  std::vector<unsigned> exts{1};
  if (c.F()->is_prime() && ipow(c.q(), 2 * c.n()) <= 10000000) exts.push_back(2);
  for (unsigned ext : exts) {
    auto V = variety_scan(h.polys, ext);
    c.expect(V.size() == 1, "ext " + num(ext) + ": " + num(V.size()) + " common zeros");
    c.note("ext " + num(ext) + ": V(H) = {0}");
  }
  std::vector<std::uint64_t> degs;
  for (const auto& f : h.polys) degs.push_back(f.degree());
  c.expect(prod_degrees(degs) % expected_order(GroupKind::oplus, c.m(), c.q()) == 0,
           "product of hsop degrees not divisible by the group order");
}

void ck_dickson(Ctx& c) {
  auto& cat = *c.cat;
  const int m = c.m();
  std::vector<Poly> ys;
  for (int j = 1; j <= m; ++j) ys.push_back(cat.y(j));
  auto dk = dickson(ys);
  for (int i = 1; i <= m; ++i) {
    std::vector<Poly::Term> ts;
    for (const auto& t : cat.d(i).terms()) {
      bool hasx = false;
      for (int j = 1; j <= m; ++j) hasx |= t.mono.get(cat.frame()->x(j)) != 0;
      if (!hasx) ts.push_back(t);
    }
    auto red = Poly::from_terms(c.F(), cat.frame(), ts);
    auto w = dk[i - 1].pow(ipow(c.q(), m - 1));
    std::string sign = red == w ? "+" : red == -w ? "-" : "?";
    c.expect(sign != "?", "d_" + num(i) + " mod (x) is not +-Dickson^q");
    const char* expect_sign = i % 2 ? "+" : "-";
    c.note("d_" + num(i) + " = " + sign + "Dickson_" + num(i) + "^" + num(ipow(c.q(), m - 1)) + " mod (x); (-1)^(i+1) gives " +
           expect_sign + (sign == expect_sign ? "" : " (mismatch recorded)"));
  }
}

void ck_phibar(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  // (a) ker psi_1 = x_1 S
  for (int k = 0; k < 100; ++k) {
    auto f = random_s(c, 0, 3);
    c.expect(psi_j(cat.x(1) * f, 1).is_zero(), "psi_1(x1 f) != 0");
    auto p1 = psi_j(f, 1);
    c.expect(psi_j(p1, 1) == p1.pow(q), "psi_1 psi_1 != psi_1^q on " + show(f));
  }
  const int x1 = cat.frame()->x(1);
  for (std::uint32_t d = 1; d <= 3; ++d) {
    SparseEchelon E(c.F());
    std::size_t cnt = 0;
    for (const auto& mo : monomials_of_degree(c.n(), d)) {
      if (mo.get(x1)) continue;
      auto im = psi_j(Poly::monomial(c.F(), cat.frame(), mo), 1);
      ++cnt;
      c.expect(E.insert(SparseEchelon::Vec(im.terms().begin(), im.terms().end()), static_cast<std::uint32_t>(cnt)),
               "psi_1 not injective on x1-free monomials of degree " + num(d));
    }
  }
  if (c.m() < 2) return;
  // (b), (c): kernel of Phi_{n-2,m-1} from linear algebra, lifted to S_m
  auto lower = Catalog::get(c.m() - 1, q);
  const int k = c.n() - 2;
  auto xl = xis(*lower, k), xm = xis(cat, k);
  // at m=3 the first kernel element sits in degree 130
  if (c.m() > 2 && !c.p.heavy) throw Skip("kernel search at m >= 3 needs --heavy");
  const std::uint32_t Dk = c.D(c.m() == 2 ? 40 : 130);
  std::size_t found = 0;
  for (std::uint64_t d = 2; d <= Dk; d += 2) {
    for (const auto& K : phi_kernel(xl, q, d)) {
      ++found;
      auto lifted = phi_eval(K, xm);
      Poly quo;
      c.expect(try_divide(lifted, cat.u(), &quo), "u does not divide Phi(F) for F = " + show(K));
      c.expect(psi_j(lifted, 1).is_zero(), "psi_1(Phi(F)) != 0 for F = " + show(K));
    }
  }
  c.expect(found > 0, "no kernel elements found up to degree " + num(Dk));
  c.note(num(found) + " kernel basis elements up to S-degree " + num(Dk));
  // outside the kernel, psi_1 Phi is nonzero
  TB tb(q, k);
  for (int t = 0; t < 20; ++t) {
    Poly F = tb.T(static_cast<int>(c.rnd(0, k))) * tb.T(static_cast<int>(c.rnd(0, k)));
    if (!phi_eval(F, xl).is_zero()) c.expect(!psi_j(phi_eval(F, xm), 1).is_zero(), "psi_1 Phi(F) = 0 off the kernel");
  }
}

void ck_nu(Ctx& c) {
  const std::uint32_t q = c.q();
  TB tb(q, 3);
  c.expect(nu(tb.T(1).pow(q)) == q, "nu(T1^q)");
  c.expect(nu(tb.T(1).pow(q) - tb.T(2) * tb.T(1).pow((q - 1) / 2)) == (q + 1) / 2, "nu(T1^q - T2 T1^((q-1)/2))");
  for (int k = 0; k < 500; ++k) {
    auto F = random_poly(c, tb.F, tb.fr, static_cast<std::uint32_t>(c.rnd(0, 4)), static_cast<int>(c.rnd(1, 3)));
    auto H = random_poly(c, tb.F, tb.fr, static_cast<std::uint32_t>(c.rnd(0, 4)), static_cast<int>(c.rnd(1, 3)));
    // inhomogeneous sums
    auto G = F + random_poly(c, tb.F, tb.fr, static_cast<std::uint32_t>(c.rnd(0, 4)), 1);
    c.expect(nu(F * H) == nu(F) + nu(H), "nu(FH) != nu(F)+nu(H)");
    auto s = G + H;
    c.expect(s.is_zero() || nu(s) >= std::min(nu(G), nu(H)), "nu(F+H) < min");
  }
  // nu(P^i F) >= nu(F) via the formal operation, and against the S side
  auto& cat2 = *Catalog::get(2, q);
  std::vector<Poly> probes{c22(q, 1)};
  for (int i = 0; i <= 2; ++i) probes.push_back(minor_M(i, 2, q));
  for (int k = 0; k < 10; ++k)
    probes.push_back(random_poly(c, tb.F, VarFrame::T(2, q), static_cast<std::uint32_t>(c.rnd(1, 3)), 2));
  for (const auto& F : probes) {
    const std::uint32_t nf = nu(F);
    const int kF = F.frame()->m;
    auto xs = xis(cat2, kF + 1);
    std::vector<Poly> xk(xs.begin(), xs.begin() + kF + 1);
    auto f = phi_eval(F, xk);
    for (std::uint64_t i = 1; i <= std::min<std::uint64_t>(f.degree(), 40); ++i) {
      auto Pi = steenrod_formal(F, i);
      c.expect(Pi.is_zero() || nu(Pi) >= nf, "nu(P^" + num(i) + " F) < nu(F) for F = " + show(F));
      if (i <= 12) c.expect(phi_eval(Pi, xs) == steenrod(f, i), "formal P^" + num(i) + " disagrees with S side");
    }
  }
  // lead terms in the weighted order fall as nu grows
  TB t4(q, 3);
  auto ord = MonomialOrder::weighted();
  std::vector<std::uint64_t> w;
  for (int j = 0; j <= 3; ++j) w.push_back(ipow(q, j) + 1);
  std::size_t probes_n = 0;
  for (int i = 0; i <= 1; ++i)
    for (std::uint32_t a = 0; a <= 3; ++a)
      for (std::uint32_t b = 0; a + b <= 3; ++b) {
        if (a + b == 0) continue;
        Monomial target = mono_of({{i, b}, {i + 1, a}});
        const std::uint64_t sd = b * w[i] + a * w[i + 1];
        for (const auto& e : weighted_compositions(w, sd, 100000)) {
          Monomial mo;
          std::uint32_t tot = 0;
          for (int j = 0; j <= 3; ++j) mo.set(j, e[j]), tot += e[j];
          if (tot <= a + b) continue;
          ++probes_n;
          c.expect(ord.compare(*t4.fr, mo, target) < 0,
                   "weighted order: " + Poly::monomial(t4.F, t4.fr, mo).render() + " not below " +
                       Poly::monomial(t4.F, t4.fr, target).render());
        }
      }
  c.note(num(probes_n) + " weighted-order probes");
}

void ck_minor_nu(Ctx& c) {
  const std::uint32_t q = c.q();
  const int m = c.m();
  if (m == 3 && !c.p.heavy) throw Skip{"m=3 minors need --heavy"};
  std::uint64_t s = 0;
  for (int j = 0; j < m; ++j) s += ipow(q, j);
  auto M0 = minor_M(0, m, q);
  TB tn(q, 2 * m);
  for (int i = 0; i <= m; ++i) {
    auto Mi = minor_M(i, m, q);
    c.expect(nu(Mi) == s, "nu(M(" + num(i) + ")) = " + num(nu(Mi)));
    if (i == 0) continue;
    auto diff = steenrod_formal(M0, e_index(i, m, q)) - tn.lift(Mi);
    c.expect(diff.is_zero() || nu(diff) > s, "nu(P^e M(0) - M(" + num(i) + ")) = " + num(nu(diff)));
    c.note("i=" + num(i) + ": nu(P^e M(0) - M(i)) = " + (diff.is_zero() ? std::string("inf") : num(nu(diff))));
  }
}

// ---------------------------------------------------------------- m = 2

struct M2 {
  Catalog& cat;
  std::uint32_t q;
  TB t2, t3;
  explicit M2(std::uint32_t q_) : cat(*Catalog::get(2, q_)), q(q_), t2(q_, 2), t3(q_, 3) {}
  const Poly& xi(int i) { return cat.xi(i); }
  Poly u2d(int i) { return cat.u() * cat.d(i); }
};

void ck_main_a(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto u = over_xi(s.cat.u(), 2, q);
  c.expect(u.has_value(), "u not in R_2");
  auto u2T = s.t2.T(0).pow(q) * (s.t2.T(2) + c22(q, 2)) - s.t2.T(1).pow(q + 1);
  if (u) c.expect(*u == u2T, "u = " + show(*u));
  // kernel of Phi_{2,1} is u R_2
  auto lower = Catalog::get(1, q);
  auto xl = xis(*lower, 2);
  std::vector<std::uint64_t> w{2, q + 1, q * q + 1};
  const std::uint64_t du = s.cat.u().degree();
  for (std::uint64_t d = 2; d <= c.D(50); d += 2) {
    auto K = phi_kernel(xl, q, d);
    std::size_t expect_dim = d >= du ? weighted_compositions(w, d - du, 1000000).size() : 0;
    c.expect(K.size() == expect_dim, "ker Phi_{2,1} in degree " + num(d) + " has dimension " + num(K.size()));
    for (const auto& k : K) {
      Poly quo;
      c.expect(try_divide(k, u2T, &quo), "kernel element not divisible by u: " + show(k));
    }
  }
  // u d_i in R_3 and the top xi_3 part
  for (int i = 1; i <= 2; ++i) {
    c.expect(is_invariant(s.cat.d(i), s.cat.gens(GroupKind::oplus)), "d_" + num(i) + " not invariant");
    auto r = over_xi(s.u2d(i), 3, q);
    if (!c.expect(r.has_value(), "u d_" + num(i) + " not in R_3")) continue;
    auto lead = (i == 1 ? s.t3.T(0).pow(q) : s.t3.T(1).pow(q)) * s.t3.T(3);
    auto rest = *r - lead;
    c.expect(rest.degree_in(3) == 0, "u d_" + num(i) + " - (u_1 d_{" + num(i - 1) + ",1})^q xi_3 not in R_2");
  }
  // P^i(u)
  const auto series = steenrod_series(s.cat.u());
  for (std::uint64_t i = 1; i < q; ++i) c.expect(series[i].is_zero(), "P^" + num(i) + "(u) != 0");
  for (std::uint64_t i = q; i < q * q; ++i) {
    Poly quo;
    if (!c.expect(try_divide(series[i], s.cat.u(), &quo), "u does not divide P^" + num(i) + "(u)")) continue;
    c.expect(quo.is_zero() || express_over_xi(quo, 2).found, "P^" + num(i) + "(u)/u not in R_2");
  }
}

void ck_main_b(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto ord = MonomialOrder::weighted();
  std::vector<Poly> ud{*over_xi(s.cat.u(), 2, q)};
  ud[0] = s.t3.lift(ud[0]);
  for (int i = 1; i <= 2; ++i) {
    auto r = over_xi(s.u2d(i), 3, q);
    if (!c.expect(r.has_value(), "u d_" + num(i) + " not in R_3")) return;
    ud.push_back(*r);
  }
  auto& T = s.t3;
  std::vector<Poly> want{-T.T(1).pow(q + 1), -(T.T(1) * T.T(2).pow(q)), -T.T(2).pow(q + 1)};
  for (int i = 0; i <= 2; ++i) {
    auto lt = ud[i].lead_term(ord);
    c.expect(Poly::monomial(T.F, T.fr, lt.mono, lt.c) == want[i],
             "weighted lt(u d_" + num(i) + ") = " + Poly::monomial(T.F, T.fr, lt.mono, lt.c).render());
    c.expect(nu(ud[i]) == q + 1, "nu(u d_" + num(i) + ") = " + num(nu(ud[i])));
    auto delta = ud[i] - T.lift(minor_M(i, 2, q));
    c.expect(delta.is_zero() || nu(delta) > q + 1, "nu(delta_" + num(i) + ") = " + num(nu(delta)));
    c.note("nu(delta_" + num(i) + ") = " + (delta.is_zero() ? std::string("inf") : num(nu(delta))));
  }
}

void ck_main_d(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto c22S = phi_eval(c22(q, 1), xis(s.cat, 1));
  auto c32 = (s.xi(2) + c22S) * s.cat.d(1) - s.xi(1) * s.cat.d(2) - s.xi(3);
  auto r = over_xi(c32, 2, q);
  c.expect(r.has_value(), "c_{3,2} not in R_2");
  if (r) c.note("c_{3,2} has " + num(r->size()) + " terms over xi_0..xi_2");
}

void ck_main_e(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto gamma = s.xi(1).pow(q) * s.cat.d(1) - s.xi(0).pow(q) * s.cat.d(2) - s.xi(2).pow(q);
  auto r = over_xi(gamma, 2, q);
  if (!c.expect(r.has_value(), "gamma not in R_2")) return;
  c.expect(r->is_zero() || nu(*r) > q, "nu(gamma) = " + num(nu(*r)));
  c.note("nu(gamma) = " + num(nu(*r)));
}

void ck_main_f(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m(), n = c.n();
  const std::uint32_t D = c.D(m == 2 ? 20 : 10);
  const auto& G = cat.gens(GroupKind::oplus);
  auto inv = invariant_series(G, D, m, q);
  auto bb = block_basis(GroupKind::oplus, m, q);
  auto hs = hilbert_block(bb.hsop_degrees, bb.basis_degrees, D);
  c.expect(hs == inv, "block Hilbert series: " + first_mismatch(hs, inv));
  const std::uint64_t order = expected_order(GroupKind::oplus, m, q);
  c.expect(prod_degrees(bb.hsop_degrees) == order * bb.rank(),
           "rank " + num(bb.rank()) + " != prod(hsop degrees)/|G|");
  if (m > 2) return;
  // generated by H and xi_m..xi_{n-2}
  std::vector<Poly> gens;
  for (int i = 0; i <= n - 2; ++i) gens.push_back(cat.xi(i));
  for (int i = 1; i <= m; ++i) gens.push_back(cat.d(i));
  for (std::uint32_t d = 0; d <= D; ++d) {
    auto a = algebra_dimension(gens, d);
    c.expect(static_cast<std::int64_t>(a) == inv[d], "generated subalgebra in degree " + num(d) + ": " + num(a));
  }
  // complete intersection: one relation per i = 1..m-1 in degree q^i deg xi_{n-1-i}
  std::vector<std::uint64_t> gdeg, rdeg;
  for (const auto& g : gens) gdeg.push_back(g.degree());
  for (int i = 1; i <= m - 1; ++i) rdeg.push_back(ipow(q, i) * (ipow(q, n - 1 - i) + 1));
  std::vector<std::int64_t> ser(D + 1, 0);
  ser[0] = 1;
  for (auto r : rdeg)
    for (int d = D; d >= static_cast<int>(r); --d) ser[d] -= ser[d - r];
  for (auto g : gdeg)
    for (std::uint32_t d = g; d <= D; ++d) ser[d] += ser[d - g];
  c.expect(ser == inv, "complete intersection series: " + first_mismatch(ser, inv));
}

void minimal_certify(Ctx& c, const std::vector<Poly>& gens, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Poly> others;
    std::vector<std::string> on;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i && gens[j].degree() <= gens[i].degree()) {
        others.push_back(gens[j]);
        on.push_back(names[j]);
      }
    if (others.empty()) {
      c.note(names[i] + ": lowest degree, trivially needed");
      continue;
    }
    ExpressOptions opt;
    opt.allow_subduction = false;
    auto e = express(gens[i], others, on, opt);
    c.expect(!e.found, names[i] + " is expressible in the others");
    if (!e.found) c.note(names[i] + ": " + e.certificate);
  }
}

void ck_minimal_G(Ctx& c) {
  auto& cat = *c.cat;
  std::vector<Poly> g;
  std::vector<std::string> nm;
  for (int i = 0; i <= c.n() - 2; ++i) g.push_back(cat.xi(i)), nm.push_back("xi" + num(i));
  for (int i = 1; i <= c.m(); ++i) g.push_back(cat.d(i)), nm.push_back("d" + num(i));
  minimal_certify(c, g, nm);
}

void ck_sylow_minimal(Ctx& c) {
  auto& cat = *c.cat;
  std::vector<Poly> g;
  std::vector<std::string> nm;
  for (int i = 1; i <= c.m(); ++i) {
    g.push_back(cat.Ny(i)), nm.push_back("Ny" + num(i));
    g.push_back(cat.Nx(i)), nm.push_back("Nx" + num(i));
  }
  for (int i = 0; i <= c.n() - 3; ++i) g.push_back(cat.xi(i)), nm.push_back("xi" + num(i));
  minimal_certify(c, g, nm);
  const std::uint32_t D = c.D(c.m() == 2 ? 20 : 10);
  const auto& P = cat.gens(GroupKind::sylow);
  for (std::uint32_t d = 0; d <= D; ++d)
    c.expect(algebra_dimension(g, d) == invariant_dimension(P, d, c.m(), c.q()), "not generating in degree " + num(d));
}

// ---------------------------------------------------------------- hook

void ck_hook_eq(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m(), n = c.n();
  auto x1 = cat.x(1);
  auto Y = [&](int j) { return cat.y(j).pow(q) - cat.y(j) * x1.pow(q - 1); };
  auto X = [&](int j) { return cat.x(j).pow(q) - cat.x(j) * x1.pow(q - 1); };
  Poly sxy(c.F(), cat.frame());
  for (int i = 2; i <= m; ++i) sxy += X(i) * Y(i);
  auto lhs1 = cat.xi(0).pow(q) - cat.xi(1) * x1.pow(q - 1) + cat.xi(0) * x1.pow(2 * q - 2);
  c.expect(lhs1 == sxy, "equation for xi_0^q: difference " + show(lhs1 - sxy));
  c.expect(lhs1 == psi_j(cat.xi(0), 1), "psi_1(xi_0) mismatch");
  const Elem two = c.F()->from_int(2);
  for (int j = 1; j <= n - 2; ++j) {
    const std::uint64_t qj1 = ipow(q, j + 1);
    auto lhs = cat.xi(j).pow(q) - cat.xi(j + 1) * x1.pow(q - 1);
    const std::uint64_t qj = ipow(q, j);
    auto psi = psi_j(cat.xi(j), 1);
    // what the psi_1 substitution actually yields
    auto prev = cat.xi(j - 1).pow(q);
    if (j == 1) prev = prev.scale(two);
    auto derived = prev * x1.pow(qj1 - qj) - cat.xi(j) * x1.pow((qj + 1) * (q - 1)) + psi;
    c.expect(lhs == derived, "xi_" + num(j) + "^q: psi_1 expansion disagrees");
    auto rhs = cat.xi(1) * x1.pow(qj1 - 1) - (cat.xi(0) * x1.pow(qj1 + q - 2)).scale(two) + psi;
    if (lhs == rhs) continue;
    c.note("xi_" + num(j) + "^q - xi_" + num(j + 1) + "*x1^(q-1) = " +
           (j == 1 ? std::string("2*xi_0^q") : "xi_" + num(j - 1) + "^q") + "*x1^" + num(qj1 - qj) + " - xi_" + num(j) +
           "*x1^" + num((qj + 1) * (q - 1)) + " + psi_1(xi_" + num(j) + ") holds");
    c.expect(false, "stated form xi_1*x1^" + num(qj1 - 1) + " - 2*xi_0*x1^" + num(qj1 + q - 2) + " + psi_1(xi_" + num(j) +
                        ") fails; difference " + show(lhs - rhs));
  }
}

std::vector<GroupElem> hbar_gens(Catalog& cat) {
  std::vector<GroupElem> out;
  const int m = cat.m();
  const auto& fr = *cat.frame();
  for (const auto& g : hook_generators(1, m, cat.q())) {
    bool fixes = true;
    for (int v : {fr.y(m), fr.x(m)})
      for (int c = 0; c < 2 * m; ++c) fixes &= g.at(v, c) == (c == v ? 1 : 0);
    if (fixes) out.push_back(g);
  }
  return out;
}

void ck_hook_compliance(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m(), n = c.n();
  // q-1 | k implies q-1 | ||k||
  for (std::uint32_t qq : {3u, 5u, 7u, 9u, 11u, 13u})
    for (std::uint64_t k = 0; k <= 10000; k += qq - 1)
      if (!c.expect(digit_sum(k, qq) % (qq - 1) == 0, "digit sum of " + num(k) + " base " + num(qq))) break;
  // the T-operator preserves compliance on random compliant inputs
  auto wide = VarFrame::S_ext(m, {"t", "u"});
  const int tv = 2 * m, uv = 2 * m + 1, y1 = wide->y(1), x1v = wide->x(1);
  for (int k = 0; k < 60; ++k) {
    Poly f(c.F(), wide);
    const std::uint32_t K = static_cast<std::uint32_t>(c.rnd(1, q + 1));
    for (std::uint32_t e = 0; e <= K; ++e) {
      if (c.rnd(0, 2) == 0 && e != K) continue;
      // coefficient free of y1, with nu_1 >= ||e|| - 1
      Poly ce(c.F(), wide);
      for (int t = 0; t < 2; ++t) {
        Monomial mo;
        for (int s = 0; s < static_cast<int>(c.rnd(0, 2)); ++s) {
          int v = static_cast<int>(c.rnd(1, wide->nvars - 1));
          mo.set(v, mo.get(v) + 1);
        }
        ce += Poly::monomial(c.F(), wide, mo, static_cast<Elem>(c.rnd(1, q - 1)));
      }
      Monomial sh;
      sh.set(y1, e);
      const std::uint64_t ds = digit_sum(e, q);
      sh.set(x1v, static_cast<std::uint32_t>(ds > 0 ? ds - 1 : 0));
      f += ce.mul_term(sh, 1);
    }
    if (f.is_zero() || !compliance(f, q).compliant) continue;
    auto Tf = t_operator(f, uv, tv);
    c.expect(compliance(Tf, q).compliant, "T-operator broke compliance on " + show(f));
  }
  // the chain from the stabiliser norm up to N(y1)
  auto hb = hbar_gens(cat);
  auto Nbar = hb.empty() ? cat.y(1) : norm(cat.y(1), hb);
  c.expect(compliance(Nbar, q).compliant, "stabiliser norm of y1 not compliant");
  auto M = t_operator(Nbar, cat.frame()->x(m), cat.frame()->x(m));
  c.expect(compliance(M, q).compliant, "first T-step not compliant");
  const bool top = m == 2 || c.p.heavy;
  if (top) {
    auto N = t_operator(M, cat.frame()->y(m), cat.frame()->x(m));
    c.expect(N == cat.norm_of(GroupKind::hook, cat.frame()->y(1)), "T-chain does not reproduce N(y1)");
    c.expect(compliance(N, q).compliant, "N(y1) not compliant");
    auto h = cat.x(1) * N - cat.xi(n - 2);
    c.expect(compliance(h, q).strongly, "x1 N(y1) - xi_{n-2} not strongly compliant");
    // membership in Q^H[xi_0..xi_{n-3}]
    std::vector<Poly> gens{cat.x(1)};
    std::vector<std::string> nm{"x1"};
    for (int i = 2; i <= m; ++i) {
      gens.push_back(cat.y(i).pow(q) - cat.y(i) * cat.x(1).pow(q - 1)), nm.push_back("Y" + num(i));
      gens.push_back(cat.x(i).pow(q) - cat.x(i) * cat.x(1).pow(q - 1)), nm.push_back("X" + num(i));
    }
    for (int i = 0; i <= n - 3; ++i) gens.push_back(cat.xi(i)), nm.push_back("xi" + num(i));
    auto tr = subduct(h, gens);
    c.expect(tr.to_zero() && reconstructs(tr, gens), "x1 N(y1) - xi_{n-2} does not subduct to zero");
    if (m == 2) {
      auto e = express(h, gens, nm);
      c.expect(e.found, "x1 N(y1) - xi_{n-2} not expressible: " + e.certificate);
    }
  } else {
    c.note("top of the T-chain (degree " + num(ipow(q, n - 2)) + ") needs --heavy");
  }
}

void khov_common(Ctx& c, GroupKind kind, std::uint32_t D, std::uint64_t cap) {
  auto kd = khovanskii_data(kind, c.m(), c.q());
  auto v = khovanskii_verify(kd, D, cap);
  c.expect(v.counts_ok, "lead-term algebra dimensions differ: " + v.witness);
  c.expect(v.tetes_ok, "tete-a-tete does not subduct to zero: " + v.witness);
  c.note(num(v.tetes_checked.size()) + " of " + num(kd.tetes.size()) + " tete-a-tetes subducted; D = " + num(D));
}

void ck_hook_ring(Ctx& c) {
  const std::uint32_t D = c.D(c.m() == 2 ? 24 : 12);
  const std::uint64_t cap = c.p.heavy || c.m() == 2 ? UINT64_MAX : 36;
  khov_common(c, GroupKind::hook, D, cap);
  auto kd = khovanskii_data(GroupKind::hook, c.m(), c.q());
  c.expect(kd.tetes.size() == static_cast<std::size_t>(c.n() - 2), "hook relation count " + num(kd.tetes.size()));
  auto bb = block_basis(GroupKind::hook, c.m(), c.q());
  auto inv = invariant_series(c.cat->gens(GroupKind::hook), D, c.m(), c.q());
  auto hs = hilbert_block(bb.hsop_degrees, bb.basis_degrees, D);
  c.expect(hs == inv, "hook block series: " + first_mismatch(hs, inv));
  c.expect(prod_degrees(bb.hsop_degrees) == expected_order(GroupKind::hook, c.m(), c.q()) * bb.rank(),
           "hook rank mismatch");
}

// ---------------------------------------------------------------- Sylow

void ck_sylow_generation(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t D = c.D(c.m() == 2 ? 20 : 10);
  std::vector<Poly> g;
  for (int i = 1; i <= c.m(); ++i) g.push_back(cat.Ny(i)), g.push_back(cat.Nx(i));
  for (int i = 0; i <= c.n() - 3; ++i) g.push_back(cat.xi(i));
  const auto& P = cat.gens(GroupKind::sylow);
  for (const auto& h : g) c.expect(is_invariant(h, P), "generator not Sylow invariant: " + show(h));
  for (std::uint32_t d = 0; d <= D; ++d) {
    auto a = algebra_dimension(g, d), b = invariant_dimension(P, d, c.m(), c.q());
    c.expect(a == b, "degree " + num(d) + ": generated " + num(a) + ", invariants " + num(b));
  }
}

void ck_psij_lt(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const auto& fr = *cat.frame();
  for (int j = 0; j < c.m(); ++j)
    for (int i = 0; i <= 3; ++i) {
      if (ipow(q, j) * (ipow(q, i) + 1) > 300) continue;
      auto t = cat.psi_xi(j, i).lead_term();
      Monomial want = mono_of({{fr.y(j + 1), static_cast<std::uint32_t>(ipow(q, i + j))},
                               {fr.x(j + 1), static_cast<std::uint32_t>(ipow(q, j))}});
      c.expect(t.mono == want && t.c == 1, "lt(psi_" + num(j) + "(xi_" + num(i) + ")) = " + cat.xi(0).render_monomial(t.mono));
    }
}

void ck_phi_psi(Ctx& c) {
  const int m = c.m();
  auto lower = Catalog::get(m - 1, c.q());
  auto& cat = *c.cat;
  for (int k = 0; k < 40; ++k) {
    auto f = random_poly(c, c.F(), lower->frame(), static_cast<std::uint32_t>(c.rnd(1, 3)), 2);
    for (int j = 0; j + 1 < m; ++j)
      c.expect(phi_iso(psi_j(f, j)) == psi_j(sigma(f), j + 1), "phi psi_j != psi_{j+1} sigma on " + show(f));
  }
  for (int j = 0; j + 1 < m; ++j)
    for (int i = 0; i <= 2 * m - 3; ++i) {
      if (ipow(c.q(), j + 1) * (ipow(c.q(), i) + 1) > 300) continue;
      c.expect(phi_iso(psi_j(lower->xi(i), j)) == cat.psi_xi(j + 1, i), "image of psi_" + num(j) + "(xi_" + num(i) + ")");
    }
}

void ck_sylow_khovanskii(Ctx& c) {
  const std::uint32_t D = c.D(c.m() == 2 ? 24 : 12);
  const std::uint64_t cap = c.p.heavy || c.m() == 2 ? UINT64_MAX : 36;
  khov_common(c, GroupKind::sylow, D, cap);
  if (c.m() != 3) return;
  // lead monomials of the module basis at m = 3
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const auto& fr = *cat.frame();
  std::vector<Monomial> lt{cat.xi(0).lead_term().mono, cat.xi(1).lead_term().mono, cat.xi(2).lead_term().mono,
                           cat.xi(3).lead_term().mono, cat.psi_xi(1, 0).lead_term().mono,
                           cat.psi_xi(1, 1).lead_term().mono};
  std::set<std::vector<std::uint32_t>> residues;
  bool formula = true;
  for (std::uint64_t idx = 0; idx < ipow(q, 6); ++idx) {
    std::uint32_t a[6];
    std::uint64_t x = idx;
    for (int k = 0; k < 6; ++k, x /= q) a[k] = static_cast<std::uint32_t>(x % q);
    Monomial mo;
    for (int k = 0; k < 6; ++k)
      for (std::uint32_t r = 0; r < a[k]; ++r) mo = mo * lt[k];
    Monomial want;
    want.set(fr.x(1), a[0] + a[1] + a[2] + a[3]);
    want.set(fr.y(1), static_cast<std::uint32_t>(a[0] + a[1] * q + a[2] * q * q + a[3] * q * q * q));
    want.set(fr.x(2), q * (a[4] + a[5]));
    want.set(fr.y(2), q * a[4] + q * q * a[5]);
    formula &= mo == want;
    // reduce modulo the pure powers lt(N(y_j)), lt(N(x_j))
    std::vector<std::uint32_t> res;
    for (int j = 1; j <= 3; ++j) {
      res.push_back(mo.get(fr.y(j)) % static_cast<std::uint32_t>(ipow(q, 6 - j - 1)));
      res.push_back(mo.get(fr.x(j)) % static_cast<std::uint32_t>(ipow(q, j - 1)));
    }
    residues.insert(res);
  }
  c.expect(formula, "lead monomials of the module basis differ from the listed family");
  c.expect(residues.size() == ipow(q, 6), "lead monomials not free: " + num(residues.size()) + " classes");
}

void ck_sylow_block(Ctx& c) {
  const std::uint32_t D = c.D(c.m() == 2 ? 24 : 12);
  auto inv = invariant_series(c.cat->gens(GroupKind::sylow), D, c.m(), c.q());
  for (bool bhc : {false, true}) {
    auto bb = block_basis(GroupKind::sylow, c.m(), c.q(), bhc);
    auto hs = hilbert_block(bb.hsop_degrees, bb.basis_degrees, D);
    c.expect(hs == inv, std::string(bhc ? "psi basis" : "xi basis") + " series: " + first_mismatch(hs, inv));
  }
}

void ck_sylow_rank(Ctx& c) {
  const std::uint32_t q = c.q();
  const int m = c.m();
  const std::uint64_t want = ipow(q, m * (m - 1));
  for (bool bhc : {false, true}) {
    auto bb = block_basis(GroupKind::sylow, m, q, bhc);
    c.expect(bb.rank() == want, "rank " + num(bb.rank()));
    c.expect(prod_degrees(bb.hsop_degrees) == want * bb.rank(), "prod(hsop degrees) != |P| rank");
  }
  c.expect(expected_order(GroupKind::sylow, m, q) == want, "Sylow order formula");
  if (want <= 2000000) {
    auto cl = closure(c.cat->gens(GroupKind::sylow), want + 1);
    c.expect(cl.size() == want, "Sylow closure " + num(cl.size()));
  }
  c.note("rank " + num(want));
}

// ---------------------------------------------------------------- Borel, Reynolds

void ck_borel(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m();
  const std::uint32_t D = c.D(m == 2 ? 24 : 12);
  const auto& B = cat.gens(GroupKind::borel);
  // each generator scales N(y_i) and N(x_i); nonzero scalars have order dividing q-1
  auto scalar = [&](const Poly& f, const GroupElem& g) -> std::optional<Elem> {
    auto h = act(f, g);
    auto a = f.lead_term(), b = h.lead_term();
    if (a.mono != b.mono) return std::nullopt;
    Elem s = c.F()->div(b.c, a.c);
    if (h != f.scale(s)) return std::nullopt;
    return s;
  };
  for (int i = 1; i <= m; ++i)
    for (const auto& g : B) {
      auto sy = scalar(cat.Ny(i), g), sx = scalar(cat.Nx(i), g);
      c.expect(sy.has_value(), "N(y" + num(i) + ") not a B-semi-invariant");
      c.expect(sx.has_value(), "N(x" + num(i) + ") not a B-semi-invariant");
      if (sy && sx)
        c.expect(c.F()->mul(*sy, *sx) == 1, "N(y" + num(i) + ")N(x" + num(i) + ") not B-invariant");
    }
  if (m == 2)
    for (int i = 1; i <= m; ++i) c.expect(is_invariant(cat.Ny(i).pow(q - 1), B), "N(y" + num(i) + ")^(q-1) not B-invariant");
  const std::uint64_t cap = c.p.heavy ? UINT64_MAX : (m == 2 ? UINT64_MAX : 36);
  khov_common(c, GroupKind::borel, D, cap);
  auto kb = khovanskii_data(GroupKind::borel, m, q), ks = khovanskii_data(GroupKind::sylow, m, q);
  c.expect(kb.tetes.size() - ks.tetes.size() == static_cast<std::size_t>(m), "extra relation count");
  auto bb = block_basis(GroupKind::borel, m, q);
  auto inv = invariant_series(B, D, m, q);
  auto hs = hilbert_block(bb.hsop_degrees, bb.basis_degrees, D);
  c.expect(hs == inv, "Borel block series: " + first_mismatch(hs, inv));
  c.expect(prod_degrees(bb.hsop_degrees) == expected_order(GroupKind::borel, m, q) * bb.rank(), "Borel rank mismatch");
}

Poly reynolds_Ny(Catalog& cat) { return reynolds(cat.Ny(1).pow(cat.q() - 1), cat.m(), cat.q()); }

void ck_reynolds_lt(Ctx& c) {
  auto& cat = *c.cat;
  auto R = reynolds_Ny(cat);
  Monomial want;
  want.set(cat.frame()->y(1), static_cast<std::uint32_t>((c.q() - 1) * ipow(c.q(), c.n() - 2)));
  auto t = R.lead_term();
  c.expect(t.mono == want, "lt(R) = " + R.render_monomial(t.mono));
  c.note("lead coefficient " + num(t.c));
  c.expect(is_invariant(R, cat.gens(GroupKind::oplus)), "R(N(y1)^(q-1)) not G-invariant");
}

// closure of seeds under products and P^i, degree by degree, up to D
std::vector<SparseEchelon> steenrod_closure(const std::vector<Poly>& seeds, std::uint32_t D, const FieldPtr& F,
                                            std::vector<std::vector<Poly>>& basis) {
  std::vector<SparseEchelon> E;
  basis.assign(D + 1, {});
  for (std::uint32_t d = 0; d <= D; ++d) E.emplace_back(F);
  auto add = [&](const Poly& f, std::uint32_t d) {
    if (f.is_zero()) return;
    if (E[d].insert(SparseEchelon::Vec(f.terms().begin(), f.terms().end()))) basis[d].push_back(f);
  };
  const auto& fr = seeds[0].frame();
  add(Poly::constant(F, fr, 1), 0);
  const std::uint32_t q = F->q();
  for (std::uint32_t d = 1; d <= D; ++d) {
    for (const auto& s : seeds)
      if (s.degree() == d) add(s, d);
    for (std::uint32_t a = 1; 2 * a <= d; ++a)
      for (const auto& f : basis[a])
        for (const auto& g : basis[d - a]) add(f * g, d);
    for (std::uint32_t i = 1; (q - 1) * i < d; ++i)
      for (const auto& f : basis[d - (q - 1) * i]) add(steenrod(f, i), d);
  }
  return E;
}

bool in_span(const SparseEchelon& E, const Poly& f) {
  return E.reduce(SparseEchelon::Vec(f.terms().begin(), f.terms().end())).empty();
}

void ck_reynolds_d1(Ctx& c) {
  auto& cat = *c.cat;
  auto R = reynolds_Ny(cat);
  auto diff = R - cat.d(1);
  auto e = express_over_xi(diff, c.n() - 2);
  c.expect(e.found, "R(N(y1)^(q-1)) - d_1 not in R_{n-2}: " + e.certificate);
  std::vector<std::vector<Poly>> basis;
  const std::uint32_t D = static_cast<std::uint32_t>(cat.d(c.m()).degree());
  auto E = steenrod_closure({cat.xi(0), R}, D, c.F(), basis);
  for (int i = 1; i <= c.m(); ++i)
    c.expect(in_span(E[cat.d(i).degree()], cat.d(i)), "d_" + num(i) + " not in the closure of {xi_0, R}");
}

void ck_steenrod_generation(Ctx& c) {
  auto& cat = *c.cat;
  const std::uint32_t q = c.q();
  const int m = c.m();
  const std::uint32_t D = static_cast<std::uint32_t>(cat.d(m).degree());
  std::vector<std::vector<Poly>> basis;
  auto E = steenrod_closure({cat.xi(0), cat.d(1)}, D, c.F(), basis);
  for (int i = 1; i <= m; ++i)
    c.expect(in_span(E[cat.d(i).degree()], cat.d(i)), "d_" + num(i) + " not in the closure");
  for (int i = 0; i < m; ++i)
    if (cat.xi(i).degree() <= D) c.expect(in_span(E[cat.xi(i).degree()], cat.xi(i)), "xi_" + num(i) + " not in the closure");
  std::size_t dims = 0;
  for (const auto& b : basis) dims += b.size();
  c.note("closure spans " + num(dims) + " dimensions up to degree " + num(D));
  // the single operation carrying d_{i-1} to d_i modulo lower generators
  for (int i = 2; i <= m; ++i) {
    const std::uint64_t gap = cat.d(i).degree() - cat.d(i - 1).degree();
    if (gap % (q - 1)) continue;
    const std::uint64_t k = gap / (q - 1);
    auto f = steenrod(cat.d(i - 1), k);
    std::vector<Poly> gens;
    std::vector<std::string> nm;
    for (int j = 0; j < m; ++j) gens.push_back(cat.xi(j)), nm.push_back("xi" + num(j));
    for (int j = 1; j <= i; ++j) gens.push_back(cat.d(j)), nm.push_back("d" + num(j));
    auto ex = express(f, gens, nm);
    if (!c.expect(ex.found, "P^" + num(k) + "(d_" + num(i - 1) + ") not in the expected algebra")) continue;
    Elem coef = 0;
    for (const auto& t : ex.terms) {
      bool lin = t.exps.back() == 1;
      for (std::size_t j = 0; j + 1 < t.exps.size(); ++j) lin &= t.exps[j] == 0;
      if (lin) coef = t.c;
    }
    c.expect(coef != 0, "d_" + num(i) + " does not appear linearly in P^" + num(k) + "(d_" + num(i - 1) + ")");
    c.note("P^" + num(k) + "(d_" + num(i - 1) + ") = " + (coef == 1 ? "+" : coef == c.F()->neg(1) ? "-" : "c*") + "d_" +
           num(i) + " + (lower)");
  }
}

// ---------------------------------------------------------------- m = 2 identities

void ck_u2_identity(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto F = s.t2.T(0).pow(q) * (s.t2.T(2) + c22(q, 2)) - s.t2.T(1).pow(q + 1);
  auto rhs = phi_eval(F, xis(s.cat, 2));
  c.expect(rhs == s.cat.u(), "u != xi_0^q (xi_2 + c22) - xi_1^(q+1); difference " + show(rhs - s.cat.u()));
}

Poly c22_factorial(std::uint32_t q) {
  auto F = Field::get(q);
  TB tb(q, 1);
  const std::uint32_t p = F->p();
  auto fact = [](std::uint64_t k) {
    unsigned __int128 r = 1;
    for (std::uint64_t i = 2; i <= k; ++i) r *= i;
    return r;
  };
  Poly out(tb.F, tb.fr);
  for (std::uint32_t j = 0; 2 * j <= q - 1; ++j) {
    // (q-1)(q-2-j)!/(j!(q-1-2j)!) is an integer; q-1 = -1 mod p
    unsigned __int128 num_ = fact(q - 2 - j) * (q - 1), den = fact(j) * fact(q - 1 - 2 * j);
    std::int64_t I = static_cast<std::int64_t>((num_ / den) % p);
    // coefficient of the term: -(-1)^j * (ratio), ratio = -I mod p
    std::int64_t coef = (j % 2 ? -1 : 1) * I;
    Monomial mo;
    mo.set(0, j * (q + 1) + 1);
    mo.set(1, q - 1 - 2 * j);
    out += Poly::monomial(tb.F, tb.fr, mo, F->from_int(coef));
  }
  return out;
}

void ck_m2_c22(Ctx& c) {
  ck_u2_identity(c);
  const std::uint32_t q = c.q();
  c.expect(c22(q, 1) == c22_factorial(q), "Catalan form of c22 differs from the factorial form");
  for (std::uint32_t qq : {3u, 5u, 7u, 9u, 11u, 13u})
    for (std::uint32_t j = 0; 2 * j <= qq - 1; ++j) {
      auto cc = catalan_congruence(qq, j);
      c.expect(cc.holds, "Catalan congruence q=" + num(qq) + ", j=" + num(j));
    }
  // c22 lies in R_1 by construction; u - xi_0^q xi_2 + xi_1^(q+1) = xi_0^q c22
  M2 s(q);
  auto lhs = s.cat.u() - s.xi(0).pow(q) * s.xi(2) + s.xi(1).pow(q + 1);
  c.expect(lhs == s.xi(0).pow(q) * phi_eval(c22(q, 1), xis(s.cat, 1)), "xi_0^q c22 mismatch");
}

void ck_m2_c22_steenrod(Ctx& c) {
  const std::uint32_t q = c.q();
  auto C = c22(q, 1);
  TB t2(q, 2), t3(q, 3);
  auto& cat = *Catalog::get(2, q);
  auto xs2 = xis(cat, 2);
  auto cS = phi_eval(C, xis(cat, 1));
  auto P = [&](std::uint64_t i) { return steenrod_formal(C, i); };
  c.expect(P(1) == t2.T(1).pow(q), "P^1 c22 = " + show(P(1)));
  for (std::uint64_t i = 2; i < q; ++i) c.expect(P(i).is_zero(), "P^" + num(i) + " c22 != 0");
  auto Pq2 = t3.lift(steenrod_formal(t2.lift(C), q * q));
  auto want_c = t3.T(1).pow(q * q - q + 1) - t3.T(0).pow(q) * t3.T(1).pow(q * q - 2 * q) * t3.T(2);
  c.expect(divisible_by_T0_power(Pq2 - want_c, q * q), "P^{q^2} c22 congruence: " + show(Pq2 - want_c));
  auto Pqq = t3.lift(steenrod_formal(t2.lift(C), q * q - q));
  auto want_d = t3.T(0) * t3.T(2).pow(q - 1) - t3.T(0).pow(q) * t3.T(1).pow(q * q - 2 * q + 1) +
                t3.T(0).pow(2 * q) * t3.T(1).pow(q * q - 3 * q) * t3.T(2);
  c.expect(divisible_by_T0_power(Pqq - want_d, q * q), "P^{q^2-q} c22 congruence: " + show(Pqq - want_d));
  // formal and S-side operations agree
  auto xs3 = xis(cat, 3);
  for (std::uint64_t i : {std::uint64_t{1}, std::uint64_t{q * q - q}, std::uint64_t{q * q}}) {
    auto f = steenrod_formal(t2.lift(C), i);
    c.expect(phi_eval(f, xs3) == steenrod(cS, i), "formal P^" + num(i) + " c22 disagrees with S side");
  }
}

void ck_m2_u2d(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto& T = s.t3;
  auto r1 = over_xi(s.u2d(1), 3, q);
  auto r2 = over_xi(s.u2d(2), 3, q);
  if (!c.expect(r1 && r2, "u d_i not in R_3")) return;
  auto w1 = T.T(0).pow(q) * T.T(3) - T.T(1) * T.T(2).pow(q) + T.T(0) * T.T(1).pow(q) * T.T(2).pow(q - 1);
  auto w2 = T.T(1).pow(q) * T.T(3) - T.T(2).pow(q + 1) - T.T(0).pow(q) * T.T(1).pow(q * q - q) * T.T(2);
  c.expect(divisible_by_T0_power(*r1 - w1, q * q), "u d_1 congruence: " + show(*r1 - w1));
  c.expect(divisible_by_T0_power(*r2 - w2, q * q), "u d_2 congruence: " + show(*r2 - w2));
  c.expect((*r1 - T.T(0).pow(q) * T.T(3)).degree_in(3) == 0, "u d_1 - xi_0^q xi_3 not in R_2");
  c.expect((*r2 - T.T(1).pow(q) * T.T(3)).degree_in(3) == 0, "u d_2 - xi_1^q xi_3 not in R_2");
  c.note("u d_1 = " + show(*r1, 8));
  c.note("u d_2 = " + show(*r2, 8));
}

void ck_m2_u2_st(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  const auto& u = s.cat.u();
  auto series = steenrod_series(u);
  for (std::uint64_t i = 1; i < q; ++i) c.expect(series[i].is_zero(), "P^" + num(i) + "(u) != 0");
  const std::set<std::uint64_t> excluded{q * q, q * q + q, q * q + 2 * q};
  for (std::uint64_t i = q; i < series.size(); ++i) {
    if (excluded.count(i)) continue;
    Poly quo;
    if (!c.expect(try_divide(series[i], u, &quo), "u does not divide P^" + num(i) + "(u)")) continue;
    c.expect(quo.is_zero() || express_over_xi(quo, 2).found, "P^" + num(i) + "(u)/u not in R_2");
  }
  c.expect(series[q * q] == s.u2d(1), "P^{q^2}(u) != u d_1");
  c.expect(series[q * q + q] == s.u2d(2), "P^{q^2+q}(u) != u d_2");
}

void ck_m2_u2d_st(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  const auto& u = s.cat.u();
  // beyond q^2 + q the targets reach degree 400+ and cost minutes per i at q = 5
  const std::uint64_t top = q == 3 ? q * q * q : c.p.heavy ? q * q + q : q * q;
  if (top < q * q * q) c.note("i limited to < " + num(top) + (c.p.heavy ? "" : " without --heavy"));
  std::size_t n = 0;
  for (int j = 1; j <= 2; ++j) {
    auto series = steenrod_series(s.cat.d(j));
    for (std::uint64_t i = 1; i < q; ++i)
      c.expect(express_over_xi(series[i], 2).found, "P^" + num(i) + "(d_" + num(j) + ") not in R_2");
    for (std::uint64_t i = 1; i < std::min<std::uint64_t>(top, series.size()); ++i) {
      if (series[i].is_zero()) continue;
      const std::uint64_t l = i / (q * q);
      auto g = u.pow(l + 1) * series[i];
      auto r = over_xi(g, 3, q);
      ++n;
      if (!c.expect(r.has_value(), "u^" + num(l + 1) + " P^" + num(i) + "(d_" + num(j) + ") not in R_3")) continue;
      c.expect(r->degree_in(3) <= l + 1, "xi_3-degree of u^" + num(l + 1) + " P^" + num(i) + "(d_" + num(j) + ")");
      if (l == q - 1 && i % q) c.expect(r->degree_in(3) <= q - 1, "xi_3-degree bound q-1 at i=" + num(i));
    }
  }
  c.note(num(n) + " nonzero P^i(d_j) expressed");
}

void ck_m2_c32(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto c22S = phi_eval(c22(q, 1), xis(s.cat, 1));
  auto c32 = (s.xi(2) + c22S) * s.cat.d(1) - s.xi(1) * s.cat.d(2) - s.xi(3);
  auto r = over_xi(c32, 2, q);
  if (!c.expect(r.has_value(), "c_{3,2} not in R_2")) return;
  auto& T = s.t2;
  auto w = T.T(0).pow(2) * T.T(1).pow(q - 2) * T.T(2).pow(q - 1) + T.T(0).pow(q) * T.T(1).pow(q * q - 2 * q) * T.T(2);
  c.expect(divisible_by_T0_power(-*r - w, q + 2), "-c_{3,2} congruence: " + show(-*r - w));
  // consequences used along the way
  auto p1d1 = over_xi(steenrod(s.cat.d(1), 1), 2, q);
  auto p1d2 = over_xi(steenrod(s.cat.d(2), 1), 2, q);
  if (c.expect(p1d1 && p1d2, "P^1 d_i not in R_2")) {
    auto w1 = -T.T(2).pow(q - 1) + T.T(0) * T.T(1).pow(q - 1) * T.T(2).pow(q - 2);
    auto w2 = T.T(0).pow(q) * T.T(1).pow(q * q - q - 1);
    c.expect(divisible_by_T0_power(*p1d1 - w1, q + 1), "P^1 d_1 congruence: " + show(*p1d1 - w1));
    c.expect(divisible_by_T0_power(*p1d2 - w2, q + 1), "P^1 d_2 congruence: " + show(*p1d2 - w2));
  }
  c.expect(over_xi(s.xi(1).pow(q) * s.cat.d(1) - s.xi(0).pow(q) * s.cat.d(2), 2, q).has_value(),
           "xi_1^q d_1 - xi_0^q d_2 not in R_2");
}

void ck_m2_part_e(Ctx& c) {
  M2 s(c.q());
  const std::uint32_t q = c.q();
  auto num_ = s.xi(2).pow(q) - s.xi(1).pow(q) * s.cat.d(1) + s.xi(0).pow(q) * s.cat.d(2) -
              s.xi(0) * s.xi(1).pow(q - 1) * s.xi(2).pow(q - 1);
  auto r = over_xi(num_, 2, q);
  if (!c.expect(r.has_value(), "numerator not in R_2")) return;
  c.expect(divisible_by_T0_power(*r, q + 1), "numerator not divisible by xi_0^(q+1): " + show(*r));
  auto& T = s.t2;
  Poly r21;
  c.expect(try_divide(*r, T.T(0).pow(q + 1), &r21), "xi_0^(q+1) division");
  auto gamma = -(T.T(0).pow(q + 1) * r21) - T.T(0) * T.T(1).pow(q - 1) * T.T(2).pow(q - 1);
  c.expect(nu(gamma) > q + 1, "nu(gamma) = " + num(nu(gamma)));
  auto back = s.xi(1).pow(q) * s.cat.d(1) - s.xi(0).pow(q) * s.cat.d(2) - phi_eval(gamma, xis(s.cat, 2));
  c.expect(back == s.xi(2).pow(q), "xi_2^q reconstruction");
  c.note("r_{2,1} has " + num(r21.size()) + " terms; nu(gamma) = " + num(nu(gamma)));
}

// ---------------------------------------------------------------- registry

struct Entry {
  CheckInfo info;
  void (*fn)(Ctx&);
  int force_m;  // 0: use params
  int min_m;
  bool q3_default;  // q > 3 only with --heavy
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{"group_orders", "orders of the generated groups", true}, ck_group_orders, 0, 1, false},
      {{"xi_invariance", "invariance of the quadratic form and its Steenrod images", true}, ck_xi_invariance, 0, 1, false},
      {{"variety_xi", "zero set of xi_0..xi_s is the union of translates of a maximal isotropic subspace", true},
       ck_variety_xi, 0, 1, false},
      {{"steenrod_cartan", "Cartan formula", true}, ck_cartan, 0, 1, false},
      {{"steenrod_adem", "Adem relations", true}, ck_adem, 0, 1, false},
      {{"steenrod_stability", "instability and Frobenius rules", true}, ck_stability, 0, 1, false},
      {{"steenrod_equivariance", "Steenrod operations commute with the group action", true}, ck_equivariance, 0, 1,
       false},
      {{"ring_axioms", "polynomial ring identities", true}, ck_ring_axioms, 0, 1, false},
      {{"express_soundness", "round trip through express over xi", true}, ck_express_soundness, 0, 1, false},
      {{"comst_formulas", "total Steenrod operation and psi on xi_i", true}, ck_comst, 0, 1, false},
      {{"submax_formulas", "top Steenrod operations on products", true}, ck_submax, 0, 1, false},
      {{"minpoly", "psi(u)/u is the orbit polynomial of x_1", true}, ck_minpoly, 0, 2, false},
      {{"lex_lt", "lex lead terms of u and d_1", true}, ck_lex_lt, 0, 1, false},
      {{"hsop_variety", "H cuts out the origin", true}, ck_hsop_variety, 2, 2, true},
      {{"dickson_reduction", "d_i modulo the x-variables is a Dickson power", true}, ck_dickson, 2, 2, true},
      {{"phibar_kernel_div", "kernel of the restriction map and divisibility by u", true}, ck_phibar, 0, 1, false},
      {{"nu_props", "valuation properties", true}, ck_nu, 0, 1, false},
      {{"minor_nu", "valuation of the minors and their Steenrod images", true}, ck_minor_nu, 0, 2, false},
      {{"main_a", "u in R_{n-2}; u d_i top xi part; Steenrod images of u", true}, ck_main_a, 2, 2, true},
      {{"main_b", "weighted lead terms and valuations of u d_i", true}, ck_main_b, 2, 2, true},
      {{"main_d", "xi_{n-1} relation through the d_i", true}, ck_main_d, 2, 2, true},
      {{"main_e", "xi_2^q relation with high-valuation error", true}, ck_main_e, 2, 2, true},
      {{"main_f", "generation, free module structure and Hilbert series of the invariant ring", true}, ck_main_f, 0,
       2, false},
      {{"minimal_generation_G", "minimal generating set of the invariant ring", true}, ck_minimal_G, 2, 2, true},
      {{"hook_eq1_eq2", "xi_j^q identities through psi_1", true}, ck_hook_eq, 0, 2, false},
      {{"hook_compliance", "compliance and the hook norm relation", true}, ck_hook_compliance, 0, 2, false},
      {{"hook_ring", "hook invariants: Khovanskii basis and block series", true}, ck_hook_ring, 0, 2, false},
      {{"sylow_generation", "Sylow invariants generated by orbit products and xi_i", true}, ck_sylow_generation, 0, 2,
       false},
      {{"psij_lt", "lex lead terms of psi_j(xi_i)", true}, ck_psij_lt, 0, 1, false},
      {{"phi_psi_commute", "shift map intertwines psi_j and psi_{j+1}", true}, ck_phi_psi, 0, 2, false},
      {{"sylow_khovanskii", "Sylow Khovanskii basis", true}, ck_sylow_khovanskii, 0, 2, false},
      {{"sylow_block", "Sylow block basis Hilbert series", true}, ck_sylow_block, 0, 2, false},
      {{"sylow_hilbert", "Sylow block basis Hilbert series", false}, ck_sylow_block, 0, 2, false},
      {{"sylow_rank", "Sylow module rank", true}, ck_sylow_rank, 0, 2, false},
      {{"sylow_minimal", "minimal generators of the Sylow invariants", true}, ck_sylow_minimal, 2, 2, true},
      {{"borel_ring", "Borel invariants: Khovanskii basis and block series", true}, ck_borel, 0, 2, false},
      {{"reynolds_lt", "lead term of the transfer of N(y_1)^(q-1)", true}, ck_reynolds_lt, 2, 2, true},
      {{"m2_c22", "u as a polynomial in xi_0, xi_1, xi_2 with Catalan coefficients", true}, ck_m2_c22, 2, 2, false},
      {{"u2_identity", "u as a polynomial in xi_0, xi_1, xi_2", false}, ck_u2_identity, 2, 2, false},
      {{"m2_c22_steenrod", "Steenrod images of c22", true}, ck_m2_c22_steenrod, 2, 2, false},
      {{"m2_u2d", "u d_i modulo a power of xi_0", true}, ck_m2_u2d, 2, 2, true},
      {{"m2_u2_st", "Steenrod images of u", true}, ck_m2_u2_st, 2, 2, true},
      {{"m2_u2d_st", "Steenrod images of d_i", true}, ck_m2_u2d_st, 2, 2, true},
      {{"m2_c32", "c_{3,2} and its congruence", true}, ck_m2_c32, 2, 2, true},
      {{"m2_part_e", "xi_0^(q+1) r_{2,1} relation", true}, ck_m2_part_e, 2, 2, true},
      {{"steenrod_generation", "d_m from xi_0 and d_1 under Steenrod operations", true}, ck_steenrod_generation, 2, 2,
       true},
      {{"reynolds_d1", "transfer of N(y_1)^(q-1) against d_1", true}, ck_reynolds_d1, 2, 2, true},
  };
  return e;
}

const Entry* find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return &e;
  return nullptr;
}

}  // namespace

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> r = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return r;
}

void validate_params(const CheckParams& p) {
  if (p.q % 2 == 0) throw UsageError("q must be odd");
  try {
    prime_power(p.q);
  } catch (const std::exception&) {
    throw UsageError("q must be an odd prime power");
  }
  if (p.q > 243) throw UsageError("q too large");
  if (p.m < 1 || p.m > kMaxVars / 2) throw UsageError("m must be between 1 and " + std::to_string(kMaxVars / 2));
}

CheckReport run_check(const std::string& name, const CheckParams& params) {
  validate_params(params);
  const Entry* e = find_entry(name);
  if (!e) throw UsageError("unknown check: " + name);
  CheckReport rep;
  rep.name = name;
  rep.anchor = e->info.anchor;
  rep.params = params;
  auto t0 = std::chrono::steady_clock::now();
  CheckParams p = params;
  if (e->force_m && p.m != e->force_m) {
    rep.notes.push_back("run at m=" + std::to_string(e->force_m) + " (requested m=" + std::to_string(p.m) + ")");
    p.m = e->force_m;
  }
  rep.params = p;
  try {
    if (p.m < e->min_m) throw Skip{"needs m >= " + std::to_string(e->min_m)};
    if (e->q3_default && p.q > 3 && !p.heavy) throw Skip{"q > 3 needs --heavy"};
    Ctx c(p, rep);
    e->fn(c);
    rep.status = c.failed ? Status::fail : Status::pass;
  } catch (const Skip& s) {
    rep.status = Status::skip;
    rep.witness = s.reason;
  } catch (const std::exception& ex) {
    rep.status = Status::error;
    rep.witness = ex.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<std::string> select_checks(const std::string& filter, bool heavy) {
  std::vector<std::string> out;
  auto push = [&](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  std::stringstream ss(filter.empty() ? std::string("all") : filter);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (tok.empty()) continue;
    if (tok == "all" || tok == "default" || tok == "heavy") {
      for (const auto& e : entries())
        if (e.info.default_tier || (tok == "heavy" && heavy)) push(e.info.name);
      continue;
    }
    std::string prefix;
    if (tok.back() == '*') prefix = tok.substr(0, tok.size() - 1);
    else if (tok.back() == '_') prefix = tok;
    if (!prefix.empty()) {
      std::size_t before = out.size();
      for (const auto& e : entries())
        if (e.info.name.rfind(prefix, 0) == 0 && e.info.default_tier) push(e.info.name);
      if (out.size() == before) throw UsageError("no check matches " + tok);
      continue;
    }
    if (!find_entry(tok)) throw UsageError("unknown check: " + tok);
    push(tok);
  }
  if (out.empty()) throw UsageError("empty check selection");
  return out;
}

std::vector<CheckReport> run_suite(const std::string& filter, const CheckParams& params,
                                   const std::function<void(const CheckReport&)>& on_report) {
  validate_params(params);
  std::vector<CheckReport> out;
  for (const auto& name : select_checks(filter, params.heavy)) {
    out.push_back(run_check(name, params));
    if (on_report) on_report(out.back());
  }
  return out;
}

std::string report_json(const std::vector<CheckReport>& reports, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"anchor", r.anchor},
                   {"params", {{"q", r.params.q}, {"m", r.params.m}, {"D", r.params.max_degree}, {"heavy", r.params.heavy}}},
                   {"status", to_string(r.status)},
                   {"witness", r.witness},
                   {"notes", r.notes},
                   {"seconds", r.seconds}});
  }
  return arr.dump(indent);
}

int exit_code(const std::vector<CheckReport>& reports) {
  int code = 0;
  for (const auto& r : reports) {
    if (r.status == Status::error) return 2;
    if (r.status == Status::fail) code = 1;
  }
  return code;
}

}  // namespace orthoinv
