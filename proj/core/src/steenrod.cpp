#include "orthoinv/steenrod.hpp"

#include <algorithm>
#include <sstream>

namespace orthoinv {

namespace {

struct Choice {
  std::uint32_t k;
  Elem c;  // C(a, k) mod p
};

// the k <= a with C(a,k) nonzero mod p (Lucas: digitwise k <= a)
std::vector<Choice> lucas_choices(std::uint32_t a, std::uint32_t p) {
  std::vector<std::uint32_t> digits;
  for (std::uint32_t x = a; x; x /= p) digits.push_back(x % p);
  std::vector<Choice> out{{0, 1}};
  std::uint32_t place = 1;
  for (std::uint32_t d : digits) {
    std::vector<Choice> next;
    for (const auto& ch : out)
      for (std::uint32_t e = 0; e <= d; ++e) {
        std::uint32_t b = binomial_mod_p(d, e, p);
        next.push_back({ch.k + e * place, static_cast<Elem>((ch.c * b) % p)});
      }
    out = std::move(next);
    place *= p;
  }
  std::sort(out.begin(), out.end(), [](const Choice& x, const Choice& y) { return x.k < y.k; });
  return out;
}

struct TermWalker {
  const Field& F;
  int nv;
  std::vector<std::uint32_t> a;
  std::vector<std::vector<Choice>> choices;
  std::vector<std::uint64_t> suffix_max;

  TermWalker(const Field& f, const Monomial& mono, int nvars) : F(f), nv(nvars), a(nvars), choices(nvars), suffix_max(nvars + 1, 0) {
    for (int v = 0; v < nv; ++v) {
      a[v] = mono.get(v);
      choices[v] = lucas_choices(a[v], F.p());
    }
    for (int v = nv - 1; v >= 0; --v) suffix_max[v] = suffix_max[v + 1] + choices[v].back().k;
  }

  // visit all choice vectors; target < 0 means any total
  template <typename Fn>
  void walk(int v, std::int64_t remaining, std::vector<std::uint32_t>& ks, Elem c, Fn&& fn) {
    if (v == nv) {
      if (remaining <= 0) fn(ks, c);
      return;
    }
    for (const auto& ch : choices[v]) {
      if (remaining >= 0) {
        if (ch.k > static_cast<std::uint64_t>(remaining)) break;
        if (remaining - static_cast<std::int64_t>(ch.k) > static_cast<std::int64_t>(suffix_max[v + 1])) continue;
      }
      ks[v] = ch.k;
      walk(v + 1, remaining >= 0 ? remaining - ch.k : -1, ks, F.mul(c, ch.c), fn);
    }
  }
};

}  // namespace

std::vector<Polynomial> steenrod_series(const Polynomial& f) {
  const Field& F = *f.field();
  const std::uint32_t q = F.q();
  const int nv = f.frame()->nvars;
  std::uint32_t d = f.degree();
  std::vector<PolyAccumulator> acc;
  acc.reserve(d + 1);
  for (std::uint32_t i = 0; i <= d; ++i) acc.emplace_back(f.field(), f.frame());
  for (const auto& t : f.terms()) {
    TermWalker w(F, t.mono, nv);
    std::vector<std::uint32_t> ks(nv, 0);
    w.walk(0, -1, ks, t.c, [&](const std::vector<std::uint32_t>& k, Elem c) {
      Monomial m;
      std::uint32_t tot = 0;
      for (int v = 0; v < nv; ++v) {
        m.set(v, w.a[v] + (q - 1) * k[v]);
        tot += k[v];
      }
      acc[tot].add(m, c);
    });
  }
  std::vector<Polynomial> out;
  out.reserve(d + 1);
  for (auto& a : acc) out.push_back(a.take());
  return out;
}

Polynomial steenrod(const Polynomial& f, std::uint64_t i) {
  const Field& F = *f.field();
  const std::uint32_t q = F.q();
  const int nv = f.frame()->nvars;
  PolyAccumulator acc(f.field(), f.frame());
  if (i > f.degree()) return acc.take();
  if (static_cast<std::uint64_t>(f.degree()) + (q - 1) * i >= 65536) throw RingError("steenrod: degree overflow");
  for (const auto& t : f.terms()) {
    if (t.mono.degree() < i) continue;
    TermWalker w(F, t.mono, nv);
    if (w.suffix_max[0] < i) continue;
    std::vector<std::uint32_t> ks(nv, 0);
    w.walk(0, static_cast<std::int64_t>(i), ks, t.c, [&](const std::vector<std::uint32_t>& k, Elem c) {
      Monomial m;
      for (int v = 0; v < nv; ++v) m.set(v, w.a[v] + (q - 1) * k[v]);
      acc.add(m, c);
    });
  }
  return acc.take();
}

std::vector<Polynomial> psi_series(const Polynomial& f) {
  const Field& F = *f.field();
  const std::uint32_t q = F.q();
  const int nv = f.frame()->nvars;
  std::uint32_t d = f.degree();
  std::vector<PolyAccumulator> acc;
  for (std::uint32_t i = 0; i <= d; ++i) acc.emplace_back(f.field(), f.frame());
  const Elem minus1 = F.neg(1);
  for (const auto& t : f.terms()) {
    TermWalker w(F, t.mono, nv);
    std::vector<std::uint32_t> ks(nv, 0);
    w.walk(0, -1, ks, t.c, [&](const std::vector<std::uint32_t>& k, Elem c) {
      Monomial m;
      std::uint32_t tot = 0;
      for (int v = 0; v < nv; ++v) {
        m.set(v, q * (w.a[v] - k[v]) + k[v]);
        tot += k[v];
      }
      acc[tot].add(m, tot % 2 ? F.mul(c, minus1) : c);
    });
  }
  std::vector<Polynomial> out;
  for (auto& a : acc) out.push_back(a.take());
  return out;
}

Polynomial psi_with_t(const Polynomial& f) {
  const auto& fr = f.frame();
  if (fr->kind != FrameKind::S || fr->nvars != 2 * fr->m) throw RingError("psi_with_t needs a plain S frame");
  auto wide = VarFrame::S_ext(fr->m, {"t"});
  const int tv = fr->nvars;
  const std::uint32_t q = f.field()->q();
  auto series = psi_series(f);
  PolyAccumulator acc(f.field(), wide);
  for (std::size_t l = 0; l < series.size(); ++l) {
    Monomial tm;
    tm.set(tv, static_cast<std::uint32_t>((q - 1) * l));
    acc.add_shifted(series[l], tm, 1);
  }
  return acc.take();
}

Polynomial embed(const Polynomial& f, const FramePtr& wider) {
  if (wider->nvars < f.frame()->nvars) throw RingError("embed: target frame is narrower");
  return Polynomial::from_sorted(f.field(), wider, f.terms());
}

std::vector<Polynomial> psi_j_images(const FieldPtr& f, const FramePtr& fr, int j) {
  if (fr->kind != FrameKind::S) throw RingError("psi_j needs an S frame");
  if (j < 0 || j > fr->m) throw RingError("psi_j: j out of range");
  const std::uint32_t q = f->q();
  std::vector<Polynomial> cur;
  for (int v = 0; v < fr->nvars; ++v) cur.push_back(Polynomial::variable(f, fr, v));
  for (int k = 1; k <= j; ++k) {
    Polynomial c = cur[fr->x(k)].pow(q - 1);
    std::vector<Polynomial> next;
    next.reserve(cur.size());
    for (const auto& p : cur) next.push_back(frobenius(p, 1) - c * p);
    cur = std::move(next);
  }
  return cur;
}

Polynomial psi_j(const Polynomial& f, int j) {
  if (j == 0) return f;
  return substitute(f, psi_j_images(f.field(), f.frame(), j));
}

Polynomial sigma(const Polynomial& f) {
  const auto& fr = f.frame();
  if (fr->kind != FrameKind::S || fr->nvars != 2 * fr->m) throw RingError("sigma needs a plain S frame");
  const int m0 = fr->m;
  auto out = VarFrame::S(m0 + 1);
  std::vector<Polynomial::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial mm;
    for (int j = 1; j <= m0; ++j) {
      mm.set(out->y(j + 1), t.mono.get(fr->y(j)));
      mm.set(out->x(j + 1), t.mono.get(fr->x(j)));
    }
    terms.push_back({mm, t.c});
  }
  return Polynomial::from_terms(f.field(), out, std::move(terms));
}

Polynomial phi_iso(const Polynomial& f) { return psi_j(sigma(f), 1); }

// ---------------------------------------------------------- formal side

namespace {

using Series = std::map<std::uint64_t, Polynomial>;

Series series_mul(const Series& a, const Series& b, std::uint64_t cap) {
  Series out;
  for (const auto& [i, pa] : a)
    for (const auto& [j, pb] : b) {
      if (i + j > cap) break;
      auto it = out.find(i + j);
      if (it == out.end())
        out.emplace(i + j, pa * pb);
      else
        it->second += pa * pb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

Series series_frobenius(const Series& a, std::uint32_t p, std::uint64_t cap) {
  Series out;
  for (const auto& [i, pa] : a)
    if (i * p <= cap) out.emplace(i * p, pa.frobenius_p());
  return out;
}

}  // namespace

Polynomial steenrod_formal(const Polynomial& F, std::uint64_t i) {
  const auto& fr = F.frame();
  if (fr->kind != FrameKind::T) throw RingError("steenrod_formal needs a T frame");
  const FieldPtr& fld = F.field();
  const std::uint32_t q = fld->q(), p = fld->p();
  const int k = fr->m;
  if (k + 1 >= kMaxVars) throw RingError("steenrod_formal: too many T variables");
  auto out = VarFrame::T(k + 1, q);
  auto T = [&](int j) { return Polynomial::variable(fld, out, j); };
  std::vector<Series> base(k + 1);
  for (int j = 0; j <= k; ++j) {
    Series s;
    s.emplace(0, T(j));
    if (j == 0) {
      s.emplace(1, T(1));
      s.emplace(2, T(0).pow(q));
    } else if (j == 1) {
      s.emplace(1, T(0).pow(q).scale(fld->from_int(2)));
      s.emplace(q, T(2));
      s.emplace(q + 1, T(1).pow(q));
    } else {
      std::uint64_t qj = ipow(q, j);
      s.emplace(1, T(j - 1).pow(q));
      s.emplace(qj, T(j + 1));
      s.emplace(qj + 1, T(j).pow(q));
    }
    for (auto it = s.begin(); it != s.end();) it = it->first > i ? s.erase(it) : std::next(it);
    base[j] = std::move(s);
  }
  std::vector<std::map<std::uint32_t, Series>> pow_cache(k + 1);
  auto power = [&](int j, std::uint32_t e) -> const Series& {
    auto it = pow_cache[j].find(e);
    if (it != pow_cache[j].end()) return it->second;
    Series result;
    result.emplace(0, Polynomial::constant(fld, out, 1));
    Series b = base[j];
    for (std::uint32_t x = e; x; x /= p) {
      for (std::uint32_t d = 0; d < x % p; ++d) result = series_mul(result, b, i);
      if (x / p) b = series_frobenius(b, p, i);
    }
    return pow_cache[j].emplace(e, std::move(result)).first->second;
  };
  PolyAccumulator acc(fld, out);
  for (const auto& t : F.terms()) {
    Series s;
    s.emplace(0, Polynomial::constant(fld, out, t.c));
    for (int j = 0; j <= k && !s.empty(); ++j) {
      std::uint32_t e = t.mono.get(j);
      if (e) s = series_mul(s, power(j, e), i);
    }
    auto it = s.find(i);
    if (it != s.end()) acc.add(it->second);
  }
  return acc.take();
}

// ---------------------------------------------------------- checks

Verdict check_cartan(const Polynomial& f, const Polynomial& g, std::uint64_t i) {
  Polynomial lhs = steenrod(f * g, i);
  Polynomial rhs(f.field(), f.frame());
  for (std::uint64_t a = 0; a <= i; ++a) {
    Polynomial pa = steenrod(f, a);
    if (pa.is_zero()) continue;
    rhs += pa * steenrod(g, i - a);
  }
  if (lhs == rhs) return {};
  std::ostringstream os;
  os << "Cartan fails at i=" << i << " for f=" << f.render() << " g=" << g.render();
  return {false, os.str()};
}

Verdict check_adem(std::uint64_t i, std::uint64_t j, const Polynomial& f) {
  const Field& F = *f.field();
  const std::uint32_t q = F.q(), p = F.p();
  if (i >= q * j) return {false, "Adem relation needs i < q j"};
  Polynomial lhs = steenrod(steenrod(f, j), i);
  Polynomial rhs(f.field(), f.frame());
  for (std::uint64_t k = 0; q * k <= i; ++k) {
    std::uint64_t top = (q - 1) * (j - k) - 1;
    std::uint32_t b = binomial_mod_p(top, i - q * k, p);
    if (!b) continue;
    Elem c = F.from_int((i + k) % 2 ? -static_cast<std::int64_t>(b) : b);
    rhs += steenrod(steenrod(f, k), i + j - k).scale(c);
  }
  if (lhs == rhs) return {};
  std::ostringstream os;
  os << "Adem fails for P^" << i << " P^" << j << " on " << f.render();
  return {false, os.str()};
}

Verdict check_stability(const Polynomial& f) {
  if (!f.is_homogeneous()) return {false, "stability probe must be homogeneous"};
  const std::uint32_t d = f.degree();
  if (steenrod(f, 0) != f) return {false, "P^0 is not the identity on " + f.render()};
  if (steenrod(f, d) != frobenius(f, 1)) return {false, "P^deg is not the q-th power on " + f.render()};
  for (std::uint32_t i = d + 1; i <= d + 3; ++i)
    if (!steenrod(f, i).is_zero()) return {false, "P^i nonzero above degree on " + f.render()};
  return {};
}

}  // namespace orthoinv
