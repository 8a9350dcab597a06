#include "orthoinv/matgroup.hpp"

#include <absl/container/flat_hash_set.h>

#include <deque>
#include <map>

#include "json.hpp"

namespace orthoinv {

GroupKind parse_group_kind(const std::string& s) {
  static const std::map<std::string, GroupKind> table = {
      {"oplus", GroupKind::oplus}, {"sylow", GroupKind::sylow},         {"hook", GroupKind::hook},
      {"borel", GroupKind::borel}, {"torus", GroupKind::torus},         {"weyl", GroupKind::weyl},
      {"stabilizer_x1", GroupKind::stabilizer_x1}};
  auto it = table.find(s);
  if (it == table.end()) throw GroupError("unknown group kind '" + s + "'");
  return it->second;
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::oplus: return "oplus";
    case GroupKind::sylow: return "sylow";
    case GroupKind::hook: return "hook";
    case GroupKind::borel: return "borel";
    case GroupKind::torus: return "torus";
    case GroupKind::weyl: return "weyl";
    case GroupKind::stabilizer_x1: return "stabilizer_x1";
  }
  return "?";
}

GroupElem::GroupElem(FieldPtr f, int m, std::vector<Elem> a) : f_(std::move(f)), m_(m), a_(std::move(a)) {
  if (static_cast<int>(a_.size()) != 4 * m * m) throw GroupError("matrix size mismatch");
}

GroupElem GroupElem::identity(FieldPtr f, int m) {
  std::vector<Elem> a(4 * m * m, 0);
  for (int i = 0; i < 2 * m; ++i) a[i * 2 * m + i] = 1;
  return GroupElem(std::move(f), m, std::move(a));
}

GroupElem GroupElem::operator*(const GroupElem& o) const {
  if (f_ != o.f_ || m_ != o.m_) throw GroupError("dimension mismatch");
  const int N = n();
  const Field& F = *f_;
  std::vector<Elem> c(N * N, 0);
  for (int r = 0; r < N; ++r)
    for (int k = 0; k < N; ++k) {
      Elem x = a_[r * N + k];
      if (!x) continue;
      for (int j = 0; j < N; ++j) {
        Elem y = o.a_[k * N + j];
        if (y) c[r * N + j] = F.add(c[r * N + j], F.mul(x, y));
      }
    }
  return GroupElem(f_, m_, std::move(c));
}

bool GroupElem::is_identity() const {
  const int N = n();
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

bool GroupElem::is_monomial() const {
  const int N = n();
  for (int r = 0; r < N; ++r) {
    int nz = 0;
    for (int c = 0; c < N; ++c) nz += at(r, c) != 0;
    if (nz != 1) return false;
  }
  return true;
}

bool GroupElem::is_upper_unitriangular() const {
  const int N = n();
  for (int r = 0; r < N; ++r) {
    if (at(r, r) != 1) return false;
    for (int c = 0; c < r; ++c)
      if (at(r, c)) return false;
  }
  return true;
}

bool GroupElem::preserves_form() const {
  auto fr = VarFrame::S(m_);
  Polynomial xi0(f_, fr);
  for (int j = 1; j <= m_; ++j)
    xi0 += Polynomial::variable(f_, fr, fr->y(j)) * Polynomial::variable(f_, fr, fr->x(j));
  return act(xi0, *this) == xi0;
}

std::vector<Elem> GroupElem::apply_point(const std::vector<Elem>& pt, const Field& ext) const {
  const int N = n();
  if (static_cast<int>(pt.size()) != N) throw GroupError("point dimension mismatch");
  std::vector<Elem> out(N, 0);
  // prime-field and GF(q) indices embed verbatim only when q is prime
  for (int r = 0; r < N; ++r) {
    Elem s = 0;
    for (int c = 0; c < N; ++c)
      if (at(r, c) && pt[c]) s = ext.add(s, ext.mul(at(r, c), pt[c]));
    out[r] = s;
  }
  return out;
}

std::string GroupElem::to_json() const {
  const int N = n();
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < N; ++r) {
    std::vector<int> row(N);
    for (int c = 0; c < N; ++c) row[c] = at(r, c);
    rows.push_back(row);
  }
  return rows.dump();
}

std::size_t GroupElemHash::operator()(const GroupElem& g) const {
  std::size_t h = 1469598103934665603ULL;
  for (Elem e : g.data()) h = (h ^ e) * 1099511628211ULL;
  return h;
}

namespace {

struct Builder {
  FieldPtr f;
  int m;
  std::vector<Elem> a;
  Builder(FieldPtr f_, int m_) : f(std::move(f_)), m(m_), a(4 * m_ * m_, 0) {
    for (int i = 0; i < 2 * m; ++i) a[i * 2 * m + i] = 1;
  }
  void set(int r, int c, Elem v) { a[r * 2 * m + c] = v; }
  GroupElem done() { return GroupElem(f, m, a); }
};

// additive generators of GF(q) over GF(p): t^s
std::vector<Elem> additive_basis(const Field& F) {
  std::vector<Elem> out;
  for (std::uint32_t s = 0; s < F.k(); ++s) out.push_back(static_cast<Elem>(ipow(F.p(), s)));
  return out;
}

std::vector<GroupElem> torus_gens(const FieldPtr& f, int m, int from_pair) {
  std::vector<GroupElem> out;
  auto fr = VarFrame::S(m);
  Elem t = f->primitive_root(), ti = f->inv(t);
  for (int i = from_pair; i <= m; ++i) {
    Builder b(f, m);
    b.set(fr->y(i), fr->y(i), t);
    b.set(fr->x(i), fr->x(i), ti);
    out.push_back(b.done());
  }
  return out;
}

std::vector<GroupElem> weyl_gens(const FieldPtr& f, int m, int from_pair) {
  std::vector<GroupElem> out;
  auto fr = VarFrame::S(m);
  for (int i = from_pair; i < m; ++i) {
    Builder b(f, m);
    for (int v : {fr->y(i), fr->y(i + 1), fr->x(i), fr->x(i + 1)}) b.set(v, v, 0);
    b.set(fr->y(i), fr->y(i + 1), 1);
    b.set(fr->y(i + 1), fr->y(i), 1);
    b.set(fr->x(i), fr->x(i + 1), 1);
    b.set(fr->x(i + 1), fr->x(i), 1);
    out.push_back(b.done());
  }
  Builder w(f, m);
  w.set(fr->y(m), fr->y(m), 0);
  w.set(fr->x(m), fr->x(m), 0);
  w.set(fr->y(m), fr->x(m), 1);
  w.set(fr->x(m), fr->y(m), 1);
  out.push_back(w.done());
  return out;
}

std::vector<GroupElem> sylow_gens(const FieldPtr& f, int m, int from_level) {
  std::vector<GroupElem> out;
  for (int l = from_level; l < m; ++l) {
    auto h = hook_generators(l, m, f->q());
    out.insert(out.end(), h.begin(), h.end());
  }
  return out;
}

void check_all(const std::vector<GroupElem>& gens) {
  for (const auto& g : gens)
    if (!g.preserves_form()) throw GroupError("generator does not preserve the quadratic form");
}

}  // namespace

std::vector<GroupElem> hook_generators(int level, int m, std::uint32_t q) {
  auto f = Field::get(q);
  auto fr = VarFrame::S(m);
  std::vector<GroupElem> out;
  const int l = level;
  for (int i = l + 1; i <= m; ++i)
    for (Elem c : additive_basis(*f)) {
      Elem nc = f->neg(c);
      {
        // a_i = c: y_l -> y_l + c x_i, y_i -> y_i - c x_l
        Builder b(f, m);
        b.set(fr->y(l), fr->x(i), c);
        b.set(fr->y(i), fr->x(l), nc);
        out.push_back(b.done());
      }
      {
        // b_i = c: y_l -> y_l + c y_i, x_i -> x_i - c x_l
        Builder b(f, m);
        b.set(fr->y(l), fr->y(i), c);
        b.set(fr->x(i), fr->x(l), nc);
        out.push_back(b.done());
      }
    }
  return out;
}

std::vector<GroupElem> generators(GroupKind kind, int m, std::uint32_t q) {
  if (m < 1) throw GroupError("m must be positive");
  auto f = Field::get(q);
  std::vector<GroupElem> out;
  auto add = [&](const std::vector<GroupElem>& v) { out.insert(out.end(), v.begin(), v.end()); };
  switch (kind) {
    case GroupKind::hook:
      if (m > 1) add(hook_generators(1, m, q));
      break;
    case GroupKind::sylow:
      add(sylow_gens(f, m, 1));
      break;
    case GroupKind::torus:
      add(torus_gens(f, m, 1));
      break;
    case GroupKind::weyl:
      add(weyl_gens(f, m, 1));
      break;
    case GroupKind::borel:
      add(sylow_gens(f, m, 1));
      add(torus_gens(f, m, 1));
      break;
    case GroupKind::oplus:
      add(sylow_gens(f, m, 1));
      add(torus_gens(f, m, 1));
      add(weyl_gens(f, m, 1));
      break;
    case GroupKind::stabilizer_x1:
      if (m > 1) {
        add(hook_generators(1, m, q));
        add(sylow_gens(f, m, 2));
        add(torus_gens(f, m, 2));
        add(weyl_gens(f, m, 2));
      }
      break;
  }
  check_all(out);
  return out;
}

std::uint64_t expected_order(GroupKind kind, int m, std::uint32_t q) {
  const std::uint64_t Q = q;
  switch (kind) {
    case GroupKind::hook: return ipow(Q, 2 * m - 2);
    case GroupKind::sylow: return ipow(Q, m * (m - 1));
    case GroupKind::torus: return ipow(Q - 1, m);
    case GroupKind::borel: return ipow(Q, m * (m - 1)) * ipow(Q - 1, m);
    case GroupKind::weyl: {
      std::uint64_t r = ipow(2, m);
      for (int i = 2; i <= m; ++i) r *= i;
      return r;
    }
    case GroupKind::oplus: {
      std::uint64_t r = 2 * ipow(Q, m * (m - 1)) * (ipow(Q, m) - 1);
      for (int j = 1; j < m; ++j) r *= ipow(Q, 2 * j) - 1;
      return r;
    }
    case GroupKind::stabilizer_x1: {
      if (m == 1) return 1;
      std::uint64_t r = 2 * ipow(Q, (m - 1) * (m - 2)) * (ipow(Q, m - 1) - 1);
      for (int j = 1; j < m - 1; ++j) r *= ipow(Q, 2 * j) - 1;
      return r * ipow(Q, 2 * m - 2);
    }
  }
  return 0;
}

std::vector<Polynomial> action_images(const GroupElem& g, const FieldPtr& f, const FramePtr& fr) {
  const int N = g.n();
  if (fr->nvars < N || fr->kind == FrameKind::T) throw GroupError("frame does not carry S_m variables");
  if (fr->m != g.m()) throw GroupError("dimension mismatch between frame and matrix");
  std::vector<Polynomial> images;
  images.reserve(fr->nvars);
  for (int r = 0; r < fr->nvars; ++r) {
    if (r >= N) {
      images.push_back(Polynomial::variable(f, fr, r));
      continue;
    }
    std::vector<Polynomial::Term> t;
    for (int c = 0; c < N; ++c)
      if (g.at(r, c)) {
        Monomial mono;
        mono.set(c, 1);
        t.push_back({mono, g.at(r, c)});
      }
    images.push_back(Polynomial::from_terms(f, fr, std::move(t)));
  }
  return images;
}

Polynomial act(const Polynomial& f, const GroupElem& g) {
  if (f.field() != g.field()) throw GroupError("field mismatch");
  return substitute(f, action_images(g, f.field(), f.frame()));
}

bool is_invariant(const Polynomial& f, const std::vector<GroupElem>& gens) {
  for (const auto& g : gens)
    if (act(f, g) != f) return false;
  return true;
}

std::vector<GroupElem> closure(const std::vector<GroupElem>& gens, std::size_t cap) {
  if (gens.empty()) throw GroupError("closure needs at least one generator");
  absl::flat_hash_set<std::vector<Elem>> seen;
  std::vector<GroupElem> out;
  std::deque<std::size_t> queue;
  auto id = GroupElem::identity(gens[0].field(), gens[0].m());
  seen.insert(id.data());
  out.push_back(id);
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      GroupElem h = out[i] * g;
      if (seen.insert(h.data()).second) {
        if (out.size() >= cap) throw GroupError("closure cap exceeded (" + std::to_string(cap) + ")");
        out.push_back(h);
        queue.push_back(out.size() - 1);
      }
    }
  }
  return out;
}

std::vector<Polynomial> orbit_linear(const Polynomial& v, const std::vector<GroupElem>& gens) {
  if (v.is_zero() || !v.is_homogeneous() || v.degree() != 1) throw GroupError("orbit_linear needs a linear form");
  std::vector<Polynomial> out{v};
  absl::flat_hash_set<std::string> seen;
  seen.insert(v.render());
  std::deque<std::size_t> queue{0};
  std::vector<std::vector<Polynomial>> imgs;
  for (const auto& g : gens) imgs.push_back(action_images(g, v.field(), v.frame()));
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& im : imgs) {
      Polynomial w = substitute(out[i], im);
      if (seen.insert(w.render()).second) {
        out.push_back(w);
        queue.push_back(out.size() - 1);
      }
    }
  }
  return out;
}

Polynomial norm(const Polynomial& v, const std::vector<GroupElem>& gens) {
  // Group the orbit by the coefficients on the y variables: each group is a
  // coset of a translation subgroup, so its product is a sparse additive
  // polynomial. Then multiply groups in chunks of q along the sorted keys.
  auto orbit = orbit_linear(v, gens);
  const auto& fr = v.frame();
  const int m = fr->m;
  std::map<std::vector<Elem>, std::vector<Polynomial>> groups;
  for (auto& l : orbit) {
    std::vector<Elem> key;
    for (int j = 1; j <= m; ++j) {
      Monomial mono;
      mono.set(fr->y(j), 1);
      key.push_back(l.coeff(mono));
    }
    groups[key].push_back(std::move(l));
  }
  std::vector<Polynomial> level;
  for (auto& [key, ls] : groups) {
    Polynomial p = ls[0];
    for (std::size_t i = 1; i < ls.size(); ++i) p = p * ls[i];
    level.push_back(std::move(p));
  }
  const std::size_t q = v.field()->q();
  while (level.size() > 1) {
    std::vector<Polynomial> next;
    for (std::size_t i = 0; i < level.size(); i += q) {
      Polynomial p = level[i];
      for (std::size_t j = 1; j < q && i + j < level.size(); ++j) p = p * level[i + j];
      next.push_back(std::move(p));
    }
    level = std::move(next);
  }
  return level[0];
}

std::vector<GroupElem> right_coset_reps(const std::vector<GroupElem>& group, const std::vector<GroupElem>& sub) {
  absl::flat_hash_set<std::vector<Elem>> covered;
  std::vector<GroupElem> reps;
  for (const auto& g : group) {
    if (covered.contains(g.data())) continue;
    reps.push_back(g);
    for (const auto& b : sub) covered.insert((b * g).data());
  }
  if (covered.size() != group.size()) throw GroupError("subgroup does not partition the group");
  return reps;
}

Polynomial reynolds(const Polynomial& f, int m, std::uint32_t q, std::size_t cap) {
  auto bgens = generators(GroupKind::borel, m, q);
  if (!is_invariant(f, bgens)) throw GroupError("reynolds: input is not Borel invariant");
  auto G = closure(generators(GroupKind::oplus, m, q), cap);
  auto B = closure(bgens, cap);
  auto reps = right_coset_reps(G, B);
  PolyAccumulator acc(f.field(), f.frame());
  for (const auto& g : reps) acc.add(act(f, g));
  Elem half = f.field()->inv(f.field()->from_int(2));
  return acc.take().scale(half);
}

}  // namespace orthoinv
