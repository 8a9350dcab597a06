#include "orthoinv/invariants.hpp"

#include <climits>
#include <functional>

#include "orthoinv/steenrod.hpp"

namespace orthoinv {

std::uint64_t e_index(int i, int m, std::uint32_t q) {
  std::uint64_t e = 0;
  for (int j = 1; j <= i; ++j) e += ipow(q, 2 * m - 1 - j);
  return e;
}

Elem catalan_mod(std::uint32_t j, const Field& F) {
  std::int64_t a = binomial_mod_p(2 * j, j, F.p());
  std::int64_t b = binomial_mod_p(2 * j, j + 1, F.p());
  return F.from_int(a - b);
}

// ---------------------------------------------------------------- catalog

std::shared_ptr<Catalog> Catalog::get(int m, std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint32_t>, std::shared_ptr<Catalog>> all;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = all[{m, q}];
  if (!slot) slot.reset(new Catalog(m, q));
  return slot;
}

Catalog::Catalog(int m, std::uint32_t q) : m_(m), q_(q), field_(Field::get(q)), frame_(VarFrame::S(m)) {
  if (m < 1 || 2 * m > kMaxVars) throw RingError("m out of range");
}

const Polynomial& Catalog::xi(int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = xi_.find(i);
  if (it != xi_.end()) return it->second;
  if (i < 0) throw RingError("xi index must be nonnegative");
  Polynomial s(field_, frame_);
  const std::uint64_t qi = ipow(q_, i);
  for (int j = 1; j <= m_; ++j) {
    Monomial a, b;
    a.set(frame_->y(j), static_cast<std::uint32_t>(qi));
    a.set(frame_->x(j), 1);
    b.set(frame_->y(j), 1);
    b.set(frame_->x(j), static_cast<std::uint32_t>(qi));
    s += Polynomial::monomial(field_, frame_, a);
    // xi_0 is the quadratic form itself, not twice it
    if (i > 0) s += Polynomial::monomial(field_, frame_, b);
  }
  return xi_.emplace(i, std::move(s)).first->second;
}

const std::vector<GroupElem>& Catalog::gens(GroupKind k) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = gens_.find(k);
  if (it != gens_.end()) return it->second;
  return gens_.emplace(k, generators(k, m_, q_)).first->second;
}

const std::vector<Polynomial>& Catalog::orbit_y(int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = oy_.find(i);
  if (it != oy_.end()) return it->second;
  auto& g = gens(GroupKind::sylow);
  return oy_.emplace(i, g.empty() ? std::vector<Polynomial>{y(i)} : orbit_linear(y(i), g)).first->second;
}

const std::vector<Polynomial>& Catalog::orbit_x(int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = ox_.find(i);
  if (it != ox_.end()) return it->second;
  auto& g = gens(GroupKind::sylow);
  return ox_.emplace(i, g.empty() ? std::vector<Polynomial>{x(i)} : orbit_linear(x(i), g)).first->second;
}

const Polynomial& Catalog::Ny(int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = ny_.find(i);
  if (it != ny_.end()) return it->second;
  return ny_.emplace(i, norm_of(GroupKind::sylow, frame_->y(i))).first->second;
}

const Polynomial& Catalog::Nx(int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = nx_.find(i);
  if (it != nx_.end()) return it->second;
  return nx_.emplace(i, norm_of(GroupKind::sylow, frame_->x(i))).first->second;
}

const Polynomial& Catalog::norm_of(GroupKind k, int var_index) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(k, var_index);
  auto it = norms_.find(key);
  if (it != norms_.end()) return it->second;
  auto& g = gens(k);
  Polynomial v = var(var_index);
  return norms_.emplace(key, g.empty() ? v : norm(v, g)).first->second;
}

const Polynomial& Catalog::u() {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (!u_) {
    std::vector<Polynomial> fs;
    for (int i = 1; i <= m_; ++i) {
      fs.push_back(Ny(i));
      fs.push_back(Nx(i));
    }
    u_ = std::make_unique<Polynomial>(product(fs));
  }
  return *u_;
}

const Polynomial& Catalog::d(int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = d_.find(i);
  if (it != d_.end()) return it->second;
  if (i < 0 || i > m_) throw RingError("d index out of range");
  if (i == 0) return d_.emplace(0, one()).first->second;
  Polynomial r = steenrod(u(), e_index(i, m_, q_));
  // one linear factor at a time; each division is exact or throws
  for (int j = 1; j <= m_; ++j) {
    for (const auto& l : orbit_y(j)) r = exact_divide(r, l);
    for (const auto& l : orbit_x(j)) r = exact_divide(r, l);
  }
  return d_.emplace(i, std::move(r)).first->second;
}

const Polynomial& Catalog::psi_xi(int j, int i) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(j, i);
  auto it = psi_.find(key);
  if (it != psi_.end()) return it->second;
  return psi_.emplace(key, psi_j(xi(i), j)).first->second;
}

// ---------------------------------------------------------------- T side

Polynomial c22(std::uint32_t q, int k) {
  auto F = Field::get(q);
  auto fr = VarFrame::T(k, q);
  std::vector<Polynomial::Term> terms;
  for (std::uint32_t j = 0; 2 * j <= q - 1; ++j) {
    Monomial mono;
    mono.set(0, j * (q + 1) + 1);
    mono.set(1, q - 1 - 2 * j);
    terms.push_back({mono, catalan_mod(j, *F)});
  }
  return Polynomial::from_terms(F, fr, std::move(terms));
}

namespace {

Polynomial determinant(std::vector<std::vector<Polynomial>> a) {
  const std::size_t r = a.size();
  if (r == 1) return a[0][0];
  Polynomial det(a[0][0].field(), a[0][0].frame());
  for (std::size_t c = 0; c < r; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < r; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < r; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    Polynomial t = a[0][c] * determinant(std::move(minor));
    det = c % 2 ? det - t : det + t;
  }
  return det;
}

}  // namespace

Polynomial minor_M(int i, int m, std::uint32_t q) {
  if (i < 0 || i > m) throw RingError("minor index out of range");
  const int n = 2 * m;
  auto F = Field::get(q);
  auto fr = VarFrame::T(n - 1, q);
  std::vector<std::vector<Polynomial>> rows;
  for (int j = 1; j <= m; ++j) {
    std::vector<Polynomial> row;
    for (int k = 1; k <= m + 1; ++k) {
      if (k == i + 1) continue;
      row.push_back(frobenius(Polynomial::variable(F, fr, n - j - k + 1), j - 1));
    }
    rows.push_back(std::move(row));
  }
  return determinant(std::move(rows));
}

std::vector<Polynomial> dickson(const std::vector<Polynomial>& vars) {
  if (vars.empty()) throw RingError("dickson needs at least one form");
  const std::size_t r = vars.size();
  const FieldPtr& F = vars[0].field();
  const std::uint32_t q = F->q();
  // F_k(X) = sum_s a[s] X^{q^s}
  std::vector<Polynomial> a{Polynomial::constant(F, vars[0].frame(), 1)};
  for (std::size_t k = 1; k <= r; ++k) {
    const Polynomial& v = vars[k - 1];
    Polynomial c(F, v.frame());
    for (std::size_t s = 0; s < a.size(); ++s) c += a[s] * frobenius(v, s);
    Polynomial cq = c.pow(q - 1);
    std::vector<Polynomial> b(k + 1, Polynomial(F, v.frame()));
    for (std::size_t s = 0; s <= k; ++s) {
      if (s >= 1) b[s] += frobenius(a[s - 1], 1);
      if (s < a.size()) b[s] -= cq * a[s];
    }
    a = std::move(b);
  }
  std::vector<Polynomial> d;
  for (std::size_t i = 1; i <= r; ++i) {
    Polynomial t = a[r - i];
    d.push_back(i % 2 ? -t : t);
  }
  return d;
}

// ---------------------------------------------------------------- blocks

NamedPolys hsop(GroupKind kind, int m, std::uint32_t q) {
  auto cat = Catalog::get(m, q);
  NamedPolys out;
  auto add = [&](std::string name, Polynomial p) {
    out.names.push_back(std::move(name));
    out.polys.push_back(std::move(p));
  };
  const Polynomial x1q1 = cat->x(1).pow(q - 1);
  switch (kind) {
    case GroupKind::oplus:
      for (int i = 0; i < m; ++i) add("xi" + std::to_string(i), cat->xi(i));
      for (int i = 1; i <= m; ++i) add("d" + std::to_string(i), cat->d(i));
      break;
    case GroupKind::sylow:
      for (int i = 1; i <= m; ++i) {
        add("Ny" + std::to_string(i), cat->Ny(i));
        add("Nx" + std::to_string(i), cat->Nx(i));
      }
      break;
    case GroupKind::borel:
      for (int i = 1; i <= m; ++i) {
        add("Ny" + std::to_string(i) + "^" + std::to_string(q - 1), cat->Ny(i).pow(q - 1));
        add("Nx" + std::to_string(i) + "^" + std::to_string(q - 1), cat->Nx(i).pow(q - 1));
      }
      break;
    case GroupKind::hook:
      add("x1", cat->x(1));
      for (int i = 2; i <= m; ++i) {
        add("Y" + std::to_string(i), frobenius(cat->y(i), 1) - cat->y(i) * x1q1);
        add("X" + std::to_string(i), frobenius(cat->x(i), 1) - cat->x(i) * x1q1);
      }
      add("Ny1", cat->norm_of(GroupKind::hook, cat->frame()->y(1)));
      break;
    default:
      throw GroupError("no block decomposition for " + to_string(kind));
  }
  return out;
}

namespace {

void fill_basis(BlockData& b) {
  std::vector<std::uint64_t> degs{0};
  for (std::size_t f = 0; f < b.factor_degrees.size(); ++f) {
    std::vector<std::uint64_t> next;
    next.reserve(degs.size() * (b.top_exponents[f] + 1));
    for (std::uint64_t d : degs)
      for (std::uint32_t e = 0; e <= b.top_exponents[f]; ++e) next.push_back(d + e * b.factor_degrees[f]);
    degs = std::move(next);
  }
  std::sort(degs.begin(), degs.end());
  b.basis_degrees = std::move(degs);
}

}  // namespace

BlockData block_basis(GroupKind kind, int m, std::uint32_t q, bool sylow_bhc) {
  const int n = 2 * m;
  BlockData b;
  auto xi_deg = [&](int i) { return ipow(q, i) + 1; };
  auto add_factor = [&](std::string name, std::uint64_t deg, std::uint32_t top) {
    b.factor_names.push_back(std::move(name));
    b.factor_degrees.push_back(deg);
    b.top_exponents.push_back(top);
  };
  auto add_bhc = [&] {
    for (int j = 0; j <= m - 2; ++j)
      for (int i = 0; i <= n - 3 - 2 * j; ++i)
        add_factor("psi" + std::to_string(j) + "(xi" + std::to_string(i) + ")", ipow(q, j) * xi_deg(i), q - 1);
  };
  switch (kind) {
    case GroupKind::oplus:
      for (int i = 0; i < m; ++i) {
        b.hsop_names.push_back("xi" + std::to_string(i));
        b.hsop_degrees.push_back(xi_deg(i));
      }
      for (int i = 1; i <= m; ++i) {
        b.hsop_names.push_back("d" + std::to_string(i));
        b.hsop_degrees.push_back((q - 1) * e_index(i, m, q));
      }
      for (int i = m; i <= n - 2; ++i)
        add_factor("xi" + std::to_string(i), xi_deg(i), static_cast<std::uint32_t>(ipow(q, n - i - 1) - 1));
      break;
    case GroupKind::sylow:
      for (int i = 1; i <= m; ++i) {
        b.hsop_names.push_back("Ny" + std::to_string(i));
        b.hsop_degrees.push_back(ipow(q, n - i - 1));
        b.hsop_names.push_back("Nx" + std::to_string(i));
        b.hsop_degrees.push_back(ipow(q, i - 1));
      }
      if (sylow_bhc) {
        add_bhc();
      } else {
        for (int i = 0; i <= n - 3; ++i)
          add_factor("xi" + std::to_string(i), xi_deg(i), static_cast<std::uint32_t>(ipow(q, m - 1 - i / 2) - 1));
      }
      break;
    case GroupKind::hook:
      b.hsop_names.push_back("x1");
      b.hsop_degrees.push_back(1);
      for (int i = 2; i <= m; ++i) {
        b.hsop_names.push_back("Y" + std::to_string(i));
        b.hsop_degrees.push_back(q);
        b.hsop_names.push_back("X" + std::to_string(i));
        b.hsop_degrees.push_back(q);
      }
      b.hsop_names.push_back("Ny1");
      b.hsop_degrees.push_back(ipow(q, n - 2));
      for (int i = 0; i <= n - 3; ++i) add_factor("xi" + std::to_string(i), xi_deg(i), q - 1);
      break;
    case GroupKind::borel:
      for (int i = 1; i <= m; ++i) {
        b.hsop_names.push_back("Ny" + std::to_string(i) + "^" + std::to_string(q - 1));
        b.hsop_degrees.push_back((q - 1) * ipow(q, n - i - 1));
        b.hsop_names.push_back("Nx" + std::to_string(i) + "^" + std::to_string(q - 1));
        b.hsop_degrees.push_back((q - 1) * ipow(q, i - 1));
      }
      for (int i = 1; i <= m; ++i)
        add_factor("Ny" + std::to_string(i) + "Nx" + std::to_string(i), ipow(q, n - i - 1) + ipow(q, i - 1), q - 2);
      add_bhc();
      break;
    default:
      throw GroupError("no block decomposition for " + to_string(kind));
  }
  fill_basis(b);
  return b;
}

// ---------------------------------------------------------------- compliance

std::uint32_t nu1(const Polynomial& h, int x1_index) {
  std::uint32_t v = UINT32_MAX;
  for (const auto& t : h.terms()) v = std::min(v, t.mono.get(x1_index));
  return v;
}

Compliance compliance(const Polynomial& f, std::uint32_t q) {
  const auto& fr = f.frame();
  if (fr->kind != FrameKind::S) throw RingError("compliance needs an S frame");
  const int y1 = fr->y(1), x1 = fr->x(1);
  std::map<std::uint32_t, std::uint32_t> val;  // k -> nu1(c_k)
  for (const auto& t : f.terms()) {
    std::uint32_t k = t.mono.get(y1);
    auto [it, ins] = val.try_emplace(k, t.mono.get(x1));
    if (!ins) it->second = std::min(it->second, t.mono.get(x1));
  }
  Compliance c;
  for (const auto& [k, v] : val) {
    c.max_y1_degree = std::max(c.max_y1_degree, k);
    if (k == 0) continue;
    std::uint64_t s = digit_sum(k, q);
    if (v + 1 < s) c.compliant = false;
    if (v < s) {
      if (c.strongly) c.first_bad_k = k;
      c.strongly = false;
    }
  }
  return c;
}

Polynomial t_operator(const Polynomial& f, int u_var, int t_var) {
  const auto& fr = f.frame();
  const FieldPtr& F = f.field();
  if (fr->kind != FrameKind::S) throw RingError("t_operator needs an S frame");
  const int y1 = fr->y(1), x1 = fr->x(1);
  if (u_var == y1 || t_var == y1 || t_var == x1) throw RingError("t_operator: bad variable choice");
  std::vector<Polynomial> parts;
  for (std::uint32_t a = 0; a < F->q(); ++a) {
    std::vector<Polynomial> im;
    for (int v = 0; v < fr->nvars; ++v) im.push_back(Polynomial::variable(F, fr, v));
    Elem ae = static_cast<Elem>(a);
    im[y1] = im[y1] + Polynomial::variable(F, fr, u_var).scale(ae);
    im[t_var] = im[t_var] - Polynomial::variable(F, fr, x1).scale(ae);
    parts.push_back(substitute(f, im));
  }
  return product(std::move(parts));
}

}  // namespace orthoinv
