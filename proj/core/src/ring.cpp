#include "orthoinv/ring.hpp"

#include <absl/container/btree_map.h>
#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include "json.hpp"
#include <sstream>

namespace orthoinv {

void Monomial::set(int i, std::uint32_t v) {
  if (v > 0xffff) throw RingError("exponent overflow");
  std::uint64_t& w = i < 4 ? hi : lo;
  int sh = 48 - 16 * (i & 3);
  w = (w & ~(0xffffULL << sh)) | (static_cast<std::uint64_t>(v) << sh);
}

std::uint32_t Monomial::degree() const {
  std::uint64_t s = (hi & 0xffff) + ((hi >> 16) & 0xffff) + ((hi >> 32) & 0xffff) + (hi >> 48);
  s += (lo & 0xffff) + ((lo >> 16) & 0xffff) + ((lo >> 32) & 0xffff) + (lo >> 48);
  return static_cast<std::uint32_t>(s);
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (get(i) > o.get(i)) return false;
  return true;
}

// ---------------------------------------------------------------- frames

namespace {
std::mutex frame_mu;
}

std::shared_ptr<const VarFrame> VarFrame::S(int m) {
  if (m < 1 || 2 * m > kMaxVars) throw RingError("unsupported m=" + std::to_string(m));
  static std::map<int, FramePtr> cache;
  std::lock_guard<std::mutex> lock(frame_mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto fr = std::make_shared<VarFrame>();
  fr->kind = FrameKind::S;
  fr->m = m;
  fr->nvars = 2 * m;
  for (int j = 1; j <= m; ++j) fr->names.push_back("y" + std::to_string(j));
  for (int j = m; j >= 1; --j) fr->names.push_back("x" + std::to_string(j));
  fr->weights.assign(2 * m, 1);
  cache.emplace(m, fr);
  return fr;
}

std::shared_ptr<const VarFrame> VarFrame::T(int k, std::uint32_t q) {
  if (k < 0 || k + 1 > kMaxVars) throw RingError("T-frame index overflow");
  static std::map<std::pair<int, std::uint32_t>, FramePtr> cache;
  std::lock_guard<std::mutex> lock(frame_mu);
  auto it = cache.find({k, q});
  if (it != cache.end()) return it->second;
  auto fr = std::make_shared<VarFrame>();
  fr->kind = FrameKind::T;
  fr->m = k;
  fr->nvars = k + 1;
  for (int j = 0; j <= k; ++j) {
    fr->names.push_back("T" + std::to_string(j));
    fr->weights.push_back(ipow(q, j) + 1);
  }
  cache.emplace(std::make_pair(k, q), fr);
  return fr;
}

std::shared_ptr<const VarFrame> VarFrame::named(std::vector<std::string> names, std::vector<std::uint64_t> weights) {
  if (names.size() > static_cast<std::size_t>(kMaxVars) || names.size() != weights.size())
    throw RingError("bad named frame");
  auto fr = std::make_shared<VarFrame>();
  fr->kind = FrameKind::Named;
  fr->nvars = static_cast<int>(names.size());
  fr->names = std::move(names);
  fr->weights = std::move(weights);
  return fr;
}

std::shared_ptr<const VarFrame> VarFrame::S_ext(int m, std::vector<std::string> extra) {
  auto base = S(m);
  if (base->nvars + static_cast<int>(extra.size()) > kMaxVars) throw RingError("too many variables");
  auto fr = std::make_shared<VarFrame>(*base);
  for (auto& e : extra) {
    fr->names.push_back(e);
    fr->weights.push_back(1);
  }
  fr->nvars = static_cast<int>(fr->names.size());
  return fr;
}

bool VarFrame::same(const VarFrame& o) const {
  return this == &o || (kind == o.kind && m == o.m && nvars == o.nvars && names == o.names && weights == o.weights);
}

std::uint64_t VarFrame::weight(const Monomial& mono) const {
  std::uint64_t w = 0;
  for (int i = 0; i < nvars; ++i) w += weights[i] * mono.get(i);
  return w;
}

int MonomialOrder::compare(const VarFrame& fr, const Monomial& a, const Monomial& b) const {
  const int n = fr.nvars;
  const bool up = fr.index0_largest();
  auto var = [&](int r) { return up ? r : n - 1 - r; };  // r-th largest variable
  if (kind == Kind::lex) {
    for (int r = 0; r < n; ++r) {
      int v = var(r);
      std::uint32_t x = a.get(v), y = b.get(v);
      if (x != y) return x > y ? 1 : -1;
    }
    return 0;
  }
  std::uint64_t wa = 0, wb = 0;
  if (kind == Kind::grevlex) {
    wa = a.degree();
    wb = b.degree();
  } else {
    const auto& w = weights.empty() ? fr.weights : weights;
    for (int i = 0; i < n; ++i) {
      wa += w[i] * a.get(i);
      wb += w[i] * b.get(i);
    }
  }
  if (wa != wb) return wa > wb ? 1 : -1;
  for (int r = n - 1; r >= 0; --r) {
    int v = var(r);
    std::int64_t d = static_cast<std::int64_t>(a.get(v)) - b.get(v);
    if (d != 0) return d < 0 ? 1 : -1;
  }
  return 0;
}

// ---------------------------------------------------------- accumulator

struct PolyAccumulator::Impl {
  FieldPtr f;
  FramePtr fr;
  absl::flat_hash_map<Monomial, Elem> map;
};

PolyAccumulator::PolyAccumulator(FieldPtr f, FramePtr fr) : impl_(std::make_unique<Impl>()) {
  impl_->f = std::move(f);
  impl_->fr = std::move(fr);
}
PolyAccumulator::~PolyAccumulator() = default;
PolyAccumulator::PolyAccumulator(PolyAccumulator&&) noexcept = default;
PolyAccumulator& PolyAccumulator::operator=(PolyAccumulator&&) noexcept = default;

void PolyAccumulator::add(const Monomial& m, Elem c) {
  if (!c) return;
  auto [it, ins] = impl_->map.try_emplace(m, c);
  if (!ins) it->second = impl_->f->add(it->second, c);
}

void PolyAccumulator::add(const Polynomial& p, Elem scale) {
  if (!scale) return;
  const Field& F = *impl_->f;
  impl_->map.reserve(impl_->map.size() + p.size());
  for (const auto& t : p.terms()) add(t.mono, F.mul(t.c, scale));
}

void PolyAccumulator::add_shifted(const Polynomial& p, const Monomial& mono, Elem scale) {
  if (!scale) return;
  const Field& F = *impl_->f;
  for (const auto& t : p.terms()) add(t.mono * mono, F.mul(t.c, scale));
}

Polynomial PolyAccumulator::take() {
  std::vector<Polynomial::Term> terms;
  terms.reserve(impl_->map.size());
  for (auto& [m, c] : impl_->map)
    if (c) terms.push_back({m, c});
  impl_->map.clear();
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return b.mono.lex_less(a.mono); });
  return Polynomial::from_sorted(impl_->f, impl_->fr, std::move(terms));
}

// ------------------------------------------------------------ polynomial

Polynomial Polynomial::constant(FieldPtr f, FramePtr fr, Elem c) {
  Polynomial p(std::move(f), std::move(fr));
  if (c) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(FieldPtr f, FramePtr fr, int idx) {
  if (idx < 0 || idx >= fr->nvars) throw RingError("variable index out of range");
  Monomial m;
  m.set(idx, 1);
  return monomial(std::move(f), std::move(fr), m, 1);
}

Polynomial Polynomial::monomial(FieldPtr f, FramePtr fr, Monomial m, Elem c) {
  Polynomial p(std::move(f), std::move(fr));
  if (c) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(FieldPtr f, FramePtr fr, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return b.mono.lex_less(a.mono); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().c = f->add(out.back().c, t.c);
      if (!out.back().c) out.pop_back();
    } else if (t.c) {
      out.push_back(t);
    }
  }
  return from_sorted(std::move(f), std::move(fr), std::move(out));
}

Polynomial Polynomial::from_sorted(FieldPtr f, FramePtr fr, std::vector<Term> terms) {
  Polynomial p(std::move(f), std::move(fr));
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  std::uint32_t d = terms_[0].mono.degree();
  for (const auto& t : terms_)
    if (t.mono.degree() != d) return false;
  return true;
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::uint32_t Polynomial::min_degree() const {
  if (terms_.empty()) return 0;
  std::uint32_t d = UINT32_MAX;
  for (const auto& t : terms_) d = std::min(d, t.mono.degree());
  return d;
}

std::uint64_t Polynomial::weighted_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, frame_->weight(t.mono));
  return d;
}

std::uint32_t Polynomial::degree_in(int var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.get(var));
  return d;
}

Elem Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return k.lex_less(t.mono); });
  if (it != terms_.end() && it->mono == m) return it->c;
  return 0;
}

void Polynomial::check_compat(const Polynomial& o) const {
  if (!field_ || !o.field_ || field_ != o.field_) throw RingError("field mismatch");
  if (frame_ != o.frame_ && !frame_->same(*o.frame_)) throw RingError("frame mismatch");
}

namespace {

using Terms = std::vector<Polynomial::Term>;

// a + s*b, both sorted descending
Terms merge_add(const Terms& a, const Terms& b, Elem s, const Field& F) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && b[j].mono.lex_less(a[i].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || a[i].mono.lex_less(b[j].mono)) {
      Elem c = F.mul(b[j].c, s);
      if (c) out.push_back({b[j].mono, c});
      ++j;
    } else {
      Elem c = F.add(a[i].c, F.mul(b[j].c, s));
      if (c) out.push_back({a[i].mono, c});
      ++i;
      ++j;
    }
  }
  return out;
}

void guard_degree(std::uint64_t d) {
  if (d >= 0xffff) throw RingError("exponent overflow: total degree " + std::to_string(d));
}

}  // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_compat(o);
  return from_sorted(field_, frame_, merge_add(terms_, o.terms_, 1, *field_));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_compat(o);
  return from_sorted(field_, frame_, merge_add(terms_, o.terms_, field_->neg(1), *field_));
}

Polynomial Polynomial::operator-() const { return scale(field_->neg(1)); }

Polynomial Polynomial::scale(Elem c) const {
  Polynomial r(field_, frame_);
  if (!c) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, field_->mul(t.c, c)});
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, Elem c) const {
  Polynomial r(field_, frame_);
  if (!c || terms_.empty()) return r;
  guard_degree(static_cast<std::uint64_t>(degree()) + m.degree());
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field_->mul(t.c, c)});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_compat(o);
  if (terms_.empty() || o.terms_.empty()) return Polynomial(field_, frame_);
  guard_degree(static_cast<std::uint64_t>(degree()) + o.degree());
  const Polynomial& small = size() <= o.size() ? *this : o;
  const Polynomial& big = size() <= o.size() ? o : *this;
  const Field& F = *field_;
  if (small.size() <= 4) {
    Terms acc;
    for (const auto& t : small.terms_) {
      Terms shifted;
      shifted.reserve(big.size());
      for (const auto& b : big.terms_) shifted.push_back({b.mono * t.mono, b.c});
      acc = acc.empty() ? [&] {
        for (auto& s : shifted) s.c = F.mul(s.c, t.c);
        return shifted;
      }()
                        : merge_add(acc, shifted, t.c, F);
    }
    return from_sorted(field_, frame_, std::move(acc));
  }
  absl::flat_hash_map<Monomial, Elem> map;
  map.reserve(std::min<std::size_t>(small.size() * big.size(), 1u << 22));
  for (const auto& a : small.terms_)
    for (const auto& b : big.terms_) {
      Elem c = F.mul(a.c, b.c);
      auto [it, ins] = map.try_emplace(a.mono * b.mono, c);
      if (!ins) it->second = F.add(it->second, c);
    }
  Terms out;
  out.reserve(map.size());
  for (auto& [m, c] : map)
    if (c) out.push_back({m, c});
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return y.mono.lex_less(x.mono); });
  return from_sorted(field_, frame_, std::move(out));
}

Polynomial Polynomial::frobenius_p() const {
  const std::uint32_t p = field_->p();
  guard_degree(static_cast<std::uint64_t>(degree()) * p);
  Polynomial r(field_, frame_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (int i = 0; i < frame_->nvars; ++i) m.set(i, t.mono.get(i) * p);
    r.terms_.push_back({m, field_->pow(t.c, p)});
  }
  return r;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
  Polynomial result = constant(field_, frame_, 1);
  if (e == 0) return result;
  if (terms_.empty()) return *this;
  guard_degree(static_cast<std::uint64_t>(degree()) * e);
  if (terms_.size() == 1) {
    Monomial m;
    for (int i = 0; i < frame_->nvars; ++i) m.set(i, terms_[0].mono.get(i) * e);
    return monomial(field_, frame_, m, field_->pow(terms_[0].c, e));
  }
  const std::uint32_t p = field_->p();
  Polynomial base = *this;
  std::vector<Polynomial> factors;
  while (e) {
    std::uint32_t d = e % p;
    for (std::uint32_t i = 0; i < d; ++i) factors.push_back(base);
    e /= p;
    if (e) base = base.frobenius_p();
  }
  return product(std::move(factors));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (field_ != o.field_) return false;
  if (frame_ != o.frame_ && (!frame_ || !o.frame_ || !frame_->same(*o.frame_))) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Polynomial::Term Polynomial::lead_term(const MonomialOrder& ord) const {
  if (terms_.empty()) throw RingError("lead term of zero polynomial");
  if (ord.kind == MonomialOrder::Kind::lex && frame_->index0_largest()) return terms_[0];
  const Term* best = &terms_[0];
  for (const auto& t : terms_)
    if (ord.compare(*frame_, t.mono, best->mono) > 0) best = &t;
  return *best;
}

Polynomial Polynomial::component(std::uint32_t d) const {
  Polynomial r(field_, frame_);
  for (const auto& t : terms_)
    if (t.mono.degree() == d) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::reframe(FramePtr fr) const {
  if (fr->nvars < frame_->nvars) {
    for (const auto& t : terms_)
      for (int i = fr->nvars; i < frame_->nvars; ++i)
        if (t.mono.get(i)) throw RingError("reframe drops a used variable");
  }
  Polynomial r = *this;
  r.frame_ = std::move(fr);
  return r;
}

std::string Polynomial::render_monomial(const Monomial& m) const {
  std::string s;
  for (int i = 0; i < frame_->nvars; ++i) {
    std::uint32_t e = m.get(i);
    if (!e) continue;
    if (!s.empty()) s += '*';
    s += frame_->names[i];
    if (e > 1) s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::render() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    bool unit = t.mono == Monomial{};
    if (t.c != 1 || unit) {
      s += field_->render(t.c);
      if (!unit) s += '*';
    }
    if (!unit) s += render_monomial(t.mono);
  }
  return s;
}

// ------------------------------------------------------------ free functions

Polynomial frobenius(const Polynomial& f, unsigned i) {
  Polynomial r = f;
  const std::uint32_t k = f.field()->k();
  for (unsigned s = 0; s < i * k; ++s) r = r.frobenius_p();
  return r;
}

namespace {

struct DescLex {
  bool operator()(const Monomial& a, const Monomial& b) const { return b.lex_less(a); }
};

bool divide_impl(const Polynomial& f, const Polynomial& g, Polynomial* quotient, bool throw_on_fail) {
  if (g.is_zero()) throw RingError("division by zero polynomial");
  if (f.field() != g.field()) throw RingError("field mismatch");
  const Field& F = *f.field();
  if (g.size() == 1) {
    const auto& lt = g.terms()[0];
    Elem inv = F.inv(lt.c);
    std::vector<Polynomial::Term> q;
    q.reserve(f.size());
    for (const auto& t : f.terms()) {
      if (!lt.mono.divides(t.mono)) {
        if (throw_on_fail) throw DivisionError("inexact division, remainder term " + f.render_monomial(t.mono), t);
        return false;
      }
      q.push_back({t.mono / lt.mono, F.mul(t.c, inv)});
    }
    if (quotient) *quotient = Polynomial::from_sorted(f.field(), f.frame(), std::move(q));
    return true;
  }
  absl::btree_map<Monomial, Elem, DescLex> rem;
  for (const auto& t : f.terms()) rem.emplace_hint(rem.end(), t.mono, t.c);
  const auto& lt = g.terms()[0];
  Elem inv = F.inv(lt.c);
  std::vector<Polynomial::Term> q;
  while (!rem.empty()) {
    auto it = rem.begin();
    Monomial m = it->first;
    Elem c = it->second;
    if (!lt.mono.divides(m)) {
      if (throw_on_fail) throw DivisionError("inexact division, remainder term " + f.render_monomial(m), {m, c});
      return false;
    }
    rem.erase(it);
    Monomial qm = m / lt.mono;
    Elem qc = F.mul(c, inv);
    q.push_back({qm, qc});
    Elem nqc = F.neg(qc);
    const auto& gt = g.terms();
    for (std::size_t i = 1; i < gt.size(); ++i) {
      Monomial key = qm * gt[i].mono;
      Elem d = F.mul(nqc, gt[i].c);
      auto [jt, ins] = rem.try_emplace(key, d);
      if (!ins) {
        jt->second = F.add(jt->second, d);
        if (!jt->second) rem.erase(jt);
      }
    }
  }
  if (quotient) *quotient = Polynomial::from_sorted(f.field(), f.frame(), std::move(q));
  return true;
}

}  // namespace

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  Polynomial q;
  divide_impl(f, g, &q, true);
  return q;
}

bool try_divide(const Polynomial& f, const Polynomial& g, Polynomial* quotient) {
  return divide_impl(f, g, quotient, false);
}

Polynomial product(std::vector<Polynomial> fs) {
  if (fs.empty()) throw RingError("empty product");
  while (fs.size() > 1) {
    std::vector<Polynomial> next;
    for (std::size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(fs[i] * fs[i + 1]);
    if (fs.size() % 2) next.push_back(fs.back());
    fs = std::move(next);
  }
  return fs[0];
}

struct Substitution::Impl {
  std::vector<Polynomial> images;
  FieldPtr F;
  FramePtr target;
  int n;
  std::vector<std::map<std::uint32_t, Polynomial>> cache;

  const Polynomial& power(int v, std::uint32_t e) {
    auto& c = cache[v];
    auto it = c.find(e);
    if (it != c.end()) return it->second;
    Polynomial p;
    if (e == 1) {
      p = images[v];
    } else {
      // reuse the largest cached smaller power
      auto lb = c.lower_bound(e);
      if (lb != c.begin()) {
        --lb;
        std::uint32_t have = lb->first;
        if (e - have <= 4 && have * 2 > e) {
          p = lb->second;
          for (std::uint32_t i = have; i < e; ++i) p = p * images[v];
        } else {
          p = images[v].pow(e);
        }
      } else {
        p = images[v].pow(e);
      }
    }
    return c.emplace(e, std::move(p)).first->second;
  }

  // terms [b,e) share exponents of variables < v
  Polynomial run(const std::vector<Polynomial::Term>& t, std::size_t b, std::size_t e, int v) {
    if (v == n - 1 || v >= n) {
      PolyAccumulator acc(F, target);
      for (std::size_t i = b; i < e; ++i) {
        std::uint32_t a = v < n ? t[i].mono.get(v) : 0;
        if (a == 0)
          acc.add(Monomial{}, t[i].c);
        else
          acc.add(power(v, a), t[i].c);
      }
      return acc.take();
    }
    Polynomial result(F, target);
    std::size_t i = b;
    std::vector<Polynomial> parts;
    while (i < e) {
      std::uint32_t a = t[i].mono.get(v);
      std::size_t j = i;
      while (j < e && t[j].mono.get(v) == a) ++j;
      Polynomial inner = run(t, i, j, v + 1);
      if (!inner.is_zero()) {
        if (a == 0)
          parts.push_back(std::move(inner));
        else if (!images[v].is_zero())
          parts.push_back(power(v, a) * inner);
      }
      i = j;
    }
    if (parts.empty()) return result;
    if (parts.size() == 1) return parts[0];
    PolyAccumulator acc(F, target);
    for (auto& p : parts) acc.add(p);
    return acc.take();
  }
};

Substitution::Substitution(std::vector<Polynomial> images) : impl_(std::make_unique<Impl>()) {
  if (images.empty()) throw RingError("empty substitution");
  FramePtr target = images[0].frame();
  for (const auto& im : images) {
    if (im.field() != images[0].field()) throw RingError("field mismatch in substitution");
    if (!im.frame()->same(*target)) throw RingError("image frames differ");
  }
  impl_->F = images[0].field();
  impl_->target = target;
  impl_->n = static_cast<int>(images.size());
  impl_->cache.resize(images.size());
  impl_->images = std::move(images);
}
Substitution::~Substitution() = default;
Substitution::Substitution(Substitution&&) noexcept = default;
Substitution& Substitution::operator=(Substitution&&) noexcept = default;

const std::vector<Polynomial>& Substitution::images() const { return impl_->images; }

Polynomial Substitution::operator()(const Polynomial& f) const {
  if (static_cast<int>(impl_->images.size()) != f.frame()->nvars) throw RingError("arity mismatch in substitution");
  if (f.field() != impl_->F) throw RingError("field mismatch in substitution");
  if (f.is_zero()) return Polynomial(f.field(), impl_->target);
  // the terms are sorted by slot 0 first, so grouping by variable index works
  return impl_->run(f.terms(), 0, f.size(), 0);
}

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
  if (static_cast<int>(images.size()) != f.frame()->nvars) throw RingError("arity mismatch in substitution");
  if (images.empty()) return f;
  return Substitution(images)(f);
}

Polynomial phi_eval(const Polynomial& F, const std::vector<Polynomial>& xis) {
  if (F.frame()->nvars > static_cast<int>(xis.size())) throw RingError("phi_eval: T index overflow");
  std::vector<Polynomial> im(xis.begin(), xis.begin() + F.frame()->nvars);
  return substitute(F, im);
}

std::uint64_t s_degree(const Monomial& m, const VarFrame& tframe) { return tframe.weight(m); }

// ------------------------------------------------------------ parsing

Polynomial parse_polynomial(const std::string& text, FieldPtr f, FramePtr fr) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> std::uint64_t {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw RingError("malformed token at position " + std::to_string(pos));
    std::uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos++] - '0');
      if (v > 1000000000ULL) throw RingError("integer overflow in polynomial text");
    }
    return v;
  };
  std::vector<Polynomial::Term> terms;
  skip();
  bool first = true;
  while (pos < text.size()) {
    bool negate = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negate = text[pos] == '-';
      ++pos;
      skip();
    } else if (!first) {
      throw RingError("expected + or - at position " + std::to_string(pos));
    }
    first = false;
    Elem c = 1;
    std::array<std::uint64_t, kMaxVars> ex{};
    bool need = true;
    while (need) {
      skip();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::uint64_t v = read_int();
        if (v >= f->q()) throw RingError("coefficient out of field: " + std::to_string(v));
        c = f->mul(c, static_cast<Elem>(v));
      } else {
        std::size_t st = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        std::string name = text.substr(st, pos - st);
        if (name.empty()) throw RingError("malformed token at position " + std::to_string(st));
        auto it = std::find(fr->names.begin(), fr->names.end(), name);
        if (it == fr->names.end()) throw RingError("unknown variable '" + name + "'");
        std::uint64_t e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          e = read_int();
        }
        ex[it - fr->names.begin()] += e;
      }
      skip();
      need = pos < text.size() && text[pos] == '*';
      if (need) ++pos;
    }
    Monomial m;
    std::uint64_t deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      deg += ex[i];
      if (ex[i] > 0xffff || deg >= 0xffff) throw RingError("exponent overflow");
      if (ex[i]) m.set(i, static_cast<std::uint32_t>(ex[i]));
    }
    if (negate) c = f->neg(c);
    terms.push_back({m, c});
    skip();
  }
  return Polynomial::from_terms(f, fr, std::move(terms));
}

std::string to_json(const Polynomial& f) {
  nlohmann::json j;
  j["q"] = f.field()->q();
  const auto& fr = *f.frame();
  if (fr.kind == FrameKind::S && fr.nvars == 2 * fr.m) {
    j["m"] = fr.m;
  } else if (fr.kind == FrameKind::T) {
    j["k"] = fr.m;
  } else {
    j["names"] = fr.names;
    j["weights"] = fr.weights;
  }
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> e(fr.nvars);
    for (int i = 0; i < fr.nvars; ++i) e[i] = t.mono.get(i);
    ts.push_back({{"c", t.c}, {"e", e}});
  }
  j["terms"] = ts;
  return j.dump();
}

Polynomial from_json(const std::string& text, FieldPtr f, FramePtr fr) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw RingError(std::string("malformed polynomial json: ") + e.what());
  }
  if (!j.contains("q") || !j.contains("terms")) throw RingError("polynomial json needs q and terms");
  std::uint32_t q = j["q"].get<std::uint32_t>();
  if (!f) f = Field::get(q);
  if (f->q() != q) throw RingError("field mismatch in json");
  if (!fr) {
    if (j.contains("m"))
      fr = VarFrame::S(j["m"].get<int>());
    else if (j.contains("k"))
      fr = VarFrame::T(j["k"].get<int>(), q);
    else if (j.contains("names"))
      fr = VarFrame::named(j["names"].get<std::vector<std::string>>(), j["weights"].get<std::vector<std::uint64_t>>());
    else
      throw RingError("polynomial json needs m, k or names");
  }
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j["terms"]) {
    auto e = t.at("e").get<std::vector<std::int64_t>>();
    if (static_cast<int>(e.size()) != fr->nvars) throw RingError("exponent vector length mismatch");
    std::int64_t c = t.at("c").get<std::int64_t>();
    if (c < 0 || c >= static_cast<std::int64_t>(q)) throw RingError("coefficient out of field");
    Monomial m;
    std::int64_t deg = 0;
    for (int i = 0; i < fr->nvars; ++i) {
      if (e[i] < 0 || e[i] > 0xffff) throw RingError("exponent overflow");
      deg += e[i];
      m.set(i, static_cast<std::uint32_t>(e[i]));
    }
    if (deg >= 0xffff) throw RingError("exponent overflow");
    terms.push_back({m, static_cast<Elem>(c)});
  }
  return Polynomial::from_terms(f, fr, std::move(terms));
}

std::vector<Monomial> monomials_of_degree(int nvars, std::uint32_t d) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(int, std::uint32_t)> rec = [&](int v, std::uint32_t left) {
    if (v == nvars - 1) {
      cur.set(v, left);
      out.push_back(cur);
      cur.set(v, 0);
      return;
    }
    for (std::uint32_t a = left + 1; a-- > 0;) {
      cur.set(v, a);
      rec(v + 1, left - a);
    }
    cur.set(v, 0);
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  rec(0, d);
  return out;
}

}  // namespace orthoinv
