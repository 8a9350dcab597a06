#include "orthoinv/gf.hpp"

#include <map>
#include <mutex>

namespace orthoinv {

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
  if (q < 3 || q % 2 == 0) throw FieldError("q must be an odd prime power, got " + std::to_string(q));
  std::uint32_t p = 0;
  for (std::uint32_t d = 3; d <= q; d += 2)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1 || !is_odd_prime(p)) throw FieldError("q must be an odd prime power, got " + std::to_string(q));
  return {p, k};
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

namespace {

// fixed irreducible moduli, low degree first (Conway polynomials beyond degree 2)
std::vector<std::uint32_t> fixed_modulus(std::uint32_t q) {
  static const std::map<std::uint32_t, std::vector<std::uint32_t>> table = {
      {9, {1, 0, 1}},       {25, {2, 0, 1}},      {49, {1, 0, 1}},          {121, {1, 0, 1}},
      {169, {2, 0, 1}},     {27, {1, 2, 0, 1}},   {81, {2, 0, 0, 2, 1}},    {125, {3, 3, 0, 1}},
      {243, {1, 2, 0, 0, 0, 1}}};
  auto it = table.find(q);
  if (it == table.end()) throw FieldError("no modulus for q=" + std::to_string(q) + " (supported q <= 243)");
  return it->second;
}

}  // namespace

Field::Field(std::uint32_t q) : q_(q) {
  auto [p, k] = prime_power(q);
  p_ = p;
  k_ = k;
  if (q > 243) throw FieldError("q=" + std::to_string(q) + " exceeds the supported range (<= 243)");
  modulus_ = k == 1 ? std::vector<std::uint32_t>{0, 1} : fixed_modulus(q);

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    auto ca = coords(static_cast<Elem>(a));
    std::vector<std::uint32_t> cn(k);
    for (std::uint32_t i = 0; i < k; ++i) cn[i] = (p - ca[i]) % p;
    neg_[a] = from_coords(cn);
    for (std::uint32_t b = 0; b < q; ++b) {
      auto cb = coords(static_cast<Elem>(b));
      std::vector<std::uint32_t> cs(k);
      for (std::uint32_t i = 0; i < k; ++i) cs[i] = (ca[i] + cb[i]) % p;
      add_[a * q + b] = from_coords(cs);
      std::vector<std::uint32_t> prod(2 * k, 0);
      for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
      for (std::uint32_t d = 2 * k - 1; d >= k && d > 0; --d) {
        std::uint32_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (std::uint32_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * modulus_[i]) % p;
      }
      prod.resize(k);
      mul_[a * q + b] = from_coords(prod);
    }
  }
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<Elem>(b);
  for (std::uint32_t a = 1; a < q; ++a)
    if (!inv_[a]) throw FieldError("modulus is reducible for q=" + std::to_string(q));
  for (std::uint32_t g = 2; g < q; ++g) {
    std::uint32_t order = 1;
    Elem x = static_cast<Elem>(g);
    while (x != 1) {
      x = mul(x, static_cast<Elem>(g));
      ++order;
    }
    if (order == q - 1) {
      prim_ = static_cast<Elem>(g);
      break;
    }
  }
}

std::shared_ptr<const Field> Field::get(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<const Field>(new Field(q));
  cache.emplace(q, f);
  return f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("division by zero");
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::coords(Elem a) const {
  std::vector<std::uint32_t> c(k_);
  std::uint32_t v = a;
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

Elem Field::from_coords(const std::vector<std::uint32_t>& c) const {
  std::uint32_t v = 0;
  for (std::uint32_t i = k_; i-- > 0;) {
    if (c[i] >= p_) throw FieldError("coordinate out of range");
    v = v * p_ + c[i];
  }
  return static_cast<Elem>(v);
}

void FieldElem::same(const FieldElem& o) const {
  if (f_ != o.f_) throw FieldError("field mismatch");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  same(o);
  return {f_, f_->add(v_, o.v_)};
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  same(o);
  return {f_, f_->sub(v_, o.v_)};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  same(o);
  return {f_, f_->mul(v_, o.v_)};
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  same(o);
  return {f_, f_->div(v_, o.v_)};
}

FieldElem frobenius(const FieldElem& a, unsigned i) {
  FieldElem r = a;
  for (unsigned s = 0; s < i; ++s) r = r.pow(a.field()->q());
  return r;
}

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t r, std::uint32_t p) {
  if (r > n) return 0;
  std::uint64_t res = 1;
  while (n || r) {
    std::uint32_t a = n % p, b = r % p;
    if (b > a) return 0;
    // C(a,b) mod p with a < p via multiplicative formula and Fermat inverse
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t i = 0; i < b; ++i) {
      num = num * (a - i) % p;
      den = den * (i + 1) % p;
    }
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    res = res * num % p * inv % p;
    n /= p;
    r /= p;
  }
  return static_cast<std::uint32_t>(res);
}

std::uint64_t digit_sum(std::uint64_t d, std::uint64_t base) {
  std::uint64_t s = 0;
  while (d) {
    s += d % base;
    d /= base;
  }
  return s;
}

namespace {

// n! as p^v * u with u a unit mod p
struct PFact {
  std::uint64_t v = 0;
  std::uint64_t u = 1;
};

PFact pfact(std::uint64_t n, std::uint32_t p) {
  PFact f;
  for (std::uint64_t i = 2; i <= n; ++i) {
    std::uint64_t x = i;
    while (x % p == 0) {
      x /= p;
      ++f.v;
    }
    f.u = f.u * (x % p) % p;
  }
  return f;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint32_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// residue of num!/(d1! d2!) times extra (a unit-or-not integer factor)
std::uint32_t ratio_mod(std::uint64_t extra, std::uint64_t num, std::uint64_t d1, std::uint64_t d2, std::uint32_t p) {
  PFact a = pfact(num, p), b = pfact(d1, p), c = pfact(d2, p);
  std::uint64_t v = a.v;
  std::uint64_t e = extra;
  while (e && e % p == 0) {
    e /= p;
    ++v;
  }
  if (extra == 0) return 0;
  if (v < b.v + c.v) throw FieldError("non-integral ratio");
  if (v > b.v + c.v) return 0;
  return static_cast<std::uint32_t>(a.u * (e % p) % p * inv_mod(b.u * c.u % p, p) % p);
}

}  // namespace

CatalanCheck catalan_congruence(std::uint32_t q, std::uint32_t j) {
  auto [p, k] = prime_power(q);
  (void)k;
  if (j > (q - 1) / 2) throw FieldError("j out of range");
  std::uint32_t f = ratio_mod(q - 1, q - 2 - j, j, q - 1 - 2 * j, p);
  if (j % 2 == 1) f = (p - f) % p;
  // Cat(j) = (2j)! / (j! (j+1)!)
  std::uint32_t c = ratio_mod(1, 2 * j, j, j + 1, p);
  return {f == c, f, c};
}

}  // namespace orthoinv
