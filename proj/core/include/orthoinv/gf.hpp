#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthoinv {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field elements are stored as an index: the coordinate vector (a_0..a_{k-1})
// over GF(p) of a_0 + a_1 t + ... encoded as a_0 + a_1 p + a_2 p^2 + ...
// Prime-subfield elements are therefore their own residues.
using Elem = std::uint16_t;

class Field {
 public:
  static std::shared_ptr<const Field> get(std::uint32_t q);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  bool is_prime() const { return k_ == 1; }
  // monic, low degree first, length k+1
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(std::int64_t v) const;
  Elem primitive_root() const { return prim_; }

  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(const std::vector<std::uint32_t>& c) const;
  std::string render(Elem a) const { return std::to_string(a); }

 private:
  explicit Field(std::uint32_t q);
  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  Elem prim_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

class FieldElem {
 public:
  FieldElem(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {}
  FieldElem(FieldPtr f, std::int64_t v) : f_(std::move(f)), v_(f_->from_int(v)) {}

  const FieldPtr& field() const { return f_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const { return {f_, f_->neg(v_)}; }
  FieldElem pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
  FieldElem inverse() const { return {f_, f_->inv(v_)}; }
  bool operator==(const FieldElem& o) const { return f_ == o.f_ && v_ == o.v_; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

 private:
  void same(const FieldElem& o) const;
  FieldPtr f_;
  Elem v_;
};

// a^(q^i)
FieldElem frobenius(const FieldElem& a, unsigned i);

bool is_odd_prime(std::uint64_t p);
// q = p^k with p odd prime; returns {p,k} or throws
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q);

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t r, std::uint32_t p);
std::uint64_t digit_sum(std::uint64_t d, std::uint64_t base);
std::uint64_t ipow(std::uint64_t b, unsigned e);

struct CatalanCheck {
  bool holds;
  std::uint32_t formula;  // residue of the factorial expression
  std::uint32_t catalan;  // residue of Cat(j)
};
CatalanCheck catalan_congruence(std::uint32_t q, std::uint32_t j);

}  // namespace orthoinv
