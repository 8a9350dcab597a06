#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "orthoinv/gf.hpp"

namespace orthoinv {

constexpr int kMaxVars = 8;

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eight 16-bit exponent slots packed big-endian into two words, so that
// comparing (hi, lo) is lex order with slot 0 most significant and
// multiplication is word addition (callers guard total degree < 2^16).
struct Monomial {
  std::uint64_t hi = 0, lo = 0;

  std::uint32_t get(int i) const {
    return i < 4 ? static_cast<std::uint32_t>((hi >> (48 - 16 * i)) & 0xffff)
                 : static_cast<std::uint32_t>((lo >> (48 - 16 * (i - 4))) & 0xffff);
  }
  void set(int i, std::uint32_t v);
  std::uint32_t degree() const;
  bool divides(const Monomial& o) const;

  Monomial operator*(const Monomial& o) const { return {hi + o.hi, lo + o.lo}; }
  Monomial operator/(const Monomial& o) const { return {hi - o.hi, lo - o.lo}; }
  bool operator==(const Monomial& o) const { return hi == o.hi && lo == o.lo; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  // slot-0-first lex
  bool lex_less(const Monomial& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }

  template <typename H>
  friend H AbslHashValue(H h, const Monomial& m) {
    return H::combine(std::move(h), m.hi, m.lo);
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t x = m.hi * 0x9e3779b97f4a7c15ULL ^ (m.lo + 0x632be59bd9b4e019ULL + (m.hi << 6));
    x ^= x >> 29;
    x *= 0xbf58476d1ce4e5b9ULL;
    return static_cast<std::size_t>(x ^ (x >> 32));
  }
};

enum class FrameKind { S, T, Named };

// Variable frame. S_m: [y_1..y_m, x_m..x_1], index 0 largest.
// T_k: [T_0..T_k], index k largest, weights q^j + 1.
// Named: arbitrary generator names with weights, highest index largest.
struct VarFrame {
  FrameKind kind = FrameKind::S;
  int m = 0;  // S: rank; T: k
  int nvars = 0;
  std::vector<std::string> names;
  std::vector<std::uint64_t> weights;

  static std::shared_ptr<const VarFrame> S(int m);
  static std::shared_ptr<const VarFrame> T(int k, std::uint32_t q);
  static std::shared_ptr<const VarFrame> named(std::vector<std::string> names, std::vector<std::uint64_t> weights);
  // S_m with extra trailing variables (e.g. t, u)
  static std::shared_ptr<const VarFrame> S_ext(int m, std::vector<std::string> extra);

  int y(int j) const { return j - 1; }
  int x(int j) const { return 2 * m - j; }
  bool index0_largest() const { return kind == FrameKind::S; }
  bool same(const VarFrame& o) const;
  std::uint64_t weight(const Monomial& mono) const;
};
using FramePtr = std::shared_ptr<const VarFrame>;

struct MonomialOrder {
  enum class Kind { lex, grevlex, weighted_grevlex };
  Kind kind = Kind::lex;
  std::vector<std::uint64_t> weights;  // empty: frame weights

  static MonomialOrder lex() { return {Kind::lex, {}}; }
  static MonomialOrder grevlex() { return {Kind::grevlex, {}}; }
  static MonomialOrder weighted(std::vector<std::uint64_t> w = {}) { return {Kind::weighted_grevlex, std::move(w)}; }

  // <0, 0, >0
  int compare(const VarFrame& fr, const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Elem c;
  };

  Polynomial() = default;
  Polynomial(FieldPtr f, FramePtr fr) : field_(std::move(f)), frame_(std::move(fr)) {}

  static Polynomial constant(FieldPtr f, FramePtr fr, Elem c);
  static Polynomial variable(FieldPtr f, FramePtr fr, int idx);
  static Polynomial monomial(FieldPtr f, FramePtr fr, Monomial m, Elem c = 1);
  // terms in any order; duplicates combined, zeros dropped
  static Polynomial from_terms(FieldPtr f, FramePtr fr, std::vector<Term> terms);
  // terms already sorted strictly descending, nonzero
  static Polynomial from_sorted(FieldPtr f, FramePtr fr, std::vector<Term> terms);

  const FieldPtr& field() const { return field_; }
  const FramePtr& frame() const { return frame_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  std::uint32_t degree() const;  // max total degree, 0 for zero
  std::uint32_t min_degree() const;
  std::uint64_t weighted_degree() const;  // max frame-weighted degree
  std::uint32_t degree_in(int var) const;
  Elem coeff(const Monomial& m) const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == Monomial{}); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scale(Elem c) const;
  Polynomial mul_term(const Monomial& m, Elem c) const;
  Polynomial pow(std::uint64_t e) const;
  // the p-th power map (exponents * p, coefficients ^ p)
  Polynomial frobenius_p() const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Term lead_term(const MonomialOrder& ord = MonomialOrder::lex()) const;
  // homogeneous component of total degree d
  Polynomial component(std::uint32_t d) const;
  // same terms in another frame of equal arity (no checks beyond arity)
  Polynomial reframe(FramePtr fr) const;

  std::string render() const;
  std::string render_monomial(const Monomial& m) const;

 private:
  void check_compat(const Polynomial& o) const;
  FieldPtr field_;
  FramePtr frame_;
  std::vector<Term> terms_;  // strictly descending lex (slot 0 first)
};

using TPolynomial = Polynomial;

struct DivisionError : RingError {
  DivisionError(const std::string& msg, Polynomial::Term t) : RingError(msg), remainder_term(t) {}
  Polynomial::Term remainder_term;
};

// raises each coefficient and variable to the q^i power
Polynomial frobenius(const Polynomial& f, unsigned i);

Polynomial exact_divide(const Polynomial& f, const Polynomial& g);
// true and quotient if g | f
bool try_divide(const Polynomial& f, const Polynomial& g, Polynomial* quotient);

// algebra homomorphism v_i -> images[i]; images share field and a common frame
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images);
// substitution with a power cache kept across calls
class Substitution {
 public:
  explicit Substitution(std::vector<Polynomial> images);
  ~Substitution();
  Substitution(Substitution&&) noexcept;
  Substitution& operator=(Substitution&&) noexcept;
  Polynomial operator()(const Polynomial& f) const;
  const std::vector<Polynomial>& images() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};
inline Polynomial substitute_linear(const Polynomial& f, const std::vector<Polynomial>& images) {
  return substitute(f, images);
}
// product of many polynomials, balanced
Polynomial product(std::vector<Polynomial> fs);

// accumulate sum of scaled polynomials
class PolyAccumulator {
 public:
  PolyAccumulator(FieldPtr f, FramePtr fr);
  ~PolyAccumulator();
  PolyAccumulator(PolyAccumulator&&) noexcept;
  PolyAccumulator& operator=(PolyAccumulator&&) noexcept;
  void add(const Monomial& m, Elem c);
  void add(const Polynomial& p, Elem scale = 1);
  // add scale * mono * p
  void add_shifted(const Polynomial& p, const Monomial& mono, Elem scale);
  Polynomial take();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// T-side: Phi(T_j) = xis[j]
Polynomial phi_eval(const Polynomial& F, const std::vector<Polynomial>& xis);
std::uint64_t s_degree(const Monomial& m, const VarFrame& tframe);

// text: "2*y1^3*x1 + y2*x2"; T frames use T0..Tk; named frames use their names
Polynomial parse_polynomial(const std::string& text, FieldPtr f, FramePtr fr);
std::string to_json(const Polynomial& f);
Polynomial from_json(const std::string& json, FieldPtr f = nullptr, FramePtr fr = nullptr);

// enumerate monomials of total degree d in n variables (descending lex)
std::vector<Monomial> monomials_of_degree(int nvars, std::uint32_t d);

}  // namespace orthoinv
