#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orthoinv/matgroup.hpp"
#include "orthoinv/ring.hpp"
#include "orthoinv/steenrod.hpp"

namespace orthoinv {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Row echelon form over sparse vectors keyed by monomials (descending lex).
// Pivot rows are normalised and have pairwise distinct leading keys, so a
// vector lies in the span iff top reduction drives it to zero.
class SparseEchelon {
 public:
  using Vec = std::vector<Polynomial::Term>;
  using Combo = std::vector<std::pair<std::uint32_t, Elem>>;  // sorted by id

  explicit SparseEchelon(FieldPtr f, bool track = false);
  // true if v was independent of the rows so far
  bool insert(Vec v, std::uint32_t id = 0);
  // top-reduce; on return v = residual and, when tracking,
  // original = residual + sum c * inserted[id]
  Vec reduce(Vec v, Combo* combo = nullptr) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  FieldPtr f_;
  bool track_;
  std::vector<Vec> rows_;
  std::vector<Combo> hist_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> pivots_;
};

// dim of the degree-d invariants of the group generated by gens (S_m, GF(q))
std::uint64_t invariant_dimension(const std::vector<GroupElem>& gens, std::uint32_t d, int m, std::uint32_t q);

struct ExprTerm {
  std::vector<std::uint32_t> exps;
  Elem c;
};

struct Expression {
  bool found = false;
  std::string method;       // "subduction" or "linear-algebra"
  std::vector<ExprTerm> terms;
  std::vector<std::string> names;
  std::vector<std::uint64_t> degrees;
  Polynomial residue;       // nonzero certificate when not found
  std::string certificate;  // human-readable reason when not found
  // rep as a polynomial in a named frame (needs at most kMaxVars generators)
  Polynomial as_polynomial(const FieldPtr& f) const;
  // rep in the T_k frame (generators xi_0..xi_k)
  Polynomial as_T(const FieldPtr& f, std::uint32_t q) const;
};

struct ExpressOptions {
  bool allow_subduction = true;
  std::size_t max_products = 400000;
};

// write f as a polynomial in gens; verified by re-evaluation when found
Expression express(const Polynomial& f, const std::vector<Polynomial>& gens, std::vector<std::string> names = {},
                   const ExpressOptions& opt = {});
// over xi_0..xi_k of the catalog matching f's frame
Expression express_over_xi(const Polynomial& f, int k);
Polynomial evaluate_expression(const Expression& e, const std::vector<Polynomial>& gens);

// valuation: least total T-degree of a term; nullopt for zero
std::optional<std::uint32_t> r_valuation(const Polynomial& F);
// true iff every term of F has T_0-exponent >= k (congruence to zero mod xi_0^k)
bool divisible_by_T0_power(const Polynomial& F, std::uint32_t k);

// Hilbert series coefficients 0..D of a free module over a polynomial ring
std::vector<std::int64_t> hilbert_block(const std::vector<std::uint64_t>& hsop_degrees,
                                        const std::vector<std::uint64_t>& basis_degrees, std::uint32_t D);

// dim of the degree-d part of the algebra generated by gens
std::uint64_t algebra_dimension(const std::vector<Polynomial>& gens, std::uint32_t d);
// degree-wise linear independence of the products of gens up to D
Verdict independence_check(const std::vector<Polynomial>& gens, std::uint32_t D);

// common zeros in GF(q^ext)^n; ext = 2 requires q prime
std::vector<std::vector<Elem>> variety_scan(const std::vector<Polynomial>& polys, unsigned ext);
Elem evaluate(const Polynomial& f, const std::vector<Elem>& pt, const Field& ext);

// exponent vectors e with sum e_i w_i = d
std::vector<std::vector<std::uint32_t>> weighted_compositions(const std::vector<std::uint64_t>& w, std::uint64_t d,
                                                               std::size_t cap);

}  // namespace orthoinv
