#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orthoinv/matgroup.hpp"
#include "orthoinv/ring.hpp"

namespace orthoinv {

struct SubductionStep {
  std::vector<std::uint32_t> exps;  // generator exponents
  Elem c;
};

struct SubductionTrace {
  Polynomial input;
  std::vector<SubductionStep> steps;
  Polynomial residue;
  bool to_zero() const { return residue.is_zero(); }
  std::string to_json() const;
};

// exponent vector e with prod lts[i]^e[i] == target; largest lead monomial tried first
std::optional<std::vector<std::uint32_t>> factor_monomial(const Monomial& target, const std::vector<Monomial>& lts);

SubductionTrace subduct(const Polynomial& f, const std::vector<Polynomial>& gens,
                        const MonomialOrder& ord = MonomialOrder::lex(), std::size_t max_steps = 1000000);
// input == sum c * prod gens^e + residue
bool reconstructs(const SubductionTrace& tr, const std::vector<Polynomial>& gens);

struct NamedGen {
  std::string name;
  std::uint64_t degree;
  std::function<Polynomial()> build;
};

struct Tete {
  std::string label;
  std::uint64_t degree;
  std::function<Polynomial()> build;
};

struct KhovanskiiData {
  GroupKind kind;
  int m;
  std::uint32_t q;
  std::vector<NamedGen> gens;
  std::vector<Tete> tetes;
};

// hook: W, x1, N(y1), xi_0..xi_{n-3}; sylow: orbit products and psi_j(xi_i);
// borel: N^{q-1}, N(y)N(x) and psi_j(xi_i). Elements are built lazily.
KhovanskiiData khovanskii_data(GroupKind kind, int m, std::uint32_t q);

// number of distinct products of lead monomials per degree 0..D
std::vector<std::uint64_t> lead_monoid_counts(const std::vector<Monomial>& lts, std::uint32_t D);

struct KhovanskiiVerdict {
  bool ok = true;
  bool counts_ok = true;
  bool tetes_ok = true;
  std::vector<std::uint64_t> monoid_counts, invariant_dims;
  std::vector<std::string> tetes_checked;
  std::string witness;
};

KhovanskiiVerdict khovanskii_verify(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& tetes,
                                    const std::vector<GroupElem>& group_gens, std::uint32_t D, int m,
                                    std::uint32_t q);
// generators of degree <= D; tetes of degree <= tete_cap (default D)
KhovanskiiVerdict khovanskii_verify(const KhovanskiiData& kd, std::uint32_t D, std::uint64_t tete_cap = 0);

}  // namespace orthoinv
