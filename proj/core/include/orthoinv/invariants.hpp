#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "orthoinv/matgroup.hpp"
#include "orthoinv/ring.hpp"

namespace orthoinv {

// e(i,m) = sum_{j=1}^{i} q^{n-1-j}
std::uint64_t e_index(int i, int m, std::uint32_t q);
// Catalan number mod p, as C(2j,j) - C(2j,j+1)
Elem catalan_mod(std::uint32_t j, const Field& F);

// Lazily built invariants of O+(2m,q), shared per (m,q).
class Catalog {
 public:
  static std::shared_ptr<Catalog> get(int m, std::uint32_t q);

  int m() const { return m_; }
  int n() const { return 2 * m_; }
  std::uint32_t q() const { return q_; }
  const FieldPtr& field() const { return field_; }
  const FramePtr& frame() const { return frame_; }
  Polynomial var(int idx) const { return Polynomial::variable(field_, frame_, idx); }
  Polynomial y(int j) const { return var(frame_->y(j)); }
  Polynomial x(int j) const { return var(frame_->x(j)); }
  Polynomial one() const { return Polynomial::constant(field_, frame_, 1); }

  const Polynomial& xi(int i);
  // orbit products over the Sylow subgroup
  const Polynomial& Ny(int i);
  const Polynomial& Nx(int i);
  const std::vector<Polynomial>& orbit_y(int i);
  const std::vector<Polynomial>& orbit_x(int i);
  // orbit product of a variable over a subgroup
  const Polynomial& norm_of(GroupKind k, int var_index);
  const Polynomial& u();
  // d_{i,m} = P^{e(i,m)}(u)/u; d(0) = 1
  const Polynomial& d(int i);
  const Polynomial& psi_xi(int j, int i);
  const std::vector<GroupElem>& gens(GroupKind k);

 private:
  Catalog(int m, std::uint32_t q);
  int m_;
  std::uint32_t q_;
  FieldPtr field_;
  FramePtr frame_;
  std::recursive_mutex mu_;
  std::map<int, Polynomial> xi_, ny_, nx_, d_;
  std::map<int, std::vector<Polynomial>> oy_, ox_;
  std::map<std::pair<int, int>, Polynomial> psi_;
  std::map<std::pair<GroupKind, int>, Polynomial> norms_;
  std::map<GroupKind, std::vector<GroupElem>> gens_;
  std::unique_ptr<Polynomial> u_;
};

// c22 = sum_j Cat(j) T0^{j(q+1)+1} T1^{q-1-2j}, in the T_k frame
Polynomial c22(std::uint32_t q, int k = 3);
// maximal minor of the m x (m+1) matrix (xi_{n-j-k+1}^{q^{j-1}}) with column i+1 removed, in T_{n-1}
Polynomial minor_M(int i, int m, std::uint32_t q);

// Dickson invariants d_1..d_r of GL_r(q) in the given linear forms; out[i-1] = d_i,
// deg d_i = q^r - q^{r-i}
std::vector<Polynomial> dickson(const std::vector<Polynomial>& vars);

struct NamedPolys {
  std::vector<std::string> names;
  std::vector<Polynomial> polys;
};

// homogeneous system of parameters for the block decomposition of each group
NamedPolys hsop(GroupKind kind, int m, std::uint32_t q);

struct BlockData {
  std::vector<std::string> hsop_names;
  std::vector<std::uint64_t> hsop_degrees;
  std::vector<std::string> factor_names;  // module basis = monomials in these
  std::vector<std::uint64_t> factor_degrees;
  std::vector<std::uint32_t> top_exponents;  // factor exponent bounds (inclusive)
  std::vector<std::uint64_t> basis_degrees;
  std::uint64_t rank() const { return basis_degrees.size(); }
};
// kinds: oplus (Gamma), sylow (Gamma0), hook (B_H), borel (B_H C times norm powers);
// sylow_bhc selects the psi_j(xi_i) basis for the Sylow subgroup
BlockData block_basis(GroupKind kind, int m, std::uint32_t q, bool sylow_bhc = false);

// x1-adic valuation, UINT32_MAX for zero
std::uint32_t nu1(const Polynomial& h, int x1_index);

struct Compliance {
  bool compliant = true;
  bool strongly = true;
  std::uint32_t first_bad_k = 0;  // first k breaking strong compliance (0 if none)
  std::uint32_t max_y1_degree = 0;
};
// write f = sum c_k y1^k, compare nu1(c_k) with the base-q digit sum of k
Compliance compliance(const Polynomial& f, std::uint32_t q);

// prod_{a in F_q} f(y1 + a u, t - a x1), u and t frame variable indices
Polynomial t_operator(const Polynomial& f, int u_var, int t_var);

}  // namespace orthoinv
