#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orthoinv/ring.hpp"

namespace orthoinv {

struct Verdict {
  bool ok = true;
  std::string witness;
};

// series[i] = P^i(f), i = 0..deg f
std::vector<Polynomial> steenrod_series(const Polynomial& f);
Polynomial steenrod(const Polynomial& f, std::uint64_t i);

// out[l] = coefficient of t^{(q-1) l} in psi(f) = P(-t^{q-1}) applied after
// raising: psi(v) = v^q - v t^{q-1}
std::vector<Polynomial> psi_series(const Polynomial& f);
// psi as a polynomial in S_ext(m, {"t"})
Polynomial psi_with_t(const Polynomial& f);

// F_j(v) for each frame variable, F_0(v) = v,
// F_k(v) = F_{k-1}(v)^q - F_{k-1}(x_k)^{q-1} F_{k-1}(v)
std::vector<Polynomial> psi_j_images(const FieldPtr& f, const FramePtr& fr, int j);
Polynomial psi_j(const Polynomial& f, int j);
// S_{m-1} -> S_m, y_j -> y_{j+1}, x_j -> x_{j+1}
Polynomial sigma(const Polynomial& f);
Polynomial phi_iso(const Polynomial& f);

// same terms, frame with extra trailing variables
Polynomial embed(const Polynomial& f, const FramePtr& wider);

// Steenrod operation computed formally on T-polynomials from the total
// operation on the T_j; the result lives one T index higher
Polynomial steenrod_formal(const Polynomial& F, std::uint64_t i);

Verdict check_cartan(const Polynomial& f, const Polynomial& g, std::uint64_t i);
// P^i P^j f against the Adem expansion, i < q j
Verdict check_adem(std::uint64_t i, std::uint64_t j, const Polynomial& f);
Verdict check_stability(const Polynomial& f);

}  // namespace orthoinv
