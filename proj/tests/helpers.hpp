#pragma once

#include <random>

#include "orthoinv/invariants.hpp"
#include "orthoinv/ring.hpp"

namespace th {

using namespace orthoinv;

inline Polynomial P(const std::string& s, std::uint32_t q, int m) {
  return parse_polynomial(s, Field::get(q), VarFrame::S(m));
}

inline Polynomial random_poly(std::mt19937_64& rng, const FieldPtr& F, const FramePtr& fr, std::uint32_t deg,
                              int terms) {
  std::vector<Polynomial::Term> ts;
  std::uniform_int_distribution<int> var(0, fr->nvars - 1);
  std::uniform_int_distribution<std::uint32_t> co(1, F->q() - 1);
  for (int t = 0; t < terms; ++t) {
    Monomial mo;
    for (std::uint32_t d = 0; d < deg; ++d) {
      int v = var(rng);
      mo.set(v, mo.get(v) + 1);
    }
    ts.push_back({mo, static_cast<Elem>(co(rng))});
  }
  return Polynomial::from_terms(F, fr, ts);
}

}  // namespace th
