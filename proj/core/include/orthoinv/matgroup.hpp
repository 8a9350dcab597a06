#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthoinv/gf.hpp"
#include "orthoinv/ring.hpp"

namespace orthoinv {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GroupKind { oplus, sylow, hook, borel, torus, weyl, stabilizer_x1 };
GroupKind parse_group_kind(const std::string& s);
std::string to_string(GroupKind k);

// n x n matrix over GF(q), rows and columns indexed by S-frame positions.
// Acting on polynomials, variable r goes to sum_c a(r,c) v_c (right action);
// acting on points, g.pt = A pt.
class GroupElem {
 public:
  GroupElem() = default;
  GroupElem(FieldPtr f, int m, std::vector<Elem> a);
  static GroupElem identity(FieldPtr f, int m);

  int m() const { return m_; }
  int n() const { return 2 * m_; }
  const FieldPtr& field() const { return f_; }
  Elem at(int r, int c) const { return a_[r * n() + c]; }
  const std::vector<Elem>& data() const { return a_; }

  GroupElem operator*(const GroupElem& o) const;
  bool operator==(const GroupElem& o) const { return a_ == o.a_; }
  bool is_identity() const;
  // exactly one nonzero per row
  bool is_monomial() const;
  bool is_upper_unitriangular() const;
  bool preserves_form() const;
  std::vector<Elem> apply_point(const std::vector<Elem>& pt, const Field& ext) const;
  std::string to_json() const;

 private:
  FieldPtr f_;
  int m_ = 0;
  std::vector<Elem> a_;
};

struct GroupElemHash {
  std::size_t operator()(const GroupElem& g) const;
};

// hook generators acting on pairs level..m (level 1 is the Hook group itself)
std::vector<GroupElem> hook_generators(int level, int m, std::uint32_t q);
std::vector<GroupElem> generators(GroupKind kind, int m, std::uint32_t q);
// closed-form group orders where known; 0 if not
std::uint64_t expected_order(GroupKind kind, int m, std::uint32_t q);

// images of the frame variables (extra trailing variables stay fixed)
std::vector<Polynomial> action_images(const GroupElem& g, const FieldPtr& f, const FramePtr& fr);
Polynomial act(const Polynomial& f, const GroupElem& g);
bool is_invariant(const Polynomial& f, const std::vector<GroupElem>& gens);

std::vector<GroupElem> closure(const std::vector<GroupElem>& gens, std::size_t cap = 10000000);

std::vector<Polynomial> orbit_linear(const Polynomial& v, const std::vector<GroupElem>& gens);
Polynomial norm(const Polynomial& v, const std::vector<GroupElem>& gens);

// representatives of the right cosets B g of sub in group
std::vector<GroupElem> right_coset_reps(const std::vector<GroupElem>& group, const std::vector<GroupElem>& sub);
// (1/2) sum over right cosets of the Borel subgroup; f must be Borel invariant
Polynomial reynolds(const Polynomial& f, int m, std::uint32_t q, std::size_t cap = 200000);

}  // namespace orthoinv
