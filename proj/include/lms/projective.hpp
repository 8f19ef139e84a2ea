#ifndef LMS_PROJECTIVE_HPP
#define LMS_PROJECTIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/verdict.hpp"

namespace lms::projective {

using ring::Elt;
using ring::Ring;

// A point of P^1(R) in its unique representative: [1,r] with r in R, or
// [m,1] with m in the maximal ideal.
struct ProjPoint {
  bool second = false;  // true for [m,1]
  Elt coord = 0;        // r resp. m
  bool operator==(const ProjPoint& o) const { return second == o.second && coord == o.coord; }
};

// Indexed projective line: points [1,r] in ring order, then [m,1] in ideal
// order; [1,r] ~ [1,r'] iff r-r' in m, and all [m,1] are equivalent.
class ProjLine {
 public:
  explicit ProjLine(const Ring& r);
  const Ring& R() const { return *r_; }
  int size() const { return static_cast<int>(points_.size()); }
  const ProjPoint& point(int i) const { return points_[i]; }
  int index_of(const ProjPoint& p) const;
  int index_first(Elt r) const { return first_idx_[r]; }   // [1,r]
  int index_second(Elt m) const { return second_idx_[m]; } // [m,1]
  std::string label(int i) const;
  action::EquivSet equiv_set() const;

  struct Mat2 {
    Elt a, b, c, d;  // row-major [[a,b],[c,d]]
  };
  Elt det(const Mat2& g) const;
  // right action of an invertible matrix: [x,y] -> [x a + y c, x b + y d]
  int apply(const Mat2& g, int i) const;
  action::Perm perm_of(const Mat2& g) const;

 private:
  const Ring* r_;
  std::vector<ProjPoint> points_;
  std::vector<int> first_idx_, second_idx_;
};

// The projective structure M(R): U the upper unipotent subgroup acting on
// (P^1(R),~), tau = [[0,-1],[1,0]].
moufang::MoufangData build_MR(const Ring& r);

// Enumerates SL_2(R) and returns the induced faithful permutation group on
// P^1(R), i.e. PSL_2(R) in its natural action.
action::PermGroup psl2_perm_group(const Ring& r);

// Family facts for M(R): mu_{[1,r]} and h_{[1,r]} as explicit matrices,
// ~[1,r] = [1,-r], specialness/abelian-ness, and equality of the closure
// with the faithful PSL_2(R) action.
CheckList mr_suite(const moufang::MoufangData& m, const Ring& r, long long cap);

// A carrier-indexed commutative ring recovered from a local Moufang set:
// element i is the i-th point of X minus class(inf) in point order.
struct RecoveredRing {
  Ring ring;                    // table-backed
  std::vector<int> carrier;     // ring element -> point of X
  std::vector<int> point_to_elt;  // point -> ring element (-1 off carrier)
  int e_point;                  // the chosen multiplicative identity
};

// Conditions (R1)-(R4) of the ring construction; each is reported.
CheckList ring_conditions(const moufang::MoufangData& m);

// Builds the ring on X minus class(inf) with x+y = 0 alpha_x alpha_y and
// xy = x R_y . 1/2, verifying the ring axioms, locality and the inversion
// rule x^{-1} = (-x) mu_e exhaustively. Throws PreconditionError when one
// of (R1)-(R4) fails, naming it.
RecoveredRing reconstruct_ring(const moufang::MoufangData& m, int e_point, CheckList* report = nullptr);

// Exhaustive check of the characterization identity
//   x mu_e alpha_y = y R_x alpha_{-2e} mu_e R_x mu_e  (x ~ 0, y !~ inf)
// and, when it holds, verification that the explicit two-case point map is
// an isomorphism onto M(R) for the recovered ring R.
CheckList verify_star(const moufang::MoufangData& m, int e_point);

// Searches for a unital ring isomorphism by mapping a generating set of the
// additive group; returns the element map when found.
std::optional<std::vector<Elt>> ring_iso_check(const Ring& a, const Ring& b);

}  // namespace lms::projective

#endif
