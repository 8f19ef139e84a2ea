#ifndef LMS_TREE_HPP
#define LMS_TREE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"
#include "lms/verdict.hpp"

namespace lms::tree {

using ring::Elt;
using ring::Ring;

// Canonical lattice representative (a e_1 + b e_2) O + pi^n L_0 at distance
// n from the base class, with (a,b) the unique projective normal form over
// O/pi^n O. Depth 0 denotes the base class itself.
struct LatticeRep {
  int n = 0;    // depth
  int pt = -1;  // ProjPoint index over Z/p^n (unused at depth 0)
  bool operator==(const LatticeRep& o) const { return n == o.n && pt == o.pt; }
};

// The p-adic chain O = Z_p seen only through its finite quotients
// O/pi^n O = Z/p^n for n <= depth_cap.
class TruncatedDVR {
 public:
  TruncatedDVR(long long p, int depth_cap);
  long long p() const { return p_; }
  int depth_cap() const { return cap_; }
  const Ring& level(int n) const;                    // Z/p^n, 1 <= n <= cap
  const projective::ProjLine& line(int n) const;     // P^1(Z/p^n)

  std::vector<LatticeRep> sphere(int n) const;       // T_n, canonical order
  projective::ProjPoint chi(const LatticeRep& l) const;
  LatticeRep from_proj(int n, const projective::ProjPoint& p) const;

  // (a,b) coefficients of the representative at its level
  std::pair<Elt, Elt> coeffs(const LatticeRep& l) const;
  // reduction T_n -> T_{n-1}: L -> L + pi^{n-1} L_0
  LatticeRep reduce(const LatticeRep& l) const;
  bool adjacent(const LatticeRep& a, const LatticeRep& b) const;

  // g over Z/p^cap with det = 1 at the level; acts on T_n through reduction
  action::Perm sphere_action(int n, const projective::ProjLine::Mat2& g) const;
  // kernel of SL_2(Z/p^cap) acting on T_n, with the scalar description
  struct KernelReport {
    long long sl2_order = 0;
    long long kernel_order = 0;
    long long image_order = 0;
    bool kernel_is_scalars = false;
  };
  KernelReport kernel(int n) const;

  // all of SL_2(Z/p^N) as matrices over level N (deterministic order)
  std::vector<projective::ProjLine::Mat2> sl2(int n) const;

 private:
  long long p_;
  int cap_;
  std::vector<Ring> rings_;                       // index n-1 holds Z/p^n
  std::vector<projective::ProjLine> lines_;
};

// Union of the spheres up to depth N is a tree rooted at the base class:
// acyclic, connected, root degree |T_1|, internal growth p, and BFS depth
// equal to the lattice level.
CheckList graph_check(const TruncatedDVR& t, int depth);

// chi_n is a bijection T_n -> P^1(Z/p^n) intertwining the sphere action
// with M(Z/p^n); the verdict includes the full isomorphism check of the two
// structures and the commuting reduction squares.
CheckList verify_sphere_iso(const TruncatedDVR& t, int n, const moufang::VerifyOptions& opt = {});

// Lifting and finite inverse-limit facts: every level-n representative
// lifts, and compatible chains up to depth N biject with P^1(Z/p^N).
CheckList inverse_system_checks(const TruncatedDVR& t, int depth);

// DOT-format adjacency dump of the tree up to `depth`.
std::string dot_dump(const TruncatedDVR& t, int depth);

}  // namespace lms::tree

#endif
