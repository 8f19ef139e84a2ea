#ifndef LMS_JORDAN_HPP
#define LMS_JORDAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/verdict.hpp"

namespace lms::jordan {

// A finite Z-module presented by its addition table.
struct Module {
  int n = 0;
  int zero = 0;
  std::vector<std::vector<int>> add;
  std::vector<int> neg;
  std::vector<std::string> labels;

  int sub(int a, int b) const { return add[a][neg[b]]; }
  int smul(int a, long long k) const;       // integer scalar action
  long long order_of(int a) const;          // additive order
  std::optional<int> halve(int a) const;    // unique b with 2b = a
};

// Quadratic Jordan pair over Z, with both quadratic operator families given
// as full value tables. Side 0 is V^+, side 1 is V^-; Q[s][x] maps V^{1-s}
// to V^{s}.
class JordanPair {
 public:
  Module mod[2];
  std::vector<std::vector<std::vector<int>>> Q;  // Q[s][x][y]
  std::string name;

  void finish();  // derived caches: bilinearizations, invertibility, radical

  int q(int s, int x, int y) const { return Q[s][x][y]; }
  // y Q_{x,z} = {x y z}
  int qbil(int s, int x, int z, int y) const { return qbil_[s][x][z][y]; }
  int triple(int s, int x, int y, int z) const { return qbil(s, x, z, y); }
  // z D_{x,y} = y Q_{x,z}
  int dop(int s, int x, int y, int z) const { return qbil(s, x, z, y); }

  bool invertible(int s, int x) const { return inv_flag_[s][x] != 0; }
  std::optional<int> jp_inverse(int s, int x) const;  // x Q_x^{-1}

  // Bergman operator B_{x,y} on V^s (x in V^s, y in V^{1-s}), as a table.
  std::vector<int> bergman(int s, int x, int y) const;
  bool quasi_invertible(int s, int x, int y) const;
  std::optional<int> quasi_inverse(int s, int x, int y) const;  // x^y
  bool properly_quasi_invertible(int s, int x) const { return radical_[s][x] != 0; }
  const std::vector<char>& radical(int s) const { return radical_[s]; }
  std::vector<int> radical_list(int s) const;

 private:
  std::vector<std::vector<std::vector<std::vector<int>>>> qbil_;  // [s][x][z][y]
  std::vector<std::vector<char>> inv_flag_;
  std::vector<std::vector<char>> radical_;
};

JordanPair make_ring_pair(const ring::Ring& a);
// V+ = V- = R^rank with Q_x y = y q(x) - x f(x,y) for the diagonal quadratic
// form q(x) = sum d_i x_i^2.
JordanPair make_qform_pair(const ring::Ring& r, int rank, const std::vector<ring::Elt>& diag);

// Pair descriptor grammar: "ring:<ring-desc>" | "qform:<ring-desc>:<rank>:<d1,...>".
JordanPair parse_pair(const std::string& descriptor);

// Quadraticity, JP1-JP3 with the linearizations of JP1 and JP2 (the modules
// must be 2-torsion-free), locality, and the radical as the set of properly
// quasi-invertible elements.
CheckList verify_axioms(const JordanPair& v);
// The basic quasi-inversion identities (composition rule, symmetry rule,
// shift rule, radical lifting, Bergman factorization).
CheckList jpbasic_suite(const JordanPair& v);

// Projective space of a local pair with a fixed invertible e in V+:
// points [x,0] for x in V+ and [e,e^-1+y] for y in Rad V-, with the radical
// equivalence.
class ProjectiveSpace {
 public:
  ProjectiveSpace(const JordanPair& v, int e);
  const JordanPair& pair() const { return *v_; }
  int e() const { return e_; }
  int size() const { return static_cast<int>(first_.size() + second_.size()); }
  bool is_second(int i) const { return i >= static_cast<int>(first_.size()); }
  int value(int i) const;                    // x resp. y
  int index_first(int x) const { return x; }
  int index_second(int y) const;             // y must lie in Rad V-
  int canonical_second(int y) const;         // [e,e^-1+y] for arbitrary y in V-
  int point_of_pair(int x, int y) const;     // canonical representative of [x,y]
  bool proj_equivalent(int x, int y, int x2, int y2) const;  // raw definition
  std::string label(int i) const;
  action::EquivSet equiv_set() const;

  action::Perm alpha(int v) const;
  action::Perm zeta(int w) const;
  action::Perm mu(int v) const;  // invertible v; checked against the word zeta alpha zeta

 private:
  const JordanPair* v_;
  int e_;
  int einv_;
  std::vector<int> first_;   // x in V+ (identity order)
  std::vector<int> second_;  // y in Rad V-
  std::vector<int> second_idx_;
};

// The structure M(V) on P(V) with U = {alpha_v} and tau = mu_e.
moufang::MoufangData build_MV(const JordanPair& v, int e);

// Family facts for M(V): point count |V+| + |Rad V-|, at least 3 classes,
// the overlap [t,0] = [e,e^-1-t^-1], alpha_v^{mu_t} = zeta_{v Q_t^-1},
// [x,0]mu_v = [-x^-1 Q_v, 0] and mu_v^2 = id.
CheckList mv_suite(const JordanPair& v, int e);

// Conditions (J1)-(J3) of the pair construction.
CheckList jordan_conditions(const moufang::MoufangData& m);

// The pair recovered from a local Moufang set: V+ = X minus class(inf),
// V- = X minus class(0), mu_{x,z} extended bilinearly from unit pairs and
// Q_x = mu_{x,x}.1/2. The bilinear extension is constructed and tested, not
// assumed; failures throw with a witness.
struct RecoveredPair {
  JordanPair pair;
  std::vector<int> plus_points;   // V+ index -> point
  std::vector<int> minus_points;  // V- index -> point
  std::vector<int> point_to_plus, point_to_minus;
  // mu_{x,z} tables on V- (by V+ index pairs) and the mirrored ones
  std::vector<std::vector<std::vector<int>>> mu2;   // [x][z][y]
  std::vector<std::vector<std::vector<int>>> mu2t;  // [y][w][x]
};

RecoveredPair reconstruct_jordan(const moufang::MoufangData& m, CheckList* report = nullptr);

// Exhaustive check of
//   t a_x -~ x mu~_{t,t a_x} +~ t a_x mu_{x,x} mu~_{t,t} . 1/4
//     = t -~ x mu~_{t,t} . 1/2      (t ~ inf, x !~ inf)
// and, when it holds, verification of the explicit isomorphism onto M(V).
CheckList verify_extra(const moufang::MoufangData& m, CheckList* report = nullptr);

// Jordan pair isomorphism search: a pair of additive bijections (h+,h-)
// with h_s(y Q_x) = h_{1-s}(y) Q'_{h_s(x)}.
std::optional<std::pair<std::vector<int>, std::vector<int>>> pair_iso_check(const JordanPair& a,
                                                                            const JordanPair& b);

}  // namespace lms::jordan

#endif
