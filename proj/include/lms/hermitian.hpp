#ifndef LMS_HERMITIAN_HPP
#define LMS_HERMITIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/verdict.hpp"

namespace lms::hermitian {

using ring::Elt;
using ring::Ring;

// A commutative local ring with involution *, a central eps with
// eps eps* = 1, and a form parameter Lambda_min <= Lambda <= Lambda_max.
struct FormRing {
  Ring R;
  Elt eps;
  std::vector<Elt> lambda;       // sorted element list
  std::vector<char> in_lambda;
  std::string lambda_spec;

  Elt lambda_canon(Elt r) const;  // least element of r + Lambda
};

// lambda_spec: "min" | "max" | "zero". The ring must carry an involution
// (possibly trivial) and eps must satisfy eps eps* = 1.
FormRing make_form_ring(Ring r, Elt eps, const std::string& lambda_spec);
std::vector<Elt> lambda_min(const Ring& r, Elt eps);
std::vector<Elt> lambda_max(const Ring& r, Elt eps);

// Form-parameter facts: the sandwich inclusions, r* Lambda r <= Lambda, and
// Lambda_min = Lambda_max whenever some central r has r + r* invertible.
CheckList form_ring_checks(const FormRing& fr);

// W = R^rank with the *-form h(x,y) = sum_i x_i* y_i, the epsilon-hermitian
// f(x,y) = h(x,y) + h(y,x)* eps and the coset-valued q(x) = h(x,x) + Lambda.
class HermModule {
 public:
  HermModule(const FormRing& fr, int rank);
  const FormRing& form_ring() const { return *fr_; }
  int rank() const { return rank_; }
  int size() const { return n_; }
  int add(int x, int y) const { return add_[x][y]; }
  int neg(int x) const { return neg_[x]; }
  int smul(int x, Elt t) const { return smul_[x][t]; }  // x t
  Elt h(int x, int y) const { return h_[x][y]; }
  Elt f(int x, int y) const { return f_[x][y]; }
  Elt q_canon(int x) const { return qcanon_[x]; }  // canonical coset representative
  bool in_Wm(int x) const { return wm_[x] != 0; }
  std::string label(int x) const;

  // (LQ1)-(LQ3), epsilon-hermitian-ness of f, the *-form law for h, and
  // anisotropy (with a witness vector on failure).
  CheckList quadratic_form_checks() const;

 private:
  const FormRing* fr_;
  int rank_, n_;
  std::vector<std::vector<int>> add_, smul_;
  std::vector<int> neg_;
  std::vector<std::vector<Elt>> h_, f_;
  std::vector<Elt> qcanon_;
  std::vector<char> wm_;
  std::vector<Elt> coords(int x) const;
};

// A point of H(W,q) in canonical form: [1,x,r] with q(x) = r + Lambda, or
// [r,x,1] with r in m and q(x) = r* + Lambda.
struct HPoint {
  bool second = false;
  int x = 0;
  Elt r = 0;
  bool operator==(const HPoint& o) const { return second == o.second && x == o.x && r == o.r; }
};

class HermSpace {
 public:
  HermSpace(const FormRing& fr, int rank);
  const HermModule& module() const { return w_; }
  int size() const { return static_cast<int>(points_.size()); }
  const HPoint& point(int i) const { return points_[i]; }
  int index_of(const HPoint& p) const;
  int canon_triple(Elt a, int x, Elt c) const;  // canonical point of [a,x,c]
  std::string label(int i) const;
  action::EquivSet equiv_set() const;

  action::Perm alpha(int x, Elt r) const;  // requires q(x) = r + Lambda
  action::Perm zeta(Elt r, int x) const;   // requires q(x) = r* + Lambda
  action::Perm tau() const;
  action::Perm mu_closed(int x, Elt r) const;  // unit [1,x,r]; printed closed form
  action::Perm mu_word(int x, Elt r) const;    // the word zeta alpha zeta

  std::vector<std::pair<int, Elt>> alpha_params() const;  // all (x,r) of U
  std::vector<std::pair<Elt, int>> zeta_params() const;   // all (r,x) of U_0

 private:
  const FormRing* fr_;
  HermModule w_;
  std::vector<HPoint> points_;
  std::vector<std::vector<int>> first_idx_;   // [x][r] -> point
  std::vector<std::vector<int>> second_idx_;  // [x][r] -> point
};

// The Hermitian family: builds the seed on H(W,q) and verifies the axioms
// through the moufang machinery. Preconditions (anisotropy, LQ1-3, form
// ring facts) are checked and failures throw with a witness.
moufang::MoufangData build_hermitian(const FormRing& fr, int rank, CheckList* report = nullptr);

// Closed-form mu action versus the composed word, the conjugation rule
// alpha^mu = zeta_{point image}, mu inverses, gamma = zeta_{p tau}, the
// equivalence well-definedness on doubly representable points, and the
// final hinge U^mu = U_0.
CheckList mu_action_check(const FormRing& fr, int rank);

// ---- Orthogonal family (independent implementation, R-valued q) ----

struct OPoint {
  bool second = false;
  int x = 0;
  bool operator==(const OPoint& o) const { return second == o.second && x == o.x; }
};

class OrthSpace {
 public:
  OrthSpace(const Ring& r, int rank, std::vector<Elt> diag);
  const Ring& R() const { return *r_; }
  int size() const { return static_cast<int>(points_.size()); }
  const OPoint& point(int i) const { return points_[i]; }
  Elt q(int x) const { return q_[x]; }
  Elt f(int x, int y) const { return f_[x][y]; }
  bool in_Wm(int x) const { return wm_[x] != 0; }
  int wsize() const { return n_; }
  int wadd(int x, int y) const { return add_[x][y]; }
  int wneg(int x) const { return neg_[x]; }
  int wsmul(int x, Elt t) const { return smul_[x][t]; }
  std::string label(int i) const;
  action::EquivSet equiv_set() const;
  // anisotropy check with witness
  std::optional<int> isotropic_witness() const;

  action::Perm alpha(int x) const;  // alpha_{[1,x,q(x)]}
  action::Perm zeta(int x) const;   // zeta_{[q(x),x,1]}
  action::Perm tau() const;
  action::Perm mu_closed(int x) const;  // x not in Wm
  action::Perm mu_word(int x) const;

 private:
  const Ring* r_;
  int rank_, n_;
  std::vector<std::vector<int>> add_, smul_;
  std::vector<int> neg_;
  std::vector<Elt> q_;
  std::vector<std::vector<Elt>> f_;
  std::vector<char> wm_;
  std::vector<OPoint> points_;
  std::vector<int> first_idx_, second_idx_;
  int canon_triple(Elt a, int x, Elt c) const;
  std::vector<Elt> coords(int x) const;
};

// The orthogonal family M(W,q) for the diagonal form q(x) = sum d_i x_i^2;
// rejects isotropic forms with a witness vector.
moufang::MoufangData build_orthogonal(const Ring& r, int rank, const std::vector<Elt>& diag,
                                      CheckList* report = nullptr);

}  // namespace lms::hermitian

#endif
