#ifndef LMS_MOUFANG_HPP
#define LMS_MOUFANG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lms/action.hpp"
#include "lms/verdict.hpp"

namespace lms::moufang {

using action::EquivSet;
using action::Perm;
using action::PermGroup;

// The input of the main construction: a set with equivalence relation, a
// group U of equivalence-preserving permutations (listed in full), and a
// permutation tau. Conditions, checked by construct():
//   (C1)  U fixes inf and acts sharply transitively on X minus class(inf);
//   (C1') the induced action of U is sharply transitive on the classes
//         other than class(inf);
//   (C2)  inf.tau !~ inf and inf.tau^2 = inf.
struct Seed {
  EquivSet X;
  std::vector<Perm> U;
  Perm tau;
  int inf = -1;
  std::string name;
};

struct VerifyOptions {
  long long cap = 50000;   // exhaustive quantifier bound on |G|
  std::uint64_t seed = 0;  // RNG seed for sampled fallbacks
  int samples = 2000;      // sample count when a quantifier is downgraded
};

// Result of a homomorphism check. theta[x] maps each element of U_x (by its
// position in root_group(x)) to the corresponding element of V_{x.phi}.
struct HomReport {
  bool ok = false;
  std::string witness;
  std::vector<std::vector<Perm>> theta;
};

// The complete derived data of Construction M(U,tau): the root group family
// {U_x}, the basis (0,inf) with 0 := inf.tau, alpha/gamma maps and caches.
class MoufangData {
 public:
  // Throws PreconditionError naming the violated condition (C1/C1'/C2).
  static MoufangData construct(Seed seed);

  const Seed& seed() const { return seed_; }
  const EquivSet& X() const { return seed_.X; }
  const std::string& name() const { return seed_.name; }
  int inf() const { return inf_; }
  int zero() const { return zero_; }
  int apply(const Perm& p, int x) const { return p.img[x]; }

  bool is_unit(int x) const {
    return !X().equivalent(x, zero_) && !X().equivalent(x, inf_);
  }
  const std::vector<int>& units() const { return units_; }
  int least_unit() const { return units_.front(); }

  int neg(int x) const;                   // x !~ inf
  const Perm& alpha(int x) const;         // x !~ inf
  Perm gamma(int x) const;                // alpha_x^tau
  const Perm& u0_to(int w) const;         // unique element of U_0 with inf -> w
  const Perm& mu(int x) const;            // unit x
  Perm mu_formula(int x, const Perm& t) const;  // the 3-factor expression w.r.t. t
  Perm hua(int x) const;                  // 6-factor word with the seed's tau
  Perm hua(int x, const Perm& t) const;   // 6-factor word w.r.t. t
  int tilde(int x) const;                 // (-(x tau^-1)).tau

  const std::vector<Perm>& U_inf() const { return seed_.U; }
  const std::vector<Perm>& U_0() const { return U0_; }
  std::vector<Perm> U0_circ() const;      // kernel of U_0 -> classes
  std::vector<Perm> Uinf_circ() const;

  // Root group of any point, as a lexicographically sorted list. Cached on
  // first use; compute_root_group avoids the cache (large instances).
  const std::vector<Perm>& root_group(int x) const;
  std::vector<Perm> compute_root_group(int x) const;
  // |X| * |U| * |X| in ints; used to decide whether caching every root
  // group is affordable.
  long long root_cache_weight() const;

  int times(int x, long long k) const;        // 0.alpha_x^k, x !~ inf
  int times_tilde(int x, long long k) const;  // inf.gamma_{x tau^-1}^k, x !~ 0
  std::optional<int> div(int x, long long n) const;  // unique y with y.n = x

  // Little projective group <U_x : x>; cached. Throws CapExceeded.
  const PermGroup& little_projective(long long cap) const;
  // Hua subgroup <mu_x mu_y : x,y units>; cached.
  const PermGroup& hua_subgroup(long long cap) const;

  // (x,y) with x,y !~ inf is quasi-invertible when x.tau !~ -y, x ~ 0 or
  // y ~ 0; the result is (left, right) = (^x y, x^y).
  bool quasi_invertible(int x, int y) const;
  std::optional<std::pair<int, int>> quasi_inverse(int x, int y) const;

 private:
  Seed seed_;
  Perm tau_inv_;
  int inf_ = -1, zero_ = -1;
  std::vector<int> units_;
  std::vector<int> alpha_idx_;             // x -> index into U, -1 when x ~ inf
  std::vector<Perm> U0_;                   // U^tau, aligned with U's order
  std::vector<int> u0_idx_;                // w -> index into U0_ with inf -> w
  mutable std::vector<std::vector<Perm>> root_;  // sorted root groups, lazy
  mutable std::map<int, Perm> mu_cache_;
  mutable std::optional<PermGroup> G_;
  mutable long long G_cap_ = 0;
  mutable std::optional<PermGroup> H_;
};

// Axiom verification per the construction criterion: M(U,tau) is a local
// Moufang set iff every Hua map normalizes U. When that holds, (LM0),
// (LM1), (LM1') and (LM2) are additionally verified; the quantifier over G
// in (LM2) is downgraded to seeded sampling when |G| exceeds the cap.
CheckList is_local_moufang(const MoufangData& m, const VerifyOptions& opt = {});

// Identity suites; every quantifier is exhaustive (exact arithmetic).
CheckList mu_identity_suite(const MoufangData& m, const VerifyOptions& opt = {});
CheckList hua_identity_suite(const MoufangData& m, const VerifyOptions& opt = {});
// Hua subgroup = two-point stabilizer, plus the double coset decomposition
// G = U_0 H U_inf  |_|  U_0 H tau U_0^o  with unique factors.
CheckList hua_theorem_suite(const MoufangData& m, const VerifyOptions& opt = {});
// Specialness, abelian root groups, mu-involutions, h_x = h_{-x},
// h-conjugation, unique 2-divisibility and the l^2-scaling laws.
CheckList special_suite(const MoufangData& m, const VerifyOptions& opt = {});

bool is_special(const MoufangData& m);
bool has_abelian_root_groups(const MoufangData& m);

// phi is a total point map X1 -> X2. Verifies the equivalence biconditional
// and U_x phi subset phi V_{x phi}; on success returns all theta_x.
HomReport check_homomorphism(const MoufangData& m1, const MoufangData& m2, const std::vector<int>& phi);

// The induced structure on equivalence classes (an ordinary Moufang set)
// together with the projection x -> class(x).
std::pair<MoufangData, std::vector<int>> quotient(const MoufangData& m);

// Searches for an isomorphism M1 -> M2 (point bijection); intended for
// desk-scale instances. Returns the point map when found.
std::optional<std::vector<int>> find_isomorphism(const MoufangData& m1, const MoufangData& m2);

}  // namespace lms::moufang

#endif
