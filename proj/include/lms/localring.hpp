#ifndef LMS_LOCALRING_HPP
#define LMS_LOCALRING_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lms/errors.hpp"

namespace lms::ring {

// Elements are indices into the ring's canonical enumeration.
using Elt = int32_t;

// A finite commutative local ring, fully enumerated.
//
// Supported constructions:
//   * Z/p^k                 ("zmod:<p>^<k>" or "zmod:<n>" with n a prime power)
//   * F_p[t]/(f(t)^m)       ("gfpoly:<p>:<f>:<m>" with f monic irreducible)
//   * explicit add/mul tables (used for rings reconstructed from other data)
//
// Canonical forms: least non-negative residue for Z/p^k; little-endian
// coefficient vectors for polynomial quotients (index i has digits of i
// base p as coefficients). Equality is index equality.
class Ring {
 public:
  static Ring zmod(long long p, int k);
  static Ring poly_quotient(long long p, std::vector<long long> f, int m);
  // Builds a ring from explicit tables; units, the maximal ideal and
  // inverses are found by exhaustive search, and the local-ring invariant
  // is checked (non-units closed under addition).
  static Ring from_tables(std::vector<std::vector<Elt>> add,
                          std::vector<std::vector<Elt>> mul,
                          std::vector<std::string> labels, Elt zero, Elt one,
                          std::string name);

  // Descriptor grammar:
  //   zmod:<p>^<k> | zmod:<n> | gfpoly:<p>:<f(t)>:<m> | gf:<q>
  // with optional suffixes ":inv=frob", ":inv=id", ":eps=<elt>".
  static Ring parse(const std::string& descriptor);

  int size() const { return n_; }
  Elt zero() const { return zero_; }
  Elt one() const { return one_; }

  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const;
  Elt neg(Elt a) const { return neg_[a]; }
  Elt inv(Elt a) const;  // throws PreconditionError on a non-unit
  Elt pow(Elt a, long long e) const;
  Elt of_int(long long v) const;  // image of the integer v under Z -> R

  bool is_unit(Elt a) const { return unit_[a] != 0; }
  const std::vector<Elt>& units() const { return units_; }
  const std::vector<Elt>& max_ideal() const { return max_ideal_; }

  // Residue map onto R/m. For fields the residue ring is the ring itself.
  const Ring& residue_field() const;
  Elt residue(Elt a) const;

  bool has_involution() const { return !star_.empty(); }
  Elt star(Elt a) const;
  std::optional<Elt> eps() const { return eps_; }

  // Residue characteristic p (0 for table-backed rings of unknown origin).
  long long residue_char() const { return p_; }

  std::string name() const { return name_; }
  const std::string& elt_str(Elt a) const { return labels_[a]; }
  Elt elt_from_str(const std::string& s) const;

  // Verifies the local-ring invariants by exhaustive search: units have
  // two-sided inverses, m is an ideal, residue map is a homomorphism,
  // and the involution (when present) is a unital anti-automorphism of
  // order at most 2 with m* = m. Throws PreconditionError on violation.
  void check_invariants() const;

  Ring() = default;  // empty ring; assign from a factory before use

 private:
  void finish_tables();  // derives neg/unit/inv/units/max_ideal from add/mul
  void build_residue();
  void install_involution(const std::string& spec);
  void install_eps(const std::string& spec);

  enum class Kind { Zmod, Poly, Table };
  Kind kind_ = Kind::Table;
  int n_ = 0;
  long long p_ = 0;  // residue characteristic when known
  int deg_ = 1;      // f degree (poly kind)
  int mpow_ = 1;     // m (poly kind)
  Elt zero_ = 0, one_ = 0;
  std::vector<std::vector<Elt>> add_, mul_;  // empty for zmod/poly kinds
  std::vector<long long> fcoef_;             // monic f, degree deg_
  std::vector<long long> gmod_;              // f^m expanded (poly kind)
  std::vector<Elt> neg_, inv_;
  std::vector<char> unit_;
  std::vector<Elt> units_, max_ideal_;
  std::vector<Elt> residue_of_;
  std::vector<Elt> star_;
  std::optional<Elt> eps_;
  std::vector<std::string> labels_;
  std::string name_;
  std::shared_ptr<Ring> residue_;  // null when the ring is its own residue field

  std::vector<long long> poly_coeffs(Elt a) const;
  Elt poly_index(const std::vector<long long>& c) const;
};

}  // namespace lms::ring

#endif
