#include <doctest.h>

#include <set>

#include "lms/hermitian.hpp"
#include "lms/jordan.hpp"
#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"

using namespace lms;
using jordan::JordanPair;

TEST_CASE("the ring pair (Z/25, Z/25)") {
  ring::Ring a = ring::Ring::zmod(5, 2);
  JordanPair v = jordan::make_ring_pair(a);

  // Q_2 applied to 3 is 2*3*2 = 12
  CHECK(v.q(0, 2, 3) == 12);

  auto ax = jordan::verify_axioms(v);
  CHECK(ax.all_pass());
  CHECK(ax.orders.at("JP-triples-per-axiom") == 15625);

  // radical = (5Z/25, 5Z/25), via the properly-quasi-invertible enumeration
  for (int s = 0; s < 2; ++s) {
    std::set<int> rad;
    for (int x : v.radical_list(s)) rad.insert(x);
    CHECK(rad == std::set<int>{0, 5, 10, 15, 20});
  }

  // B_{2,3} = (1-6)^2 = 0: not quasi-invertible
  CHECK_FALSE(v.quasi_invertible(0, 2, 3));
  // quasi_inv(2,1) = 2 (1-2)^{-1} = 23
  auto q = v.quasi_inverse(0, 2, 1);
  REQUIRE(q.has_value());
  CHECK(*q == 23);
  // scalar Bergman: B_{x,y} = multiplication by (1-xy)^2
  for (int x = 0; x < 25; ++x)
    for (int y = 0; y < 25; ++y) {
      auto b = v.bergman(0, x, y);
      long long c = ((1 - x * y) % 25 + 25) % 25;
      for (int z = 0; z < 25; ++z) CHECK(b[z] == static_cast<int>(z * c % 25 * c % 25));
    }
  CHECK_FALSE(v.jp_inverse(0, 0).has_value());  // Q_0 = 0
  CHECK(jordan::jpbasic_suite(v).all_pass());
}

TEST_CASE("division pair over F5") {
  JordanPair v = jordan::make_ring_pair(ring::Ring::zmod(5, 1));
  for (int x = 1; x < 5; ++x) CHECK(v.invertible(0, x));
  CHECK(v.radical_list(0) == std::vector<int>{0});
  CHECK(jordan::verify_axioms(v).all_pass());
}

TEST_CASE("projective space of (Z/25, Z/25)") {
  JordanPair v = jordan::make_ring_pair(ring::Ring::zmod(5, 2));
  jordan::ProjectiveSpace ps(v, 1);
  CHECK(ps.size() == 30);  // 25 + |Rad V-| = 25 + 5
  CHECK(ps.equiv_set().num_classes() == 6);
  // [t,0] = [e,e^-1-t^-1] for invertible t
  auto suite = jordan::mv_suite(v, 1);
  CHECK(suite.all_pass());
}

TEST_CASE("M(V) for (Z/25, Z/25) is a local Moufang set") {
  JordanPair v = jordan::make_ring_pair(ring::Ring::zmod(5, 2));
  auto m = jordan::build_MV(v, 1);
  auto rep = moufang::is_local_moufang(m);
  CHECK(rep.all_pass());
  CHECK(rep.orders.at("|X|") == 30);
  CHECK(rep.orders.at("|G|") == 7500);
}

TEST_CASE("division pair gives the ordinary projective structure over F5") {
  JordanPair v = jordan::make_ring_pair(ring::Ring::zmod(5, 1));
  auto mv = jordan::build_MV(v, 1);
  auto mr = projective::build_MR(ring::Ring::zmod(5, 1));
  CHECK(mv.X().n == 6);
  CHECK(moufang::find_isomorphism(mv, mr).has_value());
}

TEST_CASE("pair -> M(V) -> pair round trip up to isomorphism") {
  JordanPair v = jordan::make_ring_pair(ring::Ring::zmod(5, 2));
  auto m = jordan::build_MV(v, 1);
  auto rec = jordan::reconstruct_jordan(m, nullptr);
  CHECK(jordan::verify_axioms(rec.pair).all_pass());
  CHECK(jordan::pair_iso_check(rec.pair, v).has_value());
}

TEST_CASE("the pair recovered from the projective structure is the ring pair") {
  ring::Ring r = ring::Ring::zmod(5, 2);
  auto m = projective::build_MR(r);
  auto rec = jordan::reconstruct_jordan(m, nullptr);
  JordanPair ringpair = jordan::make_ring_pair(r);
  auto iso = jordan::pair_iso_check(rec.pair, ringpair);
  REQUIRE(iso.has_value());
  const auto& [f0, f1] = *iso;
  // under the isomorphism, Q_x is multiplication by x^2
  for (int x = 0; x < rec.pair.mod[0].n; ++x)
    for (int y = 0; y < rec.pair.mod[1].n; ++y) {
      long long a = f0[x], b = f1[y];
      CHECK(f0[rec.pair.Q[0][x][y]] == static_cast<int>(a * a % 25 * b % 25));
    }
  // for a unit point x, Q_x coincides with the mu-map (mu_{x,x} = mu_x.2)
  projective::ProjLine line(r);
  for (ring::Elt u : r.units()) {
    int pt = line.index_first(u);
    int xp = rec.point_to_plus[pt];
    for (int y = 0; y < rec.pair.mod[1].n; ++y) {
      int img = rec.pair.Q[0][xp][y];
      CHECK(rec.plus_points[img] == m.mu(pt).img[rec.minus_points[y]]);
    }
  }
}

TEST_CASE("characterization identity for jordan structures") {
  JordanPair v = jordan::make_ring_pair(ring::Ring::zmod(5, 2));
  auto m = jordan::build_MV(v, 1);
  CHECK(jordan::verify_extra(m, nullptr).all_pass());
  // the projective structure satisfies it as well
  auto mr = projective::build_MR(ring::Ring::zmod(5, 2));
  CHECK(jordan::verify_extra(mr, nullptr).all_pass());
}

TEST_CASE("quadratic form pair over Z/9 matches the orthogonal structure") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  JordanPair v = jordan::make_qform_pair(r, 1, {1});
  CHECK(jordan::verify_axioms(v).all_pass());
  int e = -1;
  for (int x = 0; x < v.mod[0].n; ++x)
    if (v.invertible(0, x)) {
      e = x;
      break;
    }
  auto mv = jordan::build_MV(v, e);
  auto mo = hermitian::build_orthogonal(r, 1, {1}, nullptr);
  CHECK(mv.X().n == 12);
  CHECK(mo.X().n == 12);
  CHECK(moufang::find_isomorphism(mv, mo).has_value());
}

TEST_CASE("rank-2 quadratic form pair passes the axioms") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  JordanPair v = jordan::make_qform_pair(r, 2, {1, 1});
  CHECK(v.mod[0].n == 81);
  CHECK(jordan::verify_axioms(v).all_pass());
}

TEST_CASE("an isotropic form gives a Jordan pair that is not local") {
  // x1^2 + 2 x2^2 is isotropic mod 3; the pair laws hold but locality fails
  ring::Ring r = ring::Ring::zmod(3, 2);
  JordanPair v = jordan::make_qform_pair(r, 2, {1, 2});
  auto rep = jordan::verify_axioms(v);
  CHECK(rep.find("JP1")->status == Status::Pass);
  CHECK(rep.find("JP2")->status == Status::Pass);
  CHECK(rep.find("JP3")->status == Status::Pass);
  CHECK(rep.find("local-pair")->status == Status::Fail);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("pair descriptor parsing") {
  CHECK(jordan::parse_pair("ring:zmod:25").mod[0].n == 25);
  CHECK(jordan::parse_pair("qform:zmod:9:2:1,1").mod[0].n == 81);
  CHECK_THROWS_AS(jordan::parse_pair("bogus:zmod:9"), ParseError);
}

TEST_CASE("reconstruction preconditions: F3 lacks 3-divisibility") {
  auto m = projective::build_MR(ring::Ring::zmod(3, 1));
  auto conds = jordan::jordan_conditions(m);
  const Check* j3 = conds.find("J3");
  REQUIRE(j3 != nullptr);
  CHECK(j3->status == Status::Fail);
  CHECK_THROWS_AS(jordan::reconstruct_jordan(m, nullptr), PreconditionError);
}
