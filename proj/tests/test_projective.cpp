#include <doctest.h>

#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"

using namespace lms;
using ring::Ring;

TEST_CASE("M(R) family facts for Z/9, Z/25 and F5") {
  for (const char* desc : {"zmod:9", "zmod:25", "gf:5"}) {
    Ring r = Ring::parse(desc);
    auto m = projective::build_MR(r);
    CAPTURE(desc);
    CHECK(projective::mr_suite(m, r, 50000).all_pass());
  }
}

TEST_CASE("the little projective group is the faithful PSL_2 image") {
  Ring r = Ring::zmod(3, 2);
  auto psl = projective::psl2_perm_group(r);
  CHECK(psl.order() == 324);
  auto m = projective::build_MR(r);
  const auto& g = m.little_projective(50000);
  REQUIRE(g.order() == psl.order());
  for (const auto& p : psl.elems) CHECK(g.contains(p));
}

TEST_CASE("ring reconstruction round trip, every unit e") {
  Ring r = Ring::zmod(3, 2);
  auto m = projective::build_MR(r);
  projective::ProjLine line(r);
  for (ring::Elt e : r.units()) {
    auto rec = projective::reconstruct_ring(m, line.index_first(e), nullptr);
    auto iso = projective::ring_iso_check(rec.ring, r);
    CAPTURE(e);
    CHECK(iso.has_value());
    // e is the multiplicative identity of the recovered ring
    CHECK(rec.ring.one() == rec.point_to_elt[line.index_first(e)]);
    // e x = x for all x
    for (int x = 0; x < rec.ring.size(); ++x) CHECK(rec.ring.mul(rec.ring.one(), x) == x);
  }
}

TEST_CASE("reconstruction of M(Z/25) with e = [1,2]") {
  Ring r = Ring::zmod(5, 2);
  auto m = projective::build_MR(r);
  projective::ProjLine line(r);
  auto rec = projective::reconstruct_ring(m, line.index_first(2), nullptr);
  CHECK(projective::ring_iso_check(rec.ring, r).has_value());
}

TEST_CASE("characterization identity and the explicit isomorphism") {
  for (const char* desc : {"zmod:9", "gf:5", "zmod:27"}) {
    Ring r = Ring::parse(desc);
    auto m = projective::build_MR(r);
    CAPTURE(desc);
    CHECK(projective::verify_star(m, m.least_unit()).all_pass());
  }
}

TEST_CASE("residue characteristic 2 blocks the reconstruction at (R4)") {
  Ring r = Ring::zmod(2, 2);
  auto m = projective::build_MR(r);
  auto conds = projective::ring_conditions(m);
  const Check* r4 = conds.find("R4");
  REQUIRE(r4 != nullptr);
  CHECK(r4->status == Status::Fail);
  CHECK(r4->witness.find("[1,1]") != std::string::npos);
  CHECK(conds.find("R1")->status == Status::Pass);
  CHECK(conds.find("R2")->status == Status::Pass);
  CHECK(conds.find("R3")->status == Status::Pass);
  CHECK_THROWS_WITH_AS(projective::reconstruct_ring(m, m.least_unit(), nullptr),
                       doctest::Contains("(R4)"), PreconditionError);
}

TEST_CASE("ring_iso_check distinguishes additive structure") {
  Ring a = Ring::zmod(3, 2);
  Ring b = Ring::parse("gfpoly:3:t:2");  // F3[t]/(t^2): exponent 3, not 9
  CHECK(a.size() == b.size());
  CHECK_FALSE(projective::ring_iso_check(a, b).has_value());
  auto self = projective::ring_iso_check(a, a);
  REQUIRE(self.has_value());
  for (int x = 0; x < a.size(); ++x) CHECK((*self)[x] == x);
}

TEST_CASE("projective line canonical forms and the equivalence") {
  Ring r = Ring::zmod(3, 2);
  projective::ProjLine line(r);
  CHECK(line.size() == 12);
  auto X = line.equiv_set();
  CHECK(X.num_classes() == 4);
  // [1,r] ~ [1,r'] iff r-r' in m
  CHECK(X.equivalent(line.index_first(1), line.index_first(4)));
  CHECK_FALSE(X.equivalent(line.index_first(1), line.index_first(2)));
  CHECK(X.equivalent(line.index_second(0), line.index_second(3)));
  CHECK_FALSE(X.equivalent(line.index_first(0), line.index_second(0)));
}
