#include <doctest.h>

#include <set>

#include "lms/localring.hpp"

using namespace lms;
using ring::Elt;
using ring::Ring;

// Independent oracle: invertibility by exhaustive product search.
static std::set<Elt> units_by_search(const Ring& r) {
  std::set<Elt> out;
  for (Elt a = 0; a < r.size(); ++a)
    for (Elt b = 0; b < r.size(); ++b)
      if (r.mul(a, b) == r.one() && r.mul(b, a) == r.one()) {
        out.insert(a);
        break;
      }
  return out;
}

TEST_CASE("zmod(9): units and maximal ideal by exhaustive search") {
  Ring r = Ring::zmod(3, 2);
  std::set<Elt> expect{1, 2, 4, 5, 7, 8};
  CHECK(units_by_search(r) == expect);
  CHECK(std::set<Elt>(r.units().begin(), r.units().end()) == expect);
  CHECK(std::set<Elt>(r.max_ideal().begin(), r.max_ideal().end()) == std::set<Elt>{0, 3, 6});
  CHECK(r.inv(2) == 5);
  CHECK_FALSE(r.is_unit(3));
  CHECK_THROWS_AS(r.inv(3), PreconditionError);
  r.check_invariants();
}

TEST_CASE("zmod(5) is a field") {
  Ring r = Ring::zmod(5, 1);
  CHECK(r.max_ideal().size() == 1);
  CHECK(r.units().size() == 4);
  CHECK(&r.residue_field() == &r);
  r.check_invariants();
}

TEST_CASE("zmod(25): residue map onto F5") {
  Ring r = Ring::parse("zmod:25");
  CHECK(r.residue_field().size() == 5);
  CHECK(r.residue(7) == 2);
  r.check_invariants();
}

TEST_CASE("gf(9) with frob involution is the cube map") {
  Ring r = Ring::parse("gf:9:frob");
  CHECK(r.size() == 9);
  CHECK(r.max_ideal().size() == 1);
  REQUIRE(r.has_involution());
  for (Elt a = 0; a < r.size(); ++a) {
    CHECK(r.star(a) == r.pow(a, 3));  // oracle: Frobenius x -> x^p
    CHECK(r.star(r.star(a)) == a);
  }
  bool nontrivial = false;
  for (Elt a = 0; a < r.size(); ++a)
    if (r.star(a) != a) nontrivial = true;
  CHECK(nontrivial);
  r.check_invariants();
}

TEST_CASE("polynomial quotient F5[t]/(t^2)") {
  Ring r = Ring::parse("gfpoly:5:t:2");
  CHECK(r.size() == 25);
  CHECK(r.units().size() == 20);
  CHECK(r.residue_field().size() == 5);
  Elt t = r.elt_from_str("t");
  CHECK(r.mul(t, t) == r.zero());
  CHECK(r.elt_from_str("2t+1") == r.add(r.add(t, t), r.one()));
  r.check_invariants();
}

TEST_CASE("ring invariants: involution laws hold exhaustively") {
  Ring r = Ring::parse("gf:9:frob");
  for (Elt a = 0; a < r.size(); ++a)
    for (Elt b = 0; b < r.size(); ++b) {
      CHECK(r.star(r.mul(a, b)) == r.mul(r.star(b), r.star(a)));
      CHECK(r.star(r.add(a, b)) == r.add(r.star(a), r.star(b)));
    }
  CHECK(r.star(r.one()) == r.one());
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(Ring::parse("zmod:6"), ParseError);          // not a prime power
  CHECK_THROWS_AS(Ring::parse("zmod:abc"), ParseError);
  CHECK_THROWS_AS(Ring::parse("gfpoly:4:t:1"), ParseError);    // base not prime
  CHECK_THROWS_AS(Ring::parse("gfpoly:3:t^2:1"), ParseError);  // reducible modulus
  CHECK_THROWS_AS(Ring::parse("nosuch:3"), ParseError);
  CHECK_THROWS_AS(Ring::parse("zmod:9:inv=frob"), ParseError);  // no frob on zmod
  CHECK(Ring::parse("zmod:3^2").size() == 9);
}

TEST_CASE("non-local table ring is rejected") {
  // Z/6: 2+3 = 5 is a unit, so the non-units are not closed under +
  int n = 6;
  std::vector<std::vector<Elt>> add(n, std::vector<Elt>(n)), mul(n, std::vector<Elt>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) {
      add[a][b] = (a + b) % n;
      mul[a][b] = (a * b) % n;
    }
  }
  CHECK_THROWS_AS(Ring::from_tables(add, mul, labels, 0, 1, "z6"), PreconditionError);
}

TEST_CASE("eps descriptor") {
  Ring r = Ring::parse("gf:9:frob:eps=1");
  REQUIRE(r.eps().has_value());
  CHECK(*r.eps() == r.one());
  CHECK_THROWS_AS(Ring::parse("gf:9:frob:eps=0"), ParseError);
}

TEST_CASE("of_int wraps around the characteristic") {
  Ring r = Ring::zmod(3, 3);
  CHECK(r.of_int(27) == r.zero());
  CHECK(r.of_int(-1) == r.neg(r.one()));
  CHECK(r.of_int(40) == r.of_int(13));
}
