#include <doctest.h>

#include <set>

#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"
#include "lms/tree.hpp"

using namespace lms;
using tree::LatticeRep;
using tree::TruncatedDVR;

TEST_CASE("sphere sizes for p = 3") {
  TruncatedDVR t(3, 3);
  CHECK(t.sphere(1).size() == 4);
  CHECK(t.sphere(2).size() == 12);
  CHECK(t.sphere(3).size() == 36);
  // against the formula p^n + p^{n-1}
  for (int n = 1; n <= 3; ++n) {
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= 3;
    CHECK(static_cast<long long>(t.sphere(n).size()) == pn + pn / 3);
  }
}

TEST_CASE("chi transcribes coefficients and is injective") {
  TruncatedDVR t(3, 3);
  const auto& l2 = t.line(2);
  LatticeRep l = t.from_proj(2, l2.point(l2.index_first(5)));
  auto p = t.chi(l);
  CHECK_FALSE(p.second);
  CHECK(p.coord == 5);
  for (int n = 1; n <= 3; ++n) {
    std::set<int> images;
    for (const auto& lat : t.sphere(n)) images.insert(t.line(n).index_of(t.chi(lat)));
    CHECK(images.size() == t.sphere(n).size());
  }
}

TEST_CASE("adjacency by coefficient reduction") {
  TruncatedDVR t(3, 3);
  const auto& l1 = t.line(1);
  const auto& l2 = t.line(2);
  LatticeRep a = t.from_proj(1, l1.point(l1.index_first(2)));  // (1,2) at level 1
  // (1,2), (1,5), (1,8) at level 2 reduce to (1,2)
  for (int rr : {2, 5, 8}) {
    LatticeRep b = t.from_proj(2, l2.point(l2.index_first(rr)));
    CHECK(t.adjacent(a, b));
    CHECK(t.adjacent(b, a));
  }
  LatticeRep c = t.from_proj(2, l2.point(l2.index_first(1)));
  CHECK_FALSE(t.adjacent(a, c));
  // the base class is adjacent to all of T_1
  for (const auto& l : t.sphere(1)) CHECK(t.adjacent(LatticeRep{0, -1}, l));
}

TEST_CASE("the union of spheres is a tree with the right degrees") {
  TruncatedDVR t(3, 3);
  auto rep = tree::graph_check(t, 3);
  CHECK(rep.all_pass());
  CHECK(rep.orders.at("|T1|") == 4);
  CHECK(rep.orders.at("|T2|") == 12);
  CHECK(rep.orders.at("|T3|") == 36);
}

TEST_CASE("kernel of the depth-2 action inside SL_2(Z/27)") {
  TruncatedDVR t(3, 3);
  auto ker = t.kernel(2);
  CHECK(ker.sl2_order == 17496);
  CHECK(ker.kernel_is_scalars);
  CHECK(ker.kernel_order == 54);
  CHECK(ker.image_order == 324);  // |PSL_2(Z/9)|
  CHECK(ker.image_order == projective::psl2_perm_group(t.level(2)).order());
}

TEST_CASE("identity matrix acts trivially; det is checked at the level") {
  TruncatedDVR t(3, 2);
  const ring::Ring& r2 = t.level(2);
  CHECK(t.sphere_action(2, {r2.one(), r2.zero(), r2.zero(), r2.one()}).is_identity());
  CHECK_THROWS_AS(t.sphere_action(2, {r2.one(), r2.zero(), r2.zero(), r2.of_int(2)}),
                  PreconditionError);
}

TEST_CASE("sphere isomorphism with M(Z/9) at (p,n) = (3,2)") {
  TruncatedDVR t(3, 3);
  auto rep = tree::verify_sphere_iso(t, 2);
  CHECK(rep.all_pass());
}

TEST_CASE("depth-1 field case: isomorphic to the ordinary structure over F5") {
  TruncatedDVR t(5, 2);
  auto rep = tree::verify_sphere_iso(t, 1);
  CHECK(rep.all_pass());
}

TEST_CASE("inverse system: lifts and finite-limit bijection") {
  TruncatedDVR t(3, 3);
  auto rep = tree::inverse_system_checks(t, 3);
  CHECK(rep.all_pass());
  CHECK(rep.orders.at("chains") == 36);
}

TEST_CASE("DOT dump") {
  TruncatedDVR t(3, 2);
  std::string dot = tree::dot_dump(t, 2);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("L0") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
}
