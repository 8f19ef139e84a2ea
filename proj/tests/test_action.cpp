#include <doctest.h>

#include "lms/action.hpp"
#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"

using namespace lms;
using action::Perm;

TEST_CASE("composition is a right action") {
  Perm p(std::vector<int32_t>{1, 2, 0});
  Perm q(std::vector<int32_t>{0, 2, 1});
  Perm pq = action::compose(p, q);
  for (int x = 0; x < 3; ++x) CHECK(pq(x) == q(p(x)));
  CHECK(action::compose(Perm(3), p) == p);
  CHECK(action::compose(p.inverse(), p).is_identity());
  CHECK(p.power(3).is_identity());
  CHECK(p.power(-1) == p.inverse());
}

TEST_CASE("unipotent translations compose additively on P^1(Z/9)") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  auto m = projective::build_MR(r);
  projective::ProjLine line(r);
  int p1 = line.index_first(1), p2 = line.index_first(2), p3 = line.index_first(3);
  CHECK(action::compose(m.alpha(p1), m.alpha(p2)) == m.alpha(p3));
}

TEST_CASE("closure: trivial, projective and Hua generators") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  auto m = projective::build_MR(r);
  CHECK(action::closure({Perm(m.X().n)}, 10).order() == 1);

  const auto& g = m.little_projective(50000);
  CHECK(g.order() == 324);  // |PSL_2(Z/9)| = 9^3(1-1/9)/2

  const auto& h = m.hua_subgroup(50000);
  CHECK(h.order() == 3);
  // cross-check: |G| / #bases, with bases the non-equivalent ordered pairs
  long long bases = 0;
  for (int x = 0; x < m.X().n; ++x)
    for (int y = 0; y < m.X().n; ++y)
      if (!m.X().equivalent(x, y)) ++bases;
  CHECK(bases == 108);
  CHECK(g.order() / bases == h.order());

  // one more closure pass produces nothing new
  auto again = action::closure(g.elems, g.order() + 1);
  CHECK(again.order() == g.order());
}

TEST_CASE("closure respects the cap") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  auto m = projective::build_MR(r);
  std::vector<Perm> gens = m.U_inf();
  gens.insert(gens.end(), m.U_0().begin(), m.U_0().end());
  CHECK_THROWS_AS(action::closure(gens, 100), CapExceeded);
}

TEST_CASE("stabilizer of the basis equals the Hua subgroup") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  auto m = projective::build_MR(r);
  const auto& g = m.little_projective(50000);
  auto st = action::stabilizer(g, {m.zero(), m.inf()});
  CHECK(st.order() == 3);
  for (const auto& p : m.hua_subgroup(50000).elems) CHECK(st.contains(p));
}

TEST_CASE("induced class action") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  auto m = projective::build_MR(r);
  projective::ProjLine line(r);
  CHECK(action::induced(Perm(m.X().n), m.X()).is_identity());
  // alpha_{[1,3]} has 3 in m, so it acts trivially on classes
  CHECK(action::induced(m.alpha(line.index_first(3)), m.X()).is_identity());
  CHECK_FALSE(action::induced(m.alpha(line.index_first(1)), m.X()).is_identity());

  // induced is a homomorphism on all of G
  const auto& g = m.little_projective(50000);
  for (const auto& p : g.elems)
    for (const auto& q : m.U_inf()) {
      CHECK(action::induced(action::compose(p, q), m.X()) ==
            action::compose(action::induced(p, m.X()), action::induced(q, m.X())));
    }
}

TEST_CASE("equivalence preservation is detected") {
  ring::Ring r = ring::Ring::zmod(3, 2);
  auto X = projective::ProjLine(r).equiv_set();
  // swapping [1,0] (class of 0) with [1,1] (different class) breaks ~
  Perm bad(X.n);
  std::swap(bad.img[0], bad.img[1]);
  CHECK_FALSE(action::preserves_equivalence(bad, X));
  // swapping two members of class(inf) preserves ~
  projective::ProjLine line(r);
  Perm good(X.n);
  std::swap(good.img[line.index_second(3)], good.img[line.index_second(6)]);
  CHECK(action::preserves_equivalence(good, X));
}
