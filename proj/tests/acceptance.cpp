// Acceptance suite: runs every acceptance criterion at its stated tolerance
// (exact arithmetic throughout) and prints one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "lms/cli.hpp"
#include "lms/hermitian.hpp"
#include "lms/jordan.hpp"
#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"
#include "lms/report.hpp"
#include "lms/tree.hpp"

using namespace lms;

namespace {

int failures = 0;
int criterion = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void outcome(bool ok, const std::string& what, double secs) {
  ++criterion;
  if (!ok) ++failures;
  std::printf("[%2d/10] %s - %s (%.2fs)\n", criterion, ok ? "PASS" : "FAIL", what.c_str(), secs);
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  // 1. Axiom suite: M(Z/9), M(Z/25), M(F5[t]/(t^2)) pass (LM0),(LM1),(LM1'),
  //    (LM2) exhaustively, each under 60 s.
  {
    Timer t;
    bool ok = true;
    std::string detail;
    for (const char* desc : {"zmod:9", "zmod:25", "gfpoly:5:t:2"}) {
      Timer each;
      auto m = projective::build_MR(ring::Ring::parse(desc));
      auto rep = moufang::is_local_moufang(m);
      bool exhaustive = true;
      for (const char* name : {"LM0", "LM1", "LM1'", "LM2"}) {
        const Check* c = rep.find(name);
        if (!c || c->status != Status::Pass) exhaustive = false;
      }
      if (!rep.all_pass() || !exhaustive || each.secs() >= 60.0) ok = false;
      detail += std::string(desc) + " ";
    }
    outcome(ok, "axiom suite exhaustive on M(Z/9), M(Z/25), M(F5[t]/t^2), each < 60 s", t.secs());
  }

  // 2. Hua theorem on M(Z/9): |G| = 324, |H| = 3, H = G_{0,inf}, disjoint
  //    decomposition with unique factors, counts 9*3*9 and 9*3*3.
  {
    Timer t;
    auto m = projective::build_MR(ring::Ring::zmod(3, 2));
    auto rep = moufang::hua_theorem_suite(m);
    bool ok = rep.all_pass() && rep.orders.at("|G|") == 324 && rep.orders.at("|H|") == 3 &&
              rep.orders.at("bruhat-count-1") == 243 && rep.orders.at("bruhat-count-2") == 81;
    outcome(ok, "Hua theorem on M(Z/9): 324 = 9*3*9 + 9*3*3 with unique factors", t.secs());
  }

  // 3. mu/Hua identity suites exhaustively over M(Z/9) and M(Z/25).
  {
    Timer t;
    bool ok = true;
    for (const char* desc : {"zmod:9", "zmod:25"}) {
      auto m = projective::build_MR(ring::Ring::parse(desc));
      auto mu = moufang::mu_identity_suite(m);
      auto hua = moufang::hua_identity_suite(m);
      if (!mu.all_pass() || !hua.all_pass()) ok = false;
      for (const auto& c : mu.items)
        if (c.status == Status::Sampled) ok = false;
      for (const auto& c : hua.items)
        if (c.status == Status::Sampled) ok = false;
    }
    outcome(ok, "mu and Hua identity suites exhaustive on M(Z/9), M(Z/25), zero tolerance",
            t.secs());
  }

  // 4. Special suite on M(Z/9): special + abelian, mu_x^2 = id on all 6
  //    units, unique 2-divisibility, l^2-scaling for l in {2, 1/2}.
  {
    Timer t;
    auto m = projective::build_MR(ring::Ring::zmod(3, 2));
    auto rep = moufang::special_suite(m);
    bool ok = rep.all_pass() && m.units().size() == 6 && rep.find("mu-involution") &&
              rep.find("uniquely-2-divisible") && rep.find("mu-scaling") &&
              rep.find("mu-scaling")->status == Status::Pass;
    outcome(ok, "special suite on M(Z/9): involutions, 2-divisibility, l^2-scaling", t.secs());
  }

  // 5. Ring round trip for R in {Z/9, Z/25, Z/27} and every unit e, with the
  //    characterization identity verified exhaustively; total < 5 min.
  {
    Timer t;
    bool ok = true;
    for (const char* desc : {"zmod:9", "zmod:25", "zmod:27"}) {
      ring::Ring r = ring::Ring::parse(desc);
      auto m = projective::build_MR(r);
      projective::ProjLine line(r);
      for (ring::Elt e : r.units()) {
        auto rec = projective::reconstruct_ring(m, line.index_first(e), nullptr);
        if (!projective::ring_iso_check(rec.ring, r).has_value()) ok = false;
      }
      if (!projective::verify_star(m, m.least_unit()).all_pass()) ok = false;
    }
    bool in_time = t.secs() < 300.0;
    outcome(ok && in_time, "ring round trip for Z/9, Z/25, Z/27 at every unit e, star identity",
            t.secs());
  }

  // 6. Jordan suite on (Z/25, Z/25): JP1-JP3 + linearizations over 15625
  //    triples per axiom, Rad = (5Z/25, 5Z/25), |P(V)| = 30, M(V) axioms,
  //    round trip isomorphism, and the characterization identity.
  {
    Timer t;
    ring::Ring a = ring::Ring::zmod(5, 2);
    auto v = jordan::make_ring_pair(a);
    auto ax = jordan::verify_axioms(v);
    bool ok = ax.all_pass() && ax.orders.at("JP-triples-per-axiom") == 15625;
    std::set<int> rad5{0, 5, 10, 15, 20};
    for (int s = 0; s < 2; ++s) {
      auto rl = v.radical_list(s);
      if (std::set<int>(rl.begin(), rl.end()) != rad5) ok = false;
    }
    jordan::ProjectiveSpace ps(v, 1);
    if (ps.size() != 30) ok = false;
    auto m = jordan::build_MV(v, 1);
    if (!moufang::is_local_moufang(m).all_pass()) ok = false;
    auto rec = jordan::reconstruct_jordan(m, nullptr);
    if (!jordan::pair_iso_check(rec.pair, v).has_value()) ok = false;
    if (!jordan::verify_extra(m, nullptr).all_pass()) ok = false;
    outcome(ok, "Jordan suite on (Z/25,Z/25): axioms, radical, P(V), M(V), round trip", t.secs());
  }

  // 7. Hermitian F9 instance: 28 points, closed-form mu = composed word on
  //    every point and unit, hinge U^mu = U_0. Orthogonal Z/9 instance with
  //    90 points passes the axioms.
  {
    Timer t;
    ring::Ring r9 = ring::Ring::parse("gf:9:frob");
    auto fr = hermitian::make_form_ring(std::move(r9), 1, "min");
    hermitian::HermSpace hs(fr, 1);
    bool ok = hs.size() == 28;
    auto mu = hermitian::mu_action_check(fr, 1);
    if (!mu.all_pass()) ok = false;
    if (!mu.find("mu-closed-form") || mu.find("mu-closed-form")->status != Status::Pass) ok = false;
    if (!mu.find("U-mu-U0") || mu.find("U-mu-U0")->status != Status::Pass) ok = false;
    auto mh = hermitian::build_hermitian(fr, 1, nullptr);
    if (!moufang::is_local_moufang(mh).all_pass()) ok = false;

    auto mo = hermitian::build_orthogonal(ring::Ring::zmod(3, 2), 2, {1, 1}, nullptr);
    if (mo.X().n != 90) ok = false;
    auto rep = moufang::is_local_moufang(mo);
    // |G| exceeds the exhaustive cap: the normalization criterion decides the
    // axioms exhaustively and LM2 is additionally spot-checked (sampled).
    if (!rep.all_pass()) ok = false;
    if (rep.find("hua-normalizes-U")->status != Status::Pass) ok = false;
    outcome(ok, "Hermitian F9 (28 points, mu forms, hinge) and orthogonal Z/9 (90 points)",
            t.secs());
  }

  // 8. Tree suite for p = 3: sphere sizes (4,12,36), tree shape, kernel at
  //    level 2 = scalars mod 9, sphere isomorphism with M(Z/9) at (3,2),
  //    commuting reduction squares.
  {
    Timer t;
    tree::TruncatedDVR td(3, 3);
    bool ok = tree::graph_check(td, 3).all_pass();
    auto ker = td.kernel(2);
    if (!(ker.kernel_is_scalars && ker.image_order == 324)) ok = false;
    auto iso = tree::verify_sphere_iso(td, 2);
    if (!iso.all_pass()) ok = false;
    if (!iso.find("chi-commutes") || iso.find("chi-commutes")->status != Status::Pass) ok = false;
    if (!tree::inverse_system_checks(td, 3).all_pass()) ok = false;
    outcome(ok, "tree suite p=3: spheres (4,12,36), kernel = scalars mod 9, sphere isomorphism",
            t.secs());
  }

  // 9. Negative controls: zmod:4 reconstruction fails exactly at (R4); a
  //    tau-twisted seed fails with a witness unit; an isotropic form is
  //    rejected with a witness vector.
  {
    Timer t;
    bool ok = true;
    {
      auto m4 = projective::build_MR(ring::Ring::zmod(2, 2));
      auto conds = projective::ring_conditions(m4);
      for (const char* name : {"R1", "R2", "R3"})
        if (conds.find(name)->status != Status::Pass) ok = false;
      if (conds.find("R4")->status != Status::Fail) ok = false;
      try {
        projective::reconstruct_ring(m4, m4.least_unit(), nullptr);
        ok = false;
      } catch (const PreconditionError& e) {
        if (std::string(e.what()).find("(R4)") == std::string::npos) ok = false;
      }
      std::ostringstream out, err;
      int code = cli::run({"verify", "moufang", "--ring", "zmod:4", "--family", "projective",
                           "--suite", "reconstruct-ring"},
                          out, err);
      if (code != 1) ok = false;
    }
    {
      auto good = projective::build_MR(ring::Ring::zmod(3, 2));
      projective::ProjLine line(ring::Ring::zmod(3, 2));
      moufang::Seed twisted = good.seed();
      action::Perm sigma(twisted.X.n);
      std::swap(sigma.img[line.index_first(1)], sigma.img[line.index_first(4)]);
      twisted.tau = action::compose(twisted.tau, sigma);
      auto mt = moufang::MoufangData::construct(std::move(twisted));
      auto rep = moufang::is_local_moufang(mt);
      const Check* c = rep.find("hua-normalizes-U");
      if (rep.all_pass() || !c || c->status != Status::Fail ||
          c->witness.find("unit x=") == std::string::npos)
        ok = false;
    }
    {
      try {
        hermitian::build_orthogonal(ring::Ring::zmod(3, 2), 2, {1, 2}, nullptr);
        ok = false;
      } catch (const PreconditionError& e) {
        if (std::string(e.what()).find("witness") == std::string::npos) ok = false;
      }
    }
    outcome(ok, "negative controls: (R4) failure, twisted seed witness, isotropic rejection",
            t.secs());
  }

  // 10. Determinism: repeated runs of every suite produce byte-identical
  //     JSON reports.
  {
    Timer t;
    bool ok = true;
    const std::string p1 = "/tmp/lms_acc_1.json", p2 = "/tmp/lms_acc_2.json";
    std::vector<std::vector<std::string>> invocations = {
        {"ring", "info", "zmod:9"},
        {"verify", "moufang", "--ring", "zmod:9", "--family", "projective"},
        {"projective", "build", "--ring", "zmod:9"},
        {"projective", "reconstruct", "--ring", "zmod:25", "--unit", "2"},
        {"projective", "verify-star", "--ring", "zmod:9"},
        {"jordan", "axioms", "--pair", "ring:zmod:25"},
        {"jordan", "roundtrip", "--pair", "ring:zmod:25"},
        {"jordan", "verify-extra", "--pair", "ring:zmod:25"},
        {"hermitian", "build", "--ring", "gf:9:frob", "--eps", "1", "--lambda", "min", "--rank",
         "1"},
        {"hermitian", "mu-check", "--ring", "gf:9:frob", "--eps", "1", "--lambda", "min",
         "--rank", "1"},
        {"orthogonal", "build", "--ring", "zmod:9", "--q", "x1^2+x2^2", "--cap", "2000"},
        {"tree", "spheres", "--p", "3", "--depth", "3"},
        {"tree", "verify-iso", "--p", "3", "--level", "2"},
    };
    for (auto inv : invocations) {
      auto inv1 = inv;
      inv1.push_back("--json");
      inv1.push_back(p1);
      auto inv2 = inv;
      inv2.push_back("--json");
      inv2.push_back(p2);
      std::ostringstream o1, e1, o2, e2;
      int c1 = cli::run(inv1, o1, e1);
      int c2 = cli::run(inv2, o2, e2);
      std::string j1 = slurp(p1), j2 = slurp(p2);
      if (c1 != c2 || j1.empty() || j1 != j2) {
        ok = false;
        std::printf("        non-deterministic: %s\n", inv.front().c_str());
      }
      // the summary must match too, apart from the timing line
      std::string s1 = o1.str(), s2 = o2.str();
      s1 = s1.substr(0, s1.rfind("RESULT"));
      s2 = s2.substr(0, s2.rfind("RESULT"));
      if (s1 != s2) ok = false;
    }
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    outcome(ok, "determinism: byte-identical JSON for repeated runs of every suite", t.secs());
  }

  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
