#include "lms/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "lms/hermitian.hpp"
#include "lms/jordan.hpp"
#include "lms/localring.hpp"
#include "lms/moufang.hpp"
#include "lms/projective.hpp"
#include "lms/report.hpp"
#include "lms/tree.hpp"

namespace lms::cli {

namespace {

using moufang::MoufangData;
using moufang::VerifyOptions;
using report::Report;

// Parses a diagonal quadratic form like "x1^2+x2^2" or "2*x1^2+x2^2".
std::vector<ring::Elt> parse_diag_form(const ring::Ring& r, const std::string& s, int& rank) {
  std::map<int, std::string> coeff;
  std::string cur;
  auto flush = [&](const std::string& term) {
    if (term.empty()) return;
    auto xpos = term.find('x');
    if (xpos == std::string::npos) throw ParseError("bad quadratic form term: " + term);
    std::string c = term.substr(0, xpos);
    if (!c.empty() && c.back() == '*') c.pop_back();
    if (c.empty()) c = "1";
    auto caret = term.find('^', xpos);
    if (caret == std::string::npos || term.substr(caret + 1) != "2")
      throw ParseError("quadratic form terms must be squares: " + term);
    int idx = std::stoi(term.substr(xpos + 1, caret - xpos - 1));
    if (idx < 1) throw ParseError("variable indices start at 1");
    coeff[idx] = c;
  };
  for (char ch : s + "+") {
    if (ch == '+') {
      flush(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch)))
      cur.push_back(ch);
  }
  rank = coeff.empty() ? 0 : coeff.rbegin()->first;
  std::vector<ring::Elt> diag(rank, r.zero());
  for (const auto& [idx, c] : coeff) diag[idx - 1] = r.elt_from_str(c);
  return diag;
}

struct Ctx {
  std::string json_path;
  long long cap = 50000;
  std::uint64_t seed = 0;

  VerifyOptions opt() const {
    VerifyOptions o;
    o.cap = cap;
    o.seed = seed;
    return o;
  }
};

int finish(const Report& rep, const Ctx& ctx, std::ostream& out, double secs) {
  out << rep.summary();
  out << "RESULT: " << (rep.all_pass() ? "PASS" : "FAIL") << " (" << rep.check_count()
      << " checks, " << rep.failed_count() << " failed, " << std::fixed << std::setprecision(2)
      << secs << "s)\n";
  if (!ctx.json_path.empty()) {
    std::ofstream f(ctx.json_path);
    f << rep.to_json().dump(1) << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

void add_moufang_suites(Report& rep, const MoufangData& m, const VerifyOptions& opt,
                        const std::string& only = "") {
  auto want = [&](const std::string& s) { return only.empty() || only == s; };
  if (want("axioms")) rep.add_suite("axioms", moufang::is_local_moufang(m, opt));
  if (want("mu-identities")) rep.add_suite("mu-identities", moufang::mu_identity_suite(m, opt));
  if (want("hua-identities")) rep.add_suite("hua-identities", moufang::hua_identity_suite(m, opt));
  if (want("hua-theorem")) rep.add_suite("hua-theorem", moufang::hua_theorem_suite(m, opt));
  if (want("special")) rep.add_suite("special", moufang::special_suite(m, opt));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact verification of local Moufang set structures"};
  app.require_subcommand(1);
  Ctx ctx;
  app.add_option("--json", ctx.json_path, "write the JSON report to this path");
  app.add_option("--cap", ctx.cap, "exhaustive enumeration cap on |G|");
  app.add_option("--seed", ctx.seed, "seed for sampled fallbacks");

  // ring info <desc>
  std::string ring_desc;
  auto* ring_cmd = app.add_subcommand("ring", "finite local ring operations");
  auto* ring_info = ring_cmd->add_subcommand("info", "enumerate units, ideal and residue field");
  ring_info->add_option("descriptor", ring_desc)->required();

  // projective build|reconstruct|verify-star --ring
  std::string proj_ring, proj_unit;
  auto* proj = app.add_subcommand("projective", "the family M(R) over P^1(R)");
  auto* proj_build = proj->add_subcommand("build", "build M(R) and verify the axioms");
  auto* proj_rec = proj->add_subcommand("reconstruct", "recover the ring from M(R)");
  auto* proj_star = proj->add_subcommand("verify-star", "the characterization identity");
  for (auto* c : {proj_build, proj_rec, proj_star}) c->add_option("--ring", proj_ring)->required();
  proj_rec->add_option("--unit", proj_unit, "multiplicative identity e (ring element)");
  proj_star->add_option("--unit", proj_unit, "multiplicative identity e (ring element)");

  // jordan build|axioms|roundtrip|verify-extra --pair
  std::string pair_desc;
  auto* jor = app.add_subcommand("jordan", "local Jordan pairs and M(V)");
  auto* jor_build = jor->add_subcommand("build", "build M(V) and verify the axioms");
  auto* jor_ax = jor->add_subcommand("axioms", "the Jordan pair axioms and identities");
  auto* jor_rt = jor->add_subcommand("roundtrip", "pair -> M(V) -> pair up to isomorphism");
  auto* jor_ex = jor->add_subcommand("verify-extra", "the characterization identity");
  for (auto* c : {jor_build, jor_ax, jor_rt, jor_ex}) c->add_option("--pair", pair_desc)->required();

  // hermitian build|mu-check
  std::string herm_ring, herm_eps = "1", herm_lambda = "min";
  int herm_rank = 1;
  auto* herm = app.add_subcommand("hermitian", "hermitian structures on H(W,q)");
  auto* herm_build = herm->add_subcommand("build", "build and verify the axioms");
  auto* herm_mu = herm->add_subcommand("mu-check", "closed-form mu action vs the composed word");
  for (auto* c : {herm_build, herm_mu}) {
    c->add_option("--ring", herm_ring)->required();
    c->add_option("--eps", herm_eps);
    c->add_option("--lambda", herm_lambda, "min|max|zero");
    c->add_option("--rank", herm_rank);
  }

  // orthogonal build
  std::string orth_ring, orth_q = "x1^2";
  auto* orth = app.add_subcommand("orthogonal", "orthogonal structures on Q(W,q)");
  auto* orth_build = orth->add_subcommand("build", "build and verify the axioms");
  orth_build->add_option("--ring", orth_ring)->required();
  orth_build->add_option("--q", orth_q, "diagonal quadratic form, e.g. x1^2+x2^2");

  // tree spheres|verify-iso
  long long tree_p = 3;
  int tree_depth = 3, tree_level = 2;
  std::string dot_path;
  auto* tr = app.add_subcommand("tree", "lattice-class spheres of the p-adic tree");
  auto* tr_sph = tr->add_subcommand("spheres", "sphere sizes, tree shape, inverse system");
  tr_sph->add_option("--p", tree_p)->required();
  tr_sph->add_option("--depth", tree_depth);
  tr_sph->add_option("--dot", dot_path, "write a DOT adjacency dump");
  auto* tr_iso = tr->add_subcommand("verify-iso", "sphere action vs M(Z/p^n)");
  tr_iso->add_option("--p", tree_p)->required();
  tr_iso->add_option("--level", tree_level);

  // verify moufang --ring --family projective [--suite]
  std::string ver_ring, ver_family = "projective", ver_suite;
  auto* ver = app.add_subcommand("verify", "full verification suites");
  auto* ver_m = ver->add_subcommand("moufang", "axioms and identity suites");
  ver_m->add_option("--ring", ver_ring)->required();
  ver_m->add_option("--family", ver_family, "structure family (projective)");
  ver_m->add_option("--suite", ver_suite,
                    "run one suite: axioms|mu-identities|hua-identities|hua-theorem|special|"
                    "reconstruct-ring|verify-star");

  // global flags (--json/--cap/--seed) may follow any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands({})) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    Report rep;
    rep.seed = ctx.seed;
    rep.cap = ctx.cap;

    if (*ring_info) {
      ring::Ring r = ring::Ring::parse(ring_desc);
      rep.descriptor = ring_desc;
      rep.structure = r.name();
      CheckList cl;
      try {
        r.check_invariants();
        cl.pass("ring-invariants",
                "units have two-sided inverses; m is an ideal; the residue map is a surjective "
                "homomorphism; the involution (if any) is a unital anti-automorphism of order <= 2");
      } catch (const PreconditionError& e) {
        cl.fail("ring-invariants", "local ring invariants", e.what());
      }
      cl.orders["|R|"] = r.size();
      cl.orders["|units|"] = static_cast<long long>(r.units().size());
      cl.orders["|m|"] = static_cast<long long>(r.max_ideal().size());
      cl.orders["|R/m|"] = r.residue_field().size();
      std::string us = "units:";
      for (ring::Elt u : r.units()) us += " " + r.elt_str(u);
      std::string ms = "m:";
      for (ring::Elt x : r.max_ideal()) ms += " " + r.elt_str(x);
      cl.notes["units"] = us;
      cl.notes["max-ideal"] = ms;
      if (r.has_involution()) {
        std::string is = "";
        for (ring::Elt a = 0; a < r.size(); ++a) is += r.elt_str(a) + "->" + r.elt_str(r.star(a)) + " ";
        cl.notes["involution"] = is;
      }
      rep.add_suite("ring-info", cl);
      return finish(rep, ctx, out, elapsed());
    }

    if (*proj_build || *proj_rec || *proj_star) {
      ring::Ring r = ring::Ring::parse(proj_ring);
      rep.descriptor = proj_ring;
      MoufangData m = projective::build_MR(r);
      rep.structure = m.name();
      int e_point = m.least_unit();
      if (!proj_unit.empty()) {
        projective::ProjLine line(r);
        e_point = line.index_first(r.elt_from_str(proj_unit));
        if (!m.is_unit(e_point)) throw ParseError("--unit must name a unit of the ring");
      }
      if (*proj_build) {
        rep.add_suite("axioms", moufang::is_local_moufang(m, ctx.opt()));
        rep.add_suite("family", projective::mr_suite(m, r, ctx.cap));
      } else if (*proj_rec) {
        CheckList cl;
        cl.notes["e"] = m.X().label(e_point);
        auto rec = projective::reconstruct_ring(m, e_point, &cl);
        auto iso = projective::ring_iso_check(rec.ring, r);
        cl.set("ring-iso", "the recovered ring is isomorphic to R", iso.has_value(),
               iso ? "" : "no isomorphism found");
        rep.add_suite("reconstruct-ring", cl);
      } else {
        CheckList cl;
        cl.notes["e"] = m.X().label(e_point);
        cl.merge(projective::verify_star(m, e_point));
        rep.add_suite("verify-star", cl);
      }
      return finish(rep, ctx, out, elapsed());
    }

    if (*jor_build || *jor_ax || *jor_rt || *jor_ex) {
      jordan::JordanPair v = jordan::parse_pair(pair_desc);
      rep.descriptor = pair_desc;
      rep.structure = v.name;
      int e = -1;
      for (int x = 0; x < v.mod[0].n; ++x)
        if (v.invertible(0, x)) {
          e = x;
          break;
        }
      if (e < 0) throw PreconditionError("the pair has no invertible element");
      if (*jor_ax) {
        rep.add_suite("pair-axioms", jordan::verify_axioms(v));
        rep.add_suite("quasi-inversion", jordan::jpbasic_suite(v));
      } else if (*jor_build) {
        rep.add_suite("pair-axioms", jordan::verify_axioms(v));
        MoufangData m = jordan::build_MV(v, e);
        rep.structure = m.name();
        rep.add_suite("axioms", moufang::is_local_moufang(m, ctx.opt()));
        rep.add_suite("family", jordan::mv_suite(v, e));
      } else if (*jor_rt) {
        MoufangData m = jordan::build_MV(v, e);
        CheckList cl;
        auto rec = jordan::reconstruct_jordan(m, &cl);
        auto iso = jordan::pair_iso_check(rec.pair, v);
        cl.set("pair-iso", "the recovered pair is isomorphic to V", iso.has_value(),
               iso ? "" : "no isomorphism found");
        rep.add_suite("roundtrip", cl);
        rep.add_suite("recovered-axioms", jordan::verify_axioms(rec.pair));
      } else {
        MoufangData m = jordan::build_MV(v, e);
        rep.add_suite("verify-extra", jordan::verify_extra(m));
      }
      return finish(rep, ctx, out, elapsed());
    }

    if (*herm_build || *herm_mu) {
      ring::Ring r = ring::Ring::parse(herm_ring);
      if (!r.has_involution()) r = ring::Ring::parse(herm_ring + ":inv=id");
      ring::Elt eps = r.elt_from_str(herm_eps);
      auto fr = hermitian::make_form_ring(std::move(r), eps, herm_lambda);
      rep.descriptor = herm_ring + ":eps=" + herm_eps + ":lambda=" + herm_lambda + ":rank=" +
                       std::to_string(herm_rank);
      if (*herm_build) {
        CheckList pre;
        MoufangData m = hermitian::build_hermitian(fr, herm_rank, &pre);
        rep.structure = m.name();
        rep.add_suite("form", pre);
        rep.add_suite("axioms", moufang::is_local_moufang(m, ctx.opt()));
      } else {
        MoufangData m = hermitian::build_hermitian(fr, herm_rank, nullptr);
        rep.structure = m.name();
        rep.add_suite("mu-action", hermitian::mu_action_check(fr, herm_rank));
      }
      return finish(rep, ctx, out, elapsed());
    }

    if (*orth_build) {
      ring::Ring r = ring::Ring::parse(orth_ring);
      int rank = 0;
      auto diag = parse_diag_form(r, orth_q, rank);
      rep.descriptor = orth_ring + ":q=" + orth_q;
      CheckList pre;
      MoufangData m = hermitian::build_orthogonal(r, rank, diag, &pre);
      rep.structure = m.name();
      rep.add_suite("form", pre);
      rep.add_suite("axioms", moufang::is_local_moufang(m, ctx.opt()));
      return finish(rep, ctx, out, elapsed());
    }

    if (*tr_sph || *tr_iso) {
      if (*tr_sph) {
        tree::TruncatedDVR t(tree_p, tree_depth);
        rep.descriptor = "p=" + std::to_string(tree_p) + ",depth=" + std::to_string(tree_depth);
        rep.structure = "T(p=" + std::to_string(tree_p) + ")";
        rep.add_suite("graph", tree::graph_check(t, tree_depth));
        rep.add_suite("inverse-system", tree::inverse_system_checks(t, tree_depth));
        if (!dot_path.empty()) {
          std::ofstream f(dot_path);
          f << tree::dot_dump(t, tree_depth);
        }
      } else {
        tree::TruncatedDVR t(tree_p, tree_level + 1);
        rep.descriptor = "p=" + std::to_string(tree_p) + ",level=" + std::to_string(tree_level);
        rep.structure = "T_" + std::to_string(tree_level) + "(p=" + std::to_string(tree_p) + ")";
        CheckList cl = tree::verify_sphere_iso(t, tree_level, ctx.opt());
        auto ker = t.kernel(tree_level);
        cl.orders["|SL2|"] = ker.sl2_order;
        cl.orders["|kernel|"] = ker.kernel_order;
        cl.orders["|image|"] = ker.image_order;
        cl.set("kernel-scalars", "the kernel of the sphere action is the scalars mod pi^n",
               ker.kernel_is_scalars, "");
        cl.set("image-psl2", "the faithful image has the order of PSL_2(O/pi^n O)",
               ker.image_order == projective::psl2_perm_group(t.level(tree_level)).order(), "");
        rep.add_suite("sphere-iso", cl);
      }
      return finish(rep, ctx, out, elapsed());
    }

    if (*ver_m) {
      if (ver_family != "projective")
        throw ParseError("only --family projective is wired to `verify moufang`");
      ring::Ring r = ring::Ring::parse(ver_ring);
      rep.descriptor = ver_ring;
      MoufangData m = projective::build_MR(r);
      rep.structure = m.name();
      if (ver_suite == "reconstruct-ring") {
        CheckList cl;
        int e_point = m.least_unit();
        cl.notes["e"] = m.X().label(e_point);
        try {
          auto rec = projective::reconstruct_ring(m, e_point, &cl);
          auto iso = projective::ring_iso_check(rec.ring, r);
          cl.set("ring-iso", "the recovered ring is isomorphic to R", iso.has_value(), "");
        } catch (const PreconditionError& e) {
          cl.fail("reconstruct", "ring reconstruction preconditions (R1)-(R4)", e.what());
        }
        rep.add_suite("reconstruct-ring", cl);
      } else if (ver_suite == "verify-star") {
        rep.add_suite("verify-star", projective::verify_star(m, m.least_unit()));
      } else {
        add_moufang_suites(rep, m, ctx.opt(), ver_suite);
        if (rep.suites.empty()) throw ParseError("unknown suite: " + ver_suite);
      }
      return finish(rep, ctx, out, elapsed());
    }

    err << "no subcommand executed\n";
    return 2;
  } catch (const ParseError& e) {
    err << "descriptor error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lms::cli
