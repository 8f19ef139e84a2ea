#include "lms/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lms::tree {

using action::EquivSet;
using action::Perm;
using projective::ProjLine;
using projective::ProjPoint;

TruncatedDVR::TruncatedDVR(long long p, int depth_cap) : p_(p), cap_(depth_cap) {
  if (depth_cap < 1) throw PreconditionError("depth cap must be >= 1");
  for (int n = 1; n <= depth_cap; ++n) rings_.push_back(Ring::zmod(p, n));
  for (int n = 1; n <= depth_cap; ++n) lines_.emplace_back(rings_[n - 1]);
}

const Ring& TruncatedDVR::level(int n) const {
  if (n < 1 || n > cap_) throw PreconditionError("level out of range");
  return rings_[n - 1];
}

const ProjLine& TruncatedDVR::line(int n) const {
  if (n < 1 || n > cap_) throw PreconditionError("level out of range");
  return lines_[n - 1];
}

std::vector<LatticeRep> TruncatedDVR::sphere(int n) const {
  if (n == 0) return {LatticeRep{0, -1}};
  const ProjLine& l = line(n);
  std::vector<LatticeRep> out;
  out.reserve(l.size());
  for (int i = 0; i < l.size(); ++i) out.push_back({n, i});
  return out;
}

ProjPoint TruncatedDVR::chi(const LatticeRep& l) const {
  if (l.n < 1) throw PreconditionError("chi is defined for n >= 1");
  return line(l.n).point(l.pt);
}

LatticeRep TruncatedDVR::from_proj(int n, const ProjPoint& p) const {
  return {n, line(n).index_of(p)};
}

std::pair<Elt, Elt> TruncatedDVR::coeffs(const LatticeRep& l) const {
  const Ring& r = level(l.n);
  ProjPoint p = chi(l);
  if (p.second) return {p.coord, r.one()};
  return {r.one(), p.coord};
}

LatticeRep TruncatedDVR::reduce(const LatticeRep& l) const {
  if (l.n <= 1) return LatticeRep{0, -1};
  auto [a, b] = coeffs(l);
  const Ring& rl = level(l.n - 1);
  long long mod = 1;
  for (int i = 0; i < l.n - 1; ++i) mod *= p_;
  Elt ar = static_cast<Elt>(a % mod);
  Elt br = static_cast<Elt>(b % mod);
  // renormalize projectively over Z/p^{n-1}
  if (rl.is_unit(ar)) return {l.n - 1, line(l.n - 1).index_first(rl.mul(rl.inv(ar), br))};
  return {l.n - 1, line(l.n - 1).index_second(rl.mul(ar, rl.inv(br)))};
}

bool TruncatedDVR::adjacent(const LatticeRep& a, const LatticeRep& b) const {
  const LatticeRep& lo = a.n < b.n ? a : b;
  const LatticeRep& hi = a.n < b.n ? b : a;
  if (hi.n != lo.n + 1) return false;
  if (lo.n == 0) return true;  // the base class is adjacent to all of T_1
  return reduce(hi) == lo;
}

Perm TruncatedDVR::sphere_action(int n, const ProjLine::Mat2& g) const {
  const Ring& rn = level(n);
  long long mod = 1;
  for (int i = 0; i < n; ++i) mod *= p_;
  ProjLine::Mat2 gr{static_cast<Elt>(g.a % mod), static_cast<Elt>(g.b % mod),
                    static_cast<Elt>(g.c % mod), static_cast<Elt>(g.d % mod)};
  if (line(n).det(gr) != rn.one())
    throw PreconditionError("matrix determinant is not 1 at this level");
  return line(n).perm_of(gr);
}

std::vector<ProjLine::Mat2> TruncatedDVR::sl2(int n) const {
  const Ring& r = level(n);
  std::vector<ProjLine::Mat2> out;
  for (Elt a = 0; a < r.size(); ++a)
    for (Elt b = 0; b < r.size(); ++b)
      for (Elt c = 0; c < r.size(); ++c) {
        if (r.is_unit(a)) {
          out.push_back({a, b, c, r.mul(r.inv(a), r.add(r.one(), r.mul(b, c)))});
        } else {
          for (Elt d = 0; d < r.size(); ++d)
            if (r.sub(r.mul(a, d), r.mul(b, c)) == r.one()) out.push_back({a, b, c, d});
        }
      }
  return out;
}

TruncatedDVR::KernelReport TruncatedDVR::kernel(int n) const {
  KernelReport rep;
  long long mod = 1;
  for (int i = 0; i < n; ++i) mod *= p_;
  auto all = sl2(cap_);
  rep.sl2_order = static_cast<long long>(all.size());
  std::set<Perm> images;
  rep.kernel_is_scalars = true;
  for (const auto& g : all) {
    Perm p = sphere_action(n, g);
    images.insert(p);
    bool trivial = p.is_identity();
    // scalar matrix u * I modulo p^n, with u a unit there
    bool scalar = (g.b % mod == 0) && (g.c % mod == 0) && ((g.a % mod) == (g.d % mod)) &&
                  level(n).is_unit(static_cast<Elt>(g.a % mod));
    if (trivial) ++rep.kernel_order;
    if (trivial != scalar) rep.kernel_is_scalars = false;
  }
  rep.image_order = static_cast<long long>(images.size());
  return rep;
}

CheckList graph_check(const TruncatedDVR& t, int depth) {
  CheckList out;
  std::vector<LatticeRep> verts;
  std::vector<int> level_of;
  for (int n = 0; n <= depth; ++n) {
    auto s = t.sphere(n);
    out.orders["|T" + std::to_string(n) + "|"] = static_cast<long long>(s.size());
    for (const auto& l : s) {
      verts.push_back(l);
      level_of.push_back(n);
    }
  }
  int nv = static_cast<int>(verts.size());
  std::vector<std::vector<int>> adj(nv);
  long long edges = 0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      if (t.adjacent(verts[i], verts[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++edges;
      }
  // sphere sizes: |T_n| = p^n + p^{n-1}
  {
    bool ok = true;
    long long pn = 1;
    for (int n = 1; n <= depth; ++n) {
      pn *= t.p();
      long long expect = pn + pn / t.p();
      if (out.orders["|T" + std::to_string(n) + "|"] != expect) ok = false;
    }
    out.set("sphere-sizes", "|T_n| = p^n + p^{n-1}", ok, "");
  }
  // connected + acyclic == tree
  {
    std::vector<int> dist(nv, -1);
    std::vector<int> queue{0};
    dist[0] = 0;
    for (size_t h = 0; h < queue.size(); ++h)
      for (int w : adj[queue[h]])
        if (dist[w] < 0) {
          dist[w] = dist[queue[h]] + 1;
          queue.push_back(w);
        }
    bool connected = static_cast<int>(queue.size()) == nv;
    bool acyclic = edges == nv - 1;
    out.set("tree", "the union of spheres is a tree (connected, |E| = |V|-1)", connected && acyclic,
            "");
    bool depth_ok = true;
    for (int i = 0; i < nv; ++i)
      if (dist[i] != level_of[i]) depth_ok = false;
    out.set("distance", "the BFS distance from the base class equals the level", depth_ok, "");
  }
  // degrees: root has |T_1| neighbours, every vertex below the boundary has
  // p children, non-root vertices have exactly one parent
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < nv && ok; ++i) {
      int children = 0, parents = 0;
      for (int w : adj[i]) {
        if (level_of[w] == level_of[i] + 1) ++children;
        if (level_of[w] == level_of[i] - 1) ++parents;
      }
      if (level_of[i] == 0) {
        if (parents != 0 || children != static_cast<int>(t.sphere(1).size())) {
          ok = false;
          wit = "root degree";
        }
      } else {
        if (parents != 1) {
          ok = false;
          wit = "parent count at level " + std::to_string(level_of[i]);
        }
        if (level_of[i] < depth && children != static_cast<int>(t.p())) {
          ok = false;
          wit = "growth at level " + std::to_string(level_of[i]);
        }
      }
    }
    out.set("degrees", "root degree p+1 and growth p below the boundary", ok, wit);
  }
  return out;
}

CheckList verify_sphere_iso(const TruncatedDVR& t, int n, const moufang::VerifyOptions& opt) {
  CheckList out;
  const Ring& rn = t.level(n);
  const ProjLine& ln = t.line(n);

  // the sphere as a set with equivalence: L ~ L' iff equal reduction at level 1
  auto sph = t.sphere(n);
  int nv = static_cast<int>(sph.size());
  std::vector<int> cls(nv);
  std::vector<std::string> labels(nv);
  {
    std::vector<LatticeRep> reps(nv);
    for (int i = 0; i < nv; ++i) {
      LatticeRep l = sph[i];
      while (l.n > 1) l = t.reduce(l);
      reps[i] = l;
      auto [a, b] = t.coeffs(sph[i]);
      labels[i] = "(" + rn.elt_str(a) + "," + rn.elt_str(b) + ")@" + std::to_string(n);
    }
    std::vector<int> id_of_pt(t.line(1).size(), -1);
    int next = 0;
    for (int i = 0; i < nv; ++i) {
      if (id_of_pt[reps[i].pt] < 0) id_of_pt[reps[i].pt] = next++;
      cls[i] = id_of_pt[reps[i].pt];
    }
  }
  EquivSet X = EquivSet::from_classes(cls, labels);

  // tree-side structure: unipotent translations and the Weyl flip acting on
  // lattice coefficients directly (no chi involved)
  moufang::Seed s;
  s.X = X;
  for (Elt r = 0; r < rn.size(); ++r)
    s.U.push_back(t.sphere_action(n, {rn.one(), r, rn.zero(), rn.one()}));
  s.tau = t.sphere_action(n, {rn.zero(), rn.neg(rn.one()), rn.one(), rn.zero()});
  {
    // inf = the lattice with coefficients (0,1)
    int inf = -1;
    for (int i = 0; i < nv; ++i) {
      auto [a, b] = t.coeffs(sph[i]);
      if (a == rn.zero() && b == rn.one()) inf = i;
    }
    s.inf = inf;
  }
  s.name = "T" + std::to_string(n) + "(p=" + std::to_string(t.p()) + ")";
  moufang::MoufangData mt = moufang::MoufangData::construct(std::move(s));

  CheckList ax = moufang::is_local_moufang(mt, opt);
  out.set("sphere-axioms", "the sphere action satisfies the local Moufang axioms", ax.all_pass(),
          "");

  // chi intertwines the full SL_2 action
  moufang::MoufangData mr = projective::build_MR(rn);
  std::vector<int> chi_map(nv);
  for (int i = 0; i < nv; ++i) chi_map[i] = ln.index_of(t.chi(sph[i]));
  {
    bool bij = true;
    std::vector<char> hit(ln.size(), 0);
    for (int v : chi_map) {
      if (hit[v]) bij = false;
      hit[v] = 1;
    }
    out.set("chi-bijective", "chi_n is a bijection T_n -> P^1(O/pi^n O)",
            bij && nv == ln.size(), "");
  }
  {
    bool ok = true;
    std::string wit;
    for (const auto& g : t.sl2(n)) {
      Perm tp = t.sphere_action(n, g);
      Perm pp = ln.perm_of(g);
      for (int i = 0; i < nv; ++i)
        if (chi_map[tp.img[i]] != pp.img[chi_map[i]]) {
          ok = false;
          wit = "lattice " + labels[i];
          break;
        }
      if (!ok) break;
    }
    out.set("chi-intertwines", "chi_n (L g) = chi_n(L) g for all g in SL_2", ok, wit);
  }
  {
    auto rep = moufang::check_homomorphism(mt, mr, chi_map);
    out.set("sphere-iso", "chi_n is an isomorphism onto M(O/pi^n O)", rep.ok, rep.witness);
  }
  // reduction square at level n, when n < cap
  if (n < t.depth_cap()) {
    bool ok = true;
    std::string wit;
    auto sph1 = t.sphere(n + 1);
    for (const auto& l : sph1) {
      LatticeRep red = t.reduce(l);
      ProjPoint via_tree = t.chi(red);
      ProjPoint above = t.chi(l);
      // P^1 of the reduction map Z/p^{n+1} -> Z/p^n
      long long mod = 1;
      for (int i = 0; i < n; ++i) mod *= t.p();
      ProjPoint via_proj;
      if (above.second)
        via_proj = {true, static_cast<Elt>(above.coord % mod)};
      else
        via_proj = {false, static_cast<Elt>(above.coord % mod)};
      if (!(via_tree == via_proj)) {
        ok = false;
        wit = "level " + std::to_string(n + 1);
        break;
      }
    }
    out.set("chi-commutes", "chi_n after reduction = P^1(reduction) after chi_{n+1}", ok, wit);
  }
  return out;
}

CheckList inverse_system_checks(const TruncatedDVR& t, int depth) {
  CheckList out;
  {
    bool ok = true;
    for (int n = 1; n < depth && ok; ++n) {
      auto below = t.sphere(n);
      auto above = t.sphere(n + 1);
      std::set<int> covered;
      for (const auto& l : above) covered.insert(t.reduce(l).pt);
      if (static_cast<int>(covered.size()) != static_cast<int>(below.size())) ok = false;
    }
    out.set("lifts", "every level-n representative lifts to level n+1", ok, "");
  }
  {
    // compatible chains up to `depth` biject with P^1(Z/p^depth)
    auto top = t.sphere(depth);
    long long chains = 0;
    bool ok = true;
    std::set<std::vector<int>> seen;
    for (const auto& l : top) {
      std::vector<int> chain;
      LatticeRep cur = l;
      while (cur.n >= 1) {
        chain.push_back(cur.pt);
        cur = t.reduce(cur);
      }
      if (!seen.insert(chain).second) ok = false;
      ++chains;
    }
    // count all compatible chains directly
    long long direct = 0;
    {
      std::vector<std::vector<int>> frontier;  // chains as pt sequences, deepest first
      for (const auto& l : t.sphere(1)) frontier.push_back({l.pt});
      for (int n = 2; n <= depth; ++n) {
        std::vector<std::vector<int>> next;
        for (const auto& l : t.sphere(n)) {
          int red = t.reduce(l).pt;
          for (const auto& ch : frontier)
            if (ch.front() == red) {
              auto ext = ch;
              ext.insert(ext.begin(), l.pt);
              next.push_back(ext);
            }
        }
        frontier = std::move(next);
      }
      direct = static_cast<long long>(frontier.size());
    }
    out.orders["chains"] = direct;
    out.set("inverse-limit", "compatible point chains up to depth N biject with P^1(Z/p^N)",
            ok && chains == direct && chains == static_cast<long long>(t.line(depth).size()), "");
  }
  return out;
}

std::string dot_dump(const TruncatedDVR& t, int depth) {
  std::ostringstream os;
  os << "graph lattice_tree {\n";
  auto name = [&](const LatticeRep& l) {
    if (l.n == 0) return std::string("\"L0\"");
    auto [a, b] = t.coeffs(l);
    return "\"(" + t.level(l.n).elt_str(a) + "," + t.level(l.n).elt_str(b) + ")@" +
           std::to_string(l.n) + "\"";
  };
  for (int n = 1; n <= depth; ++n)
    for (const auto& l : t.sphere(n)) {
      LatticeRep parent = n == 1 ? LatticeRep{0, -1} : t.reduce(l);
      os << "  " << name(parent) << " -- " << name(l) << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace lms::tree
