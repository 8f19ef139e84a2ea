#include "lms/projective.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

namespace lms::projective {

using action::EquivSet;
using action::Perm;
using action::PermGroup;
using moufang::MoufangData;
using moufang::Seed;

ProjLine::ProjLine(const Ring& r) : r_(&r) {
  first_idx_.assign(r.size(), -1);
  second_idx_.assign(r.size(), -1);
  for (Elt x = 0; x < r.size(); ++x) {
    first_idx_[x] = static_cast<int>(points_.size());
    points_.push_back({false, x});
  }
  for (Elt m : r.max_ideal()) {
    second_idx_[m] = static_cast<int>(points_.size());
    points_.push_back({true, m});
  }
}

int ProjLine::index_of(const ProjPoint& p) const {
  return p.second ? second_idx_[p.coord] : first_idx_[p.coord];
}

std::string ProjLine::label(int i) const {
  const ProjPoint& p = points_[i];
  if (p.second) return "[" + r_->elt_str(p.coord) + ",1]";
  return "[1," + r_->elt_str(p.coord) + "]";
}

EquivSet ProjLine::equiv_set() const {
  const Ring& r = *r_;
  std::vector<int> cls(points_.size());
  std::vector<std::string> labels(points_.size());
  // class index = residue of r for [1,r]; residue-field size for all [m,1]
  int resn = r.residue_field().size();
  for (size_t i = 0; i < points_.size(); ++i) {
    labels[i] = label(static_cast<int>(i));
    cls[i] = points_[i].second ? resn : r.residue(points_[i].coord);
  }
  return EquivSet::from_classes(cls, labels);
}

Elt ProjLine::det(const Mat2& g) const { return r_->sub(r_->mul(g.a, g.d), r_->mul(g.b, g.c)); }

int ProjLine::apply(const Mat2& g, int i) const {
  const Ring& r = *r_;
  const ProjPoint& p = points_[i];
  Elt x = p.second ? p.coord : r.one();
  Elt y = p.second ? r.one() : p.coord;
  Elt nx = r.add(r.mul(x, g.a), r.mul(y, g.c));
  Elt ny = r.add(r.mul(x, g.b), r.mul(y, g.d));
  if (r.is_unit(nx)) return first_idx_[r.mul(r.inv(nx), ny)];
  if (!r.is_unit(ny)) throw PreconditionError("matrix action produced a non-unimodular row");
  return second_idx_[r.mul(nx, r.inv(ny))];
}

Perm ProjLine::perm_of(const Mat2& g) const {
  Perm p(size());
  for (int i = 0; i < size(); ++i) p.img[i] = apply(g, i);
  return p;
}

MoufangData build_MR(const Ring& r) {
  ProjLine line(r);
  Seed s;
  s.X = line.equiv_set();
  for (Elt x = 0; x < r.size(); ++x)
    s.U.push_back(line.perm_of({r.one(), x, r.zero(), r.one()}));
  s.tau = line.perm_of({r.zero(), r.neg(r.one()), r.one(), r.zero()});
  s.inf = line.index_second(r.zero());
  s.name = "M(" + r.name() + ")";
  return MoufangData::construct(std::move(s));
}

PermGroup psl2_perm_group(const Ring& r) {
  ProjLine line(r);
  PermGroup out;
  std::unordered_set<Perm, action::PermHash> seen;
  for (Elt a = 0; a < r.size(); ++a)
    for (Elt b = 0; b < r.size(); ++b)
      for (Elt c = 0; c < r.size(); ++c) {
        if (r.is_unit(a)) {
          Elt d = r.mul(r.inv(a), r.add(r.one(), r.mul(b, c)));
          Perm p = line.perm_of({a, b, c, d});
          if (seen.insert(p).second) out.elems.push_back(std::move(p));
        } else {
          for (Elt d = 0; d < r.size(); ++d) {
            if (r.sub(r.mul(a, d), r.mul(b, c)) != r.one()) continue;
            Perm p = line.perm_of({a, b, c, d});
            if (seen.insert(p).second) out.elems.push_back(std::move(p));
          }
        }
      }
  out.build_index();
  return out;
}

CheckList mr_suite(const MoufangData& m, const Ring& r, long long cap) {
  CheckList out;
  ProjLine line(r);
  {
    // With points as row vectors acted on from the right, mu_{[1,r]} is the
    // matrix [[0,r],[-r^-1,0]] (the same permutation as [[0,-r^-1],[r,0]]
    // acting on columns): on units it sends [1,y] to [1,-r^2 y^-1].
    bool ok = true;
    std::string wit;
    for (Elt x : r.units()) {
      int pt = line.index_first(x);
      if (!(m.mu(pt) == line.perm_of({r.zero(), x, r.neg(r.inv(x)), r.zero()}))) {
        ok = false;
        wit = "r=" + r.elt_str(x);
        break;
      }
      if (!(m.hua(pt) == line.perm_of({r.inv(x), r.zero(), r.zero(), x}))) {
        ok = false;
        wit = "r=" + r.elt_str(x);
        break;
      }
    }
    out.set("mu-hua-matrices",
            "mu_{[1,r]} = [[0,r],[-r^-1,0]] and h_{[1,r]} = diag(r^-1,r); on units y mu = -r^2 y^-1 "
            "and y h = y r^2",
            ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (Elt x : r.units())
      if (m.tilde(line.index_first(x)) != line.index_first(r.neg(x))) {
        ok = false;
        wit = "r=" + r.elt_str(x);
        break;
      }
    out.set("tilde-neg", "~[1,r] = [1,-r] = -[1,r]", ok, wit);
  }
  out.set("special", "M(R) is special", moufang::is_special(m), "");
  out.set("abelian", "M(R) has abelian root groups", moufang::has_abelian_root_groups(m), "");
  {
    bool ok = true;
    try {
      const auto& h = m.hua_subgroup(cap);
      for (const auto& a : h.elems) {
        for (const auto& b : h.elems)
          if (!(action::compose(a, b) == action::compose(b, a))) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
    } catch (const CapExceeded&) {
      ok = false;
    }
    out.set("abelian-hua", "M(R) has an abelian Hua subgroup", ok, "");
  }
  {
    bool ok = true;
    std::string wit;
    try {
      const auto& g = m.little_projective(cap);
      auto psl = psl2_perm_group(r);
      out.orders["|G|"] = g.order();
      out.orders["|PSL2|"] = psl.order();
      if (g.order() != psl.order()) {
        ok = false;
        wit = "orders differ";
      } else {
        for (const auto& p : psl.elems)
          if (!g.contains(p)) {
            ok = false;
            wit = "setwise difference";
            break;
          }
      }
    } catch (const CapExceeded&) {
      ok = false;
      wit = "closure exceeded cap";
    }
    out.set("psl2", "the little projective group equals the faithful PSL_2(R) action", ok, wit);
  }
  return out;
}

CheckList ring_conditions(const moufang::MoufangData& m) {
  CheckList out;
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (m.tilde(x) != m.neg(x)) {
        ok = false;
        witness = "x=" + m.X().label(x);
        break;
      }
    out.set("R1", "the structure is special (~x = -x)", ok, witness);
  }
  out.set("R2", "U_inf is abelian", moufang::has_abelian_root_groups(m), "");
  {
    bool ok = true;
    std::string witness;
    try {
      const PermGroup& h = m.hua_subgroup(1 << 20);
      for (const auto& a : h.elems) {
        for (const auto& b : h.elems)
          if (!(action::compose(a, b) == action::compose(b, a))) {
            ok = false;
            witness = "non-commuting pair in H";
            break;
          }
        if (!ok) break;
      }
    } catch (const CapExceeded&) {
      ok = false;
      witness = "H closure exceeded cap";
    }
    out.set("R3", "the Hua subgroup is abelian", ok, witness);
  }
  {
    bool ok = true;
    std::string witness;
    for (int x : m.units())
      if (!m.is_unit(m.times(x, 2))) {
        ok = false;
        witness = "x=" + m.X().label(x) + " with x.2=" + m.X().label(m.times(x, 2));
        break;
      }
    out.set("R4", "x a unit implies x.2 a unit", ok, witness);
  }
  return out;
}

namespace {

struct RingBuild {
  const MoufangData* m;
  std::vector<int> carrier;        // elt -> point
  std::vector<int> elt_of;         // point -> elt
  std::vector<int> half;           // point-level unique 2-division
  Perm tau_e;                      // mu_e
  int e_point;

  int padd(int x, int y) const { return m->alpha(y).img[x]; }
  int pneg(int x) const { return m->neg(x); }
  int psub(int x, int y) const { return padd(x, pneg(y)); }

  Perm hua_of(int z) const { return action::compose(tau_e, m->mu(z)); }

  // x R_y, the three-case endomorphism of (R,+)
  int R_apply(int y, int x) const {
    const MoufangData& M = *m;
    int e = e_point;
    if (M.is_unit(y) && M.is_unit(padd(e, y))) {
      Perm h1 = hua_of(padd(e, y));
      Perm h2 = hua_of(y);
      return psub(psub(h1.img[x], h2.img[x]), x);
    }
    if (M.is_unit(y)) {
      int ey = padd(pneg(e), y);
      if (!M.is_unit(ey))
        throw PreconditionError("R_y: -e+y is not a unit at y=" + M.X().label(y));
      Perm h1 = hua_of(ey);
      Perm h2 = hua_of(y);
      return padd(padd(pneg(h1.img[x]), x), h2.img[x]);
    }
    int a1 = padd(M.times(e, 2), y);
    int a2 = padd(e, y);
    int a3 = pneg(M.times(e, 2));
    if (!M.is_unit(a1) || !M.is_unit(a2) || !M.is_unit(a3))
      throw PreconditionError("R_y: a Hua argument is not a unit at y=" + M.X().label(y));
    Perm h1 = hua_of(a1);
    Perm h2 = hua_of(a2);
    Perm h3 = hua_of(a3);
    return padd(psub(psub(h1.img[x], h2.img[x]), h3.img[x]), x);
  }

  int pmul(int x, int y) const { return half[R_apply(y, x)]; }
};

}  // namespace

RecoveredRing reconstruct_ring(const MoufangData& m, int e_point, CheckList* report) {
  CheckList conds = ring_conditions(m);
  for (const auto& c : conds.items)
    if (c.status == Status::Fail)
      throw PreconditionError("(" + c.name + ") fails: " + c.statement +
                              (c.witness.empty() ? "" : " [" + c.witness + "]"));
  if (!m.is_unit(e_point)) throw PreconditionError("the chosen identity e must be a unit");
  if (report) report->merge(conds);

  const EquivSet& X = m.X();
  RingBuild b;
  b.m = &m;
  b.e_point = e_point;
  b.tau_e = m.mu(e_point);
  b.elt_of.assign(X.n, -1);
  for (int x = 0; x < X.n; ++x)
    if (!X.equivalent(x, m.inf())) {
      b.elt_of[x] = static_cast<int>(b.carrier.size());
      b.carrier.push_back(x);
    }
  // unique halving table
  b.half.assign(X.n, -1);
  for (int x : b.carrier) {
    int found = -1;
    int count = 0;
    for (int y : b.carrier)
      if (b.padd(y, y) == x) {
        found = y;
        ++count;
      }
    if (count != 1)
      throw PreconditionError("no unique 2-division at " + X.label(x) + " (found " +
                              std::to_string(count) + ")");
    b.half[x] = found;
  }

  int n = static_cast<int>(b.carrier.size());
  std::vector<std::vector<Elt>> add(n, std::vector<Elt>(n));
  std::vector<std::vector<Elt>> mul(n, std::vector<Elt>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = X.label(b.carrier[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      add[i][j] = b.elt_of[b.padd(b.carrier[i], b.carrier[j])];
      mul[i][j] = b.elt_of[b.pmul(b.carrier[i], b.carrier[j])];
    }

  // ring axiom verification on the tables (commutativity, associativity,
  // distributivity, identity), then locality and the inversion rule
  auto fail = [&](const std::string& name, const std::string& stmt, const std::string& wit) {
    if (report) report->fail(name, stmt, wit);
    throw PreconditionError(name + ": " + stmt + " [" + wit + "]");
  };
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (mul[i][j] != mul[j][i]) {
          ok = false;
          wit = labels[i] + "," + labels[j];
        }
    if (!ok) fail("ring-comm", "xy = yx", wit);
    if (report) report->pass("ring-comm", "xy = yx");
  }
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        for (int k = 0; k < n && ok; ++k) {
          if (mul[mul[i][j]][k] != mul[i][mul[j][k]]) {
            ok = false;
            wit = labels[i] + "," + labels[j] + "," + labels[k];
          }
          if (mul[add[i][j]][k] != add[mul[i][k]][mul[j][k]]) {
            ok = false;
            wit = labels[i] + "," + labels[j] + "," + labels[k];
          }
        }
    if (!ok) fail("ring-assoc-dist", "(xy)z = x(yz) and (x+y)z = xz+yz", wit);
    if (report) report->pass("ring-assoc-dist", "(xy)z = x(yz) and (x+y)z = xz+yz");
  }
  int e_elt = b.elt_of[e_point];
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < n && ok; ++i)
      if (mul[e_elt][i] != i || mul[i][e_elt] != i) {
        ok = false;
        wit = labels[i];
      }
    if (!ok) fail("ring-identity", "e x = x e = x", wit);
    if (report) report->pass("ring-identity", "e x = x e = x");
  }

  RecoveredRing out;
  out.ring = Ring::from_tables(add, mul, labels, b.elt_of[m.zero()], e_elt,
                               m.name() + " ring(e=" + X.label(e_point) + ")");
  out.carrier = b.carrier;
  out.point_to_elt = b.elt_of;
  out.e_point = e_point;

  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < n && ok; ++i) {
      bool unit_ring = out.ring.is_unit(i);
      bool unit_lms = m.is_unit(b.carrier[i]);
      if (unit_ring != unit_lms) {
        ok = false;
        wit = labels[i];
      }
    }
    if (!ok) fail("ring-local", "the non-invertible elements are exactly class(0)", wit);
    if (report) report->pass("ring-local", "the non-invertible elements are exactly class(0)");
  }
  {
    bool ok = true;
    std::string wit;
    for (int x : m.units()) {
      int xi = b.elt_of[x];
      int inv_pt = b.tau_e.img[m.neg(x)];  // (-x) mu_e
      if (mul[b.elt_of[inv_pt]][xi] != e_elt) {
        ok = false;
        wit = X.label(x);
        break;
      }
    }
    if (!ok) fail("ring-inverse", "x^{-1} = (-x) mu_e for units", wit);
    if (report) report->pass("ring-inverse", "x^{-1} = (-x) mu_e for units");
  }
  return out;
}

CheckList verify_star(const MoufangData& m, int e_point) {
  CheckList out;
  RecoveredRing rec = reconstruct_ring(m, e_point, nullptr);
  const EquivSet& X = m.X();

  RingBuild b;
  b.m = &m;
  b.e_point = e_point;
  b.tau_e = m.mu(e_point);
  b.carrier = rec.carrier;
  b.elt_of = rec.point_to_elt;
  b.half.assign(X.n, -1);
  for (int x : rec.carrier) {
    for (int y : rec.carrier)
      if (b.padd(y, y) == x) {
        b.half[x] = y;
        break;
      }
  }

  int neg2e = m.neg(m.times(e_point, 2));
  bool ok = true;
  std::string witness;
  for (int x : X.classes[X.class_of[m.zero()]]) {
    for (int y : rec.carrier) {
      int lhs = m.alpha(y).img[b.tau_e.img[x]];
      int p1 = b.R_apply(x, y);
      int p2 = m.alpha(neg2e).img[p1];
      int p3 = b.tau_e.img[p2];
      if (X.equivalent(p3, m.inf())) {
        ok = false;
        witness = "intermediate point in class(inf) at x=" + X.label(x) + ", y=" + X.label(y);
        break;
      }
      int p4 = b.R_apply(x, p3);
      int p5 = b.tau_e.img[p4];
      if (lhs != p5) {
        ok = false;
        witness = "x=" + X.label(x) + ", y=" + X.label(y);
        break;
      }
    }
    if (!ok) break;
  }
  out.set("star", "x mu_e alpha_y = y R_x alpha_{-2e} mu_e R_x mu_e for x ~ 0, y !~ inf", ok, witness);
  if (!ok) return out;

  // explicit isomorphism onto M(R) for the recovered ring
  MoufangData mr = build_MR(rec.ring);
  ProjLine line(rec.ring);
  std::vector<int> phi(X.n, -1);
  for (int x = 0; x < X.n; ++x) {
    if (!X.equivalent(x, m.inf())) {
      phi[x] = line.index_first(rec.point_to_elt[x]);
    } else {
      int q = b.tau_e.img[x];  // ~ 0
      phi[x] = line.index_second(rec.point_to_elt[m.neg(q)]);
    }
  }
  std::vector<char> hit(X.n, 0);
  bool bij = true;
  for (int v : phi) {
    if (v < 0 || hit[v]) bij = false;
    if (v >= 0) hit[v] = 1;
  }
  auto rep = moufang::check_homomorphism(m, mr, phi);
  out.set("star-iso", "the two-case point map is an isomorphism onto M(R)", bij && rep.ok,
          rep.ok ? "" : rep.witness);
  return out;
}

namespace {

long long additive_order(const Ring& r, Elt a) {
  long long o = 1;
  Elt acc = a;
  while (acc != r.zero()) {
    acc = r.add(acc, a);
    ++o;
  }
  return o;
}

std::vector<Elt> additive_span(const Ring& r, const std::vector<Elt>& gens) {
  std::vector<char> in(r.size(), 0);
  std::vector<Elt> out{r.zero()};
  in[r.zero()] = 1;
  for (size_t head = 0; head < out.size(); ++head)
    for (Elt g : gens) {
      Elt nxt = r.add(out[head], g);
      if (!in[nxt]) {
        in[nxt] = 1;
        out.push_back(nxt);
      }
    }
  return out;
}

}  // namespace

std::optional<std::vector<Elt>> ring_iso_check(const Ring& a, const Ring& b) {
  if (a.size() != b.size()) return std::nullopt;
  int n = a.size();
  // additive generating sequence of a
  std::vector<Elt> gens;
  std::vector<char> in_span(n, 0);
  in_span[a.zero()] = 1;
  int covered = 1;
  while (covered < n) {
    Elt next = -1;
    for (Elt x = 0; x < n; ++x)
      if (!in_span[x]) {
        next = x;
        break;
      }
    gens.push_back(next);
    auto span = additive_span(a, gens);
    covered = static_cast<int>(span.size());
    std::fill(in_span.begin(), in_span.end(), 0);
    for (Elt x : span) in_span[x] = 1;
  }

  std::vector<std::vector<Elt>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    long long o = additive_order(a, gens[i]);
    for (Elt y = 0; y < n; ++y)
      if (additive_order(b, y) == o) candidates[i].push_back(y);
  }

  std::vector<size_t> pick(gens.size(), 0);
  std::function<std::optional<std::vector<Elt>>(size_t)> rec =
      [&](size_t gi) -> std::optional<std::vector<Elt>> {
    if (gi == gens.size()) {
      // BFS the additive Cayley graph to extend the map
      std::vector<Elt> f(n, -1);
      f[a.zero()] = b.zero();
      std::vector<Elt> queue{a.zero()};
      for (size_t head = 0; head < queue.size(); ++head) {
        Elt cur = queue[head];
        for (size_t i = 0; i < gens.size(); ++i) {
          Elt nxt = a.add(cur, gens[i]);
          Elt img = b.add(f[cur], candidates[i][pick[i]]);
          if (f[nxt] != -1) {
            if (f[nxt] != img) return std::nullopt;
          } else {
            f[nxt] = img;
            queue.push_back(nxt);
          }
        }
      }
      if (static_cast<int>(queue.size()) != n) return std::nullopt;
      std::vector<char> hit(n, 0);
      for (Elt v : f) {
        if (v < 0 || hit[v]) return std::nullopt;
        hit[v] = 1;
      }
      if (f[a.one()] != b.one()) return std::nullopt;
      for (Elt x = 0; x < n; ++x)
        for (Elt y = 0; y < n; ++y)
          if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return std::nullopt;
      return f;
    }
    for (size_t c = 0; c < candidates[gi].size(); ++c) {
      pick[gi] = c;
      // prune: partial consistency is cheap to skip; full check in leaf
      auto r = rec(gi + 1);
      if (r) return r;
    }
    return std::nullopt;
  };
  return rec(0);
}

}  // namespace lms::projective
